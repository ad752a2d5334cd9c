# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled cactus enumeration; same contract as ``_kernels_py``."""

from libc.stdlib cimport malloc, free


def transposition_table(int n):
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


cdef int _close(int n, int* perm, int* index) nogil:
    cdef int x, m = 0, a0 = 0, b0 = 0, a1 = 0, b1 = 0, t
    for x in range(n):
        t = (x - 1 + n) % n
        if perm[x] != t:
            if m == 0:
                a0 = perm[x]; b0 = t
            elif m == 1:
                a1 = perm[x]; b1 = t
            else:
                return -1
            m += 1
    if m != 2 or a0 != b1 or b0 != a1:
        return -1
    if a0 < b0:
        return index[a0 * n + b0]
    return index[b0 * n + a0]


cdef object _walk(int n, bint want_list):
    cdef int T = n * (n - 1) // 2
    cdef int depth = n - 2
    cdef int* ta = <int*>malloc(T * sizeof(int))
    cdef int* tb = <int*>malloc(T * sizeof(int))
    cdef int* index = <int*>malloc(n * n * sizeof(int))
    cdef int* perms = <int*>malloc((depth + 1) * n * sizeof(int))
    cdef int* choice = <int*>malloc((depth + 1) * sizeof(int))
    cdef int i, j, k = 0, x, level, a, b, last, v
    cdef long count = 0
    found = []
    try:
        for i in range(n):
            for j in range(i + 1, n):
                ta[k] = i; tb[k] = j; index[i * n + j] = k
                k += 1
        for x in range(n):
            perms[x] = x
        if depth == 0:
            last = _close(n, perms, index)
            if last >= 0:
                return 1, [(last,)]
            return 0, []
        level = 0
        choice[0] = -1
        while level >= 0:
            choice[level] += 1
            if choice[level] >= T:
                level -= 1
                continue
            a = ta[choice[level]]; b = tb[choice[level]]
            for x in range(n):
                v = perms[level * n + x]
                if v == a:
                    v = b
                elif v == b:
                    v = a
                perms[(level + 1) * n + x] = v
            if level == depth - 1:
                last = _close(n, perms + (level + 1) * n, index)
                if last >= 0:
                    count += 1
                    if want_list:
                        found.append(tuple([choice[i] for i in range(depth)]) + (last,))
            else:
                level += 1
                choice[level] = -1
        return count, found
    finally:
        free(ta); free(tb); free(index); free(perms); free(choice)


def cactus_tuples(int n):
    return _walk(n, True)[1]


def count_cacti(int n):
    return _walk(n, False)[0]
