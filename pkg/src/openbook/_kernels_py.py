"""Pure-Python cactus enumeration, used when the compiled kernel is absent.

Transpositions are indexed in lexicographic order of (i, j), i < j.  The
first n-2 factors range over all transpositions; the last factor is forced
by the product condition and accepted only if it is a transposition.
"""

from __future__ import annotations


def transposition_table(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def _walk(n: int, want_list: bool):
    table = transposition_table(n)
    index = {p: k for k, p in enumerate(table)}
    # target k -> k-1 (0-based: k -> k-1 mod n)
    target = [(k - 1) % n for k in range(n)]
    depth = n - 2
    found = []
    count = 0
    prefix = list(range(n))
    choice = [0] * max(depth, 1)
    stack_perm = [prefix[:]]

    def close(perm):
        # last factor t must satisfy t(perm(x)) = target(x)
        moved = []
        for x in range(n):
            if perm[x] != target[x]:
                moved.append((perm[x], target[x]))
                if len(moved) > 2:
                    return None
        if len(moved) != 2:
            return None
        (a, b), (c, d) = moved
        if a != d or b != c:
            return None
        return index[(min(a, b), max(a, b))]

    if depth == 0:
        last = close(prefix)
        if last is not None:
            return 1, [(last,)]
        return 0, []

    level = 0
    choice[0] = -1
    while level >= 0:
        choice[level] += 1
        if choice[level] >= len(table):
            level -= 1
            stack_perm.pop()
            continue
        a, b = table[choice[level]]
        cur = stack_perm[level]
        nxt = [b if x == a else a if x == b else x for x in cur]
        if level == depth - 1:
            last = close(nxt)
            if last is not None:
                count += 1
                if want_list:
                    found.append(tuple(choice[:depth]) + (last,))
        else:
            stack_perm.append(nxt)
            level += 1
            choice[level] = -1
    return count, found


def cactus_tuples(n: int) -> list[tuple[int, ...]]:
    return _walk(n, True)[1]


def count_cacti(n: int) -> int:
    return _walk(n, False)[0]
