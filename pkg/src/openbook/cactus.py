"""Cacti: ordered transposition lists whose left-to-right product is the
n-cycle (1 n n-1 ... 2).

A cactus of length n-1 records a simple branched cover of the disk; the
moves here are the Hurwitz exchanges of two adjacent factors and the
rotation that happens when a critical value crosses the argument-zero ray.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import kernels
from .errors import ParseError
from .perm import Permutation, descending_cycle, transposition_product

MAX_DEGREE = 7

Transposition = tuple[int, int]


def transposition(k: int, l: int) -> Transposition:
    if k == l:
        raise ValueError("a transposition moves two distinct points")
    return (min(k, l), max(k, l))


@dataclass(frozen=True)
class Cactus:
    n: int
    taus: tuple[Transposition, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        object.__setattr__(self, "taus", tuple(transposition(*t) for t in self.taus))
        for k, l in self.taus:
            if not (1 <= k and l <= self.n):
                raise ValueError(f"transposition ({k} {l}) is not on 1..{self.n}")

    def product(self) -> Permutation:
        return transposition_product(self.n, self.taus)

    def to_text(self) -> str:
        return f"n={self.n}; " + " ".join(f"({k},{l})" for k, l in self.taus)

    def to_json(self) -> dict:
        return {"n": self.n, "taus": [list(t) for t in self.taus]}

    def __str__(self) -> str:
        return "(" + ", ".join(f"({k} {l})" for k, l in self.taus) + ")"


@dataclass(frozen=True)
class Condition9Report:
    repeated: list[tuple[int, int]]
    interlaced: list[tuple[Transposition, Transposition]]
    ordered_violation: list[dict]
    product_ok: bool

    def to_json(self) -> dict:
        return {
            "repeated": [list(p) for p in self.repeated],
            "interlaced": [[list(a), list(b)] for a, b in self.interlaced],
            "ordered_violation": self.ordered_violation,
            "product_ok": self.product_ok,
        }


_PAIR = re.compile(r"\(\s*(\d+)\s*[, ]\s*(\d+)\s*\)")


def parse_cactus(text: str) -> Cactus:
    text = text.strip()
    if text.startswith("{"):
        try:
            data = json.loads(text)
            return Cactus(int(data["n"]), tuple(tuple(map(int, t)) for t in data["taus"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad cactus JSON: {exc}") from exc
    m = re.match(r"^n\s*=\s*(\d+)\s*;(.*)$", text, re.S)
    if not m:
        raise ParseError("cactus text needs an 'n=<int>;' header")
    n, body = int(m.group(1)), m.group(2)
    pairs = _PAIR.findall(body)
    if _PAIR.sub("", body).strip():
        raise ParseError(f"unparsed cactus tokens in {body!r}")
    try:
        return Cactus(n, tuple((int(a), int(b)) for a, b in pairs))
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def validate_cactus(c: Cactus) -> bool:
    return c.product() == descending_cycle(c.n)


def _conj(t: Transposition, by: Transposition) -> Transposition:
    # by t by^-1 for transpositions: relabel the points of t through by
    a, b = by

    def move(x: int) -> int:
        return b if x == a else a if x == b else x

    return transposition(move(t[0]), move(t[1]))


def hurwitz_move(c: Cactus, i: int, direction: str = "under") -> Cactus:
    """Exchange factors ``i`` and ``i+1`` (1-based).

    ``under``: (τ_i, τ_{i+1}) -> (τ_{i+1}, τ_{i+1} τ_i τ_{i+1}^-1)
    ``over``:  (τ_i, τ_{i+1}) -> (τ_i^-1 τ_{i+1} τ_i, τ_i)
    """
    if not (1 <= i < len(c.taus)):
        raise IndexError(f"position {i} out of range for {len(c.taus)} factors")
    taus = list(c.taus)
    a, b = taus[i - 1], taus[i]
    if direction == "under":
        taus[i - 1], taus[i] = b, _conj(a, b)
    elif direction == "over":
        taus[i - 1], taus[i] = _conj(b, a), a
    else:
        raise ValueError("direction must be 'under' or 'over'")
    return Cactus(c.n, tuple(taus))


def boundary_rotate(c: Cactus, direction: str = "forward") -> Cactus:
    if not c.taus:
        raise ValueError("cannot rotate an empty cactus")
    n = c.n

    def shift(t: Transposition, k: int) -> Transposition:
        return transposition((t[0] - 1 + k) % n + 1, (t[1] - 1 + k) % n + 1)

    if direction == "forward":
        return Cactus(n, (shift(c.taus[-1], 1),) + c.taus[:-1])
    if direction == "backward":
        return Cactus(n, c.taus[1:] + (shift(c.taus[0], -1),))
    raise ValueError("direction must be 'forward' or 'backward'")


def enumerate_cacti(n: int, backend: str | None = None) -> list[Cactus]:
    """All cacti of length n-1, in lexicographic order of factors."""
    if not (2 <= n <= MAX_DEGREE):
        raise ValueError(f"degree must lie in 2..{MAX_DEGREE}")
    table = [(i + 1, j + 1) for i, j in kernels.transposition_table(n)]
    return [Cactus(n, tuple(table[k] for k in tup)) for tup in kernels.cactus_tuples(n, backend)]


def count_cacti(n: int, backend: str | None = None) -> int:
    if not (2 <= n <= MAX_DEGREE):
        raise ValueError(f"degree must lie in 2..{MAX_DEGREE}")
    return kernels.count_cacti(n, backend)


def transposition_graph(c: Cactus) -> tuple[list[Transposition], bool]:
    edges = list(c.taus)
    parent = list(range(c.n + 1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    acyclic = True
    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra == rb:
            acyclic = False
        parent[ra] = rb
    roots = {find(k) for k in range(1, c.n + 1)}
    return edges, acyclic and len(roots) == 1 and len(edges) == c.n - 1


def _cyclic_between(a: int, x: int, b: int, n: int) -> bool:
    """x strictly inside the cyclic interval from a to b."""
    return 0 < (x - a) % n < (b - a) % n


def condition9(taus: Sequence[Transposition], n: int) -> Condition9Report:
    """Check the three listed t=0 row conditions plus the product condition.

    Only ``product_ok`` is authoritative; the other fields are diagnostics.
    Ordered-pair findings are reported under the linear reading of
    ``i < k < j`` and flagged when the cyclic reading also holds.
    """
    taus = [transposition(*t) for t in taus]
    repeated = sorted({t for k, t in enumerate(taus) if t in taus[:k]})
    inter = []
    for a in range(len(taus)):
        for b in range(a + 1, len(taus)):
            (i, j), (k, m) = taus[a], taus[b]
            if (i < k < j < m) or (k < i < m < j):
                inter.append((taus[a], taus[b]))
    ordered = []
    for a in range(len(taus)):
        for b in range(a + 1, len(taus)):
            ta, tb = taus[a], taus[b]
            shared = set(ta) & set(tb)
            if len(shared) != 1 or ta == tb:
                continue
            i = shared.pop()
            j = (set(ta) - {i}).pop()
            k = (set(tb) - {i}).pop()
            # (i j) before (i k) with i < k < j
            linear = i < k < j
            cyclic = _cyclic_between(i, k, j, n)
            if linear or cyclic:
                ordered.append({
                    "first": list(ta), "second": list(tb), "i": i, "j": j, "k": k,
                    "linear": linear, "cyclic": cyclic,
                })
    product_ok = transposition_product(n, taus) == descending_cycle(n)
    return Condition9Report(repeated, inter, ordered, product_ok)
