"""Permutations of {1, ..., n} in one-line notation.

Products are read left to right: ``p.then(q)`` applies ``p`` first.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


@dataclass(frozen=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise ValueError(f"not a permutation: {self.images}")

    @property
    def n(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def transposition(cls, n: int, i: int, j: int) -> "Permutation":
        img = list(range(1, n + 1))
        img[i - 1], img[j - 1] = j, i
        return cls(tuple(img))

    @classmethod
    def from_cycle(cls, n: int, cycle: Sequence[int]) -> "Permutation":
        img = list(range(1, n + 1))
        for a, b in zip(cycle, list(cycle[1:]) + [cycle[0]]):
            img[a - 1] = b
        return cls(tuple(img))

    @classmethod
    def product(cls, n: int, factors: Iterable["Permutation"]) -> "Permutation":
        acc = cls.identity(n)
        for f in factors:
            acc = acc.then(f)
        return acc

    def __call__(self, k: int) -> int:
        return self.images[k - 1]

    def then(self, other: "Permutation") -> "Permutation":
        return Permutation(tuple(other.images[x - 1] for x in self.images))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for k, x in enumerate(self.images, start=1):
            inv[x - 1] = k
        return Permutation(tuple(inv))

    def cycles(self, include_fixed: bool = True) -> list[tuple[int, ...]]:
        seen: set[int] = set()
        out = []
        for start in range(1, self.n + 1):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            x = self(start)
            while x != start:
                cyc.append(x)
                seen.add(x)
                x = self(x)
            if include_fixed or len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def is_identity(self) -> bool:
        return all(x == k for k, x in enumerate(self.images, start=1))

    def __str__(self) -> str:
        cyc = self.cycles(include_fixed=False)
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)


def descending_cycle(n: int) -> Permutation:
    """The n-cycle (1 n n-1 ... 2), i.e. k -> k-1 with 1 -> n."""
    return Permutation(tuple([n] + list(range(1, n))))


def transposition_product(n: int, pairs: Iterable[tuple[int, int]]) -> Permutation:
    img = list(range(1, n + 1))
    # left-to-right: apply each transposition to the current images
    for i, j in pairs:
        for k, x in enumerate(img):
            if x == i:
                img[k] = j
            elif x == j:
                img[k] = i
    return Permutation(tuple(img))
