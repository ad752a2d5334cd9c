"""Braid words in band generators and Artin generators.

A band letter ``a_{i,j}^{±1}`` is the half-twisted band between disks ``i``
and ``j``; in Artin generators it expands to
``σ_i … σ_{j-2} σ_{j-1}^{±1} σ_{j-2}^{-1} … σ_i^{-1}``.  With this expansion
the three letters on strands ``p < q < r`` satisfy

    a_{pq} a_{qr} = a_{qr} a_{pr} = a_{pr} a_{pq},

which drives :func:`pair_rewrites`.  Words are read left to right, which is
bottom to top in the braid.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import ParseError
from .perm import Permutation, transposition_product


@dataclass(frozen=True, order=True)
class BandLetter:
    i: int
    j: int
    sign: int = 1

    def __post_init__(self) -> None:
        if self.i == self.j:
            raise ValueError("a band joins two distinct strands")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if self.i > self.j:
            a, b = self.j, self.i
            object.__setattr__(self, "i", a)
            object.__setattr__(self, "j", b)

    @property
    def chord(self) -> tuple[int, int]:
        return (self.i, self.j)

    def inverse(self) -> "BandLetter":
        return BandLetter(self.i, self.j, -self.sign)

    def with_sign(self, sign: int) -> "BandLetter":
        return BandLetter(self.i, self.j, sign)

    def to_text(self) -> str:
        return f"{'-' if self.sign < 0 else ''}{self.i}:{self.j}"

    def __str__(self) -> str:
        exp = "^-1" if self.sign < 0 else ""
        return f"a{self.i}{self.j}{exp}" if max(self.i, self.j) < 10 else f"a({self.i},{self.j}){exp}"


@dataclass(frozen=True)
class BandWord:
    n: int
    letters: tuple[BandLetter, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        object.__setattr__(self, "letters", tuple(self.letters))
        if self.n < 1:
            raise ValueError("need at least one strand")
        for a in self.letters:
            if not (1 <= a.i < a.j <= self.n):
                raise ValueError(f"letter {a} does not live on {self.n} strands")

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, k):
        return self.letters[k]

    def to_text(self) -> str:
        body = " ".join(a.to_text() for a in self.letters)
        return f"n={self.n}; {body}".rstrip()

    def __str__(self) -> str:
        return " ".join(map(str, self.letters)) or "1"

    def to_json(self) -> list[list[int]]:
        return [[a.i, a.j, a.sign] for a in self.letters]

    @classmethod
    def from_json(cls, n: int, data: Sequence[Sequence[int]]) -> "BandWord":
        return cls(n, tuple(BandLetter(int(i), int(j), int(s)) for i, j, s in data))


@dataclass(frozen=True)
class ArtinWord:
    n: int
    letters: tuple[int, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        object.__setattr__(self, "letters", tuple(int(k) for k in self.letters))
        for k in self.letters:
            if k == 0 or abs(k) >= self.n:
                raise ValueError(f"generator {k} out of range for {self.n} strands")

    def __len__(self) -> int:
        return len(self.letters)

    def to_text(self) -> str:
        return f"n={self.n}; " + " ".join(map(str, self.letters))

    def exponent_sum(self) -> int:
        return sum(1 if k > 0 else -1 for k in self.letters)

    def permutation(self) -> Permutation:
        return transposition_product(self.n, ((abs(k), abs(k) + 1) for k in self.letters))


@dataclass(frozen=True)
class SurfaceStats:
    euler: int
    components: int
    connected: bool
    betti1: int


# ---------------------------------------------------------------- parsing

_HEADER = re.compile(r"^\s*n\s*=\s*(\d+)\s*;?(.*)$", re.S)
_BAND_TOKEN = re.compile(r"^(-?)(\d+):(\d+)$")


def _split_header(text: str) -> tuple[int | None, str]:
    m = _HEADER.match(text)
    if m:
        return int(m.group(1)), m.group(2)
    return None, text


def parse_band_word(text: str, n: int | None = None) -> BandWord:
    """Parse ``n=4; 3:4 -1:3`` style text.  Without a header, ``n`` is the
    largest index unless given explicitly."""
    hdr, body = _split_header(text)
    if hdr is not None:
        n = hdr
    letters = []
    for tok in body.split():
        m = _BAND_TOKEN.match(tok)
        if not m:
            raise ParseError(f"bad band token {tok!r}")
        i, j = int(m.group(2)), int(m.group(3))
        if i == j:
            raise ParseError(f"band token {tok!r} joins a strand to itself")
        letters.append(BandLetter(i, j, -1 if m.group(1) else 1))
    if n is None:
        n = max((a.j for a in letters), default=1)
    for a in letters:
        if a.i < 1 or a.j > n:
            raise ParseError(f"index out of range in {a.to_text()} for n={n}")
    return BandWord(n, tuple(letters))


def parse_artin_word(text: str, n: int | None = None) -> ArtinWord:
    hdr, body = _split_header(text)
    if hdr is not None:
        n = hdr
    try:
        gens = [int(tok) for tok in body.split()]
    except ValueError as exc:
        raise ParseError(f"bad Artin word {text!r}") from exc
    if n is None:
        n = max((abs(k) for k in gens), default=0) + 1
    for k in gens:
        if k == 0 or abs(k) >= n:
            raise ParseError(f"generator {k} out of range for n={n}")
    return ArtinWord(n, tuple(gens))


# ------------------------------------------------------------- conversion

def letter_to_artin(a: BandLetter) -> list[int]:
    left = list(range(a.i, a.j - 1))
    return left + [a.sign * (a.j - 1)] + [-k for k in reversed(left)]


def band_to_artin(w: BandWord) -> ArtinWord:
    out: list[int] = []
    for a in w.letters:
        out.extend(letter_to_artin(a))
    return ArtinWord(w.n, tuple(out))


def artin_to_band(w: ArtinWord) -> BandWord:
    return BandWord(w.n, tuple(BandLetter(abs(k), abs(k) + 1, 1 if k > 0 else -1) for k in w.letters))


def mirror(w: ArtinWord) -> ArtinWord:
    return ArtinWord(w.n, tuple(-k for k in w.letters))


def mirror_band(w: BandWord) -> BandWord:
    """Mirror a band word whose letters are all Artin generators."""
    if any(a.j != a.i + 1 for a in w.letters):
        raise ValueError("band-word mirror is only defined on words in a_{i,i+1}")
    return artin_to_band(mirror(band_to_artin(w)))


# -------------------------------------------------------------- invariants

def word_permutation(w: BandWord) -> Permutation:
    return transposition_product(w.n, (a.chord for a in w.letters))


def _spans(n: int, chords: Iterable[tuple[int, int]]) -> bool:
    parent = list(range(n + 1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in chords:
        parent[find(i)] = find(j)
    return len({find(k) for k in range(1, n + 1)}) == 1


def word_invariants(w: BandWord) -> tuple[Permutation, SurfaceStats]:
    perm = word_permutation(w)
    components = len(perm.cycles())
    euler = w.n - len(w.letters)
    betti1 = max(0, 1 - euler + (components - 1))
    stats = SurfaceStats(euler, components, _spans(w.n, (a.chord for a in w.letters)), betti1)
    return perm, stats


def interlaced(p: BandLetter, q: BandLetter) -> bool | str:
    """True if the chords cross, False if the letters commute, ``"adjacent"``
    when they share a strand."""
    i, j, k, m = p.i, p.j, q.i, q.j
    prod = (i - k) * (i - m) * (j - k) * (j - m)
    if prod > 0:
        return False
    if prod < 0:
        return True
    return "adjacent"


# --------------------------------------------------------------- rewrites

def _triangle(c1: tuple[int, int], c2: tuple[int, int]) -> tuple[tuple[int, int], dict]:
    p, q, r = sorted(set(c1) | set(c2))
    lo, hi, long = (p, q), (q, r), (p, r)
    # x y x^-1 is a single letter exactly when y follows x in this cycle
    nxt = {lo: hi, hi: long, long: lo}
    third = ({lo, hi, long} - {c1, c2}).pop()
    return third, nxt


def conjugate_letter(x: BandLetter, y: BandLetter) -> BandLetter | None:
    """Return ``x y x^-1`` when it is a single band letter on the same
    triangle of strands (distinct chords sharing one strand), else None."""
    if x.chord == y.chord or len(set(x.chord) | set(y.chord)) != 3:
        return None
    third, nxt = _triangle(x.chord, y.chord)
    prv = {v: k for k, v in nxt.items()}
    if (x.sign > 0 and nxt[x.chord] == y.chord) or (x.sign < 0 and prv[x.chord] == y.chord):
        return BandLetter(*third, y.sign)
    return None


def pair_rewrites(x: BandLetter, y: BandLetter, n: int | None = None) -> list[tuple[BandLetter, BandLetter, str]]:
    """All single-letter pairs equal to ``x y`` other than ``x y`` itself.

    Variants: ``commute`` gives ``(y, x)``; ``left`` gives
    ``(x y x^-1, x)``; ``right`` gives ``(y, y^-1 x y)``.
    """
    if n is not None:
        for a in (x, y):
            if a.j > n:
                raise ValueError(f"letter {a} does not live on {n} strands")
    if x.chord == y.chord:
        return []
    state = interlaced(x, y)
    if state is False:
        return [(y, x, "commute")]
    if state is True:
        return []
    out = []
    left = conjugate_letter(x, y)
    if left is not None:
        out.append((left, x, "left"))
    right = conjugate_letter(y.inverse(), x)
    if right is not None:
        out.append((y, right, "right"))
    return out


# -------------------------------------------------------- word operations

def shift_indices(w: BandWord, k: int) -> BandWord:
    n = w.n

    def s(i: int) -> int:
        return (i + k - 1) % n + 1

    return BandWord(n, tuple(BandLetter(s(a.i), s(a.j), a.sign) for a in w.letters))


def cyclic_conjugates(w: BandWord) -> list[BandWord]:
    L = len(w.letters)
    if L == 0:
        return [w]
    return [BandWord(w.n, w.letters[r:] + w.letters[:r]) for r in range(L)]


def concat(*words: BandWord) -> BandWord:
    n = words[0].n
    return BandWord(n, tuple(a for w in words for a in w.letters))
