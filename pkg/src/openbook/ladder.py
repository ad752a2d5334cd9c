"""Ladder diagrams and over/underpass certificates.

Vertical line ``x`` (1..n) is a disk, rung ``r`` (0-based, bottom to top) is
a band.  Heights use doubled integer coordinates: rung ``r`` sits at
``y = 2r + 2`` and the gaps between rungs are the odd heights
``1, 3, ..., 2L + 1``.

An overpass runs from the leftmost to the rightmost line.  Its vertical
pieces may not cross a rung nor pass through the left end of one, and its
horizontal pieces obey the orientation rule: entering a rung from the left
requires arriving with the rung's sign (up for +, down for -); leaving a
rung to the left requires continuing against it.  When the path starts on
a rung there is no arriving vertical piece and that rule is waived
(``relaxed_start`` in the certificate).

An underpass runs from the rightmost line back to the leftmost one through
exactly n-1 horizontal pieces joining lines (n-1, n), (n-2, n-1), ..., (1, 2)
in that order.  A piece may be the part of a longer rung lying between the
two lines; its vertical pieces are unconstrained.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

from .braid import BandLetter, BandWord, cyclic_conjugates, mirror_band, shift_indices, word_invariants
from .errors import DisconnectedSurface


@dataclass(frozen=True)
class Rung:
    left: int
    right: int
    sign: int

    def to_json(self) -> dict:
        return {"left": self.left, "right": self.right, "sign": self.sign}


@dataclass(frozen=True)
class LadderDiagram:
    n: int
    rungs: tuple[Rung, ...] = ()

    def height(self, r: int) -> int:
        return 2 * r + 2

    @property
    def top(self) -> int:
        return 2 * len(self.rungs) + 1

    def to_json(self) -> dict:
        return {"n": self.n, "rungs": [r.to_json() for r in self.rungs]}


def ladder_from_word(w: BandWord) -> LadderDiagram:
    return LadderDiagram(w.n, tuple(Rung(a.i, a.j, a.sign) for a in w.letters))


@dataclass(frozen=True)
class HSeg:
    rung: int
    start: int  # line where the piece begins
    end: int
    y: int

    @property
    def o(self) -> int:
        return 1 if self.end > self.start else -1

    def to_json(self) -> dict:
        return {"kind": "h", "rung": self.rung, "from": self.start, "to": self.end, "y": self.y, "o": self.o}


@dataclass(frozen=True)
class VSeg:
    line: int
    start: int
    end: int

    @property
    def o(self) -> int:
        return 1 if self.end > self.start else -1

    def to_json(self) -> dict:
        return {"kind": "v", "line": self.line, "from": self.start, "to": self.end, "o": self.o}


@dataclass
class LadderPath:
    start: tuple[int, int]
    end: tuple[int, int]
    segments: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"start": list(self.start), "end": list(self.end), "segments": [s.to_json() for s in self.segments]}


@dataclass
class PassCertificate:
    overpass: LadderPath
    underpass: LadderPath
    relaxed_start: bool = False

    def to_json(self) -> dict:
        return {"overpass": self.overpass.to_json(), "underpass": self.underpass.to_json(),
                "relaxed_start": self.relaxed_start,
                "shared_endpoints": {"left": list(self.overpass.start), "right": list(self.overpass.end)}}


# ---------------------------------------------------------------- search

def _blocked_for_overpass(d: LadderDiagram, x: int, y0: int, y1: int) -> bool:
    lo, hi = min(y0, y1), max(y0, y1)
    for r, g in enumerate(d.rungs):
        y = d.height(r)
        if lo < y < hi and (g.left < x < g.right or g.left == x):
            return True
    return False


def _underpasses(d: LadderDiagram) -> Iterator[list[HSeg]]:
    """Horizontal pieces of every underpass, lowest rungs first."""
    n = d.n
    levels = []
    for i in range(1, n):
        a, b = n - i, n - i + 1
        levels.append([r for r, g in enumerate(d.rungs) if g.left <= a and g.right >= b])

    def rec(i: int, chosen: list[int]) -> Iterator[list[int]]:
        if i == len(levels):
            yield list(chosen)
            return
        for r in levels[i]:
            if chosen and chosen[-1] == r:
                continue  # the vertical piece between them would be a point
            chosen.append(r)
            yield from rec(i + 1, chosen)
            chosen.pop()

    for picks in rec(0, []):
        yield [HSeg(r, n - i, n - i - 1, d.height(r)) for i, r in enumerate(picks)]


def _underpass_path(d: LadderDiagram, pieces: list[HSeg], left_end: tuple[int, int]) -> LadderPath:
    segs: list = []
    for k, h in enumerate(pieces):
        segs.append(h)
        nxt_y = pieces[k + 1].y if k + 1 < len(pieces) else left_end[1]
        if nxt_y != h.y:
            segs.append(VSeg(h.end, h.y, nxt_y))
    return LadderPath((d.n, pieces[0].y), left_end, segs)


def _rung_points(d: LadderDiagram, r: int) -> list[tuple[int, int]]:
    g = d.rungs[r]
    y = d.height(r)
    return [(x, y) for x in range(g.left, g.right + 1)]


def _overpasses(d: LadderDiagram, goal: tuple[int, int]) -> Iterator[tuple[LadderPath, bool]]:
    """Depth-first enumeration of overpasses ending at ``goal``."""
    n = d.n
    starts: list[tuple[int, int | None]] = []  # (height, rung or None)
    for y in range(1, d.top + 1):
        if y % 2 == 1:
            starts.append((y, None))
        else:
            r = (y - 2) // 2
            if d.rungs[r].left == 1:
                starts.append((y, r))

    def traverse(r: int, x: int, segs, visited, used):
        g = d.rungs[r]
        other = g.right if x == g.left else g.left
        pts = _rung_points(d, r)
        if r in used or any(p in visited and p != (x, d.height(r)) for p in pts):
            return None
        h = HSeg(r, x, other, d.height(r))
        return h, other, visited | set(pts), used | {r}

    def from_point(x: int, y: int, need_dir: int | None, segs, visited, used) -> Iterator[list]:
        if (x, y) == goal and segs:
            yield list(segs)
        options = []
        for r, g in enumerate(d.rungs):
            yr = d.height(r)
            if yr == y or r in used:
                continue
            if g.left == x:
                options.append((yr, r))
            elif g.right == x:
                options.append((yr, r))
        if x == n and goal[1] != y:
            options.append((goal[1], None))
        for yr, r in sorted(options, key=lambda t: (t[0], -1 if t[1] is None else t[1])):
            vdir = 1 if yr > y else -1
            if need_dir is not None and vdir != need_dir:
                continue
            if _blocked_for_overpass(d, x, y, yr):
                continue
            lo, hi = min(y, yr), max(y, yr)
            line_pts = {(x, k) for k in range(lo, hi + 1)} - {(x, y)}
            if line_pts & visited:
                continue
            v = VSeg(x, y, yr)
            if r is None:
                yield segs + [v]
                continue
            g = d.rungs[r]
            if g.left == x and vdir != g.sign:
                continue
            step = traverse(r, x, segs, visited | line_pts, used)
            if step is None:
                continue
            h, other, vis2, used2 = step
            nd = -g.sign if h.o < 0 else None
            yield from from_point(other, h.y, nd, segs + [v, h], vis2, used2)

    for y, r in starts:
        if r is None:
            for segs in from_point(1, y, None, [], {(1, y)}, frozenset()):
                yield LadderPath((1, y), goal, segs), False
        else:
            step = traverse(r, 1, [], {(1, y)}, frozenset())
            if step is None:
                continue
            h, other, vis, used = step
            for segs in from_point(other, h.y, None, [h], vis, used):
                yield LadderPath((1, y), goal, segs), True


def find_passes(d: LadderDiagram) -> PassCertificate | None:
    """First over/underpass pair in canonical order, or None."""
    n = d.n
    if n == 1:
        return PassCertificate(LadderPath((1, 1), (1, 1)), LadderPath((1, 1), (1, 1)))
    tried_goals = set()
    for pieces in _underpasses(d):
        goal = (n, pieces[0].y)
        if goal in tried_goals:
            continue
        tried_goals.add(goal)
        for over, relaxed in _overpasses(d, goal):
            under = _underpass_path(d, pieces, over.start)
            return PassCertificate(over, under, relaxed)
    return None


# ------------------------------------------------------------ verification

def verify_certificate(d: LadderDiagram, cert: PassCertificate) -> dict[str, bool]:
    """Check every defining property of the two paths from their segments."""
    n = d.n
    out: dict[str, bool] = {}
    over, under = cert.overpass, cert.underpass
    out["endpoints"] = (over.start[0] == 1 and over.end[0] == n and under.start == over.end
                        and under.end == over.start)
    out["over_connected"] = _connected(over)
    out["under_connected"] = _connected(under)
    out["over_simple"] = _simple(d, over)
    out["under_simple"] = _simple(d, under)
    out["over_on_rungs"] = all(_on_rung(d, s, whole=True) for s in over.segments if isinstance(s, HSeg))
    out["under_on_rungs"] = all(_on_rung(d, s, whole=False) for s in under.segments if isinstance(s, HSeg))
    out["over_alternates"] = _alternates(over.segments)
    out["under_alternates"] = _alternates(under.segments) and bool(under.segments) and isinstance(under.segments[0], HSeg) \
        if n > 1 else True
    ok = True
    for s in over.segments:
        if not isinstance(s, VSeg):
            continue
        lo, hi = min(s.start, s.end), max(s.start, s.end)
        for r, g in enumerate(d.rungs):
            # a rung strictly inside the vertical piece must neither span nor start on its line
            if lo < 2 * r + 2 < hi and g.left <= s.line < g.right:
                ok = False
    out["over_vertical_clear"] = ok
    ok = True
    segs = over.segments
    for k, s in enumerate(segs):
        if not isinstance(s, HSeg):
            continue
        sign = d.rungs[s.rung].sign
        if s.o > 0 and k > 0:
            ok = ok and isinstance(segs[k - 1], VSeg) and segs[k - 1].o == sign
        if s.o < 0:
            ok = ok and k + 1 < len(segs) and isinstance(segs[k + 1], VSeg) and segs[k + 1].o == -sign
    out["over_orientation"] = ok
    hs = [s for s in under.segments if isinstance(s, HSeg)]
    out["under_sequence"] = len(hs) == n - 1 and all(
        (min(h.start, h.end), max(h.start, h.end)) == (n - i, n - i + 1) and h.o < 0
        for i, h in enumerate(hs, start=1))
    return out


def _connected(p: LadderPath) -> bool:
    cur = p.start
    for s in p.segments:
        if isinstance(s, HSeg):
            if cur != (s.start, s.y):
                return False
            cur = (s.end, s.y)
        else:
            if cur != (s.line, s.start) or s.start == s.end:
                return False
            cur = (s.line, s.end)
    return cur == p.end


def _alternates(segs) -> bool:
    return all(type(a) is not type(b) for a, b in zip(segs, segs[1:]))


def _on_rung(d: LadderDiagram, s: HSeg, whole: bool) -> bool:
    if not (0 <= s.rung < len(d.rungs)) or s.y != d.height(s.rung):
        return False
    g = d.rungs[s.rung]
    lo, hi = min(s.start, s.end), max(s.start, s.end)
    if whole:
        return (lo, hi) == (g.left, g.right)
    return g.left <= lo and hi <= g.right


def _points(d: LadderDiagram, s) -> list[tuple[int, int]]:
    if isinstance(s, HSeg):
        lo, hi = min(s.start, s.end), max(s.start, s.end)
        g = d.rungs[s.rung]
        # a rung drawn across a line meets it; both ends are included
        return [(x, s.y) for x in range(lo, hi + 1)] if g.left <= lo else []
    lo, hi = min(s.start, s.end), max(s.start, s.end)
    pts = [(s.line, y) for y in range(lo, hi + 1)]
    return pts


def _simple(d: LadderDiagram, p: LadderPath) -> bool:
    seen: dict[tuple[int, int], int] = {}
    for k, s in enumerate(p.segments):
        for q in _points(d, s):
            if q in seen and seen[q] != k - 1:
                return False
            if q in seen and seen[q] == k - 1:
                # shared joint with the previous segment is allowed once
                prev_end = _endpoint(p.segments[k - 1])
                if q != prev_end:
                    return False
            seen[q] = k
    return True


def _endpoint(s) -> tuple[int, int]:
    return (s.end, s.y) if isinstance(s, HSeg) else (s.line, s.end)


# ----------------------------------------------------- sufficient condition

def sufficient_condition(w: BandWord) -> bool:
    n = w.n
    chords = {a.chord for a in w.letters}
    if n == 1:
        return True
    return all((i, i + 1) in chords for i in range(1, n)) and (1, n) in chords


# ------------------------------------------------------------ three strands

@dataclass
class Braid3Certificate:
    shift: int
    rotation: int
    mirrored: bool
    word: BandWord
    passes: PassCertificate

    def to_json(self) -> dict:
        return {"shift": self.shift, "rotation": self.rotation, "mirrored": self.mirrored,
                "word": self.word.to_text(), "passes": self.passes.to_json()}


def braid3_decide(w: BandWord) -> Braid3Certificate | None:
    """Search index shifts, rotations and (for words in a12, a23) the mirror
    for a representative whose ladder has passes."""
    if w.n > 3:
        raise ValueError("braid3_decide handles at most three strands")
    if not word_invariants(w)[1].connected:
        raise DisconnectedSurface("the banded surface is not connected")
    for s in range(w.n if w.n == 3 else 1):
        ws = shift_indices(w, -s)
        for r, rot in enumerate(cyclic_conjugates(ws)):
            for mirrored in (False, True):
                if mirrored:
                    if any(a.j != a.i + 1 for a in rot.letters):
                        continue
                    cand = mirror_band(rot)
                else:
                    cand = rot
                cert = find_passes(ladder_from_word(cand))
                if cert is not None:
                    return Braid3Certificate(s, r, mirrored, cand, cert)
    return None
