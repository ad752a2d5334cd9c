"""Rampichini diagrams as move scripts, and the search for them.

A move script starts from a band word and applies BKL rewrites and cyclic
conjugations.  Geometrically each letter is a point on a vertical line of
the (φ, t) torus; the word at a fixed φ lists these points from the top of
the line downwards.  Positive letters travel upwards as φ grows and negative
ones downwards.  Consequently:

* a positive first letter may leave through the top (``front_to_end``),
  a negative last letter through the bottom (``end_to_front``);
* a BKL rewrite swaps two neighbouring points, and an increasing curve can
  never pass below a decreasing one, so the sign pattern (+,-) -> (-,+) is
  excluded.

A script certifies a diagram when it uses exactly n-1 conjugations, ends on
the start word with indices shifted by -1, every closed curve crosses t=0,
and the transpositions crossing t=0 multiply to (1 n ... 2).
"""

from __future__ import annotations

import json
import math
import time
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

import numpy as np
from scipy.optimize import linprog

from .braid import BandLetter, BandWord, cyclic_conjugates, pair_rewrites, shift_indices
from .cactus import condition9
from .errors import IllegalEvent, ParseError, RealizabilityError
from .perm import descending_cycle, transposition_product

TWO_PI = 2.0 * math.pi

FRONT_TO_END = "front_to_end"
END_TO_FRONT = "end_to_front"


@dataclass(frozen=True)
class Bkl:
    pos: int
    choice: int = 0

    def to_json(self) -> dict:
        return {"type": "bkl", "pos": self.pos, "choice": self.choice}


@dataclass(frozen=True)
class Conj:
    dir: str

    def __post_init__(self) -> None:
        if self.dir not in (FRONT_TO_END, END_TO_FRONT):
            raise ValueError(f"unknown conjugation direction {self.dir!r}")

    def to_json(self) -> dict:
        return {"type": "conj", "dir": self.dir}


Event = Union[Bkl, Conj]


@dataclass(frozen=True)
class MoveScript:
    n: int
    start: BandWord
    events: tuple[Event, ...] = ()

    def to_json(self) -> dict:
        return {"n": self.n, "start": self.start.to_json(), "events": [e.to_json() for e in self.events]}


def parse_script(text: str) -> MoveScript:
    try:
        data = json.loads(text)
        n = int(data["n"])
        start = BandWord.from_json(n, data["start"])
        events: list[Event] = []
        for e in data.get("events", []):
            if e["type"] == "bkl":
                events.append(Bkl(int(e["pos"]), int(e.get("choice", 0))))
            elif e["type"] == "conj":
                events.append(Conj(e["dir"]))
            else:
                raise ValueError(f"unknown event type {e['type']!r}")
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad move script: {exc}") from exc
    return MoveScript(n, start, tuple(events))


# ------------------------------------------------------------------ events

def _sign_transition_allowed(before: tuple[int, int], after: tuple[int, int]) -> bool:
    return not (before == (1, -1) and after == (-1, 1))


def _apply(letters: tuple[BandLetter, ...], e: Event) -> tuple[tuple[BandLetter, ...], list[int], int | None]:
    """Return (new letters, slot map old->new, wrapping old slot or None)."""
    L = len(letters)
    if isinstance(e, Bkl):
        p = e.pos
        if not (0 <= p < L - 1):
            raise IllegalEvent(f"no such rewrite: position {p} out of range")
        opts = pair_rewrites(letters[p], letters[p + 1])
        if not (0 <= e.choice < len(opts)):
            raise IllegalEvent(f"no such rewrite: choice {e.choice} of {len(opts)} at position {p}")
        x2, y2, _ = opts[e.choice]
        if not _sign_transition_allowed((letters[p].sign, letters[p + 1].sign), (x2.sign, y2.sign)):
            raise IllegalEvent("forbidden sign transition (+,-) -> (-,+)")
        new = letters[:p] + (x2, y2) + letters[p + 2:]
        smap = list(range(L))
        smap[p], smap[p + 1] = p + 1, p
        return new, smap, None
    if L == 0:
        raise IllegalEvent("wrong-sign conjugation: empty word")
    if e.dir == FRONT_TO_END:
        if letters[0].sign < 0:
            raise IllegalEvent("wrong-sign conjugation: front_to_end needs a positive first letter")
        return letters[1:] + letters[:1], [L - 1] + list(range(L - 1)), 0
    if letters[-1].sign > 0:
        raise IllegalEvent("wrong-sign conjugation: end_to_front needs a negative last letter")
    return letters[-1:] + letters[:-1], list(range(1, L)) + [0], L - 1


def apply_event(w: BandWord, e: Event) -> BandWord:
    return BandWord(w.n, _apply(w.letters, e)[0])


def legal_events(letters: Sequence[BandLetter]) -> list[Event]:
    """Legal events in canonical order: BKL by position then choice, then
    front_to_end, then end_to_front."""
    out: list[Event] = []
    L = len(letters)
    for p in range(L - 1):
        x, y = letters[p], letters[p + 1]
        for c, (x2, y2, _) in enumerate(pair_rewrites(x, y)):
            if _sign_transition_allowed((x.sign, y.sign), (x2.sign, y2.sign)):
                out.append(Bkl(p, c))
    if L and letters[0].sign > 0:
        out.append(Conj(FRONT_TO_END))
    if L and letters[-1].sign < 0:
        out.append(Conj(END_TO_FRONT))
    return out


# ------------------------------------------------------------- validation

@dataclass
class Trace:
    words: list[tuple[BandLetter, ...]]
    slot_maps: list[list[int]]
    wraps: list[int | None]
    conjugated: list[BandLetter]


def trace_script(s: MoveScript) -> Trace:
    words = [s.start.letters]
    maps, wraps, conj = [], [], []
    cur = s.start.letters
    for e in s.events:
        new, smap, wrap = _apply(cur, e)
        if wrap is not None:
            conj.append(cur[wrap])
        words.append(new)
        maps.append(smap)
        wraps.append(wrap)
        cur = new
    return Trace(words, maps, wraps, conj)


def _curve_cycles(L: int, maps: Sequence[Sequence[int]], wraps: Sequence[int | None]) -> list[tuple[list[int], bool]]:
    """Follow each slot of node 0 through all events and the φ=2π gluing.

    Returns (start slots of the cycle, whether any pass wraps in t)."""
    end_slot = list(range(L))
    wrapped = [False] * L
    for smap, wrap in zip(maps, wraps):
        new_end = [0] * L
        for c in range(L):
            if wrap is not None and end_slot[c] == wrap:
                wrapped[c] = True
            new_end[c] = smap[end_slot[c]]
        end_slot = new_end
    seen = [False] * L
    cycles = []
    for c in range(L):
        if seen[c]:
            continue
        cyc, any_wrap, x = [], False, c
        while not seen[x]:
            seen[x] = True
            cyc.append(x)
            any_wrap = any_wrap or wrapped[x]
            x = end_slot[x]
        cycles.append((cyc, any_wrap))
    return cycles


@dataclass
class ScriptReport:
    valid: bool
    checks: dict[str, dict]

    def to_json(self) -> dict:
        return {"valid": self.valid, "checks": self.checks}


def script_valid(s: MoveScript) -> ScriptReport:
    n = s.n
    checks: dict[str, dict] = {}
    try:
        tr = trace_script(s)
    except IllegalEvent as exc:
        checks["a_events_legal"] = {"ok": False, "detail": str(exc)}
        for key in ("b_conjugation_count", "c_final_shift", "d_closed_curves", "e_product"):
            checks[key] = {"ok": False, "detail": "not evaluated"}
        return ScriptReport(False, checks)
    checks["a_events_legal"] = {"ok": True}
    k = len(tr.conjugated)
    checks["b_conjugation_count"] = {"ok": k == n - 1, "count": k, "expected": n - 1}
    want = shift_indices(s.start, -1).letters
    checks["c_final_shift"] = {"ok": tr.words[-1] == want,
                               "final": str(BandWord(n, tr.words[-1])), "expected": str(BandWord(n, want))}
    cycles = _curve_cycles(len(s.start.letters), tr.slot_maps, tr.wraps)
    bad = [cyc for cyc, w in cycles if not w]
    checks["d_closed_curves"] = {"ok": not bad, "cycles": [cyc for cyc, _ in cycles], "without_conjugation": bad}
    row = [a.chord for a in tr.conjugated]
    prod = transposition_product(n, row)
    checks["e_product"] = {"ok": prod == descending_cycle(n), "row": [list(t) for t in row], "product": str(prod)}
    return ScriptReport(all(c["ok"] for c in checks.values()), checks)


# ------------------------------------------------------------------ search

@dataclass
class Verdict:
    status: str
    script: MoveScript | None = None
    states: int = 0
    seconds: float = 0.0

    def to_json(self, timing: bool = True) -> dict:
        out = {"status": self.status, "states": self.states,
               "script": self.script.to_json() if self.script else None}
        if timing:
            out["seconds"] = round(self.seconds, 6)
        return out


def _forest_add(taus: tuple[tuple[int, int], ...], new: tuple[int, int]) -> bool:
    """True if adding ``new`` to the edge set ``taus`` keeps it acyclic."""
    parent: dict[int, int] = {}

    def find(x: int) -> int:
        while parent.get(x, x) != x:
            x = parent[x]
        return x

    for a, b in taus:
        parent[find(a)] = find(b)
    return find(new[0]) != find(new[1])


def search_braidable(w: BandWord, max_states: int | None = None) -> Verdict:
    """Breadth-first search for a move script certifying a diagram for ``w``.

    FOUND carries the shortest witness; NOT_FOUND means the finite state
    space was exhausted; EXHAUSTED means ``max_states`` was reached first.
    """
    t0 = time.perf_counter()
    n = w.n
    L = len(w.letters)
    target_word = shift_indices(w, -1).letters
    target_perm = descending_cycle(n)
    start = (w.letters, 0, (), tuple(range(L)), frozenset())
    parent: dict = {start: None}
    queue = deque([start])

    def is_goal(state) -> bool:
        word, k, taus, lin, conj = state
        if k != n - 1 or word != target_word:
            return False
        if transposition_product(n, taus) != target_perm:
            return False
        # slot s at φ=2π is glued to slot s at φ=0, i.e. to curve s
        seen = [False] * L
        for c in range(L):
            if seen[c]:
                continue
            x, ok = c, False
            while not seen[x]:
                seen[x] = True
                ok = ok or x in conj
                x = lin[x]
            if not ok:
                return False
        return True

    found = None
    while queue:
        state = queue.popleft()
        if is_goal(state):
            found = state
            break
        word, k, taus, lin, conj = state
        for e in legal_events(word):
            if isinstance(e, Conj):
                if k >= n - 1:
                    continue
                wrap = 0 if e.dir == FRONT_TO_END else L - 1
                chord = word[wrap].chord
                if not _forest_add(taus, chord):
                    continue
                new_word, smap, _ = _apply(word, e)
                nk, ntaus, nconj = k + 1, taus + (chord,), conj | {lin[wrap]}
            else:
                new_word, smap, _ = _apply(word, e)
                nk, ntaus, nconj = k, taus, conj
            nlin = [0] * L
            for s_old, s_new in enumerate(smap):
                nlin[s_new] = lin[s_old]
            nxt = (new_word, nk, ntaus, tuple(nlin), nconj)
            if nxt in parent:
                continue
            parent[nxt] = (state, e)
            if max_states is not None and len(parent) >= max_states:
                return Verdict("EXHAUSTED", None, len(parent), time.perf_counter() - t0)
            queue.append(nxt)
    if found is None:
        return Verdict("NOT_FOUND", None, len(parent), time.perf_counter() - t0)
    events = []
    cur = found
    while parent[cur] is not None:
        prev, e = parent[cur]
        events.append(e)
        cur = prev
    script = MoveScript(n, w, tuple(reversed(events)))
    return Verdict("FOUND", script, len(parent), time.perf_counter() - t0)


def search_all_conjugates(w: BandWord, max_states: int | None = None) -> tuple[str, list[tuple[BandWord, Verdict]]]:
    results = [(c, search_braidable(c, max_states)) for c in cyclic_conjugates(w)]
    statuses = {v.status for _, v in results}
    if "FOUND" in statuses:
        agg = "FOUND"
    elif "EXHAUSTED" in statuses:
        agg = "EXHAUSTED"
    else:
        agg = "NOT_FOUND"
    return agg, results


# --------------------------------------------------------------- diagrams

@dataclass(frozen=True)
class Segment:
    phi0: float
    t0: float
    phi1: float
    t1: float
    label: BandLetter

    def t_at(self, phi: float) -> float:
        u = (phi - self.phi0) / (self.phi1 - self.phi0)
        return self.t0 + u * (self.t1 - self.t0)

    @property
    def slope(self) -> float:
        return (self.t1 - self.t0) / (self.phi1 - self.phi0)


@dataclass
class Curve:
    sign: int
    segments: list[Segment]


@dataclass
class Diagram:
    n: int
    curves: list[Curve]
    crossings: list[tuple[float, float]] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "curves": [
                {"sign": c.sign, "segments": [
                    {"phi": [s.phi0, s.phi1], "t": [s.t0, s.t1], "label": [s.label.i, s.label.j, s.label.sign]}
                    for s in c.segments]}
                for c in self.curves],
            "crossings": [list(p) for p in self.crossings],
        }


def _heights(L: int, E: int, maps, wraps, signs_per_node) -> np.ndarray:
    """Maximise the common margin m of a height table h[k][s] (k < E)."""
    nv = E * L + 1
    mcol = E * L

    def var(k: int, s: int) -> int:
        return (k % E) * L + s

    rows, rhs = [], []

    def ge(coeffs: dict[int, float], const: float) -> None:
        # sum coeffs*x + const >= m   ->   -sum coeffs*x + m <= const
        row = np.zeros(nv)
        for v, c in coeffs.items():
            row[v] -= c
        row[mcol] += 1.0
        rows.append(row)
        rhs.append(const)

    for k in range(E):
        ge({var(k, L - 1): 1.0}, 0.0)
        ge({var(k, 0): -1.0}, TWO_PI)
        for s in range(L - 1):
            ge({var(k, s): 1.0, var(k, s + 1): -1.0}, 0.0)
        smap, wrap, signs = maps[k], wraps[k], signs_per_node[k]
        for s in range(L):
            sign = signs[s]
            shift = 0.0
            if wrap == s:
                shift = TWO_PI * sign
            coeffs: dict[int, float] = {}
            a, b = var(k + 1, smap[s]), var(k, s)
            coeffs[a] = coeffs.get(a, 0.0) + sign
            coeffs[b] = coeffs.get(b, 0.0) - sign
            ge(coeffs, sign * shift)
    c = np.zeros(nv)
    c[mcol] = -1.0
    bounds = [(0.0, TWO_PI)] * (E * L) + [(None, 1.0)]
    res = linprog(c, A_ub=np.array(rows), b_ub=np.array(rhs), bounds=bounds, method="highs")
    if res.status != 0 or -res.fun <= 1e-9:
        raise RealizabilityError("no strictly monotone height assignment exists")
    return res.x[:-1].reshape(E, L)


def synthesize_diagram(s: MoveScript) -> Diagram:
    """Place events at φ = 2πk/E and solve for letter heights.

    Raises RealizabilityError when the script does not validate or no
    monotone height assignment exists.
    """
    rep = script_valid(s)
    if not rep.valid:
        raise RealizabilityError(f"script is not valid: {rep.checks}")
    n = s.n
    tr = trace_script(s)
    E = len(s.events)
    L = len(s.start.letters)
    if L == 0 or E == 0:
        return Diagram(n, [])
    signs = [[a.sign for a in tr.words[k]] for k in range(E + 1)]
    h = _heights(L, E, tr.slot_maps, tr.wraps, signs)

    def height(k: int, slot: int) -> float:
        return float(h[k % E][slot])

    phis = [TWO_PI * k / E for k in range(E + 1)]
    crossings: list[tuple[float, float]] = []
    # pieces[k][slot] = segments of the pass starting at node k, slot
    pieces: list[list[list[Segment]]] = []
    for k in range(E):
        smap, wrap, e = tr.slot_maps[k], tr.wraps[k], s.events[k]
        before, after = tr.words[k], tr.words[k + 1]
        row: list[list[Segment]] = []
        cross_u = None
        if isinstance(e, Bkl):
            p = e.pos
            a0, a1 = height(k, p), height(k + 1, p + 1)
            b0, b1 = height(k, p + 1), height(k + 1, p)
            cross_u = (a0 - b0) / ((a0 - b0) - (a1 - b1))
            crossings.append((phis[k] + cross_u * (phis[k + 1] - phis[k]), a0 + cross_u * (a1 - a0)))
        for slot in range(L):
            dst = smap[slot]
            y0 = height(k, slot)
            y1 = height(k + 1, dst)
            if wrap == slot:
                y1 += TWO_PI * before[slot].sign
            lab0, lab1 = before[slot], after[dst]
            segs = _split_pass(phis[k], y0, phis[k + 1], y1, lab0, lab1,
                               cross_u if isinstance(e, Bkl) and slot in (e.pos, e.pos + 1) else None)
            row.append(segs)
        pieces.append(row)
    curves: list[Curve] = []
    seen = set()
    for s0 in range(L):
        if (0, s0) in seen:
            continue
        segs: list[Segment] = []
        k, slot = 0, s0
        while (k, slot) not in seen:
            seen.add((k, slot))
            segs.extend(pieces[k][slot])
            slot = tr.slot_maps[k][slot]
            k = (k + 1) % E
        curves.append(Curve(tr.words[0][s0].sign, segs))
    return Diagram(n, curves, crossings)


def _split_pass(p0, y0, p1, y1, lab0, lab1, cross_u) -> list[Segment]:
    """Split the straight pass (p0,y0)->(p1,y1) at the label change and at
    the t-wrap, returning segments with t folded into [0, 2π]."""
    cuts = [0.0, 1.0]
    if cross_u is not None:
        cuts.append(cross_u)
    if y1 > TWO_PI or y1 < 0.0:
        edge = TWO_PI if y1 > TWO_PI else 0.0
        cuts.append((edge - y0) / (y1 - y0))
    cuts = sorted(set(cuts))
    out = []
    for u0, u1 in zip(cuts, cuts[1:]):
        um = 0.5 * (u0 + u1)
        ya, yb = y0 + u0 * (y1 - y0), y0 + u1 * (y1 - y0)
        off = 0.0
        ym = y0 + um * (y1 - y0)
        if ym > TWO_PI:
            off = -TWO_PI
        elif ym < 0.0:
            off = TWO_PI
        label = lab0 if cross_u is None or um < cross_u else lab1
        out.append(Segment(p0 + u0 * (p1 - p0), ya + off, p0 + u1 * (p1 - p0), yb + off, label))
    return out


# ------------------------------------------------------- diagram checking

@dataclass
class DiagramReport:
    normative_ok: bool
    conditions: dict[str, dict]

    def to_json(self) -> dict:
        return {"normative_ok": self.normative_ok, "conditions": self.conditions}


_TOL = 1e-9


def _segment_intersection(a: Segment, b: Segment):
    """Intersection of two segments on the square; returns a point, 'overlap', or None."""
    lo, hi = max(a.phi0, b.phi0), min(a.phi1, b.phi1)
    if hi < lo - _TOL:
        return None
    da0, da1 = a.t_at(lo) - b.t_at(lo), a.t_at(hi) - b.t_at(hi)
    if abs(da0) < _TOL and abs(da1) < _TOL:
        return "overlap" if hi - lo > _TOL else (lo, a.t_at(lo))
    if da0 * da1 > 0 and abs(da0) > _TOL and abs(da1) > _TOL:
        return None
    if abs(da0 - da1) < 1e-15:
        return None
    u = da0 / (da0 - da1)
    phi = lo + u * (hi - lo)
    return (phi, a.t_at(phi))


def _word_at(d: Diagram, phi: float) -> list[BandLetter]:
    pts = []
    for c in d.curves:
        for s in c.segments:
            if s.phi0 < phi < s.phi1:
                pts.append((s.t_at(phi), s.label))
    pts.sort(key=lambda x: -x[0])
    return [lab for _, lab in pts]


def validate_diagram(d: Diagram, samples: int = 97) -> DiagramReport:
    n = d.n
    cond: dict[str, dict] = {}
    segs_all = [(ci, si, s) for ci, c in enumerate(d.curves) for si, s in enumerate(c.segments)]

    # 1) closed curves on the torus
    broken = []
    for ci, c in enumerate(d.curves):
        m = len(c.segments)
        for si in range(m):
            a, b = c.segments[si], c.segments[(si + 1) % m]
            same_phi = abs(a.phi1 - b.phi0) < 1e-9 or (abs(a.phi1 - TWO_PI) < 1e-9 and abs(b.phi0) < 1e-9)
            dt = abs(a.t1 - b.t0)
            same_t = dt < 1e-9 or abs(dt - TWO_PI) < 1e-9
            if not (same_phi and same_t):
                broken.append([ci, si])
    cond["1_closed"] = {"ok": not broken, "gaps": broken}

    # 2) monotone with a single slope sign per curve
    nonmono = []
    for ci, c in enumerate(d.curves):
        for si, s in enumerate(c.segments):
            if not (s.phi1 - s.phi0 > _TOL) or s.slope * c.sign <= _TOL or s.label.sign != c.sign:
                nonmono.append([ci, si])
    cond["2_monotone"] = {"ok": not nonmono, "violations": nonmono}

    # 3) t=0 crossings
    wraps = []
    for ci, c in enumerate(d.curves):
        m = len(c.segments)
        for si in range(m):
            a, b = c.segments[si], c.segments[(si + 1) % m]
            if abs(abs(a.t1 - b.t0) - TWO_PI) < 1e-9:
                wraps.append((a.phi1, a.label))
    cond["3_t0_crossings"] = {"ok": len(wraps) == n - 1, "count": len(wraps), "expected": n - 1}

    # 4) simple transverse intersections
    points: list[tuple[float, float]] = []
    problems = []
    for x in range(len(segs_all)):
        ci, si, a = segs_all[x]
        for y in range(x + 1, len(segs_all)):
            cj, sj, b = segs_all[y]
            if ci == cj and (abs(si - sj) == 1 or {si, sj} == {0, len(d.curves[ci].segments) - 1}):
                continue
            hit = _segment_intersection(a, b)
            if hit is None:
                continue
            if hit == "overlap":
                problems.append({"overlap": [[ci, si], [cj, sj]]})
                continue
            points.append(hit)
    uniq: list[tuple[float, float]] = []
    for p in points:
        if not any(abs(p[0] - q[0]) < 1e-7 and abs(p[1] - q[1]) < 1e-7 for q in uniq):
            uniq.append(p)
    crossing_pts = []
    for p in uniq:
        through = []
        for ci, si, s in segs_all:
            if s.phi0 - 1e-9 <= p[0] <= s.phi1 + 1e-9 and abs(s.t_at(p[0]) - p[1]) < 1e-7:
                through.append((ci, si))
        # segments of one curve meeting end to end count as one strand
        members = set(through)
        count = 0
        slopes = []
        for ci, si in through:
            m = len(d.curves[ci].segments)
            if (ci, (si - 1) % m) in members and m > 1:
                continue
            count += 1
            slopes.append(d.curves[ci].segments[si].slope)
        if count < 2:
            continue
        crossing_pts.append(p)
        if count != 2:
            problems.append({"multiple": list(p), "strands": count})
        elif abs(slopes[0] - slopes[1]) < 1e-9:
            problems.append({"tangent": list(p)})
    cond["4_simple_intersections"] = {"ok": not problems, "count": len(crossing_pts), "problems": problems}

    # 5) labels
    cond["5_labelled"] = {"ok": all(isinstance(s.label, BandLetter) for _, _, s in segs_all)}

    # 6) labels change only at intersections or at φ=2π
    stray = []
    for ci, c in enumerate(d.curves):
        m = len(c.segments)
        for si in range(m):
            a, b = c.segments[si], c.segments[(si + 1) % m]
            if a.label == b.label:
                continue
            at_edge = abs(a.phi1 - TWO_PI) < 1e-9
            at_cross = any(abs(a.phi1 - q[0]) < 1e-7 and abs(a.t1 - q[1]) < 1e-7 for q in crossing_pts)
            if not (at_edge or at_cross):
                stray.append([ci, si])
    cond["6_label_changes"] = {"ok": not stray, "violations": stray}

    # 7) BKL relations across each intersection, reading words top to bottom
    breaks = sorted({round(s.phi0, 12) for _, _, s in segs_all} | {round(q[0], 12) for q in crossing_pts} | {TWO_PI})
    gaps = [b - a for a, b in zip(breaks, breaks[1:]) if b - a > 1e-12]
    eps = min(gaps) / 3 if gaps else 1e-6
    bad7 = []
    for q in crossing_pts:
        w0, w1 = _word_at(d, q[0] - eps), _word_at(d, q[0] + eps)
        diff = [k for k in range(min(len(w0), len(w1))) if w0[k] != w1[k]]
        ok = len(w0) == len(w1)
        if ok and diff:
            p = diff[0]
            ok = len(diff) <= 2 and diff[-1] - p <= 1 and p + 1 < len(w0)
            if ok:
                x, y = w0[p], w0[p + 1]
                ok = any(x2 == w1[p] and y2 == w1[p + 1] for x2, y2, _ in pair_rewrites(x, y)) and \
                    _sign_transition_allowed((x.sign, y.sign), (w1[p].sign, w1[p + 1].sign))
        elif ok:
            # a pure exchange of equal letters never happens for distinct curves
            ok = False
        if not ok:
            bad7.append(list(q))
    cond["7_bkl_relations"] = {"ok": not bad7, "violations": bad7}

    # 8) labels at φ=0 are labels at φ=2π shifted by +1
    bad8 = []
    for ci, c in enumerate(d.curves):
        m = len(c.segments)
        for si in range(m):
            a, b = c.segments[si], c.segments[(si + 1) % m]
            if abs(a.phi1 - TWO_PI) < 1e-9:
                shifted = shift_indices(BandWord(n, (a.label,)), 1).letters[0]
                if shifted != b.label:
                    bad8.append([ci, si])
    cond["8_edge_shift"] = {"ok": not bad8, "violations": bad8}

    # 9') product of the t=0 row, and the literal list as advice
    row = [lab.chord for _, lab in sorted(wraps, key=lambda x: x[0])]
    c9 = condition9(row, n)
    cond["9_prime_product"] = {"ok": c9.product_ok, "row": [list(t) for t in row]}
    cond["9_literal_advisory"] = {"ok": True, "report": c9.to_json(),
                                  "literal_clean": not (c9.repeated or c9.interlaced or c9.ordered_violation)}

    # horizontal and vertical line counts
    rng = np.random.default_rng(12345)
    ts = rng.uniform(0.01, TWO_PI - 0.01, samples)
    hcounts = sorted({sum(1 for _, _, s in segs_all if min(s.t0, s.t1) < t < max(s.t0, s.t1)) for t in ts})
    cond["horizontal_lines"] = {"ok": hcounts == [n - 1] or (n == 1 and hcounts in ([], [0])), "counts": hcounts}
    ps = rng.uniform(0.0, TWO_PI, samples)
    vcounts = sorted({len(_word_at(d, p)) for p in ps})
    cond["vertical_lines"] = {"ok": len(vcounts) <= 1, "counts": vcounts}

    normative = all(v["ok"] for k, v in cond.items())
    return DiagramReport(normative, cond)
