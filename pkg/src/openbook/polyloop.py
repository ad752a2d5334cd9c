"""Loops of monic polynomials and their critical values.

Coefficient vectors are stored lowest degree first and omit the leading 1,
so ``[a0, a1]`` is ``z^2 + a1 z + a0``.  Loops are sampled at
``t_k = 2 pi k / m``.
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.optimize import linear_sum_assignment

from .braid import ArtinWord
from .cactus import Cactus, validate_cactus
from .errors import (ContinuationLoss, ConventionError, DegenerateCriticalValues,
                     ParseError, ProjectionDegenerate, StepFailure)
from .perm import Permutation, descending_cycle, transposition_product

TOL_DISTINCT = 1e-9
TOL_RATE = 1e-6
NEWTON_RESIDUAL = 1e-12
NEWTON_ITERS = 50
COLLISION_RATIO = 4.0


# ------------------------------------------------------------------- loops

@dataclass
class SampledPolyLoop:
    n: int
    coeffs: np.ndarray  # (m, n) complex
    roots: np.ndarray | None = None  # (m, n) complex, matched into strands
    closed: bool = True

    @property
    def m(self) -> int:
        return self.coeffs.shape[0]

    @property
    def times(self) -> np.ndarray:
        return 2 * np.pi * np.arange(self.m) / self.m

    def to_json(self) -> dict:
        out = {"n": self.n, "m": self.m, "coeffs": [[[z.real, z.imag] for z in row] for row in self.coeffs]}
        if self.roots is not None:
            out["roots"] = [[[z.real, z.imag] for z in row] for row in self.roots]
        return out


def complex_rows(data) -> np.ndarray:
    arr = np.asarray(data, dtype=float)
    if arr.ndim != 3 or arr.shape[2] != 2:
        raise ParseError("expected a list of samples, each a list of [re, im] pairs")
    return arr[..., 0] + 1j * arr[..., 1]


def loop_from_json(data: dict | str) -> SampledPolyLoop:
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad loop JSON: {exc}") from exc
    try:
        if "roots" in data:
            loop = coeffs_from_roots(complex_rows(data["roots"]))
        elif "coeffs" in data:
            c = complex_rows(data["coeffs"])
            loop = SampledPolyLoop(c.shape[1], c)
        else:
            raise ParseError("loop JSON needs 'roots' or 'coeffs'")
    except (TypeError, ValueError) as exc:
        raise ParseError(f"bad loop JSON: {exc}") from exc
    if "n" in data and int(data["n"]) != loop.n:
        raise ParseError(f"declared n={data['n']} but samples have degree {loop.n}")
    if "m" in data and int(data["m"]) != loop.m:
        raise ParseError(f"declared m={data['m']} but found {loop.m} samples")
    return loop


def loop_from_function(f: Callable[[float], Sequence[complex]], m: int) -> SampledPolyLoop:
    """Sample ``f(t)`` (coefficients, lowest degree first) at m points."""
    t = 2 * np.pi * np.arange(m) / m
    c = np.array([np.asarray(f(tk), dtype=complex) for tk in t])
    return SampledPolyLoop(c.shape[1], c)


def example_loop(name: str, m: int = 256) -> SampledPolyLoop:
    """Named test loops: ``square`` z^2 - e^{it}, ``cubic`` z^3 - 0.27 z + e^{it},
    ``reversing`` z^2 + e^{i sin t}, ``cube`` z^3 - e^{it}."""
    if name == "square":
        return loop_from_function(lambda t: [-np.exp(1j * t), 0], m)
    if name == "cubic":
        return loop_from_function(lambda t: [np.exp(1j * t), -3 * 0.3 ** 2, 0], m)
    if name == "reversing":
        return loop_from_function(lambda t: [np.exp(1j * np.sin(t)), 0], m)
    if name == "cube":
        return loop_from_function(lambda t: [-np.exp(1j * t), 0, 0], m)
    raise KeyError(name)


def coeffs_from_roots(roots) -> SampledPolyLoop:
    roots = np.atleast_2d(np.asarray(roots, dtype=complex))
    # np.poly multiplies out one linear factor at a time
    c = np.array([np.poly(r)[::-1][:-1] for r in roots], dtype=complex)
    return SampledPolyLoop(roots.shape[1], c, _match_rows(roots))


def poly_eval(coeffs, z):
    coeffs = np.asarray(coeffs, dtype=complex)
    return np.polyval(np.concatenate([[1.0], coeffs[::-1]]), z)


def poly_derivative(coeffs) -> np.ndarray:
    """Descending coefficients of p' (leading term n z^{n-1})."""
    coeffs = np.asarray(coeffs, dtype=complex)
    n = len(coeffs)
    desc = np.concatenate([[1.0], coeffs[::-1]])
    return np.polyder(desc) if n > 0 else np.zeros(1)


def roots_of(coeffs) -> np.ndarray:
    coeffs = np.asarray(coeffs, dtype=complex)
    return np.roots(np.concatenate([[1.0], coeffs[::-1]]))


def center(coeffs) -> np.ndarray:
    """Translate z so that the z^{n-1} coefficient vanishes."""
    coeffs = np.asarray(coeffs, dtype=complex)
    n = len(coeffs)
    if n == 0:
        return coeffs
    p = np.polynomial.Polynomial(np.concatenate([coeffs, [1.0]]))
    q = p(np.polynomial.Polynomial([-coeffs[-1] / n, 1.0]))
    out = np.zeros(n, dtype=complex)
    out[: len(q.coef) - 1] = q.coef[:-1][:n]
    return out


def _gaps(z: np.ndarray) -> np.ndarray:
    d = np.abs(z[:, None] - z[None, :])
    np.fill_diagonal(d, np.inf)
    return d


def _min_gap(z: np.ndarray) -> float:
    return float(_gaps(z).min()) if len(z) > 1 else math.inf


def _assign(prev: np.ndarray, cur: np.ndarray) -> np.ndarray:
    cost = np.abs(prev[:, None] - cur[None, :])
    _, cols = linear_sum_assignment(cost)
    return cur[cols]


def _match_rows(rows: np.ndarray) -> np.ndarray:
    out = np.empty_like(rows)
    out[0] = rows[0]
    for k in range(1, rows.shape[0]):
        out[k] = _assign(out[k - 1], rows[k])
    return out


def loop_roots(loop: SampledPolyLoop) -> np.ndarray:
    if loop.roots is None:
        loop.roots = _match_rows(np.array([roots_of(c) for c in loop.coeffs]))
    return loop.roots


def _closure(first: np.ndarray, last: np.ndarray) -> list[int]:
    """Index in ``first`` reached by each strand of ``last`` after one step."""
    cost = np.abs(last[:, None] - first[None, :])
    _, cols = linear_sum_assignment(cost)
    return [int(c) for c in cols]


# --------------------------------------------------------- critical values

@dataclass
class CriticalData:
    times: np.ndarray
    points: np.ndarray  # (m, n-1)
    values: np.ndarray  # (m, n-1)
    closure: list[int]

    @property
    def m(self) -> int:
        return self.points.shape[0]

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "closure": self.closure,
            "values": [[[z.real, z.imag] for z in row] for row in self.values],
        }


def critical_data(loop: SampledPolyLoop, tol: float = TOL_DISTINCT) -> CriticalData:
    n = loop.n
    if n < 2:
        raise DegenerateCriticalValues("a degree-1 polynomial has no critical points")
    rows = []
    for c in loop.coeffs:
        cp = np.roots(poly_derivative(c))
        rows.append(cp)
    pts = np.array(rows, dtype=complex)
    pts = _match_rows(pts)
    vals = np.array([poly_eval(c, p) for c, p in zip(loop.coeffs, pts)])
    scale = max(1.0, float(np.max(np.abs(loop.coeffs))))
    for k in range(loop.m):
        if np.min(np.abs(vals[k])) < tol * scale:
            raise DegenerateCriticalValues(f"critical value at the origin near t={loop.times[k]:.6g}")
        if n > 2:
            dv = _gaps(vals[k])
            dc = _gaps(pts[k])
            if dv.min() < tol * scale or dc.min() < math.sqrt(tol):
                raise DegenerateCriticalValues(f"coincident critical data near t={loop.times[k]:.6g}")
    if loop.m > 1:
        steps = np.abs(np.diff(pts, axis=0))
        if n > 2:
            sep = min(_min_gap(row) for row in pts)
            if steps.max() >= 0.5 * sep:
                raise DegenerateCriticalValues("sampling too coarse to match critical points")
    closure = _closure(pts[0], pts[-1]) if loop.closed else list(range(n - 1))
    return CriticalData(loop.times, pts, vals, closure)


@dataclass
class PfibCertificate:
    passed: bool
    m: int
    tol_rate: float
    min_rate: list[float]
    max_rate: list[float]
    signs: list[int]
    failing_intervals: list[tuple[float, float]] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "pass": self.passed,
            "m": self.m,
            "resolution": f"at sampling resolution m={self.m}",
            "tol_rate": self.tol_rate,
            "min_abs_rate": self.min_rate,
            "max_abs_rate": self.max_rate,
            "signs": self.signs,
            "failing_intervals": [list(iv) for iv in self.failing_intervals],
        }


def argument_rates(cd: CriticalData) -> np.ndarray:
    """(m, n-1) finite-difference rates of arg v_j, the last row wrapping
    to sample 0 through the closure matching."""
    v = cd.values
    m = cd.m
    h = 2 * np.pi / m
    nxt = np.vstack([v[1:], v[0][cd.closure][None, :]])
    dphi = np.angle(nxt / v)
    return dphi / h


def _merge(ivs: list[tuple[float, float]]) -> list[tuple[float, float]]:
    out: list[list[float]] = []
    for a, b in sorted(ivs):
        if out and a <= out[-1][1] + 1e-12:
            out[-1][1] = max(out[-1][1], b)
        else:
            out.append([a, b])
    return [(a, b) for a, b in out]


def pfib_check(cd: CriticalData, tol_rate: float = TOL_RATE) -> PfibCertificate:
    rates = argument_rates(cd)
    m = cd.m
    h = 2 * np.pi / m
    passed = True
    mins, maxs, signs, ivs = [], [], [], []
    for j in range(rates.shape[1]):
        r = rates[:, j]
        mins.append(float(np.min(np.abs(r))))
        maxs.append(float(np.max(np.abs(r))))
        pos, neg = int(np.sum(r > tol_rate)), int(np.sum(r < -tol_rate))
        signs.append(1 if pos >= neg else -1)
        if (pos and neg) or mins[-1] <= tol_rate:
            passed = False
        s = np.sign(np.where(np.abs(r) <= tol_rate, 0.0, r))
        for k in range(m):
            if s[k] == 0:
                ivs.append((k * h, (k + 1) * h))
            elif s[k] != s[k - 1] and s[k - 1] != 0:
                # rate k-1 belongs to the midpoint of step k-1, rate k to that of step k
                a, b = (k - 0.5) * h, (k + 0.5) * h
                if a < 0:
                    a, b = a + 2 * np.pi, b + 2 * np.pi
                ivs.append((a, b))
    return PfibCertificate(passed, m, tol_rate, mins, maxs, signs, _merge(ivs))


# ----------------------------------------------------------- braid words

def extract_braid_word(loop: SampledPolyLoop, theta: float = 0.0, max_tries: int = 8) -> ArtinWord:
    """Artin word read off from the crossings of the real parts of the
    roots (after rotating by ``-theta``).  A crossing is positive when the
    strand coming from the right passes with the larger imaginary part."""
    roots = loop_roots(loop)
    n, m = loop.n, loop.m
    wrap = _closure(roots[0], roots[-1])
    for attempt in range(max_tries):
        th = theta + attempt * 0.1234567
        try:
            return ArtinWord(n, tuple(_read_word(roots, wrap, th)))
        except _Degenerate:
            continue
    raise ProjectionDegenerate(f"no generic projection found after {max_tries} directions")


class _Degenerate(Exception):
    pass


def _read_word(roots: np.ndarray, wrap: list[int], theta: float) -> list[int]:
    m, n = roots.shape
    rot = np.exp(-1j * theta)
    z = roots * rot
    x0 = z[0].real
    if _min_gap(x0) < 1e-12:
        raise _Degenerate
    order = list(np.argsort(x0))  # strand indices left to right
    word: list[int] = []
    for k in range(m):
        a = z[k]
        b = z[k + 1] if k + 1 < m else z[0][wrap]
        da = a.real[:, None] - a.real[None, :]
        db = b.real[:, None] - b.real[None, :]
        events = []
        for i in range(n):
            for j in range(i + 1, n):
                if abs(db[i, j]) < 1e-12:
                    raise _Degenerate
                if da[i, j] * db[i, j] < 0:
                    s = da[i, j] / (da[i, j] - db[i, j])
                    events.append((s, i, j))
        events.sort()
        for e1, e2 in zip(events, events[1:]):
            if e2[0] - e1[0] < 1e-12:
                raise _Degenerate
        for s, i, j in events:
            pi, pj = order.index(i), order.index(j)
            if abs(pi - pj) != 1:
                raise _Degenerate
            left, right = (i, j) if pi < pj else (j, i)
            yl = a[left].imag + s * (b[left].imag - a[left].imag)
            yr = a[right].imag + s * (b[right].imag - a[right].imag)
            if abs(yl - yr) < 1e-12:
                raise _Degenerate
            p = min(pi, pj)
            word.append((p + 1) if yr > yl else -(p + 1))
            order[pi], order[pj] = order[pj], order[pi]
    return word


def root_permutation(loop: SampledPolyLoop, theta: float = 0.0) -> Permutation:
    """Permutation of positions (left to right by rotated real part) induced by
    following the matched roots once around the loop."""
    roots = loop_roots(loop)
    wrap = _closure(roots[0], roots[-1])
    x = (roots[0] * np.exp(-1j * theta)).real
    pos = {int(s): p + 1 for p, s in enumerate(np.argsort(x))}
    # strand s ends at the sample-0 root wrap[s]
    return Permutation(tuple(pos[wrap[s]] for s in sorted(pos, key=pos.get)))


# -------------------------------------------------------------- monodromy

def _track(coeffs: np.ndarray, z: np.ndarray, w0: complex, w1: complex) -> np.ndarray:
    """Follow the roots of p(z) = w as w moves straight from w0 to w1."""
    dp = poly_derivative(coeffs)
    desc = np.concatenate([[1.0], coeffs[::-1]])
    s, ds = 0.0, 1.0
    while s < 1.0:
        ds = min(ds, 1.0 - s)
        if ds < 1e-14:
            raise ContinuationLoss(f"step underflow tracking from {w0} to {w1}")
        w = w0 + (s + ds) * (w1 - w0)
        znew = z + (w1 - w0) * ds / np.polyval(dp, z)
        ok = False
        for _ in range(NEWTON_ITERS):
            f = np.polyval(desc, znew) - w
            scale = 1.0 + abs(w) + np.abs(np.polyval(np.abs(desc), np.abs(znew)))
            if np.max(np.abs(f) / scale) < NEWTON_RESIDUAL:
                ok = True
                break
            znew = znew - f / np.polyval(dp, znew)
        if ok and len(z) > 1:
            move = np.max(np.abs(znew - z))
            sep = _min_gap(znew)
            ok = move == 0 or sep / move >= COLLISION_RATIO
        if ok and np.all(np.isfinite(znew)):
            z = znew
            s += ds
            ds *= 2.0
        else:
            ds *= 0.5
    return z


def fiber_order(z: np.ndarray) -> np.ndarray:
    """Indices sorting a fiber by argument in [0, 2 pi), ties by modulus."""
    ang = np.mod(np.angle(z), 2 * np.pi)
    return np.lexsort((np.abs(z), np.round(ang, 12)))


def monodromy(coeffs, path: Sequence[complex]) -> Permutation:
    """Permutation of the fiber over ``path[0]`` (labelled by argument)
    obtained by continuing the roots of p(z) = w along the closed polyline."""
    coeffs = np.asarray(coeffs, dtype=complex)
    path = list(path)
    if abs(path[-1] - path[0]) > 1e-12:
        path.append(path[0])
    shifted = coeffs.copy()
    shifted[0] -= path[0]
    z0 = roots_of(shifted)
    z0 = z0[fiber_order(z0)]
    z = z0.copy()
    for a, b in zip(path, path[1:]):
        if a != b:
            z = _track(coeffs, z, a, b)
    cost = np.abs(z[:, None] - z0[None, :])
    _, cols = linear_sum_assignment(cost)
    return Permutation(tuple(int(c) + 1 for c in cols))


def _arc(r: float, a0: float, a1: float, step: float = 0.05) -> list[complex]:
    k = max(2, int(math.ceil(abs(a1 - a0) / step)) + 1)
    return [r * np.exp(1j * a) for a in np.linspace(a0, a1, k)]


def critical_values(coeffs) -> tuple[np.ndarray, np.ndarray]:
    coeffs = np.asarray(coeffs, dtype=complex)
    c = np.roots(poly_derivative(coeffs))
    return c, poly_eval(coeffs, c)


def petal_paths(coeffs) -> tuple[list[list[complex]], np.ndarray]:
    """Closed petal loops, one per critical value, in increasing argument
    order, all based at ``R e^{-i delta}``.

    Values sharing an argument are taken farthest first, and the approach
    to each nearer one is fanned slightly counterclockwise so it clears
    the farther ones.
    """
    coeffs = np.asarray(coeffs, dtype=complex)
    n = len(coeffs)
    c, v = critical_values(coeffs)
    scale = max(1.0, float(np.max(np.abs(coeffs)))) if n else 1.0
    if len(v) != n - 1:
        raise DegenerateCriticalValues("wrong number of critical points")
    if np.min(np.abs(v)) < TOL_DISTINCT * scale:
        raise DegenerateCriticalValues("a critical value sits at the origin")
    if _min_gap(v) < TOL_DISTINCT * scale:
        raise DegenerateCriticalValues("critical values coincide")
    ang = np.mod(np.angle(v), 2 * np.pi)
    ang = np.where(ang > 2 * np.pi - 1e-9, 0.0, ang)
    ties = np.round(ang, 9)
    order = np.lexsort((-np.abs(v), ties))
    v, ang, ties = v[order], ang[order], ties[order]
    distinct = np.unique(ties)
    spread = np.diff(np.concatenate([distinct, [distinct[0] + 2 * np.pi]]))
    eta = min(1e-3, float(spread.min()) / (4 * n))
    beta = ang.copy()
    for j in range(1, len(v)):
        if ties[j] == ties[j - 1]:
            beta[j] = beta[j - 1] + eta
    R = 2.5 * float(np.max(np.abs(v))) + 1.0
    delta = 0.5 * min(1e-2, 2 * np.pi - float(beta.max()))
    w0 = R * np.exp(-1j * delta)
    paths = []
    for j, (vj, bj) in enumerate(zip(v, beta)):
        others = [abs(vj - vk) for k, vk in enumerate(v) if k != j]
        eps = 0.4 * min(others + [abs(vj)])
        out = _arc(R, -delta, bj)
        u = out[-1] - vj
        a0 = float(np.angle(u))
        near = vj + eps * np.exp(1j * a0)
        loop = [vj + eps * np.exp(1j * a) for a in np.linspace(a0, a0 + 2 * np.pi, 64)]
        path = [w0] + out[1:] + [near] + loop[1:] + [out[-1]] + out[::-1][1:]
        paths.append(path)
    return paths, v


def _reverse_labels(p: Permutation) -> Permutation:
    n = len(p.images)
    return Permutation(tuple(n + 1 - p.images[n - k] for k in range(1, n + 1)))


_CALIBRATED: dict[str, bool] = {}


def _raw_cactus(coeffs) -> tuple[list[Permutation], np.ndarray]:
    paths, v = petal_paths(coeffs)
    return [monodromy(coeffs, path) for path in paths], v


def calibrate() -> bool:
    """Decide once whether fiber labels must be reversed so that petal
    products come out as (1 n ... 2).  Returns the chosen flag."""
    if "reverse" not in _CALIBRATED:
        ref = np.array([0.5 + 0.2j, -3 * 0.3 ** 2, 0.1j])
        perms, _ = _raw_cactus(ref)
        n = len(ref)
        prod = Permutation.identity(n)
        for p in perms:
            prod = prod.then(p)
        if prod == descending_cycle(n):
            _CALIBRATED["reverse"] = False
        elif prod == descending_cycle(n).inverse():
            _CALIBRATED["reverse"] = True
        else:
            raise ConventionError(f"reference petal product {prod} is not an n-cycle of either orientation")
    return _CALIBRATED["reverse"]


def cactus_of_polynomial(coeffs) -> Cactus:
    coeffs = np.asarray(coeffs, dtype=complex)
    n = len(coeffs)
    if n < 2:
        raise DegenerateCriticalValues("need degree at least 2")
    reverse = calibrate()
    perms, _ = _raw_cactus(coeffs)
    taus = []
    for p in perms:
        if reverse:
            p = _reverse_labels(p)
        cyc = [c for c in p.cycles() if len(c) > 1]
        if len(cyc) != 1 or len(cyc[0]) != 2:
            raise ConventionError(f"petal monodromy {p} is not a transposition")
        taus.append(tuple(sorted(cyc[0])))
    c = Cactus(n, tuple(taus))
    if not validate_cactus(c):
        raise ConventionError(f"petal product {c.product()} is not (1 n ... 2)")
    return c


# ------------------------------------------------------------------ lifting

def _cv_jacobian(c: np.ndarray) -> np.ndarray:
    # d v_j / d a_k = c_j^k for k = 1..n-1 since p'(c_j) = 0
    k = np.arange(1, len(c) + 1)
    return c[:, None] ** k[None, :]


def _crit(coeffs: np.ndarray, prev_c: np.ndarray) -> np.ndarray:
    c = np.roots(poly_derivative(coeffs))
    return _assign(prev_c, c)


def _newton_cv(coeffs, c, target):
    a = coeffs.copy()
    for _ in range(NEWTON_ITERS):
        v = poly_eval(a, c)
        r = v - target
        scale = 1.0 + np.max(np.abs(target))
        if np.max(np.abs(r)) < NEWTON_RESIDUAL * scale:
            return a, c, True
        J = _cv_jacobian(c)
        try:
            da = np.linalg.solve(J, r)
        except np.linalg.LinAlgError:
            return a, c, False
        a = a.copy()
        a[1:] -= da
        if not np.all(np.isfinite(a)):
            return a, c, False
        c = _crit(a, c)
    return a, c, False


def lift_path(coeffs, cv_path: np.ndarray, c0: np.ndarray | None = None, min_step: float = 2.0 ** -30):
    """Continue ``coeffs`` so its critical values follow ``cv_path``
    (shape (K, n-1), strand j matched to critical point j).  Returns the
    coefficients at each path sample and the final critical points."""
    a = np.asarray(coeffs, dtype=complex).copy()
    c = np.roots(poly_derivative(a)) if c0 is None else np.asarray(c0, dtype=complex)
    cv_path = np.asarray(cv_path, dtype=complex)
    # reorder so c[j] carries the value of strand j
    perm = linear_sum_assignment(np.abs(poly_eval(a, c)[None, :] - cv_path[0][:, None]))[1]
    c = c[perm]
    if np.max(np.abs(poly_eval(a, c) - cv_path[0])) > 1e-6 * (1 + np.max(np.abs(cv_path[0]))):
        raise StepFailure("start polynomial does not have the prescribed critical values")
    out = [a.copy()]
    for k in range(1, len(cv_path)):
        v0, v1 = cv_path[k - 1], cv_path[k]
        s, ds = 0.0, 1.0
        while s < 1.0 - 1e-15:
            ds = min(ds, 1.0 - s)
            if ds < min_step:
                raise StepFailure(f"Newton failed at minimal step near sample {k}")
            target = v0 + (s + ds) * (v1 - v0)
            J = _cv_jacobian(c)
            try:
                da = np.linalg.solve(J, (v1 - v0) * ds)
            except np.linalg.LinAlgError:
                ds *= 0.5
                continue
            pred = a.copy()
            pred[1:] += da
            cpred = _crit(pred, c)
            anew, cnew, ok = _newton_cv(pred, cpred, target)
            if ok and len(c) > 1:
                sep = _min_gap(cnew)
                ok = np.max(np.abs(cnew - c)) * COLLISION_RATIO <= sep
            if ok:
                a, c = anew, cnew
                s += ds
                ds *= 2.0
            else:
                ds *= 0.5
        out.append(a.copy())
    return np.array(out), c


def lift_cv_loop(p0, cv_loop: np.ndarray) -> tuple[SampledPolyLoop, np.ndarray]:
    """Lift a sampled loop of critical values (m, n-1) starting at ``p0``.

    ``p0[0]`` is the fixed constant term.  Returns the sampled coefficient
    loop and the coefficients reached after the full turn, which have the
    starting critical values but may differ from ``p0``.
    """
    cv_loop = np.asarray(cv_loop, dtype=complex)
    if cv_loop.ndim == 1:
        cv_loop = cv_loop[:, None]
    closed = np.vstack([cv_loop, cv_loop[:1]])
    coeffs, _ = lift_path(p0, closed)
    loop = SampledPolyLoop(len(p0), coeffs[:-1])
    return loop, coeffs[-1]


def fiber_probe(n: int, target: Sequence[complex] | None = None, starts: int = 40,
                seed: int = 0, dedupe: float = 1e-6) -> list[np.ndarray]:
    """Polynomials with constant term 0 whose critical values are ``target``,
    found by lifting random detour paths from random starting polynomials."""
    rng = np.random.default_rng(seed)
    if target is None:
        target = rng.normal(size=n - 1) + 1j * rng.normal(size=n - 1)
    target = np.asarray(target, dtype=complex)
    found: list[np.ndarray] = []
    K = 200
    s = np.linspace(0, 1, K)[:, None]
    for _ in range(starts):
        a = np.zeros(n, dtype=complex)
        a[1:] = rng.normal(size=n - 1) + 1j * rng.normal(size=n - 1)
        c, v = critical_values(a)
        # pair start values with target values in a random order
        tgt = target[rng.permutation(n - 1)]
        gamma = rng.normal(size=n - 1) + 1j * rng.normal(size=n - 1)
        path = (1 - s) * v[None, :] + s * tgt[None, :] + s * (1 - s) * gamma[None, :]
        try:
            coeffs, _ = lift_path(a, path, c)
        except StepFailure:
            continue
        end = coeffs[-1]
        if not any(np.max(np.abs(end - f)) < dedupe for f in found):
            found.append(end)
    return found


# ------------------------------------------------------- Euler characteristic

def riemann_hurwitz(n: int, b: int) -> tuple[int, bool]:
    if n < 1 or b < 0:
        raise ValueError("need n >= 1 and b >= 0")
    if b < n - 1:
        warnings.warn(f"a branch link with {b} strands cannot give a connected {n}-fold disk cover",
                      stacklevel=2)
    return n - b, b == n - 1
