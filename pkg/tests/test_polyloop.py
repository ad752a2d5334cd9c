import json
import math

import numpy as np
import pytest

from openbook.cactus import transposition_graph, validate_cactus
from openbook.errors import DegenerateCriticalValues, ParseError
from openbook.perm import Permutation, descending_cycle
from openbook.polyloop import (cactus_of_polynomial, calibrate, center, coeffs_from_roots,
                               critical_data, critical_values, example_loop, extract_braid_word,
                               fiber_probe, lift_cv_loop, loop_from_function, loop_from_json, monodromy,
                               petal_paths, pfib_check, poly_eval, riemann_hurwitz, root_permutation)

from oracles import cubic_fiber_count

T = 2 * np.pi * np.arange(256) / 256


def circle(center_, radius, k=200):
    return [center_ + radius * np.exp(1j * a) for a in np.linspace(0, 2 * np.pi, k)]


# ------------------------------------------------------------ coefficients

def test_difference_of_squares():
    roots = np.stack([np.exp(1j * T / 2), -np.exp(1j * T / 2)], axis=1)
    loop = coeffs_from_roots(roots)
    assert np.allclose(loop.coeffs[:, 0], -np.exp(1j * T), atol=1e-14)
    assert np.allclose(loop.coeffs[:, 1], 0, atol=1e-14)


def test_repeated_root_gives_binomial_coefficients():
    c = 0.3 - 0.2j
    loop = coeffs_from_roots(np.full((1, 4), c))
    want = [math.comb(4, k) * (-c) ** (4 - k) for k in range(4)]
    assert np.allclose(loop.coeffs[0], want, atol=1e-14)


def test_roots_roundtrip_through_root_finder():
    rng = np.random.default_rng(0)
    for _ in range(50):
        n = rng.integers(2, 7)
        r = rng.normal(size=n) + 1j * rng.normal(size=n)
        loop = coeffs_from_roots(r[None, :])
        back = np.roots(np.concatenate([[1], loop.coeffs[0][::-1]]))
        err = max(np.min(np.abs(back - z)) / max(1, abs(z)) for z in r)
        assert err < 1e-10


def test_center_removes_subleading_term():
    c = center(np.array([0, 2], dtype=complex))
    assert np.allclose(c, [-1, 0])
    p = np.array([1 + 1j, 0.5, -3], dtype=complex)
    q = center(p)
    assert abs(q[-1]) < 1e-14
    # translation keeps the critical values
    assert np.allclose(sorted(critical_values(p)[1], key=np.angle), sorted(critical_values(q)[1], key=np.angle))


def test_loop_json_roundtrip():
    loop = example_loop("cubic", 16)
    back = loop_from_json(json.dumps(loop.to_json()))
    assert np.allclose(back.coeffs, loop.coeffs)
    roots = {"n": 2, "m": 2, "roots": [[[1, 0], [-1, 0]], [[0, 1], [0, -1]]]}
    assert np.allclose(loop_from_json(roots).coeffs[:, 0], [-1, 1])


@pytest.mark.parametrize("bad", ["{", '{"n": 2}', '{"coeffs": [[1, 2]]}', '{"n": 3, "coeffs": [[[1, 0], [0, 0]]]}'])
def test_loop_json_errors(bad):
    with pytest.raises(ParseError):
        loop_from_json(bad)


# ----------------------------------------------------------- critical data

def test_square_critical_data():
    cd = critical_data(example_loop("square"))
    assert np.allclose(cd.points, 0, atol=1e-14)
    assert np.allclose(cd.values[:, 0], -np.exp(1j * T), atol=1e-14)


def test_cubic_critical_data():
    cd = critical_data(example_loop("cubic"))
    c0 = cd.points[0]
    order = np.argsort(c0.real)
    assert np.allclose(cd.points[:, order[0]], -0.3) and np.allclose(cd.points[:, order[1]], 0.3)
    assert np.allclose(cd.values[:, order[1]], np.exp(1j * T) - 2 * 0.3 ** 3)
    assert np.allclose(cd.values[:, order[0]], np.exp(1j * T) + 2 * 0.3 ** 3)


def test_double_critical_point_is_degenerate():
    with pytest.raises(DegenerateCriticalValues):
        critical_data(example_loop("cube"))


def test_critical_value_at_origin_is_degenerate():
    with pytest.raises(DegenerateCriticalValues):
        critical_data(loop_from_function(lambda t: [0, 0], 8))


# -------------------------------------------------------------- certificate

def test_square_loop_is_certified():
    cert = pfib_check(critical_data(example_loop("square")))
    assert cert.passed
    assert abs(cert.min_rate[0] - 1) < 1e-6 and abs(cert.max_rate[0] - 1) < 1e-6


def test_cubic_loop_is_certified():
    cert = pfib_check(critical_data(example_loop("cubic")))
    assert cert.passed and cert.signs == [1, 1]
    assert all(0.9 < r for r in cert.min_rate) and all(r < 1.1 for r in cert.max_rate)


def test_reversing_loop_fails_at_turning_points():
    cert = pfib_check(critical_data(example_loop("reversing")))
    h = 2 * np.pi / 256
    assert not cert.passed
    for t in (np.pi / 2, 3 * np.pi / 2):
        assert any(a - h <= t <= b + h for a, b in cert.failing_intervals)


@pytest.mark.parametrize("name", ["square", "cubic"])
def test_certificate_is_stable_under_refinement(name):
    a = pfib_check(critical_data(example_loop(name, 128)))
    b = pfib_check(critical_data(example_loop(name, 256)))
    assert a.passed and b.passed and a.signs == b.signs
    for x, y in zip(a.min_rate, b.min_rate):
        assert abs(x - y) / y < 0.05


def test_rate_tolerance_is_respected():
    slow = loop_from_function(lambda t: [np.exp(1e-8j * np.sin(t)), 0], 64)
    assert not pfib_check(critical_data(slow)).passed


# ------------------------------------------------------------ braid reading

def test_square_roots_read_sigma1():
    w = extract_braid_word(example_loop("square"))
    assert w.letters == (1,)


def test_constant_roots_read_empty_word():
    loop = coeffs_from_roots(np.tile([1 + 1j, -0.5, 2j], (32, 1)))
    assert extract_braid_word(loop).letters == ()


def test_cubic_roots_close_to_a_knot():
    w = extract_braid_word(example_loop("cubic"))
    assert len(w.permutation().cycles()) == 1


def test_word_permutation_matches_root_matching():
    rng = np.random.default_rng(4)
    for _ in range(20):
        n = int(rng.integers(2, 5))
        base = rng.normal(size=n) + 1j * rng.normal(size=n)
        k = int(rng.integers(1, 3))
        rad = 0.2 + rng.random()
        # roots of (z - b)^n = rad^n e^{ikt}, pushed apart by the distinct centres
        def roots(t):
            return np.array([base[j] * 0.2 + rad * np.exp(1j * (k * t + 2 * np.pi * j) / n) for j in range(n)])
        loop = coeffs_from_roots(np.array([roots(t) for t in 2 * np.pi * np.arange(400) / 400]))
        w = extract_braid_word(loop)
        assert w.permutation() == root_permutation(loop)


# ----------------------------------------------------------------- monodromy

def test_square_root_monodromy():
    assert monodromy([0, 0], circle(0, 1)) == Permutation((2, 1))


def test_small_loop_around_simple_critical_value_is_a_transposition():
    p = np.array([0, -3 * 0.3 ** 2, 0], dtype=complex)
    perm = monodromy(p, circle(-2 * 0.3 ** 3, 0.01))
    moved = [c for c in perm.cycles() if len(c) > 1]
    assert len(moved) == 1 and len(moved[0]) == 2


def test_contractible_loop_is_trivial():
    p = np.array([0.5, -0.27, 0], dtype=complex)
    assert monodromy(p, circle(3 + 3j, 0.5)).is_identity()


def test_boundary_loop_against_petals():
    rng = np.random.default_rng(8)
    for _ in range(10):
        n = int(rng.integers(2, 6))
        a = rng.normal(size=n) + 1j * rng.normal(size=n)
        paths, _ = petal_paths(a)
        prod = Permutation.identity(n)
        for path in paths:
            prod = prod.then(monodromy(a, path))
        w0 = paths[0][0]
        big = [abs(w0) * np.exp(1j * x) for x in np.linspace(np.angle(w0), np.angle(w0) + 2 * np.pi, 400)]
        assert prod == descending_cycle(n)
        assert monodromy(a, big) == descending_cycle(n).inverse()


def test_calibration_needs_no_flip():
    assert calibrate() is False


def test_cacti_of_fixed_polynomials():
    assert cactus_of_polynomial([-1, 0]).taus == ((1, 2),)
    c = cactus_of_polynomial([0.5, -0.27, 0])
    assert c.n == 3 and validate_cactus(c)


def test_cactus_of_random_polynomials():
    rng = np.random.default_rng(21)
    for _ in range(40):
        n = int(rng.integers(2, 6))
        c = cactus_of_polynomial(rng.normal(size=n) + 1j * rng.normal(size=n))
        assert validate_cactus(c) and transposition_graph(c)[1]


def test_degenerate_polynomial_has_no_cactus():
    with pytest.raises(DegenerateCriticalValues):
        cactus_of_polynomial([1, 0, 0])


# ------------------------------------------------------------------- lifting

def test_lift_of_unit_circle_critical_value():
    loop, end = lift_cv_loop(np.array([0, 2], dtype=complex), -np.exp(1j * T))
    centred = np.array([center(c) for c in loop.coeffs])
    assert np.max(np.abs(centred[:, 0] + np.exp(1j * T))) < 1e-8
    assert np.max(np.abs(centred[:, 1])) < 1e-8
    assert np.allclose(end, [0, -2])
    cd = critical_data(loop)
    assert np.max(np.abs(cd.values[:, 0] + np.exp(1j * T))) < 1e-8


def test_constant_critical_values_lift_to_constant_loop():
    p0 = np.array([0, 0.3, 0.1j])
    v = critical_values(p0)[1]
    loop, end = lift_cv_loop(p0, np.tile(v, (16, 1)))
    assert np.max(np.abs(loop.coeffs - p0)) < 1e-12 and np.allclose(end, p0)


def test_lift_reproduces_two_strands():
    p0 = np.array([0, 0.3 + 0.2j, -0.4j])
    _, v = critical_values(p0)
    cv = np.array([v * np.exp(1j * t) for t in T])
    loop, end = lift_cv_loop(p0, cv)
    cd = critical_data(loop)
    dev = max(np.max(np.min(np.abs(cd.values[k][:, None] - cv[k][None, :]), axis=0)) for k in range(len(T)))
    assert dev < 1e-8
    assert np.allclose(sorted(poly_eval(end, critical_values(end)[0]), key=np.angle), sorted(v, key=np.angle))


@pytest.mark.parametrize("n,count", [(2, 2), (3, 9)])
def test_fiber_counts(n, count):
    rng = np.random.default_rng(17)
    target = rng.normal(size=n - 1) + 1j * rng.normal(size=n - 1)
    found = fiber_probe(n, target, starts=60, seed=3)
    assert len(found) == count
    for f in found:
        _, v = critical_values(f)
        assert abs(f[0]) < 1e-12
        assert np.allclose(sorted(v, key=np.angle), sorted(target, key=np.angle), atol=1e-8)


def test_cubic_fiber_oracle():
    assert cubic_fiber_count(0.5 + 0.25j, -0.75 + 0.5j) == 9


def test_riemann_hurwitz():
    assert riemann_hurwitz(3, 2) == (1, True)
    assert riemann_hurwitz(4, 3) == (1, True)
    assert riemann_hurwitz(3, 4) == (-1, False)
    with pytest.warns(UserWarning):
        riemann_hurwitz(3, 1)
