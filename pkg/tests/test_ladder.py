import dataclasses
import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from openbook.braid import BandLetter, BandWord, concat, parse_band_word, word_invariants
from openbook.errors import DisconnectedSurface
from openbook.ladder import (HSeg, LadderDiagram, PassCertificate, VSeg, braid3_decide, find_passes,
                             ladder_from_word, sufficient_condition, verify_certificate)

PASSES_WORD = "n=4; 3:4 -1:3 -2:3 2:4 3:4"


def bw(text):
    return parse_band_word(text)


def letters(n):
    return [BandLetter(i, j, s) for i in range(1, n + 1) for j in range(i + 1, n + 1) for s in (1, -1)]


def passes(w):
    d = ladder_from_word(w)
    cert = find_passes(d)
    if cert is not None:
        assert all(verify_certificate(d, cert).values())
    return cert


def test_ladder_from_four_strand_word():
    d = ladder_from_word(bw(PASSES_WORD))
    assert d.n == 4 and len(d.rungs) == 5
    assert [r.sign for r in d.rungs] == [1, -1, -1, 1, 1]
    assert [(r.left, r.right) for r in d.rungs] == [(3, 4), (1, 3), (2, 3), (2, 4), (3, 4)]


def test_trivial_ladders():
    assert ladder_from_word(BandWord(3)).rungs == ()
    assert len(ladder_from_word(bw("n=2; 1:2")).rungs) == 1


def test_four_strand_word_has_passes():
    d = ladder_from_word(bw(PASSES_WORD))
    cert = find_passes(d)
    assert cert is not None
    checks = verify_certificate(d, cert)
    assert all(checks.values()), checks
    # the underpass has to use the part of a13 between lines 1 and 2
    last = [s for s in cert.underpass.segments if isinstance(s, HSeg)][-1]
    assert (last.rung, last.start, last.end) == (1, 2, 1)


def test_single_band_has_passes():
    cert = passes(bw("n=2; 1:2"))
    assert cert is not None
    assert cert.overpass.start[0] == 1 and cert.overpass.end[0] == 2


def test_empty_ladder_on_two_lines_has_no_underpass():
    assert find_passes(LadderDiagram(2)) is None


def test_interlaced_ladder_regression():
    # recorded from the exhaustive search, not a published value
    assert find_passes(ladder_from_word(bw("n=4; 1:3 2:3 2:4"))) is None


def test_certificates_are_reproducible():
    d = ladder_from_word(bw(PASSES_WORD))
    assert find_passes(d).to_json() == find_passes(d).to_json()


def test_verifier_rejects_tampered_certificates():
    d = ladder_from_word(bw(PASSES_WORD))
    cert = find_passes(d)
    # flip the orientation bookkeeping of one overpass vertical piece
    segs = list(cert.overpass.segments)
    k = next(i for i, s in enumerate(segs) if isinstance(s, VSeg))
    segs[k] = VSeg(segs[k].line, segs[k].end, segs[k].start)
    bad = PassCertificate(dataclasses.replace(cert.overpass, segments=segs), cert.underpass)
    assert not all(verify_certificate(d, bad).values())
    # drop an underpass piece
    under = dataclasses.replace(cert.underpass, segments=cert.underpass.segments[:-1])
    assert not all(verify_certificate(d, PassCertificate(cert.overpass, under)).values())


def test_overpass_may_not_cross_rungs():
    # on n=3 with rungs a13 then a12 then a13: a vertical through a spanning rung is blocked
    d = ladder_from_word(bw("n=3; 1:3 1:2 1:3"))
    cert = find_passes(d)
    if cert is not None:
        for s in cert.overpass.segments:
            if isinstance(s, VSeg):
                lo, hi = sorted((s.start, s.end))
                for r, g in enumerate(d.rungs):
                    assert not (lo < d.height(r) < hi and (g.left < s.line < g.right or g.left == s.line))


def test_sufficient_condition_examples():
    assert sufficient_condition(bw("n=4; 1:2 2:3 3:4 -1:4"))
    assert not sufficient_condition(bw("n=3; 1:2 2:3"))
    assert not sufficient_condition(bw(PASSES_WORD))
    assert find_passes(ladder_from_word(bw(PASSES_WORD))) is not None


def test_sufficient_condition_implies_passes_for_short_four_strand_words():
    ls = letters(4)
    checked = 0
    for k in (4, 5):
        for tup in itertools.product(ls, repeat=k):
            w = BandWord(4, tup)
            if sufficient_condition(w):
                checked += 1
                assert passes(w) is not None, w
    assert checked == 15744


def test_persistence_under_concatenation():
    rng = random.Random(11)
    ls = letters(3)
    for k in range(5):
        for tup in itertools.product(ls, repeat=k):
            a = BandWord(3, tup)
            if find_passes(ladder_from_word(a)) is None:
                continue
            for _ in range(2):
                b = BandWord(3, tuple(rng.choice(ls) for _ in range(rng.randint(0, 4))))
                assert passes(concat(a, b)) is not None
                assert passes(concat(b, a)) is not None


@st.composite
def ladder_words(draw):
    n = draw(st.integers(2, 5))
    ch = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    k = draw(st.integers(0, 7))
    return BandWord(n, tuple(BandLetter(*draw(st.sampled_from(ch)), draw(st.sampled_from([1, -1]))) for _ in range(k)))


@settings(max_examples=300, deadline=None)
@given(ladder_words())
def test_every_certificate_passes_the_independent_verifier(w):
    passes(w)


# ------------------------------------------------------------ three strands

def test_trefoil_certificate_unshifted():
    c = braid3_decide(bw("n=3; 1:2 2:3 1:2 2:3"))
    assert (c.shift, c.rotation, c.mirrored) == (0, 0, False)


def test_negative_word_certified_on_mirror():
    c = braid3_decide(bw("n=3; -1:2 -2:3"))
    assert c.mirrored and c.word == bw("n=3; 1:2 2:3")


def test_disconnected_surface_rejected():
    with pytest.raises(DisconnectedSurface):
        braid3_decide(bw("n=3; 1:2 1:2"))


def test_braid3_rejects_more_strands():
    with pytest.raises(ValueError):
        braid3_decide(bw("n=4; 1:2 2:3 3:4"))


def test_braid3_random_connected_words():
    rng = random.Random(2024)
    ch = [(1, 2), (2, 3), (1, 3)]
    done = 0
    while done < 200:
        w = BandWord(3, tuple(BandLetter(*rng.choice(ch), rng.choice([1, -1])) for _ in range(rng.randint(1, 8))))
        if not word_invariants(w)[1].connected:
            continue
        done += 1
        c = braid3_decide(w)
        assert c is not None, w
        d = ladder_from_word(c.word)
        assert all(verify_certificate(d, c.passes).values())
