from fractions import Fraction as F

import pytest

from heun_atlas.fixtures import load_nonexist
from heun_atlas.lemmas import (Certificate, Monodromy, SingularityProfile, Status, build_profile,
                               finite_monodromy, gauge_contiguity_test, isogeny_count, lemma_finite_pullback,
                               lemma_isogeny, lemma_logpoint, nonexistence_search, reducible, replay)
from heun_atlas.patterns import parse_pattern

T = F(1, 3)


def test_logpoint():
    assert lemma_logpoint(SingularityProfile((), (3,))).chain[0].rule == "single-point"
    assert lemma_logpoint(SingularityProfile((F(1, 2), F(7, 2)))).chain[0].rule == "two-point"
    assert lemma_logpoint(SingularityProfile((T, T))).status is Status.UNDECIDED


@pytest.mark.parametrize("triple,status,rule", [
    ((T, T, 2 * T), Monodromy.FINITE, "thirds-parity"),
    ((7 * T, T, T), Monodromy.INFINITE, "thirds-parity"),
    ((2, 2, 5), Monodromy.INFINITE, "integer-triangle"),
    ((1, F(1, 2), F(1, 2)), Monodromy.FINITE, "integer-half"),
    ((F(3, 2), F(1, 4), F(1, 4)), Monodromy.INFINITE, "half-quarter"),
    ((F(1, 2), T, F(1, 5)), Monodromy.FINITE, "schwarz"),
    ((F(1, 2), T, F(1, 7)), Monodromy.INFINITE, "schwarz"),
])
def test_finite_monodromy(triple, status, rule):
    assert finite_monodromy(triple) == (status, rule)


def test_isogeny_counts():
    assert isogeny_count("gaussian", 3) == 0
    assert isogeny_count("gaussian", 5) == 2
    assert isogeny_count("eisenstein", 10) == 0
    assert isogeny_count("eisenstein", 7) == 2
    with pytest.raises(ValueError):
        isogeny_count("hexagonal", 3)


def test_isogeny_rule():
    base = (F(1, 2), T, F(1, 6))
    prof = SingularityProfile(base, (), base)
    assert lemma_isogeny(prof, 10).chain[0].rule == "isogeny-eisenstein"
    assert lemma_isogeny(prof, 7).status is Status.UNDECIDED


def test_finite_pullback_needs_finite_base():
    prof = SingularityProfile((7 * T, T, T), (), (F(1, 2), T, T))
    assert lemma_finite_pullback(prof).nonexistent
    prof = SingularityProfile((7 * T, T, T), (), (F(1, 2), T, F(1, 7)))
    assert not lemma_finite_pullback(prof).nonexistent


def test_gauge_documented_examples():
    for text in ["2^12=3^8=10+6+3+3+1+1", "2^12=3^8=9+7+3+3+1+1"]:
        prof = build_profile((F(1, 2), T, T), parse_pattern(text))
        assert prof.apparent
        assert gauge_contiguity_test(prof).nonexistent
    assert not gauge_contiguity_test(SingularityProfile((F(1, 2), T, F(1, 5)))).nonexistent
    with pytest.raises(ValueError):
        gauge_contiguity_test(SingularityProfile((T, T)))


def test_strict_gauge_spares_existing_covering():
    # an existing degree-12 covering specialized at a = 1/3
    prof = build_profile((F(1, 2), T, T), parse_pattern("[2]^6=[3]^4=9+1+1+1"))
    assert prof.relevant == (T, T, T) and prof.apparent == (3,)
    assert reducible(prof.relevant)
    assert gauge_contiguity_test(prof).nonexistent
    assert not gauge_contiguity_test(prof, strict=True).nonexistent


@pytest.mark.parametrize("ks,text,rule,label,relevant", [
    ((2, 3), "[2]^6=[3]^4=7+3+1+1", "thirds-parity", "a=1/3", (T, T, 7 * T)),
    ((2, 3), "[2]^6=[3]^4=6+2+2+2", "single-point", "a=1/2", ()),
])
def test_search_examples(ks, text, rule, label, relevant):
    v = nonexistence_search(ks, parse_pattern(text))
    c = v.chain[0]
    assert (v.status, c.rule, c.specialization, c.profile.relevant) == (Status.NONEXISTENT, rule, label, relevant)


def test_search_leaves_existing_covering():
    assert nonexistence_search((2, 3), parse_pattern("[2]^6=[3]^4=9+1+1+1")).status is Status.UNDECIDED


def test_certificates_replay():
    rows = {r.id: r for r in load_nonexist()}
    for ident in ("N1", "N10", "N21"):
        p = rows[ident].pattern
        ks = {"N1": (2, 3), "N10": (2, 3), "N21": (2, 4)}[ident]
        v = nonexistence_search(ks, p, exhaustive=True)
        assert v.chain and all(replay(c, p) for c in v.chain)


def test_forged_certificate_rejected():
    prof = SingularityProfile((T, T, 2 * T), (), (F(1, 2), T, T))
    assert not replay(Certificate("a=1/3", prof, "thirds-parity"))
