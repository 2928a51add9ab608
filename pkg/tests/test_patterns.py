from fractions import Fraction

import pytest

from heun_atlas.patterns import (BranchingPattern, ExponentForm, PatternError, derive_heun_exponents,
                                 enumerate_patterns, enumerate_rows, enumerate_types, hurwitz_defect,
                                 parse_form, parse_pattern, partitions, partitions_with_length, table_base)


def test_partition_counts():
    assert len(partitions(12)) == 77
    assert len(partitions_with_length(24, 6)) == 199
    assert all(sum(p) == 24 and len(p) == 6 for p in partitions_with_length(24, 6))


def test_types():
    types = dict(enumerate_types())
    assert types[(2, 3)] == 12
    assert types[()] == 2
    assert types[(2,)] == 4
    assert (2, 2) not in types


def test_patterns_examples():
    pats = enumerate_patterns((2, 3), 12)
    assert len(pats) == 15
    assert parse_pattern("[2]^6=[3]^4=9+1+1+1") in pats
    assert enumerate_patterns((2, 3), 11) == []
    assert enumerate_patterns((4, 4), 4) == [parse_pattern("[4]=[4]=1+1+1+1")]


def test_pattern_text_roundtrip():
    for text in ["[2]^6=[3]^4=9+1+1+1", "[2]^4+1=[3]^3=5+2+2", "2=2=1+1", "[3]+1=[4]=2+1+1"]:
        assert str(parse_pattern(text)) == text
    with pytest.raises(PatternError):
        parse_pattern("2=2")
    with pytest.raises(PatternError):
        parse_pattern("[2]^2=3=1+1+1")


def test_hurwitz_defect():
    assert hurwitz_defect(parse_pattern("[2]^6=[3]^4=9+1+1+1")) == 0
    assert hurwitz_defect(parse_pattern("2=2=1+1")) == 0
    assert hurwitz_defect(parse_pattern("2=1+1=1+1")) == 1


def test_form_parsing():
    assert parse_form("a+1/2") == ExponentForm(Fraction(1, 2), 1)
    assert str(parse_form("2a")) == "2a"
    assert parse_form("1/3").is_constant()


def test_derive_exponents():
    a, b, g = (ExponentForm.param(n) for n in "abg")
    forms, _ = derive_heun_exponents([a, b, g], parse_pattern("1+1=2=2"))
    assert sorted(map(str, forms)) == ["2b", "2g", "a", "a"]
    p = parse_pattern("[2]^6=[3]^4=6+3+2+1")
    forms, dropped = derive_heun_exponents(table_base((2, 3), p), p)
    assert sorted(map(str, forms)) == ["2a", "3a", "6a", "a"]
    assert len(dropped) == 10
    p = parse_pattern("[2]^5=[3]^3+1=8+1+1")
    forms, _ = derive_heun_exponents(table_base((2, 3), p), p)
    assert sorted(map(str, forms)) == ["1/3", "8a", "a", "a"]


def test_bracket_needs_matching_base():
    p = parse_pattern("[2]^6=[3]^4=9+1+1+1")
    with pytest.raises(PatternError):
        derive_heun_exponents([ExponentForm.param("a")] * 3, p)


def test_rows_are_belyi():
    rows = enumerate_rows()
    assert len(rows) == 89
    assert all(hurwitz_defect(r.pattern) == 0 and len(r.exponents) == 4 for r in rows)


def test_canonical_equality():
    p = parse_pattern("9+1+1+1=[2]^6=[3]^4")
    assert p == parse_pattern("[2]^6=[3]^4=9+1+1+1")
    assert p.stripped() == BranchingPattern.of((2,) * 6, (3,) * 4, (9, 1, 1, 1))
