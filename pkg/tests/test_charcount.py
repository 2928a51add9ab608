from math import factorial

import pytest
from conftest import brute_triples

from heun_atlas.charcount import (CACHE_HEADER, CharacterCache, CharacterError, class_size, connected_count,
                                  dimension, frobenius_count, mn_character, parse_partition)
from heun_atlas.monodromy import count_triples
from heun_atlas.patterns import partitions


def test_character_examples():
    assert mn_character((5,), (2, 2, 1)) == 1
    assert mn_character((1, 1, 1, 1), (3, 1)) == 1
    assert mn_character((1, 1, 1, 1), (2, 1, 1)) == -1
    assert mn_character((2, 1), (3,)) == -1
    assert mn_character((2, 1), (1, 1, 1)) == 2


def test_size_mismatch():
    with pytest.raises(CharacterError):
        mn_character((2, 1), (2,))
    with pytest.raises(CharacterError):
        frobenius_count((2,), (2,), (1, 1, 1))


def test_frobenius_small():
    assert frobenius_count((2,), (2,), (1, 1)) == 1
    assert frobenius_count((2,), (2,), (2,)) == 0


@pytest.mark.parametrize("triple", [
    ((2, 2), (3, 1), (3, 1)), ((2, 1, 1), (2, 2), (4,)), ((2, 2, 1), (4, 1), (4, 1)),
    ((3, 1, 1), (2, 2, 1), (5,)), ((2, 1), (2, 1), (3,)), ((2, 2), (2, 2), (2, 2)),
    ((3, 2), (2, 2, 1), (3, 1, 1)),
])
def test_against_brute_force(triple):
    total, transitive = brute_triples(*triple)
    assert frobenius_count(*triple) == total
    assert connected_count(*triple) == transitive


def test_against_enumeration_degree_12():
    fibers = ((2,) * 6, (3,) * 4, (9, 1, 1, 1))
    assert frobenius_count(*fibers) == count_triples(fibers).raw_count


def test_regular_representation():
    # sum over lambda of dim^2 = n!
    for n in range(1, 9):
        assert sum(dimension(lam) ** 2 for lam in partitions(n)) == factorial(n)


def test_column_orthogonality():
    n = 7
    lams = partitions(n)
    for mu in partitions(n):
        col = sum(mn_character(lam, mu) ** 2 for lam in lams)
        assert col * class_size(mu) == factorial(n)


def test_parse_partition():
    assert parse_partition("2^12") == (2,) * 12
    assert parse_partition("3^2+1") == (3, 3, 1)
    with pytest.raises(CharacterError):
        parse_partition("2^x")


def test_cache_roundtrip(tmp_path):
    c = CharacterCache(tmp_path)
    frobenius_count((2,) * 4, (3, 3, 2), (4, 4), c)
    assert len(c) > 0
    c.save()
    assert c.path.read_text().splitlines()[0] == CACHE_HEADER
    again = CharacterCache(tmp_path)
    assert len(again) == len(c)
    assert again.get((4, 4), (2, 2, 2, 2)) == mn_character((4, 4), (2, 2, 2, 2))


def test_stale_cache_is_ignored(tmp_path):
    (tmp_path / "characters-v1.txt").write_text("# some other format\n5 : 5 : 999\n")
    c = CharacterCache(tmp_path)
    assert len(c) == 0
    assert c.get((5,), (5,)) == 1
