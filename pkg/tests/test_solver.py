import pytest

from heun_atlas.belyi import catalog_by_id, solve_belyi, verify_covering
from heun_atlas.exactalg import Poly, RatFun
from heun_atlas.monodromy import DegreeTooLarge, count_triples
from heun_atlas.patterns import parse_pattern
from heun_atlas.solver import NoSolution, default_pins

X = Poly.x()


def test_x_squared_with_pins():
    maps = solve_belyi(parse_pattern("2=1+1=2"), pins=[(0, 2), (1, 1), (2, 2)])
    assert maps == [RatFun(X ** 2)]


@pytest.mark.parametrize("text,ident", [("3=2+1=2+1", "H34"), ("3+1=3+1=2+2", "H47")])
def test_unique_maps(text, ident):
    p = parse_pattern(text)
    maps = solve_belyi(p)
    assert len(maps) == 1 == count_triples(p.partitions).orbit_count
    verify_covering(maps[0], p)
    verify_covering(catalog_by_id()[ident].map, p)


def test_conjugate_pair():
    p = parse_pattern("2+2+1=4+1=4+1")
    maps = solve_belyi(p)
    assert len(maps) == 2
    assert {f.field for f in maps} == {-1}


def test_no_covering():
    with pytest.raises(NoSolution):
        solve_belyi(parse_pattern("[2]^2=3+1=2+2"))


def test_degree_limit():
    with pytest.raises(DegreeTooLarge):
        solve_belyi(parse_pattern("[2]^4=[3]^2+2=6+1+1"))


def test_default_pins_prefer_unique_labels():
    pins = default_pins(parse_pattern("2+2+1=4+1=4+1"))
    assert len(set(pins)) == 3
    assert pins[2][1] == 4
