import pytest

from heun_atlas.belyi import (CatalogError, DegreeMismatch, FiberMismatch, catalog_by_id, check_composition_claim,
                              composition_factors, load_catalog, measure_fibers, verify_catalog, verify_covering)
from heun_atlas.exactalg import FieldElement, Poly, RatFun
from heun_atlas.patterns import parse_pattern

X = Poly.x()


def test_x_squared():
    a = verify_covering(RatFun(X ** 2), parse_pattern("2=2=1+1"))
    assert a.measured == {"0": (2,), "1": (1, 1), "inf": (2,)}


def test_h1_with_pole_at_infinity():
    f = RatFun(64 * X ** 3 * (X ** 3 - 1) ** 3, 8 * X ** 3 - 9)
    a = verify_covering(f, parse_pattern("[2]^6=[3]^4=9+1+1+1"))
    assert a.measured["inf"] == (9, 1, 1, 1)


def test_h21_over_eisenstein_field():
    w = FieldElement(0, 1, -3)  # sqrt(-3); omega = (-1 + sqrt(-3)) / 2
    omega = (w - 1) / 2
    x = Poly.x(-3)
    num = 4 * (x - 1) * ((1 + 2 * omega) * x ** 2 - 3 * x - omega) ** 3
    f = RatFun(num, 4 - (1 + 3 * omega) * x)
    verify_covering(f, parse_pattern("[2]^3+1=[3]^2+1=6+1"))


def test_wrong_degree_and_fibers():
    with pytest.raises(DegreeMismatch):
        verify_covering(RatFun(X ** 3), parse_pattern("2=2=1+1"))
    with pytest.raises(FiberMismatch):
        verify_covering(RatFun(X ** 2 * (X - 1)), parse_pattern("3=2+1=2+1"))


def test_measure_counts_infinity():
    assert measure_fibers(RatFun(X ** 2 * (X - 1)))["inf"] == (3,)


def test_catalog():
    recs = load_catalog()
    assert len(recs) == 48
    assert sum(r.conjugate_count for r in recs) == 50
    by_id = catalog_by_id()
    assert by_id["H44"].moduli_field == "Q(i)"
    assert by_id["H21"].moduli_field == "Q(w)"
    assert all(r.ok for r in verify_catalog(recs))


def test_bad_catalog_line(tmp_path):
    path = tmp_path / "c.txt"
    path.write_text("H1 | 2 | 2=2=1+1 | Q | [0, 0, 1]\n")
    with pytest.raises(CatalogError):
        load_catalog(path)


def test_composition_strings():
    assert composition_factors("4*3;3*2x2") == [(3, 4), (2, 2, 3)]
    assert composition_factors("indecomposable") == []


@pytest.mark.parametrize("ident,composite", [("H31", True), ("H34", False), ("H1", True), ("H21", False)])
def test_composition_claims(ident, composite):
    rep = check_composition_claim(catalog_by_id()[ident])
    assert rep.decomposable == composite
    assert rep.agrees and not rep.unmatched
