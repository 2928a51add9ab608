import pytest
from conftest import brute_triples

from heun_atlas.monodromy import (DegreeTooLarge, InvalidTriple, PermTriple, block_systems, count_triples,
                                  cycle_type, dessin, emit_dot, genus, triple_from_cycles)

H1 = ((2,) * 6, (3,) * 4, (9, 1, 1, 1))


def test_h1_is_unique():
    c = count_triples(H1)
    assert c.orbit_count == 1
    t = c.representatives[0]
    assert t.is_valid()
    assert sorted(t.cycle_types()) == sorted(H1)


@pytest.mark.parametrize("fibers,orbits", [
    (((2,) * 6, (3,) * 4, (7, 3, 1, 1)), 0),
    (((2, 2, 2, 1), (3, 3, 1), (6, 1)), 2),
    (((4, 1), (4, 1), (2, 2, 1)), 2),
    (((2, 2), (3, 1), (2, 2)), 0),
    (((2,), (2,), (1, 1)), 1),
])
def test_orbit_examples(fibers, orbits):
    assert count_triples(fibers).orbit_count == orbits


def test_raw_count_matches_brute_force():
    for fibers in [((2, 2, 1), (4, 1), (4, 1)), ((3, 1, 1), (2, 2, 1), (5,)), ((2, 2), (2, 2), (2, 2))]:
        assert count_triples(fibers).raw_count == brute_triples(*fibers)[0]


def test_representatives_keep_fiber_order():
    fibers = ((5, 1), (2, 2, 2), (3, 3))
    for t in count_triples(fibers).representatives:
        assert t.cycle_types() == fibers


def test_threads_do_not_change_counts():
    a, b = count_triples(H1), count_triples(H1, threads=4)
    assert (a.raw_count, a.orbit_count) == (b.raw_count, b.orbit_count)


def test_degree_limit():
    with pytest.raises(DegreeTooLarge):
        count_triples(((2,) * 12, (3,) * 8, (10, 6, 4, 2, 1, 1)))


def test_genus():
    t = PermTriple((1, 0), (0, 1), (1, 0))
    assert genus(t) == 0
    c = (1, 2, 0)
    assert genus(PermTriple(c, c, c)) == 1


def test_dessin_orders():
    d = dessin(PermTriple((1, 0), (0, 1), (1, 0)))
    assert (d.black_orders, d.white_orders, d.face_orders) == ((2,), (1, 1), (2,))
    d = dessin(count_triples(H1).representatives[0])
    assert sorted([d.black_orders, d.white_orders, d.face_orders]) == sorted(H1)
    assert d.genus == 0
    dot = emit_dot(d, "H1")
    assert dot.startswith("graph H1 {") and dot.count(" -- ") == 12


def test_block_systems():
    h31 = count_triples(((2, 2), (2, 2), (2, 2))).representatives[0]
    assert any(len(s) == 2 for s in block_systems(h31).systems)
    h34 = count_triples(((3,), (2, 1), (2, 1))).representatives[0]
    assert not block_systems(h34).decomposable
    h1 = block_systems(count_triples(H1).representatives[0])
    assert (3, 4) in h1.factor_multisets()


def test_intransitive_blocks_rejected():
    t = triple_from_cycles(4, [(1, 2)], [(3, 4)])
    with pytest.raises(InvalidTriple):
        block_systems(t)
    assert cycle_type(t.sigma_inf) == (2, 2)
