import pytest

from heun_atlas.fixtures import FixtureError, format_type, load_nonexist, load_tables, parse_type


def test_tables_shape():
    rows = load_tables()
    assert len(rows) == 89
    assert sum(r.realizable for r in rows) == 61
    assert sum(r.composite for r in rows) == 28
    assert all(r.pattern.degree == r.degree for r in rows)


def test_nonexist_rows_point_at_table_rows():
    ids = {r.covering for r in load_tables()}
    rows = load_nonexist()
    assert len(rows) == 27 and all(r.id in ids for r in rows)
    assert all(len(r.base) == 3 for r in rows)


def test_type_roundtrip():
    assert parse_type("-") == ()
    assert parse_type("3,2") == (2, 3)
    assert format_type((2, 3)) == "2,3" and format_type(()) == "-"


def test_bad_rows(tmp_path):
    bad = tmp_path / "t.txt"
    bad.write_text("g | 2,3 | 6 | [2]+2+2 / 3+3 / 6\n")
    with pytest.raises(FixtureError, match="columns"):
        load_tables(bad)
    with pytest.raises(FixtureError, match="missing"):
        load_tables(tmp_path / "absent.txt")
