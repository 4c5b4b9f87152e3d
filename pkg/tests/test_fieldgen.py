import pytest

from ffjac.divisors import infinite_places
from ffjac.fieldgen import (GenerationError, expected_structured_genus,
                            field_metadata, gen_random, gen_structured,
                            read_field, write_field)


def test_structured_is_deterministic():
    a = gen_structured(32771, 3, 2, seed=5)
    b = gen_structured(32771, 3, 2, seed=5)
    c = gen_structured(32771, 3, 2, seed=6)
    assert a.to_dict() == b.to_dict()
    assert a.to_dict() != c.to_dict()


def test_structured_shape_guarantees():
    for cf in (2, 3):
        F = gen_structured(32771, 3, cf, seed=1)
        assert F.cf == cf
        inf = infinite_places(F)
        assert len(inf) == 2
        assert all(pl.degree() == 1 for pl in inf)
        assert F.genus() == expected_structured_genus(32771, 3, cf)


def test_expected_genus_formula():
    assert expected_structured_genus(5, 2, 3) == 2
    assert expected_structured_genus(5, 3, 2) == 4
    assert expected_structured_genus(5, 3, 9) == 25
    assert expected_structured_genus(5, 2, 11) == 10


def test_exact_genus_over_small_field():
    F = gen_structured(5, 3, 2, seed=0, exact_genus=True)
    assert F.genus() == 4


def test_random_with_genus_target():
    F = gen_random(32771, 2, 4, seed=3, genus=2)
    assert F.genus() == 2
    assert F.n == 2
    assert len(infinite_places(F)) >= 1


def test_impossible_target_raises():
    # cf_max = 2 caps the quartic genus at 9
    with pytest.raises(GenerationError):
        gen_random(32771, 4, 2, seed=0, genus=15, tries=60)


def test_field_file_roundtrip(tmp_path):
    F = gen_structured(32771, 3, 2, seed=9)
    path = tmp_path / "field.json"
    write_field(path, F, field_metadata(F, seed=9))
    G, meta = read_field(path)
    assert G.to_dict() == F.to_dict()
    assert meta["genus"] == 4
    assert meta["p"] == 32771
    assert meta["cf"] == 2
    assert meta["seed"] == 9


def test_metadata_fields():
    F = gen_structured(5, 3, 2, seed=0, exact_genus=True)
    meta = field_metadata(F, seed=0)
    assert meta["n"] == 3 and meta["p"] == 5 and meta["seed"] == 0
    assert meta["t"] == len(infinite_places(F))
    assert meta["genus"] == 4
