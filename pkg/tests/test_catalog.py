import pytest

from tensorsq.abelian import AbelianInvariants
from tensorsq.catalog import CATALOG, CatalogError, catalog_lookup, compare_with_catalog


def test_lookup():
    rec = catalog_lookup("S4")
    assert rec.pi3 == AbelianInvariants.from_cyclic([2, 2])
    assert catalog_lookup("GL(1, 7)").pi3 == AbelianInvariants.from_cyclic([6])
    with pytest.raises(CatalogError):
        catalog_lookup("X9")
    with pytest.raises(CatalogError):
        catalog_lookup(None)


def test_compare():
    two = AbelianInvariants.from_cyclic([2])
    assert compare_with_catalog("S3", two, two, None) == []
    assert compare_with_catalog("S3", two + two, two, None) == ["pi3"]
    # Q8 records no pi3, so nothing to disagree with
    assert compare_with_catalog("Q8", two, two + two, None) == []


def test_lookup_only_flags():
    for name in ("S5", "A5", "A6", "A7", "GL(3,2)", "GL(4,2)", "GL(2,5)"):
        assert not CATALOG[name].computable
    for name in ("S3", "S4", "D8", "Q8"):
        assert CATALOG[name].computable


def test_json_shape():
    j = catalog_lookup("D10").to_json()
    assert j["pi3"] is None and j["pi2s"] == {"rank": 0, "factors": [2]}
