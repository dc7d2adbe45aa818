import pytest

from tensorsq.groups import derived_subgroup
from tensorsq.named import GroupSpecError, make_named_group


@pytest.mark.parametrize(
    "spec, n",
    [
        ("S3", 6), ("GL(2,2)", 6), ("D8", 8), ("D4", 4), ("Q8", 8), ("V4", 4), ("C1", 1),
        ("C2xC4", 8), ("SL(2,3)", 24), ("GL(3,2)", 168), ("GL(1,7)", 6),
        ("perm:(1 2 3);(1 2)", 6), ("sdp(C7,C3,power:2)", 21), ("sdp(C4,C2,inversion)", 8),
        ("A4xC3", 36),
    ],
)
def test_orders(spec, n):
    assert make_named_group(spec).order() == n


def test_deterministic_generators():
    assert make_named_group("S4").gens == make_named_group("S4").gens


def test_dihedral_by_order():
    D = make_named_group("D12")
    assert derived_subgroup(D).order() == 3


@pytest.mark.parametrize(
    "bad",
    ["X3", "", "GL(3,3)", "GL(2,4)", "D5", "sdp(C7,C3,power:3)", "perm:(1 2", "sdp(S3,C2,inversion)", "Q7"],
)
def test_errors(bad):
    with pytest.raises(GroupSpecError):
        make_named_group(bad)
