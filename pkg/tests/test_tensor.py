import numpy as np
import pytest

from tensorsq.abelian import AbelianInvariants
from tensorsq.groups import BoundExceeded
from tensorsq.coset import EnumerationExceeded
from tensorsq.named import make_named_group
from tensorsq.tensor import (
    InfeasibleMethod,
    TensorSquare,
    canonical_subgroups,
    commutator_map,
    homotopy_invariants,
    tensor_square_presentation,
)


def inv(*f):
    return AbelianInvariants.from_cyclic(f)


def test_presentation_counts(group_of):
    for spec, n in [("C2", 2), ("S3", 6)]:
        P, idx = tensor_square_presentation(group_of(spec))
        assert P.ngens == n * n
        assert len(P.relators) == 2 * n**3
        assert idx.pair(idx.generator(1, 0)) == (1, 0)


def test_presentation_C2_instance(group_of):
    # g = g' = h = x: (1 (x) x) = (x (x) x)(x (x) x), with x at position 1
    P, idx = tensor_square_presentation(group_of("C2"))
    xx, ex = idx.generator(1, 1), idx.generator(0, 1)
    assert (xx, xx, -ex) in P.relators


def test_cap(group_of):
    with pytest.raises(BoundExceeded):
        tensor_square_presentation(group_of("S4"), cap=10)
    with pytest.raises(EnumerationExceeded):
        TensorSquare(group_of("S4"), max_cells=5000)


@pytest.mark.parametrize("spec, order", [("C2", 2), ("C3", 3), ("S3", 6)])
def test_orders(tensor_of, spec, order):
    assert tensor_of(spec).order == order


def test_C3_J_is_everything(tensor_of):
    TS = tensor_of("C3")
    assert len(TS.J) == TS.order


def test_commutator_map(tensor_of):
    kappa, J = commutator_map(tensor_of("S3"))
    assert len(np.unique(kappa)) == 3 and len(J) == 2
    kappa, J = commutator_map(tensor_of("A4"))
    assert len(np.unique(kappa)) == 4
    kappa, J = commutator_map(tensor_of("C4"))
    assert len(np.unique(kappa)) == 1 and len(J) == tensor_of("C4").order


def test_commutator_values(tensor_of):
    TS = tensor_of("S3")
    G = TS.G
    E = G.elements
    for g in range(6):
        for h in range(6):
            c = E[g] * E[h] * E[g].inverse() * E[h].inverse()
            assert TS.kappa[TS.symbol(g, h)] == G.index(c)


@pytest.mark.parametrize("spec, nab, dlt", [("S3", 2, 1), ("C4", 4, 2)])
def test_canonical_subgroups(tensor_of, spec, nab, dlt):
    n, d = canonical_subgroups(tensor_of(spec))
    assert (len(n), len(d)) == (nab, dlt)


@pytest.mark.parametrize(
    "spec, pi3, pi2s, h2",
    [
        ("S4", inv(2, 2), inv(2, 2), inv(2)),
        ("C2", inv(2), inv(2), inv()),
    ],
)
def test_invariants(spec, pi3, pi2s, h2, group_of):
    got = homotopy_invariants(group_of(spec), "presentation")
    assert (got.pi3, got.pi2s, got.h2) == (pi3, pi2s, h2)


def test_D8(group_of):
    got = homotopy_invariants(group_of("D8"))
    assert got.pi2s == inv(2, 2, 2)
    assert got.h2 == inv(2)


def test_methods(group_of):
    assert homotopy_invariants(group_of("C4")).method == "closed-form"
    assert homotopy_invariants(group_of("C4"), "presentation").method == "presentation"
    with pytest.raises(InfeasibleMethod):
        homotopy_invariants(group_of("A4"), "closed-form")
    with pytest.raises(ValueError):
        homotopy_invariants(group_of("C4"), "magic")


def test_closed_form_catalog_group(group_of):
    # S4: pi2s from the catalog, h2 by cancelling (Z/2)^(r+k), pi3 via the complement
    got = homotopy_invariants(group_of("S4"), "closed-form")
    assert (got.pi3, got.pi2s, got.h2) == (inv(2, 2), inv(2, 2), inv(2))
    d8 = homotopy_invariants(group_of("D8"), "closed-form")
    assert d8.pi3 is None and d8.h2 == inv(2)


@pytest.mark.parametrize("spec", ["S3", "Q8", "D8", "A4", "C2xC2"])
def test_properties(tensor_of, spec):
    report = tensor_of(spec).check_properties()
    assert all(report.values()), report


def test_lifted_action_is_automorphism(tensor_of):
    TS = tensor_of("S3")
    for g in range(6):
        a = TS.lifted_action(g)
        assert sorted(a) == list(range(TS.order))
