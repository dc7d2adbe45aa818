from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from tensorsq.abelian import (
    AbelianInvariants,
    abelian_subquotients,
    abelian_tensor_square,
    elementary_two,
    gcd_table,
    subquotient,
)


def inv(*f, rank=0):
    return AbelianInvariants.from_cyclic(f, rank)


def test_canonical_form():
    assert inv(2, 3) == AbelianInvariants(0, (6,))
    assert inv(4, 6) == AbelianInvariants(0, (2, 12))
    assert inv(0, 2) == AbelianInvariants(1, (2,))
    assert inv(1, 1).is_trivial
    with pytest.raises(ValueError):
        AbelianInvariants(0, (2, 3))


def test_even_factors_and_sub():
    assert AbelianInvariants(0, (2, 4, 12)).even_factors == 3
    assert inv(2, 2, 4) - inv(2) == inv(2, 4)
    with pytest.raises(ValueError):
        inv(4) - inv(2)
    assert inv(2) + inv(3) == inv(6)


@pytest.mark.parametrize(
    "A, expected",
    [(inv(2), inv(2)), (inv(6), inv(6)), (inv(2, 2), inv(2, 2, 2, 2))],
)
def test_tensor_square_examples(A, expected):
    assert abelian_tensor_square(A).invariants() == expected


def test_subquotients_C4():
    sq = abelian_subquotients(inv(4))
    assert sq.nabla == inv(4)
    assert sq.delta == inv(2)
    assert sq.nabla_mod_delta == inv(2)
    assert sq.exterior.is_trivial
    assert sq.symmetric_tensor == inv(2)


def test_subquotients_C2xC2():
    sq = abelian_subquotients(inv(2, 2))
    assert sq.nabla == inv(2, 2, 2)
    assert sq.delta == inv(2)
    assert sq.nabla_mod_delta == inv(2, 2)
    assert sq.exterior == inv(2)


def test_subquotients_Z():
    Z = AbelianInvariants(1, ())
    sq = abelian_subquotients(Z)
    assert sq.nabla == Z
    assert sq.delta == Z
    assert sq.nabla_mod_delta == inv(2)
    assert sq.exterior.is_trivial
    # Delta has index 2 in nabla: both free of rank 1, quotient Z/2
    T = abelian_tensor_square(Z)
    assert subquotient(T.relations, T.ngens, [[1]], [[2]]) == inv(2)


groups = st.tuples(
    st.lists(st.integers(2, 12), max_size=3),
    st.integers(0, 2),
).filter(lambda t: _torsion(t[0]) <= 64)


def _torsion(fs):
    out = 1
    for f in fs:
        out *= f
    return out


@settings(max_examples=60, deadline=None)
@given(groups)
def test_lemma_identities(data):
    fs, r = data
    A = AbelianInvariants.from_cyclic(fs, r)
    sq = abelian_subquotients(A)
    # gcd formula is an independent oracle for the SNF route
    assert sq.tensor == gcd_table(A)
    assert sq.tensor == sq.nabla + sq.exterior
    assert sq.symmetric_tensor == sq.nabla_mod_delta + sq.exterior
    assert sq.nabla_mod_delta == elementary_two(A.rank + A.even_factors)
    T = abelian_tensor_square(A)
    n = A.rank + len(A.factors)
    from tensorsq.abelian import delta_generators, nabla_generators

    # Delta inside nabla: adding Delta's generators to nabla changes nothing
    nab = nabla_generators(T, n)
    assert T.subgroup(nab + delta_generators(T, n)) == T.subgroup(nab)


def test_gcd_formula_small():
    A = inv(2, 6)
    assert gcd_table(A) == AbelianInvariants.from_cyclic([gcd(a, b) for a in (2, 6) for b in (2, 6)])


def test_json_roundtrip():
    A = AbelianInvariants(2, (2, 6))
    assert AbelianInvariants.from_json(A.to_json()) == A
    assert str(A) == "Z^2 x Z/2 x Z/6"
