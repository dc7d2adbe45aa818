import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from tensorsq.abelian import AbelianInvariants
from tensorsq.coset import (
    CosetGroup,
    FpGroup,
    cyclic_reduce,
    free_reduce,
    regular_permutation_rep,
    todd_coxeter,
    word_from_text,
    word_to_text,
)

S3_PRES = FpGroup(2, ((1, 1), (2, 2), (1, 2, 1, 2, 1, 2)))


def test_reductions():
    assert free_reduce((1, 2, -2, -1, 3)) == (3,)
    assert cyclic_reduce((-1, 2, 3, 1)) == (2, 3)
    assert cyclic_reduce((1, -1)) == ()


def test_cyclic_group():
    ct = todd_coxeter(FpGroup(1, ((1, 1, 1, 1, 1),)))
    assert ct.complete and ct.index == 5


def test_subgroup_index():
    ct = todd_coxeter(S3_PRES, [(1,)])
    assert ct.complete and ct.index == 3
    ct.check(S3_PRES.relators)


def test_exceeded():
    ct = todd_coxeter(S3_PRES, [], max_cosets=1)
    assert ct.status == "exceeded"
    with pytest.raises(ValueError):
        CosetGroup(ct)
    with pytest.raises(ValueError):
        todd_coxeter(S3_PRES, [], max_cosets=0)


def test_regular_rep_S3():
    ct = todd_coxeter(S3_PRES)
    G, evaluate = regular_permutation_rep(ct)
    assert G.order() == 6
    ab = evaluate((1, 2))
    assert G.element_order(ab) == 3
    assert evaluate((1, 2, 1, 2, 1, 2)) == 0
    a = G.generator(0)
    assert len(G.closure([a])) == 2
    assert len(G.normal_closure([a])) == 6
    assert len(G.derived_subgroup()) == 3
    for x in range(6):
        assert G.mul(x, G.inverse(x)) == 0
        assert G.evaluate(G.word(x)) == x
    with pytest.raises(ValueError):
        CosetGroup(todd_coxeter(S3_PRES, [(1,)]))


def test_one_coset():
    G, _ = regular_permutation_rep(todd_coxeter(FpGroup(1, ((1,),))))
    assert G.order() == 1


def test_deterministic():
    a = todd_coxeter(S3_PRES).table
    b = todd_coxeter(S3_PRES).table
    assert np.array_equal(a, b)


def test_text_roundtrip():
    P = FpGroup(3, ((1, -2, 3), (2, 2), ()))
    assert FpGroup.from_text(P.to_text()) == P
    assert word_from_text(word_to_text((1, -3))) == (1, -3)


def test_csv():
    ct = todd_coxeter(FpGroup(1, ((1, 1, 1),)))
    assert ct.to_csv().splitlines() == ["coset,x1", "0,1", "1,2", "2,0"]


def test_letter_hom_rejects_bad_map():
    G, _ = regular_permutation_rep(todd_coxeter(S3_PRES))
    C, _ = regular_permutation_rep(todd_coxeter(FpGroup(1, ((1, 1, 1),))))
    # send both involutions to a generator of C3: not a homomorphism
    with pytest.raises(ValueError):
        G.letter_hom(np.array([0, 1, 0, 1]), C)


def _abelian_presentation(orders):
    n = len(orders)
    rels = [(i + 1,) * d for i, d in enumerate(orders)]
    rels += [(i + 1, j + 1, -(i + 1), -(j + 1)) for i in range(n) for j in range(i + 1, n)]
    return FpGroup(n, tuple(rels))


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(2, 6), min_size=1, max_size=3).filter(lambda fs: np.prod(fs) <= 64))
def test_abelian_presentations(orders):
    ct = todd_coxeter(_abelian_presentation(orders))
    assert ct.index == int(np.prod(orders))
    ct.check(_abelian_presentation(orders).relators)


@settings(max_examples=15, deadline=None)
@given(st.integers(1, 12), st.integers(1, 12))
def test_dihedral_presentations(n, k):
    # <a, b | a^n, b^2, (ab)^2> has order 2n
    P = FpGroup(2, ((1,) * n, (2, 2), (1, 2, 1, 2)))
    ct = todd_coxeter(P)
    assert ct.index == 2 * n
    # <a> has index 2, <b> has index n
    assert todd_coxeter(P, [(1,)]).index == 2
    assert todd_coxeter(P, [(2,)]).index == n
