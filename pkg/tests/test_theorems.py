import pytest

from tensorsq.abelian import AbelianInvariants
from tensorsq.groups import Subgroup
from tensorsq.named import cyclic, make_named_group
from tensorsq.theorems import (
    FAIL,
    NA,
    PASS,
    green_bound,
    green_bound_check,
    odd_splitting,
    pi2s_closed_form,
    verify_complement_case,
    verify_perfect_normal_sequences,
    verify_semidirect_decomposition,
)


def inv(*f):
    return AbelianInvariants.from_cyclic(f)


def test_pi2s_closed_form():
    # Z x Z/2 x Z/4: r = 1, two even factors
    A = AbelianInvariants(1, (2, 4))
    assert pi2s_closed_form(A, inv(3)) == inv(3) + inv(2, 2, 2)
    assert pi2s_closed_form(inv(3, 9), inv(3)) == inv(3)


def test_green_bound_values():
    assert green_bound(8, 0, 3) == 8 * 8
    assert green_bound(6, 0, 1) == 2
    assert green_bound(16, 0, 0) == 2**6


def test_green_check_statuses(group_of):
    assert green_bound_check(group_of("S3"), inv(2)).status == PASS
    assert green_bound_check(group_of("S3"), inv(2, 2)).status == FAIL
    assert green_bound_check(group_of("S3"), None).status == NA


def test_semidirect_S3():
    C3, C2 = cyclic(3), cyclic(2)
    rep = verify_semidirect_decomposition(C3, C2, [[C3.gens[0].inverse()]])
    assert rep.status == PASS, rep.parts
    assert rep.order_tensor == rep.K["K1"] * rep.order_H_tensor
    assert rep.section_homomorphism


def test_semidirect_trivial_action():
    rep = verify_semidirect_decomposition(cyclic(3), cyclic(2))
    assert rep.status == PASS
    assert rep.order_tensor == 6


@pytest.mark.parametrize("spec", ["C3", "C5", "C3xC3", "sdp(C7,C3,power:2)"])
def test_odd_splitting(tensor_of, spec):
    w = odd_splitting(tensor_of(spec))
    assert w.status == PASS, w.checks
    assert w.m % 2 == 1


@pytest.mark.parametrize("spec", ["C2", "S3"])
def test_odd_splitting_not_applicable(tensor_of, spec):
    assert odd_splitting(tensor_of(spec)).status == NA


@pytest.mark.parametrize("spec", ["S3", "A4"])
def test_complement_case(tensor_of, group_of, spec):
    rep = verify_complement_case(group_of(spec), tensor_of(spec))
    assert rep.status == PASS, rep.checks
    assert rep.nabla == rep.nabla_ab


@pytest.mark.parametrize("spec", ["Q8", "D8"])
def test_complement_case_not_applicable(group_of, spec):
    assert verify_complement_case(group_of(spec)).status == NA


def test_perfect_sequence_trivial_subgroup(group_of):
    G = group_of("A4")
    rep = verify_perfect_normal_sequences(G, Subgroup(G, [G.identity]))
    assert rep.mode == "maps"
    assert rep.status == PASS, rep.checks


def test_perfect_sequence_rejects_nonperfect(group_of):
    G = group_of("S3")
    with pytest.raises(Exception):
        verify_perfect_normal_sequences(G, Subgroup(G, G.gens[:1]))
