import sympy
from hypothesis import given, settings, strategies as st
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from tensorsq.snf import determinant, identity, left_kernel, matmul, smith_normal_form


def test_diag_2_3():
    res = smith_normal_form([[2, 0], [0, 3]])
    assert res.D == [[1, 0], [0, 6]]
    assert matmul(matmul(res.U, [[2, 0], [0, 3]]), res.V) == res.D


def test_identity():
    res = smith_normal_form(identity(3))
    assert res.D == identity(3)


def test_zero():
    res = smith_normal_form([[0]])
    assert res.D == [[0]]
    assert res.rank == 0


def test_rectangular_and_empty_rows():
    res = smith_normal_form([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
    assert res.diagonal == [2, 6, 12]  # standard textbook example
    assert smith_normal_form([[0, 0, 0]]).diagonal == [0]


matrices = st.integers(1, 5).flatmap(
    lambda m: st.integers(1, 5).flatmap(
        lambda n: st.lists(
            st.lists(st.integers(-30, 30), min_size=n, max_size=n), min_size=m, max_size=m
        )
    )
)


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_postconditions_and_sympy_oracle(M):
    res = smith_normal_form(M, check=True)
    ours = [d for d in res.diagonal if d]
    theirs = sympy_snf(sympy.Matrix(M), domain=sympy.ZZ)
    theirs = [abs(int(theirs[i, i])) for i in range(min(theirs.shape)) if theirs[i, i] != 0]
    assert ours == sorted(theirs)


@settings(max_examples=80, deadline=None)
@given(matrices)
def test_left_kernel(M):
    K = left_kernel(M)
    for row in K:
        assert all(sum(row[i] * M[i][j] for i in range(len(M))) == 0 for j in range(len(M[0])))
    rank = smith_normal_form(M, check=False).rank
    assert len(K) == len(M) - rank


def test_determinant():
    assert determinant([[2, 1], [7, 4]]) == 1
    assert determinant([[0, 1], [1, 0]]) == -1
    assert determinant([[1, 2], [2, 4]]) == 0
