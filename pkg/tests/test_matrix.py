import pytest
import sympy
from hypothesis import given, settings

from conftest import antichain, chain, posets
from posetvar import build_poset
from posetvar.errors import CheckedOverflowError
from posetvar.matrix import (
    INT64_MAX,
    IntMatrix,
    frobenius_factors,
    incidence_inverse,
    incidence_matrix,
    incidence_restriction,
    mobius_matrix,
    vecmat,
)

M = IntMatrix.from_rows


def test_incidence_of_enlarged_singleton():
    P0 = build_poset(["x"]).enlarge()
    assert P0.level_order == ("0", "x")
    assert incidence_matrix(P0) == M([[1, 0], [1, 1]])


def test_incidence_example2(ex2):
    assert ex2.level_order == ("3", "4", "1", "2")
    assert incidence_matrix(ex2) == M([[1, 0, 0, 0], [0, 1, 0, 0], [1, 1, 1, 0], [1, 1, 0, 1]])


def test_incidence_antichain():
    assert incidence_matrix(antichain("a", "b", "c")) == IntMatrix.identity(3)


def test_restrictions(ex1):
    for i in range(1, ex1.height + 1):
        T = ex1.level(i)
        assert incidence_restriction(ex1, T, T) == IntMatrix.identity(len(T))
    assert incidence_restriction(ex1, ["1", "2"], ["3", "4", "5"]) == M([[1, 1, 1], [0, 1, 1]])
    empty = incidence_restriction(ex1, [], ["3", "4", "5"])
    assert empty.shape == (0, 3)


def test_factors_chain():
    P = chain("a", "b", "c")
    (F1, F1i), (F2, F2i) = frobenius_factors(P)
    assert F2 == M([[1, 0, 0], [1, 1, 0], [0, 0, 1]])
    assert F1 == M([[1, 0, 0], [0, 1, 0], [1, 1, 1]])
    assert F2 @ F1 == M([[1, 0, 0], [1, 1, 0], [1, 1, 1]]) == incidence_matrix(P)
    assert (F1 @ F1i).is_identity() and (F2 @ F2i).is_identity()


def test_factors_antichain_empty():
    assert frobenius_factors(antichain("a", "b")) == []


def test_factors_example1(ex1):
    factors = frobenius_factors(ex1)
    assert len(factors) == 2
    (F1, _), (F2, _) = factors
    assert F2 @ F1 == incidence_matrix(ex1)


def test_inverse_examples(ex2):
    assert incidence_inverse(chain("x", "0")) == M([[1, 0], [-1, 1]])
    assert incidence_inverse(ex2) == M([[1, 0, 0, 0], [0, 1, 0, 0], [-1, -1, 1, 0], [-1, -1, 0, 1]])
    assert incidence_inverse(antichain("a", "b")) == IntMatrix.identity(2)


def test_mobius_small():
    assert mobius_matrix(chain("a", "b")) == M([[1, 0], [-1, 1]])
    assert mobius_matrix(antichain("a", "b", "c")) == IntMatrix.identity(3)


def test_overflow_is_loud():
    big = M([[INT64_MAX]])
    with pytest.raises(CheckedOverflowError):
        big + big
    with pytest.raises(CheckedOverflowError):
        big @ M([[2]])
    with pytest.raises(CheckedOverflowError):
        vecmat([INT64_MAX, 1], M([[1], [1]]))
    with pytest.raises(CheckedOverflowError):
        IntMatrix(1, 1, [2**63])


def test_matrix_basics():
    A = M([[1, 2], [3, 4]])
    assert A.transpose() == M([[1, 3], [2, 4]])
    assert A - A == IntMatrix.zeros(2, 2)
    assert str(A) == "1 2\n3 4"
    with pytest.raises(ValueError):
        A @ M([[1, 2, 3]])


@settings(max_examples=120, deadline=None)
@given(posets(0, 8))
def test_factorisation_and_inverse(P):
    C = incidence_matrix(P)
    n = len(P)
    assert C.is_lower_unitriangular()
    prod = IntMatrix.identity(n)
    inv_prod = IntMatrix.identity(n)
    for F, Finv in frobenius_factors(P):
        prod = F @ prod
        inv_prod = inv_prod @ Finv
        assert (F @ Finv).is_identity()
    assert prod == C
    Cinv = incidence_inverse(P)
    assert inv_prod == Cinv
    assert (C @ Cinv).is_identity() and (Cinv @ C).is_identity()


@settings(max_examples=120, deadline=None)
@given(posets(0, 6))
def test_mobius_equals_inverse(P):
    assert mobius_matrix(P) == incidence_inverse(P)
    if len(P):
        # independent rational inverse
        oracle = sympy.Matrix(incidence_matrix(P).to_rows()).inv()
        assert mobius_matrix(P).to_rows() == oracle.tolist()
