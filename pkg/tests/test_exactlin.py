import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from exactcat.exactlin import (
    QQ,
    FieldSpec,
    IntegerMatrix,
    Matrix,
    ModP,
    cokernel_structure,
    column_basis,
    complement_basis,
    integer_determinant,
    inverse,
    kernel_basis,
    lattice_membership,
    rank,
    rref,
    smith_normal_form,
    solve,
)

from linalg_props import check_field_matrix, check_integer_matrix, random_int_matrix, random_matrix

F5 = FieldSpec.prime(5)
small_ints = st.integers(min_value=-9, max_value=9)


def int_rows(max_dim=5):
    return st.integers(1, max_dim).flatmap(
        lambda c: st.lists(st.lists(small_ints, min_size=c, max_size=c), min_size=1, max_size=max_dim)
    )


def test_modp_arithmetic():
    a, b = ModP(3, 7), ModP(5, 7)
    assert a + b == 1 and a * b == 1 and a / b == ModP(2, 7)
    assert -a == 4 and a - 5 == ModP(5, 7)
    with pytest.raises(ZeroDivisionError):
        a / ModP(0, 7)
    with pytest.raises(ValueError):
        ModP(1, 7) + ModP(1, 5)


def test_field_coercion():
    assert QQ("3/4") == Fraction(3, 4)
    assert F5(Fraction(1, 2)) == ModP(3, 5)
    with pytest.raises(ZeroDivisionError):
        F5(Fraction(1, 5))
    with pytest.raises(ValueError):
        FieldSpec.prime(6)
    assert str(QQ) == "Q" and str(F5) == "F5"


def test_rref_small():
    m = Matrix.from_rows(QQ, [[2, 4], [1, 2]])
    r, piv, rk = rref(m)
    assert piv == [0] and rk == 1
    assert r == Matrix.from_rows(QQ, [[1, 2], [0, 0]])


def test_inverse_and_singular():
    m = Matrix.from_rows(QQ, [[1, 2], [3, 4]])
    assert m @ inverse(m) == Matrix.identity(QQ, 2)
    with pytest.raises(ZeroDivisionError):
        inverse(Matrix.from_rows(QQ, [[1, 2], [2, 4]]))


def test_solve_inconsistent():
    m = Matrix.from_rows(QQ, [[1, 1], [1, 1]])
    assert solve(m, Matrix.from_rows(QQ, [[1], [2]])) is None


def test_complement_basis():
    m = Matrix.from_columns(QQ, [[1, 1, 0]], 3)
    c = complement_basis(m)
    assert c.cols == 2 and rank(m.hstack(c)) == 3


def test_empty_shapes():
    m = Matrix.zeros(QQ, 0, 3)
    assert rank(m) == 0 and kernel_basis(m).cols == 3
    assert kernel_basis(Matrix.zeros(QQ, 2, 0)).cols == 0


@given(int_rows())
@settings(max_examples=60, deadline=None)
def test_rank_and_rref_match_sympy(rows):
    m = Matrix.from_rows(QQ, rows)
    s = sympy.Matrix(rows)
    r, piv, rk = rref(m)
    sr, spiv = s.rref()
    assert rk == s.rank()
    assert tuple(piv) == spiv
    assert [[Fraction(x) for x in row] for row in r.to_lists()] == [
        [Fraction(int(x.p), int(x.q)) for x in sr.row(i)] for i in range(sr.rows)
    ]


@given(int_rows())
@settings(max_examples=60, deadline=None)
def test_rank_mod_p_matches_sympy(rows):
    p = 3
    m = Matrix.from_rows(FieldSpec.prime(p), rows)
    from sympy.polys.matrices import DomainMatrix

    dm = DomainMatrix([[sympy.GF(p)(x) for x in row] for row in rows], (len(rows), len(rows[0])), sympy.GF(p))
    assert rank(m) == dm.rank()


@given(int_rows())
@settings(max_examples=60, deadline=None)
def test_snf_matches_sympy(rows):
    from sympy.matrices.normalforms import invariant_factors

    m = IntegerMatrix.from_rows(rows)
    factors, _, _ = smith_normal_form(m)
    expected = [abs(int(x)) for x in invariant_factors(sympy.Matrix(rows), domain=sympy.ZZ) if x]
    assert factors == expected


@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(small_ints, min_size=n, max_size=n), min_size=n, max_size=n)))
@settings(max_examples=60, deadline=None)
def test_determinant_matches_sympy(rows):
    assert integer_determinant(IntegerMatrix.from_rows(rows)) == int(sympy.Matrix(rows).det())


def test_cokernel_structure():
    assert cokernel_structure(IntegerMatrix.from_rows([[2, 0], [0, 3], [0, 0]])) == (1, [6])
    assert smith_normal_form(IntegerMatrix.from_rows([[2, 0], [0, 3]]))[0] == [1, 6]


def test_lattice_membership():
    assert not lattice_membership(IntegerMatrix.from_rows([[2]]), [1])
    assert lattice_membership(IntegerMatrix.from_rows([[2]]), [-4])
    b = IntegerMatrix.from_columns([[1, -1, 0], [0, 1, -1]], 3)
    assert lattice_membership(b, [1, 0, -1])
    assert not lattice_membership(b, [1, 0, 0])
    assert lattice_membership(IntegerMatrix(2, 0), [0, 0])
    with pytest.raises(ValueError):
        lattice_membership(b, [1, 2])


def test_column_basis_spans():
    m = Matrix.from_rows(QQ, [[1, 2, 3], [2, 4, 6], [0, 1, 1]])
    cb = column_basis(m)
    assert cb.cols == rank(m) == 2


@pytest.mark.parametrize("field", [QQ, FieldSpec.prime(2), FieldSpec.prime(7)], ids=str)
def test_random_field_invariants(field):
    rng = random.Random(11)
    for _ in range(60):
        check_field_matrix(random_matrix(field, rng), rng)


def test_random_integer_invariants():
    rng = random.Random(12)
    for _ in range(60):
        check_integer_matrix(random_int_matrix(rng), rng)
