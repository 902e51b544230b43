"""Random-matrix invariants of exactlin, shared by the unit and acceptance suites."""
import random

from exactcat.exactlin import (
    IntegerMatrix,
    Matrix,
    integer_determinant,
    kernel_basis,
    lattice_membership,
    rank,
    smith_normal_form,
    solve,
)


def random_matrix(field, rng: random.Random, max_dim: int = 6) -> Matrix:
    r, c = rng.randint(0, max_dim), rng.randint(0, max_dim)
    # sparse-ish entries so that rank deficiency is common
    rows = [[field.random_element(rng) if rng.random() < 0.6 else field.zero for _ in range(c)] for _ in range(r)]
    return Matrix.from_rows(field, rows, c)


def random_int_matrix(rng: random.Random, max_dim: int = 5, height: int = 6) -> IntegerMatrix:
    r, c = rng.randint(0, max_dim), rng.randint(0, max_dim)
    return IntegerMatrix.from_rows([[rng.randint(-height, height) for _ in range(c)] for _ in range(r)], c)


def check_field_matrix(m: Matrix, rng: random.Random) -> None:
    field = m.field
    k = kernel_basis(m)
    # rank-nullity and the kernel really is the kernel
    assert rank(m) + k.cols == m.cols
    assert (m @ k).is_zero()
    assert rank(k) == k.cols
    # solve round trip on a consistent right-hand side
    x0 = Matrix.from_rows(field, [[field.random_element(rng)] for _ in range(m.cols)], 1)
    b = m @ x0
    x = solve(m, b)
    assert x is not None and m @ x == b


def check_integer_matrix(m: IntegerMatrix, rng: random.Random) -> None:
    factors, u, v = smith_normal_form(m)
    d = u @ m @ v
    for i in range(m.rows):
        for j in range(m.cols):
            expected = factors[i] if i == j and i < len(factors) else 0
            assert d[i, j] == expected
    assert all(f > 0 for f in factors)
    assert all(b % a == 0 for a, b in zip(factors, factors[1:]))
    assert abs(integer_determinant(u)) == 1 and abs(integer_determinant(v)) == 1
    # integer combinations of the columns lie in the lattice
    coeffs = [rng.randint(-4, 4) for _ in range(m.cols)]
    spanned = [sum(m[i, j] * coeffs[j] for j in range(m.cols)) for i in range(m.rows)]
    assert lattice_membership(m, spanned)
