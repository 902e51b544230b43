"""Exact linear algebra over Q and F_p, plus integer normal forms.

Matrices are dense and immutable.  Rational entries are
``fractions.Fraction`` (always reduced); prime-field entries are ``ModP``
values reduced eagerly.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


class ModP:
    """Element of the prime field F_p."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, ModP):
            if other.p != self.p:
                raise ValueError(f"mixing F_{self.p} and F_{other.p}")
            return other.v
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(self.v * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o % self.p == 0:
            raise ZeroDivisionError("division by zero in F_%d" % self.p)
        return ModP(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.v == 0:
            raise ZeroDivisionError("division by zero in F_%d" % self.p)
        return ModP(o * pow(self.v, -1, self.p), self.p)

    def __neg__(self):
        return ModP(-self.v, self.p)

    def __pos__(self):
        return self

    def __bool__(self):
        return self.v != 0

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return (self.v - o) % self.p == 0

    def __hash__(self):
        return hash((self.v, self.p))

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"{self.v}"


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class FieldSpec:
    """The ground field: ``rationals`` (characteristic 0) or ``prime-field``."""

    kind: str
    characteristic: int = 0

    def __post_init__(self):
        if self.kind == "rationals":
            if self.characteristic != 0:
                raise ValueError("the rationals have characteristic 0")
        elif self.kind == "prime-field":
            if not _is_prime(self.characteristic):
                raise ValueError(f"{self.characteristic} is not a prime")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls("rationals", 0)

    @classmethod
    def prime(cls, p: int) -> "FieldSpec":
        return cls("prime-field", p)

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def __call__(self, x):
        """Coerce an int, Fraction, ModP or numeric string into the field."""
        if isinstance(x, str):
            x = Fraction(x)
        if self.characteristic == 0:
            if isinstance(x, ModP):
                raise TypeError("cannot lift an F_p element to Q")
            return Fraction(x)
        p = self.characteristic
        if isinstance(x, ModP):
            if x.p != p:
                raise ValueError(f"element of F_{x.p} used in F_{p}")
            return x
        if isinstance(x, Fraction):
            if x.denominator % p == 0:
                raise ZeroDivisionError(f"{x} has no image in F_{p}")
            return ModP(x.numerator * pow(x.denominator, -1, p), p)
        return ModP(int(x), p)

    def random_element(self, rng, height: int = 3):
        """Uniform over F_p, or an integer in [-height, height] for Q."""
        if self.characteristic:
            return ModP(rng.randrange(self.characteristic), self.characteristic)
        return Fraction(rng.randint(-height, height))

    def __str__(self):
        return "Q" if self.characteristic == 0 else f"F{self.characteristic}"


QQ = FieldSpec.rationals()


class Matrix:
    """Dense immutable matrix over a ``FieldSpec``."""

    __slots__ = ("field", "rows", "cols", "_data")

    def __init__(self, field: FieldSpec, rows: int, cols: int, data=None, _trusted=False):
        self.field = field
        self.rows = rows
        self.cols = cols
        if data is None:
            z = field.zero
            self._data = tuple(tuple(z for _ in range(cols)) for _ in range(rows))
        elif _trusted:
            self._data = data
        else:
            conv = tuple(tuple(field(x) for x in row) for row in data)
            if len(conv) != rows or any(len(r) != cols for r in conv):
                raise ValueError("entry array does not match the declared shape")
            self._data = conv

    # construction -----------------------------------------------------
    @classmethod
    def from_rows(cls, field: FieldSpec, rows: Sequence[Sequence], cols: int | None = None) -> "Matrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(field, len(rows), cols, rows)

    @classmethod
    def from_columns(cls, field: FieldSpec, columns: Sequence[Sequence], rows: int) -> "Matrix":
        columns = [list(c) for c in columns]
        data = [[columns[j][i] for j in range(len(columns))] for i in range(rows)]
        return cls(field, rows, len(columns), data)

    @classmethod
    def zeros(cls, field: FieldSpec, rows: int, cols: int) -> "Matrix":
        return cls(field, rows, cols)

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "Matrix":
        z, o = field.zero, field.one
        data = tuple(tuple(o if i == j else z for j in range(n)) for i in range(n))
        return cls(field, n, n, data, _trusted=True)

    @classmethod
    def _raw(cls, field, rows, cols, lists) -> "Matrix":
        return cls(field, rows, cols, tuple(tuple(r) for r in lists), _trusted=True)

    # access -----------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self._data[i][j]

    def row(self, i: int) -> tuple:
        return self._data[i]

    def column(self, j: int) -> list:
        return [r[j] for r in self._data]

    def to_lists(self) -> list[list]:
        return [list(r) for r in self._data]

    def columns(self) -> list[list]:
        return [self.column(j) for j in range(self.cols)]

    def is_zero(self) -> bool:
        return all(not x for r in self._data for x in r)

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.shape == other.shape
            and all(a == b for ra, rb in zip(self._data, other._data) for a, b in zip(ra, rb))
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self._data))

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in r) for r in self._data)
        return f"Matrix({self.rows}x{self.cols}, [{body}])"

    # arithmetic -------------------------------------------------------
    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        z = self.field.zero
        ocols = other.columns() if other.cols else []
        out = []
        for r in self._data:
            nz = [(k, x) for k, x in enumerate(r) if x]
            row = []
            for col in ocols:
                s = z
                for k, x in nz:
                    y = col[k]
                    if y:
                        s = s + x * y
                row.append(s)
            out.append(row)
        return Matrix._raw(self.field, self.rows, other.cols, out)

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch in addition")
        return Matrix._raw(
            self.field, self.rows, self.cols,
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self._data, other._data)],
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch in subtraction")
        return Matrix._raw(
            self.field, self.rows, self.cols,
            [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self._data, other._data)],
        )

    def __neg__(self) -> "Matrix":
        return Matrix._raw(self.field, self.rows, self.cols, [[-a for a in r] for r in self._data])

    def scale(self, c) -> "Matrix":
        c = self.field(c) if not isinstance(c, (Fraction, ModP)) else c
        return Matrix._raw(self.field, self.rows, self.cols, [[c * a for a in r] for r in self._data])

    def transpose(self) -> "Matrix":
        return Matrix._raw(self.field, self.cols, self.rows, [list(c) for c in zip(*self._data)] if self.rows else [[] for _ in range(self.cols)])

    @property
    def T(self) -> "Matrix":
        return self.transpose()

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.rows != other.rows:
            raise ValueError("row mismatch in hstack")
        return Matrix._raw(self.field, self.rows, self.cols + other.cols,
                           [list(a) + list(b) for a, b in zip(self._data, other._data)])

    def vstack(self, other: "Matrix") -> "Matrix":
        if self.cols != other.cols:
            raise ValueError("column mismatch in vstack")
        return Matrix._raw(self.field, self.rows + other.rows, self.cols,
                           list(self._data) + list(other._data))

    def select_columns(self, idx: Iterable[int]) -> "Matrix":
        idx = list(idx)
        return Matrix._raw(self.field, self.rows, len(idx), [[r[j] for j in idx] for r in self._data])

    def select_rows(self, idx: Iterable[int]) -> "Matrix":
        idx = list(idx)
        return Matrix._raw(self.field, len(idx), self.cols, [self._data[i] for i in idx])

    def apply(self, vec: Sequence) -> list:
        z = self.field.zero
        out = []
        for r in self._data:
            s = z
            for x, y in zip(r, vec):
                if x and y:
                    s = s + x * y
            out.append(s)
        return out


def block_diagonal(field: FieldSpec, blocks: Sequence[Matrix]) -> Matrix:
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    z = field.zero
    out = [[z] * cols for _ in range(rows)]
    r0 = c0 = 0
    for b in blocks:
        for i in range(b.rows):
            row = b.row(i)
            for j in range(b.cols):
                out[r0 + i][c0 + j] = row[j]
        r0 += b.rows
        c0 += b.cols
    return Matrix._raw(field, rows, cols, out)


def hstack_all(field: FieldSpec, rows: int, blocks: Sequence[Matrix]) -> Matrix:
    out = Matrix.zeros(field, rows, 0)
    for b in blocks:
        out = out.hstack(b)
    return out


def vstack_all(field: FieldSpec, cols: int, blocks: Sequence[Matrix]) -> Matrix:
    out = Matrix.zeros(field, 0, cols)
    for b in blocks:
        out = out.vstack(b)
    return out


# -------------------------------------------------------------------------
# row reduction


def _rref_lists(rows: list[list], ncols: int):
    """In-place reduced row echelon form; returns the pivot columns."""
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        inv = 1 / prow[c]
        if inv != 1:
            prow = [x * inv if x else x for x in prow]
            rows[r] = prow
        nz = [j for j in range(c, ncols) if prow[j]]
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f:
                    ri = rows[i]
                    for j in nz:
                        ri[j] = ri[j] - f * prow[j]
        pivots.append(c)
        r += 1
    return pivots


def rref(m: Matrix) -> tuple[Matrix, list[int], int]:
    """Reduced row echelon form, pivot columns and rank."""
    rows = [list(r) for r in m._data]
    pivots = _rref_lists(rows, m.cols)
    return Matrix._raw(m.field, m.rows, m.cols, rows), pivots, len(pivots)


def rank(m: Matrix) -> int:
    return rref(m)[2]


def kernel_basis(m: Matrix) -> Matrix:
    """Columns spanning the right null space of ``m``."""
    field = m.field
    rows = [list(r) for r in m._data]
    pivots = _rref_lists(rows, m.cols)
    free = [j for j in range(m.cols) if j not in set(pivots)]
    z, o = field.zero, field.one
    cols = []
    for f in free:
        v = [z] * m.cols
        v[f] = o
        for i, p in enumerate(pivots):
            x = rows[i][f]
            if x:
                v[p] = -x
        cols.append(v)
    data = [[cols[k][i] for k in range(len(cols))] for i in range(m.cols)]
    return Matrix._raw(field, m.cols, len(cols), data)


def solve(m: Matrix, b: Matrix) -> Matrix | None:
    """A solution ``x`` of ``m @ x == b``, or ``None`` if there is none."""
    if b.rows != m.rows:
        raise ValueError("right-hand side has the wrong number of rows")
    field = m.field
    aug = [list(ra) + list(rb) for ra, rb in zip(m._data, b._data)]
    pivots = _rref_lists(aug, m.cols + b.cols)
    z = field.zero
    if any(p >= m.cols for p in pivots):
        return None
    x = [[z] * b.cols for _ in range(m.cols)]
    for i, p in enumerate(pivots):
        x[p] = aug[i][m.cols:]
    return Matrix._raw(field, m.cols, b.cols, x)


def column_basis(m: Matrix) -> Matrix:
    """Linearly independent columns of ``m`` spanning its column space."""
    _, pivots, _ = rref(m)
    return m.select_columns(pivots)


def complement_basis(m: Matrix) -> Matrix:
    """Standard basis vectors completing the columns of ``m`` to a basis.

    ``m`` must have independent columns.
    """
    n = m.rows
    aug = m.hstack(Matrix.identity(m.field, n))
    _, pivots, _ = rref(aug)
    extra = [p - m.cols for p in pivots if p >= m.cols]
    return Matrix.identity(m.field, n).select_columns(extra)


def inverse(m: Matrix) -> Matrix:
    if m.rows != m.cols:
        raise ValueError("only square matrices are invertible")
    x = solve(m, Matrix.identity(m.field, m.rows))
    if x is None or rank(m) != m.rows:
        raise ZeroDivisionError("matrix is singular")
    return x


# -------------------------------------------------------------------------
# integer matrices


class IntegerMatrix:
    """Dense matrix of Python ints."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Sequence[Sequence[int]] | None = None):
        self.rows = rows
        self.cols = cols
        if entries is None:
            entries = [[0] * cols for _ in range(rows)]
        ent = tuple(tuple(int(x) for x in r) for r in entries)
        if len(ent) != rows or any(len(r) != cols for r in ent):
            raise ValueError("entry array does not match the declared shape")
        self.entries = ent

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntegerMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(len(rows), cols, rows)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int) -> "IntegerMatrix":
        return cls(rows, len(columns), [[c[i] for c in columns] for i in range(rows)])

    @classmethod
    def identity(cls, n: int) -> "IntegerMatrix":
        return cls(n, n, [[int(i == j) for j in range(n)] for i in range(n)])

    def __getitem__(self, ij):
        return self.entries[ij[0]][ij[1]]

    def __matmul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        oc = list(zip(*other.entries)) if other.rows else [()] * other.cols
        return IntegerMatrix(self.rows, other.cols,
                             [[sum(a * b for a, b in zip(r, c)) for c in oc] for r in self.entries])

    def transpose(self) -> "IntegerMatrix":
        return IntegerMatrix(self.cols, self.rows, [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)])

    def apply(self, v: Sequence[int]) -> list[int]:
        return [sum(a * b for a, b in zip(r, v)) for r in self.entries]

    def __eq__(self, other):
        return isinstance(other, IntegerMatrix) and self.entries == other.entries and self.shape == other.shape

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __repr__(self):
        return f"IntegerMatrix({self.rows}x{self.cols}, {[list(r) for r in self.entries]})"


def integer_determinant(m: IntegerMatrix) -> int:
    """Bareiss fraction-free determinant."""
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    n = m.rows
    a = [list(r) for r in m.entries]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1] if n else 1


def smith_normal_form(m: IntegerMatrix) -> tuple[list[int], IntegerMatrix, IntegerMatrix]:
    """Invariant factors ``d_1 | d_2 | ...`` and unimodular ``U``, ``V``.

    ``U @ m @ V`` is diagonal with the nonzero factors leading.  Pivots are
    chosen by minimal absolute value in the remaining block.
    """
    r, c = m.rows, m.cols
    a = [list(row) for row in m.entries]
    u = [[int(i == j) for j in range(r)] for i in range(r)]
    v = [[int(i == j) for j in range(c)] for i in range(c)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row_dst -= q * row_src
        if q:
            a[dst] = [x - q * y for x, y in zip(a[dst], a[src])]
            u[dst] = [x - q * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, q):
        if q:
            for row in a:
                row[dst] -= q * row[src]
            for row in v:
                row[dst] -= q * row[src]

    t = 0
    while t < min(r, c):
        best = None
        for i in range(t, r):
            for j in range(t, c):
                x = a[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        if best is None:
            break
        _, pi, pj = best
        swap_rows(t, pi)
        swap_cols(t, pj)
        while True:
            done = True
            for i in range(t + 1, r):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    add_row(i, t, q)
                    if a[i][t]:
                        done = False
            for j in range(t + 1, c):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    add_col(j, t, q)
                    if a[t][j]:
                        done = False
            if not done:
                # move the smallest nonzero entry of row/column t to the pivot
                cand = [(abs(a[i][t]), i, t) for i in range(t, r) if a[i][t]]
                cand += [(abs(a[t][j]), t, j) for j in range(t, c) if a[t][j]]
                _, pi, pj = min(cand)
                swap_rows(t, pi)
                swap_cols(t, pj)
                continue
            bad = next(
                ((i, j) for i in range(t + 1, r) for j in range(t + 1, c) if a[i][j] % a[t][t]),
                None,
            )
            if bad is None:
                break
            add_row(t, bad[0], -1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    factors = [a[i][i] for i in range(min(r, c)) if a[i][i]]
    return factors, IntegerMatrix(r, r, u), IntegerMatrix(c, c, v)


def cokernel_structure(m: IntegerMatrix) -> tuple[int, list[int]]:
    """(free rank, torsion factors > 1) of Z^rows / column span of ``m``."""
    factors, _, _ = smith_normal_form(m)
    return m.rows - len(factors), [d for d in factors if d > 1]


def lattice_membership(basis: IntegerMatrix, v: Sequence[int]) -> bool:
    """Is ``v`` an integer combination of the columns of ``basis``?"""
    if len(v) != basis.rows:
        raise ValueError("vector length must equal the number of rows")
    factors, u, _ = smith_normal_form(basis)
    w = u.apply(v)
    for i, x in enumerate(w):
        if i < len(factors):
            if x % factors[i]:
                return False
        elif x:
            return False
    return True

