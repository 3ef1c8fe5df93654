"""Exact dense linear algebra over the rationals or a prime field.

Everything downstream is finite linear algebra over an exact field, so this
module is the substrate: immutable matrices, reduced row echelon form with a
deterministic pivoting rule (leftmost nonzero pivot, scaled to 1), kernels,
cokernels presented as projection/section pairs, Kronecker products and exact
linear solving.  No floating point anywhere.

Scalars are plain ``fractions.Fraction`` values over the rationals, or plain
``int`` residues in ``[0, p)`` over a prime field.  All arithmetic on scalars
is routed through a :class:`Field` object; matrices of different fields never
mix (``FieldMismatchError``).

>>> m = Matrix.from_rows(QQ, [[1, 2], [2, 4]])
>>> kernel_basis(m).columns()[0]
(Fraction(-2, 1), Fraction(1, 1))
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


class FieldMismatchError(ValueError):
    """Scalars or matrices from different fields met in one computation."""


class NoSolutionError(ValueError):
    """An exact linear system has no solution (used by :func:`inverse`)."""


@dataclass(frozen=True)
class RationalField:
    """The field of arbitrary-precision rationals, elements are Fraction."""

    zero = Fraction(0)
    one = Fraction(1)

    def check(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int) and not isinstance(x, bool):
            return Fraction(x)
        raise FieldMismatchError(f"not a rational scalar: {x!r}")

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def from_int(self, n):
        return Fraction(n)

    def parse(self, s: str):
        return Fraction(s.strip())

    def to_str(self, x) -> str:
        return str(x)

    def __repr__(self):
        return "QQ"


@dataclass(frozen=True)
class PrimeField:
    """Residues modulo a prime, kept in [0, p).  Primality checked once."""

    p: int

    def __post_init__(self):
        if not _is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def check(self, x):
        if isinstance(x, int) and not isinstance(x, bool):
            return x % self.p
        raise FieldMismatchError(f"not a residue mod {self.p}: {x!r}")

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def from_int(self, n):
        return n % self.p

    def parse(self, s: str):
        return int(s.strip()) % self.p

    def to_str(self, x) -> str:
        return str(x)

    def __repr__(self):
        return f"GF({self.p})"


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


QQ = RationalField()


@dataclass(frozen=True)
class Matrix:
    """An immutable rows x cols matrix with row-major entries over one field."""

    field: object
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative dimension")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} "
                f"entries, got {len(self.entries)}"
            )
        object.__setattr__(
            self, "entries", tuple(self.field.check(x) for x in self.entries)
        )

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_rows(cls, field, rows) -> "Matrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(field, len(rows), ncols, tuple(x for r in rows for x in r))

    @classmethod
    def zeros(cls, field, rows, cols) -> "Matrix":
        return cls(field, rows, cols, (field.zero,) * (rows * cols))

    @classmethod
    def identity(cls, field, n) -> "Matrix":
        e = [field.zero] * (n * n)
        for i in range(n):
            e[i * n + i] = field.one
        return cls(field, n, n, tuple(e))

    @classmethod
    def basis_vector(cls, field, n, i) -> "Matrix":
        e = [field.zero] * n
        e[i] = field.one
        return cls(field, n, 1, tuple(e))

    @classmethod
    def column(cls, field, values) -> "Matrix":
        values = list(values)
        return cls(field, len(values), 1, tuple(values))

    # -- access ------------------------------------------------------------

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row_list(self, i):
        return list(self.entries[i * self.cols : (i + 1) * self.cols])

    def col_vector(self, j) -> "Matrix":
        return Matrix(
            self.field,
            self.rows,
            1,
            tuple(self.entries[i * self.cols + j] for i in range(self.rows)),
        )

    def columns(self):
        return [
            tuple(self.entries[i * self.cols + j] for i in range(self.rows))
            for j in range(self.cols)
        ]

    @property
    def is_zero(self) -> bool:
        z = self.field.zero
        return all(x == z for x in self.entries)

    # -- arithmetic --------------------------------------------------------

    def _same_field(self, other):
        if self.field != other.field:
            raise FieldMismatchError(f"{self.field!r} vs {other.field!r}")

    def __add__(self, other):
        self._same_field(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in addition")
        F = self.field
        return Matrix(
            F,
            self.rows,
            self.cols,
            tuple(F.add(a, b) for a, b in zip(self.entries, other.entries)),
        )

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        F = self.field
        return Matrix(F, self.rows, self.cols, tuple(F.neg(a) for a in self.entries))

    def scale(self, c) -> "Matrix":
        F = self.field
        c = F.check(c)
        return Matrix(F, self.rows, self.cols, tuple(F.mul(c, a) for a in self.entries))

    def __matmul__(self, other) -> "Matrix":
        self._same_field(other)
        if self.cols != other.rows:
            raise ValueError(
                f"composition mismatch: {self.rows}x{self.cols} @ {other.rows}x{other.cols}"
            )
        F = self.field
        zero = F.zero
        out = [zero] * (self.rows * other.cols)
        oc = other.cols
        for i in range(self.rows):
            abase = i * self.cols
            rbase = i * oc
            for k in range(self.cols):
                a = self.entries[abase + k]
                if a == zero:
                    continue
                bbase = k * oc
                for j in range(oc):
                    b = other.entries[bbase + j]
                    if b != zero:
                        out[rbase + j] = F.add(out[rbase + j], F.mul(a, b))
        return Matrix(F, self.rows, oc, tuple(out))

    def transpose(self) -> "Matrix":
        return Matrix(
            self.field,
            self.cols,
            self.rows,
            tuple(
                self.entries[i * self.cols + j]
                for j in range(self.cols)
                for i in range(self.rows)
            ),
        )

    def trace(self):
        if self.rows != self.cols:
            raise ValueError("trace of a non-square matrix")
        F = self.field
        t = F.zero
        for i in range(self.rows):
            t = F.add(t, self.entries[i * self.cols + i])
        return t

    def __str__(self):
        ts = self.field.to_str
        return "[" + "; ".join(
            " ".join(ts(x) for x in self.row_list(i)) for i in range(self.rows)
        ) + "]"


def trace_of_product(a: Matrix, b: Matrix):
    """trace(a @ b) without forming the product."""
    a._same_field(b)
    if a.cols != b.rows or a.rows != b.cols:
        raise ValueError("trace_of_product shape mismatch")
    F = a.field
    zero = F.zero
    t = zero
    for i in range(a.rows):
        abase = i * a.cols
        for k in range(a.cols):
            x = a.entries[abase + k]
            if x != zero:
                y = b.entries[k * b.cols + i]
                if y != zero:
                    t = F.add(t, F.mul(x, y))
    return t


def hstack(mats) -> Matrix:
    mats = list(mats)
    F = mats[0].field
    rows = mats[0].rows
    if any(m.rows != rows or m.field != F for m in mats):
        raise ValueError("hstack: incompatible blocks")
    out = []
    for i in range(rows):
        for m in mats:
            out.extend(m.entries[i * m.cols : (i + 1) * m.cols])
    return Matrix(F, rows, sum(m.cols for m in mats), tuple(out))


def vstack(mats) -> Matrix:
    mats = list(mats)
    F = mats[0].field
    cols = mats[0].cols
    if any(m.cols != cols or m.field != F for m in mats):
        raise ValueError("vstack: incompatible blocks")
    out = []
    for m in mats:
        out.extend(m.entries)
    return Matrix(F, sum(m.rows for m in mats), cols, tuple(out))


def rref(m: Matrix) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row echelon form and pivot columns.

    Pivot rule: leftmost nonzero pivot, scaled to 1, full elimination above
    and below.  This fixes all echelon bases downstream.
    """
    F = m.field
    zero = F.zero
    rows = [m.row_list(i) for i in range(m.rows)]
    pivots = []
    pr = 0
    for pc in range(m.cols):
        if pr == m.rows:
            break
        hit = next((r for r in range(pr, m.rows) if rows[r][pc] != zero), None)
        if hit is None:
            continue
        rows[pr], rows[hit] = rows[hit], rows[pr]
        inv = F.inv(rows[pr][pc])
        rows[pr] = [F.mul(inv, x) for x in rows[pr]]
        for r in range(m.rows):
            if r != pr and rows[r][pc] != zero:
                c = rows[r][pc]
                rows[r] = [F.sub(x, F.mul(c, y)) for x, y in zip(rows[r], rows[pr])]
        pivots.append(pc)
        pr += 1
    return Matrix(F, m.rows, m.cols, tuple(x for r in rows for x in r)), tuple(pivots)


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


def kernel_basis(m: Matrix) -> Matrix:
    """Columns form the deterministic echelon basis of ker(m)."""
    F = m.field
    r, pivots = rref(m)
    pivset = set(pivots)
    free = [j for j in range(m.cols) if j not in pivset]
    cols = []
    for f in free:
        v = [F.zero] * m.cols
        v[f] = F.one
        for t, pc in enumerate(pivots):
            v[pc] = F.neg(r[t, f])
        cols.append(v)
    return Matrix(
        F,
        m.cols,
        len(free),
        tuple(cols[j][i] for i in range(m.cols) for j in range(len(free))),
    )


@dataclass(frozen=True)
class QuotientSpace:
    """A quotient k^n -> k^q presented by a projection with a chosen section.

    ``projection @ section`` is the q x q identity, and the kernel of
    ``projection`` is exactly the subspace being quotiented out.
    """

    ambient_dim: int
    projection: Matrix
    section: Matrix

    def __post_init__(self):
        q = self.projection.rows
        if self.projection.cols != self.ambient_dim or self.section.rows != self.ambient_dim:
            raise ValueError("quotient shape mismatch")
        if self.section.cols != q:
            raise ValueError("section shape mismatch")
        if self.projection @ self.section != Matrix.identity(self.projection.field, q):
            raise ValueError("projection @ section is not the identity")

    @property
    def dim(self) -> int:
        return self.projection.rows


def cokernel(m: Matrix) -> QuotientSpace:
    """Quotient of the target of ``m`` by its column space.

    The projection drops the vector onto the non-pivot coordinates after
    reducing against the echelon basis of the column space; the section embeds
    the non-pivot coordinates back.
    """
    F = m.field
    n = m.rows
    r, pivots = rref(m.transpose())
    pivset = set(pivots)
    free = [j for j in range(n) if j not in pivset]
    q = len(free)
    proj = [[F.zero] * n for _ in range(q)]
    for u, f in enumerate(free):
        proj[u][f] = F.one
        for t, pc in enumerate(pivots):
            proj[u][pc] = F.neg(r[t, f])
    sec = [[F.zero] * q for _ in range(n)]
    for u, f in enumerate(free):
        sec[f][u] = F.one
    return QuotientSpace(
        n, Matrix.from_rows(F, proj) if q else Matrix(F, 0, n, ()),
        Matrix.from_rows(F, sec) if n else Matrix(F, 0, q, ()),
    )


def solve(m: Matrix, rhs: Matrix):
    """A deterministic particular solution of m @ x = rhs, or None.

    Free variables are set to zero, so the output is reproducible.  ``rhs``
    may have several columns; None means at least one column is inconsistent.
    """
    m._same_field(rhs)
    if m.rows != rhs.rows:
        raise ValueError("solve: row mismatch")
    F = m.field
    aug, pivots = rref(hstack([m, rhs]))
    for t, pc in enumerate(pivots):
        if pc >= m.cols:
            return None
    out = [[F.zero] * rhs.cols for _ in range(m.cols)]
    for t, pc in enumerate(pivots):
        for j in range(rhs.cols):
            out[pc][j] = aug[t, m.cols + j]
    return Matrix.from_rows(F, out) if m.cols else Matrix(F, 0, rhs.cols, ())


def inverse(m: Matrix) -> Matrix:
    if m.rows != m.cols:
        raise ValueError("inverse of a non-square matrix")
    sol = solve(m, Matrix.identity(m.field, m.rows))
    if sol is None or m @ sol != Matrix.identity(m.field, m.rows):
        raise NoSolutionError("matrix is singular")
    return sol


def is_invertible(m: Matrix) -> bool:
    return m.rows == m.cols and rank(m) == m.rows


def kron(a: Matrix, b: Matrix) -> Matrix:
    """Kronecker product; row index (i, k) -> i * b.rows + k, row-major."""
    a._same_field(b)
    F = a.field
    zero = F.zero
    rows = a.rows * b.rows
    cols = a.cols * b.cols
    out = [zero] * (rows * cols)
    for i in range(a.rows):
        for j in range(a.cols):
            x = a.entries[i * a.cols + j]
            if x == zero:
                continue
            rbase = i * b.rows
            cbase = j * b.cols
            for k in range(b.rows):
                brow = k * b.cols
                obase = (rbase + k) * cols + cbase
                for l in range(b.cols):
                    y = b.entries[brow + l]
                    if y != zero:
                        out[obase + l] = F.mul(x, y)
    return Matrix(F, rows, cols, tuple(out))


def vec(m: Matrix) -> Matrix:
    """Row-major flattening of a matrix into a column vector.

    Satisfies vec(a @ x @ b) == kron(a, b.transpose()) @ vec(x).
    """
    return Matrix(m.field, m.rows * m.cols, 1, m.entries)


def unvec(v: Matrix, rows: int, cols: int) -> Matrix:
    if v.cols != 1 or v.rows != rows * cols:
        raise ValueError("unvec shape mismatch")
    return Matrix(v.field, rows, cols, v.entries)
