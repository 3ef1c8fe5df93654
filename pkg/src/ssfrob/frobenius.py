"""Separable symmetric Frobenius algebras presented by structure constants.

An algebra is a finite basis e_1..e_n, multiplication constants c_ijk with
e_i e_j = sum_k c_ijk e_k, a unit vector and a linear form eps.  Validation
checks associativity, the unit law, symmetry eps(ab) = eps(ba),
nondegeneracy of the Gram matrix G_ij = eps(e_i e_j), and separability in
the operational form "the window element w = sum_i e_i p^i is invertible and
central", where {p^i} is the eps-dual basis.

Constructors cover the standard sources of examples: group algebras, matrix
algebras, tensor products and opposites.  Forms with any invertible window
are accepted; all adjunction formulas downstream carry explicit w^-1 twists,
so e.g. the plain matrix trace works unrenormalised.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .linalg import (
    FieldMismatchError,
    Matrix,
    QQ,
    hstack,
    inverse,
    is_invertible,
    kernel_basis,
    kron,
    solve,
    vstack,
)
from .report import ValidationReport, digest_of


class AlgebraError(ValueError):
    """Structurally invalid algebra input."""


@dataclass(frozen=True, eq=False)
class FrobeniusAlgebra:
    """A finite-dimensional algebra with a symmetric Frobenius form.

    Instances are immutable and hashed by identity; derived data (Gram
    inverse, dual basis, window, center) is cached per instance.
    """

    name: str
    field: object
    dim: int
    basis_labels: tuple
    mult: tuple  # structure constants, c[i][j][k] at (i * n + j) * n + k
    unit: Matrix  # n x 1
    form: Matrix  # n x 1, eps(e_i)

    def __post_init__(self):
        n = self.dim
        if len(self.basis_labels) != n:
            raise AlgebraError("basis label count != dim")
        if len(set(self.basis_labels)) != n:
            raise AlgebraError("duplicate basis labels")
        if len(self.mult) != n**3:
            raise AlgebraError("structure constant count != dim^3")
        object.__setattr__(self, "mult", tuple(self.field.check(x) for x in self.mult))
        if (self.unit.rows, self.unit.cols) != (n, 1):
            raise AlgebraError("unit is not an n x 1 vector")
        if (self.form.rows, self.form.cols) != (n, 1):
            raise AlgebraError("form is not an n x 1 vector")
        if self.unit.field != self.field or self.form.field != self.field:
            raise FieldMismatchError("unit/form field mismatch")

    def c(self, i, j, k):
        return self.mult[(i * self.dim + j) * self.dim + k]

    def basis_element(self, i) -> Matrix:
        return Matrix.basis_vector(self.field, self.dim, i)

    def element(self, coeffs) -> Matrix:
        """Element from a {label: scalar} mapping."""
        F = self.field
        v = [F.zero] * self.dim
        for lab, x in coeffs.items():
            v[self.basis_labels.index(lab)] = F.check(x)
        return Matrix.column(F, v)

    def left_mult(self, x: Matrix) -> Matrix:
        """Matrix of y -> x * y in the chosen basis."""
        F = self.field
        n = self.dim
        out = [F.zero] * (n * n)
        for i in range(n):
            xi = x[i, 0]
            if xi == F.zero:
                continue
            for j in range(n):
                base = (i * n + j) * n
                for k in range(n):
                    ck = self.mult[base + k]
                    if ck != F.zero:
                        out[k * n + j] = F.add(out[k * n + j], F.mul(xi, ck))
        return Matrix(F, n, n, tuple(out))

    def right_mult(self, x: Matrix) -> Matrix:
        """Matrix of y -> y * x in the chosen basis."""
        F = self.field
        n = self.dim
        out = [F.zero] * (n * n)
        for j in range(n):
            xj = x[j, 0]
            if xj == F.zero:
                continue
            for i in range(n):
                base = (i * n + j) * n
                for k in range(n):
                    ck = self.mult[base + k]
                    if ck != F.zero:
                        out[k * n + i] = F.add(out[k * n + i], F.mul(xj, ck))
        return Matrix(F, n, n, tuple(out))

    def multiply(self, x: Matrix, y: Matrix) -> Matrix:
        return self.left_mult(x) @ y

    def counit(self, x: Matrix):
        F = self.field
        t = F.zero
        for i in range(self.dim):
            t = F.add(t, F.mul(self.form[i, 0], x[i, 0]))
        return t

    def gram(self) -> Matrix:
        """G_ij = eps(e_i e_j)."""
        F = self.field
        n = self.dim
        out = []
        for i in range(n):
            for j in range(n):
                t = F.zero
                base = (i * n + j) * n
                for k in range(n):
                    t = F.add(t, F.mul(self.mult[base + k], self.form[k, 0]))
                out.append(t)
        return Matrix(F, n, n, tuple(out))

    def is_central(self, x: Matrix) -> bool:
        return self.left_mult(x) == self.right_mult(x)

    def format_element(self, x: Matrix) -> str:
        F = self.field
        terms = []
        for i in range(self.dim):
            v = x[i, 0]
            if v == F.zero:
                continue
            s = F.to_str(v)
            terms.append(s if self.dim == 1 else f"{s}*{self.basis_labels[i]}")
        return " + ".join(terms) if terms else F.to_str(F.zero)

    def __repr__(self):
        return f"FrobeniusAlgebra({self.name}, dim={self.dim})"


@dataclass(frozen=True)
class DualData:
    """Gram data of the form: dual basis, window element and its inverse."""

    gram: Matrix
    gram_inv: Matrix
    dual_basis: tuple  # p^i as n x 1 vectors, eps(e_i p^j) = delta_ij
    window: Matrix
    window_inv: Matrix


@dataclass(frozen=True)
class CenterData:
    """Echelon basis of the center with its induced multiplication table."""

    basis: tuple  # z_t as n x 1 vectors
    mult: tuple  # structure constants on the center basis, q^3 scalars
    unit_coords: Matrix  # coordinates of 1 in the center basis, q x 1

    @property
    def dim(self):
        return len(self.basis)

    def c(self, i, j, k):
        q = self.dim
        return self.mult[(i * q + j) * q + k]


def validate(a: FrobeniusAlgebra) -> ValidationReport:
    """One pass/fail entry per axiom, with a witness triple on failure."""
    F = a.field
    n = a.dim
    rep = ValidationReport(f"algebra {a.name}", digest_of(a.name, n, a.mult, a.form.entries))

    witness = None
    for i, j, k in itertools.product(range(n), repeat=3):
        lhs = a.multiply(a.multiply(a.basis_element(i), a.basis_element(j)), a.basis_element(k))
        rhs = a.multiply(a.basis_element(i), a.multiply(a.basis_element(j), a.basis_element(k)))
        if lhs != rhs:
            witness = f"(e_{i} e_{j}) e_{k} != e_{i} (e_{j} e_{k})"
            break
    rep.add("associativity", witness is None, witness)

    witness = None
    for i in range(n):
        e = a.basis_element(i)
        if a.multiply(a.unit, e) != e or a.multiply(e, a.unit) != e:
            witness = f"unit law fails on e_{i}"
            break
    rep.add("unit", witness is None, witness)

    g = a.gram()
    sym = g == g.transpose()
    rep.add("symmetry", sym, None if sym else "eps(e_i e_j) != eps(e_j e_i)")

    nondeg = is_invertible(g)
    rep.add("nondegeneracy", nondeg, None if nondeg else "Gram matrix is singular")

    if nondeg:
        dd = _dual_data_unchecked(a)
        inv_ok = dd is not None
        rep.add("window invertible", inv_ok, None if inv_ok else "window has no inverse")
        if inv_ok:
            central = a.is_central(dd.window)
            rep.add("window central", central, None if central else "w a != a w for some basis a")
    else:
        rep.add("window invertible", False, "no dual basis: Gram singular")
        rep.add("window central", False, "no dual basis: Gram singular")
    return rep


def _dual_data_unchecked(a: FrobeniusAlgebra):
    g = a.gram()
    try:
        ginv = inverse(g)
    except Exception:
        return None
    duals = tuple(ginv.col_vector(i) for i in range(a.dim))
    F = a.field
    w = Matrix.zeros(F, a.dim, 1)
    for i in range(a.dim):
        w = w + a.multiply(a.basis_element(i), duals[i])
    winv = solve(a.left_mult(w), a.unit)
    if winv is None or a.multiply(w, winv) != a.unit:
        return None
    return DualData(g, ginv, duals, w, winv)


@lru_cache(maxsize=None)
def dual_data(a: FrobeniusAlgebra) -> DualData:
    """Dual basis p^i = sum_j (G^-1)_ji e_j, window w = sum_i e_i p^i, w^-1.

    Cached per algebra; safe under concurrent first access (worst case the
    value is computed twice, both results are equal and immutable).
    """
    dd = _dual_data_unchecked(a)
    if dd is None:
        raise AlgebraError(f"{a.name}: Gram matrix singular or window not invertible")
    return dd


@lru_cache(maxsize=None)
def center(a: FrobeniusAlgebra) -> CenterData:
    """Solve z e_i = e_i z for all i; echelon basis plus multiplication table."""
    F = a.field
    n = a.dim
    blocks = [a.left_mult(a.basis_element(i)) - a.right_mult(a.basis_element(i)) for i in range(n)]
    basis_mat = kernel_basis(vstack(blocks)) if blocks else Matrix.identity(F, n)
    q = basis_mat.cols
    basis = tuple(basis_mat.col_vector(t) for t in range(q))
    mult = []
    for i in range(q):
        for j in range(q):
            prod = a.multiply(basis[i], basis[j])
            coords = solve(basis_mat, prod)
            if coords is None:
                raise AlgebraError("center does not close under multiplication")
            mult.extend(coords.entries)
    unit_coords = solve(basis_mat, a.unit)
    if unit_coords is None:
        raise AlgebraError("unit is not central")
    return CenterData(basis, tuple(mult), unit_coords)


def center_basis_matrix(a: FrobeniusAlgebra) -> Matrix:
    return hstack([z for z in center(a).basis]) if center(a).dim else Matrix(a.field, a.dim, 0, ())


# -- constructors -----------------------------------------------------------


def group_algebra(table, name, field=QQ, labels=None, scale=None) -> FrobeniusAlgebra:
    """Group algebra k[G] from a Cayley table of indices, eps = scale * a_e.

    The table is checked to be a group (closure, associativity, identity,
    inverses).  Default scale |G| makes the window element 1.
    """
    n = len(table)
    if any(len(row) != n for row in table):
        raise AlgebraError("Cayley table is not square")
    if any(not (0 <= x < n) for row in table for x in row):
        raise AlgebraError("Cayley table entry out of range")
    for i, j, k in itertools.product(range(n), repeat=3):
        if table[table[i][j]][k] != table[i][table[j][k]]:
            raise AlgebraError(f"table not associative at ({i},{j},{k})")
    ident = next(
        (e for e in range(n) if all(table[e][i] == i and table[i][e] == i for i in range(n))),
        None,
    )
    if ident is None:
        raise AlgebraError("table has no identity")
    for i in range(n):
        if not any(table[i][j] == ident for j in range(n)):
            raise AlgebraError(f"element {i} has no inverse")

    F = field
    if labels is None:
        labels = tuple("e" if i == ident else f"g{i}" for i in range(n))
    mult = [F.zero] * (n**3)
    for i in range(n):
        for j in range(n):
            mult[(i * n + j) * n + table[i][j]] = F.one
    unit = Matrix.basis_vector(F, n, ident)
    s = F.from_int(n) if scale is None else F.check(scale)
    form = [F.zero] * n
    form[ident] = s
    return FrobeniusAlgebra(name, F, n, tuple(labels), tuple(mult), unit, Matrix.column(F, form))


def matrix_algebra(n, name=None, field=QQ, scale=None) -> FrobeniusAlgebra:
    """Full matrix algebra with basis E_ij and eps = scale * trace.

    Default scale n makes the window element the identity; scale 1 is the
    plain trace, with window (n/scale) * 1.
    """
    if n < 1:
        raise AlgebraError("matrix algebra needs n >= 1")
    F = field
    s = F.from_int(n) if scale is None else F.check(scale)
    if s == F.zero:
        raise AlgebraError("scale must be nonzero")
    d = n * n
    labels = tuple(f"E{i + 1}{j + 1}" for i in range(n) for j in range(n))
    mult = [F.zero] * (d**3)
    for i, j, k, l in itertools.product(range(n), repeat=4):
        if j == k:
            a, b, c = i * n + j, k * n + l, i * n + l
            mult[(a * d + b) * d + c] = F.one
    unit = [F.zero] * d
    form = [F.zero] * d
    for i in range(n):
        unit[i * n + i] = F.one
        form[i * n + i] = s
    return FrobeniusAlgebra(
        name or f"mat{n}", F, d, labels, tuple(mult),
        Matrix.column(F, unit), Matrix.column(F, form),
    )


@lru_cache(maxsize=None)
def trivial_algebra(field=QQ) -> FrobeniusAlgebra:
    """The ground field as a Frobenius algebra; shared instance per field."""
    return matrix_algebra(1, name="k", field=field, scale=1)


def tensor_algebra(a: FrobeniusAlgebra, b: FrobeniusAlgebra, name=None) -> FrobeniusAlgebra:
    """Tensor product over the ground field, eps = eps_a * eps_b componentwise."""
    if a.field != b.field:
        raise FieldMismatchError("tensor of algebras over different fields")
    F = a.field
    n, m = a.dim, b.dim
    d = n * m
    labels = tuple(f"{la}|{lb}" for la in a.basis_labels for lb in b.basis_labels)
    mult = [F.zero] * (d**3)
    for i1, i2 in itertools.product(range(n), repeat=2):
        for j1, j2 in itertools.product(range(m), repeat=2):
            r, s = i1 * m + j1, i2 * m + j2
            for k1 in range(n):
                ca = a.c(i1, i2, k1)
                if ca == F.zero:
                    continue
                for k2 in range(m):
                    cb = b.c(j1, j2, k2)
                    if cb != F.zero:
                        t = k1 * m + k2
                        mult[(r * d + s) * d + t] = F.add(
                            mult[(r * d + s) * d + t], F.mul(ca, cb)
                        )
    return FrobeniusAlgebra(
        name or f"({a.name}(x){b.name})", F, d, labels, tuple(mult),
        kron(a.unit, b.unit), kron(a.form, b.form),
    )


def opposite(a: FrobeniusAlgebra, name=None) -> FrobeniusAlgebra:
    """Same space and form, reversed multiplication."""
    n = a.dim
    mult = [a.field.zero] * (n**3)
    for i, j, k in itertools.product(range(n), repeat=3):
        mult[(i * n + j) * n + k] = a.c(j, i, k)
    return FrobeniusAlgebra(
        name or f"{a.name}^op", a.field, n, a.basis_labels, tuple(mult), a.unit, a.form
    )


def rescale_form(a: FrobeniusAlgebra, lam, name=None) -> FrobeniusAlgebra:
    """Replace eps by lam * eps (lam invertible); dual data rescales by 1/lam."""
    F = a.field
    lam = F.check(lam)
    if lam == F.zero:
        raise AlgebraError("rescaling by zero")
    return FrobeniusAlgebra(
        name or f"{a.name}~", F, a.dim, a.basis_labels, a.mult, a.unit, a.form.scale(lam)
    )


# -- small group tables ------------------------------------------------------


def cyclic_group_table(n: int):
    return [[(i + j) % n for j in range(n)] for i in range(n)]


def symmetric_group_table(n: int):
    """Cayley table of S_n, permutations in lexicographic one-line order.

    Composition convention: (p * q)(x) = p(q(x)).
    """
    perms = sorted(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    return [
        [index[tuple(p[q[x]] for x in range(n))] for q in perms] for p in perms
    ]


def symmetric_group_labels(n: int):
    perms = sorted(itertools.permutations(range(n)))
    return tuple("e" if p == tuple(range(n)) else "".join(map(str, p)) for p in perms)
