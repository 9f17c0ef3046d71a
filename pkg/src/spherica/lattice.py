"""Exact linear algebra over Z: Hermite and Smith normal forms, sublattices,
and finitely generated abelian groups with torsion.

All entries are arbitrary-precision Python integers; matrices are lists (or
tuples) of row tuples, and lattice elements are row vectors.  The canonical
Hermite form used throughout is row-style with pivots at the first nonzero
column of each row, pivot columns strictly increasing, positive pivots, and
the off-pivot entries in each pivot column reduced into ``[0, pivot)``.
This makes the form unique for a given row span, so two sublattices are
equal iff their stored bases are equal.
"""

from __future__ import annotations

from dataclasses import dataclass


class LatticeError(ValueError):
    pass


Matrix = list[list[int]]


def _copy(m) -> Matrix:
    return [list(row) for row in m]


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a, b) -> Matrix:
    rows, inner, cols = len(a), len(b), len(b[0]) if b else 0
    out = [[0] * cols for _ in range(rows)]
    for i in range(rows):
        ai = a[i]
        for k in range(inner):
            aik = ai[k]
            if aik:
                bk = b[k]
                row = out[i]
                for j in range(cols):
                    row[j] += aik * bk[j]
    return out


def det(m) -> int:
    """Exact determinant by fraction-free Gaussian elimination (Bareiss)."""
    n = len(m)
    if n == 0:
        return 1
    a = _copy(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def hnf(m) -> tuple[Matrix, Matrix]:
    """Row Hermite normal form.

    Returns ``(H, U)`` with ``U`` unimodular, ``H == U @ m``, ``H`` in the
    canonical form described in the module docstring (zero rows at the
    bottom).
    """
    a = _copy(m)
    rows = len(a)
    cols = len(a[0]) if rows else 0
    u = identity(rows)
    pivot_row = 0
    pivots = []
    for col in range(cols):
        # find a row at or below pivot_row with nonzero entry in col
        nz = [i for i in range(pivot_row, rows) if a[i][col] != 0]
        if not nz:
            continue
        # gcd elimination below pivot_row
        while True:
            nz = [i for i in range(pivot_row, rows) if a[i][col] != 0]
            if len(nz) <= 1:
                break
            nz.sort(key=lambda i: abs(a[i][col]))
            i0 = nz[0]
            for i in nz[1:]:
                q = a[i][col] // a[i0][col]
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[i0])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[i0])]
        i0 = next(i for i in range(pivot_row, rows) if a[i][col] != 0)
        if i0 != pivot_row:
            a[i0], a[pivot_row] = a[pivot_row], a[i0]
            u[i0], u[pivot_row] = u[pivot_row], u[i0]
        if a[pivot_row][col] < 0:
            a[pivot_row] = [-x for x in a[pivot_row]]
            u[pivot_row] = [-x for x in u[pivot_row]]
        # reduce entries above the pivot into [0, pivot)
        p = a[pivot_row][col]
        for i in range(pivot_row):
            q = a[i][col] // p
            if q:
                a[i] = [x - q * y for x, y in zip(a[i], a[pivot_row])]
                u[i] = [x - q * y for x, y in zip(u[i], u[pivot_row])]
        pivots.append(col)
        pivot_row += 1
        if pivot_row == rows:
            break
    return a, u


def snf(m) -> tuple[Matrix, Matrix, Matrix]:
    """Smith normal form: returns ``(S, U, V)`` with ``U @ m @ V == S``,
    ``U``/``V`` unimodular and ``S`` diagonal with divisibility
    ``d1 | d2 | ...``."""
    a = _copy(m)
    rows = len(a)
    cols = len(a[0]) if rows else 0
    u = identity(rows)
    v = identity(cols)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, q):
        # row_dst += q * row_src
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, q):
        for row in a:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    def clear_at(t: int):
        """Reduce row t and column t to a single entry at (t, t)."""
        while True:
            # bring the minimal-magnitude nonzero of col/row t to the pivot
            entries = [(abs(a[i][t]), i, t) for i in range(t, rows) if a[i][t]]
            entries += [(abs(a[t][j]), t, j) for j in range(t, cols) if a[t][j]]
            if not entries:
                return False
            _, i0, j0 = min(entries)
            if i0 != t:
                swap_rows(t, i0)
            elif j0 != t:
                swap_cols(t, j0)
            done = True
            for i in range(t + 1, rows):
                if a[i][t]:
                    add_row(t, i, -(a[i][t] // a[t][t]))
                    if a[i][t]:
                        done = False
            for j in range(t + 1, cols):
                if a[t][j]:
                    add_col(t, j, -(a[t][j] // a[t][t]))
                    if a[t][j]:
                        done = False
            if done and all(a[i][t] == 0 for i in range(t + 1, rows)) and all(
                a[t][j] == 0 for j in range(t + 1, cols)
            ):
                return True

    t = 0
    while t < min(rows, cols):
        if not any(a[i][j] for i in range(t, rows) for j in range(t, cols)):
            break
        clear_at(t)
        # divisibility: a[t][t] must divide every remaining entry
        while True:
            bad = None
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if a[i][j] % a[t][t] != 0:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(bad, t, 1)
            clear_at(t)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return a, u, v


def hnf_snf(m):
    """Both normal forms of ``m``: ``(hnf, snf, (U, V))`` with
    ``U @ m @ V == snf``."""
    h, _ = hnf(m)
    s, u, v = snf(m)
    return h, s, (u, v)


def kernel(m) -> list[tuple[int, ...]]:
    """Basis of the left kernel ``{x : x @ m == 0}`` (row vectors)."""
    h, u = hnf(m)
    out = []
    for row_h, row_u in zip(h, u):
        if all(x == 0 for x in row_h):
            out.append(tuple(row_u))
    return out


def solve_integer(m, b):
    """One integer solution ``x`` of ``x @ m == b`` plus a kernel basis.

    Returns ``(x, kernel_rows)`` or ``None`` when no integer solution
    exists.  ``m`` has shape k x n, ``x`` length k, ``b`` length n.
    """
    rows = len(m)
    if rows == 0:
        return (tuple(), []) if all(c == 0 for c in b) else None
    h, u = hnf(m)
    x_h = [0] * rows
    residual = list(b)
    for i, row in enumerate(h):
        piv_col = next((j for j, c in enumerate(row) if c != 0), None)
        if piv_col is None:
            continue
        if residual[piv_col] % row[piv_col] != 0:
            return None
        q = residual[piv_col] // row[piv_col]
        x_h[i] = q
        residual = [r - q * c for r, c in zip(residual, row)]
    if any(r != 0 for r in residual):
        return None
    # x_h is expressed against H = U m, so x = x_h U
    x = [0] * rows
    for i, coeff in enumerate(x_h):
        if coeff:
            x = [xx + coeff * uu for xx, uu in zip(x, u[i])]
    ker = [tuple(u[i]) for i, row in enumerate(h) if all(c == 0 for c in row)]
    return tuple(x), ker


@dataclass(frozen=True)
class Sublattice:
    """A sublattice of Z^ambient_rank, stored by its canonical HNF basis."""

    ambient_rank: int
    basis: tuple[tuple[int, ...], ...]

    @staticmethod
    def from_rows(ambient_rank: int, rows) -> "Sublattice":
        rows = [tuple(r) for r in rows]
        for r in rows:
            if len(r) != ambient_rank:
                raise LatticeError(
                    f"row length {len(r)} does not match ambient rank {ambient_rank}"
                )
        if not rows:
            return Sublattice(ambient_rank, ())
        h, _ = hnf(rows)
        basis = tuple(tuple(r) for r in h if any(r))
        return Sublattice(ambient_rank, basis)

    @staticmethod
    def zero(ambient_rank: int) -> "Sublattice":
        return Sublattice(ambient_rank, ())

    @staticmethod
    def full(ambient_rank: int) -> "Sublattice":
        return Sublattice.from_rows(ambient_rank, identity(ambient_rank))

    @property
    def rank(self) -> int:
        return len(self.basis)

    def solve_membership(self, v) -> tuple[int, ...] | None:
        """Coordinates of ``v`` in the HNF basis, or None if ``v`` is not in
        the lattice."""
        v = tuple(v)
        if len(v) != self.ambient_rank:
            raise LatticeError("dimension mismatch")
        coords = []
        residual = list(v)
        for row in self.basis:
            piv_col = next(j for j, c in enumerate(row) if c != 0)
            if residual[piv_col] % row[piv_col] != 0:
                return None
            q = residual[piv_col] // row[piv_col]
            coords.append(q)
            residual = [r - q * c for r, c in zip(residual, row)]
        if any(r != 0 for r in residual):
            return None
        return tuple(coords)

    def __contains__(self, v) -> bool:
        return self.solve_membership(v) is not None

    def sum(self, other: "Sublattice") -> "Sublattice":
        if other.ambient_rank != self.ambient_rank:
            raise LatticeError("ambient rank mismatch")
        return Sublattice.from_rows(self.ambient_rank, list(self.basis) + list(other.basis))

    def intersection(self, other: "Sublattice") -> "Sublattice":
        """Intersection via the kernel of the stacked basis."""
        if other.ambient_rank != self.ambient_rank:
            raise LatticeError("ambient rank mismatch")
        if not self.basis or not other.basis:
            return Sublattice.zero(self.ambient_rank)
        stacked = [list(r) for r in self.basis] + [list(r) for r in other.basis]
        rows = []
        for x in kernel(stacked):
            vec = [0] * self.ambient_rank
            for coeff, row in zip(x[: len(self.basis)], self.basis):
                if coeff:
                    vec = [a + coeff * b for a, b in zip(vec, row)]
            rows.append(vec)
        return Sublattice.from_rows(self.ambient_rank, rows)

    def restrict_rows(self, keep_coords) -> "Sublattice":
        """Sublattice of elements supported on ``keep_coords`` (the others
        forced to zero), expressed in the same ambient space."""
        drop = [j for j in range(self.ambient_rank) if j not in set(keep_coords)]
        if not self.basis:
            return self
        proj = [[row[j] for j in drop] for row in self.basis]
        rows = []
        for x in kernel(proj) if drop else [tuple(1 if i == k else 0 for i in range(len(self.basis))) for k in range(len(self.basis))]:
            vec = [0] * self.ambient_rank
            for coeff, row in zip(x, self.basis):
                if coeff:
                    vec = [a + coeff * b for a, b in zip(vec, row)]
            rows.append(vec)
        return Sublattice.from_rows(self.ambient_rank, rows)


@dataclass(frozen=True)
class FgAbelianGroup:
    """Quotient Z^n / (row span of relations), with a normal form on
    elements.

    Elements are row vectors of length n; ``reduce`` maps each coset to a
    unique tuple, so two vectors represent the same group element iff their
    normal forms are equal.
    """

    n: int
    relations: tuple[tuple[int, ...], ...]
    _v: tuple[tuple[int, ...], ...]
    _divisors: tuple[int, ...]

    @staticmethod
    def quotient(n: int, relations) -> "FgAbelianGroup":
        rel_rows = [tuple(r) for r in relations]
        for r in rel_rows:
            if len(r) != n:
                raise LatticeError("relation length does not match ambient rank")
        if rel_rows:
            s, _, v = snf(rel_rows)
        else:
            s, v = [], identity(n)
        # diagonal of the SNF padded with zeros up to the ambient rank
        divisors = [s[i][i] if i < len(s) else 0 for i in range(n)]
        return FgAbelianGroup(
            n,
            tuple(rel_rows),
            tuple(tuple(row) for row in v),
            tuple(divisors),
        )

    def reduce(self, vec) -> tuple[int, ...]:
        vec = tuple(vec)
        if len(vec) != self.n:
            raise LatticeError("dimension mismatch")
        w = [
            sum(vec[i] * self._v[i][j] for i in range(self.n))
            for j in range(self.n)
        ]
        out = []
        for wj, d in zip(w, self._divisors):
            out.append(wj % d if d > 0 else wj)
        return tuple(out)

    def is_zero(self, vec) -> bool:
        return all(c == 0 for c in self.reduce(vec))

    def same(self, a, b) -> bool:
        return self.reduce(a) == self.reduce(b)

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        """The nontrivial finite invariant factors ``d1 | d2 | ...``."""
        return tuple(d for d in self._divisors if d > 1)

    @property
    def free_rank(self) -> int:
        return sum(1 for d in self._divisors if d == 0)

    def describe(self) -> str:
        parts = [f"Z/{d}" for d in self.invariant_factors]
        parts += ["Z"] * self.free_rank
        return " + ".join(parts) if parts else "0"


def quotient_group(ambient_rank: int, relations) -> FgAbelianGroup:
    """Z^ambient_rank modulo the row span of ``relations`` (a Sublattice or
    an iterable of rows)."""
    if isinstance(relations, Sublattice):
        if relations.ambient_rank != ambient_rank:
            raise LatticeError("dimension mismatch")
        rows = relations.basis
    else:
        rows = list(relations)
    return FgAbelianGroup.quotient(ambient_rank, rows)
