"""Exact rational polyhedral cones and fans.

Cones are stored by integer ray generators (made primitive and deduplicated
on construction).  Face analysis is provided for strictly convex cones; the
completeness test for fans uses facet pairing, which is an exact criterion
for pure full-dimensional fans: every maximal cone is full-dimensional,
every facet of a maximal cone is shared by exactly two maximal cones, and
the facet-adjacency graph is connected.

Everything is desk-scale and exact; no floating point anywhere.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from spherica import lattice, qlp


class FanError(ValueError):
    pass


def primitive(vec) -> tuple[int, ...]:
    """Divide an integer vector by the gcd of its entries (zero stays zero)."""
    g = 0
    for c in vec:
        g = gcd(g, c)
    if g == 0:
        return tuple(int(c) for c in vec)
    return tuple(int(c) // g for c in vec)


def _solve_rational(rows, rhs):
    """One rational solution x of ``rows @ x == rhs`` (column convention),
    or None."""
    m = [[Fraction(c) for c in row] + [Fraction(b)] for row, b in zip(rows, rhs)]
    ncols = len(rows[0]) if rows else 0
    piv_cols = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        m[r] = [x / m[r][col] for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col] != 0:
                f = m[i][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        piv_cols.append(col)
        r += 1
    for i in range(r, len(m)):
        if m[i][-1] != 0:
            return None
    x = [Fraction(0)] * ncols
    for i, col in enumerate(piv_cols):
        x[col] = m[i][-1]
    return x


def _nullspace(rows, dim):
    """Primitive integer basis of ``{x in Q^dim : row . x == 0 for all rows}``."""
    m = [[Fraction(c) for c in row] for row in rows]
    piv_cols = []
    r = 0
    for col in range(dim):
        piv = next((i for i in range(r, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        m[r] = [x / m[r][col] for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col] != 0:
                f = m[i][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        piv_cols.append(col)
        r += 1
    basis = []
    free_cols = [c for c in range(dim) if c not in piv_cols]
    for fc in free_cols:
        vec = [Fraction(0)] * dim
        vec[fc] = Fraction(1)
        for i, pc in enumerate(piv_cols):
            vec[pc] = -m[i][fc]
        basis.append(qlp.clear_denominators(vec))
    return basis


@dataclass(frozen=True)
class Cone:
    """Rational polyhedral cone given by primitive integer generators."""

    ambient: int
    rays: tuple[tuple[int, ...], ...]

    @staticmethod
    def from_generators(ambient: int, gens) -> "Cone":
        prim = sorted({primitive(g) for g in gens if any(g)})
        for g in prim:
            if len(g) != ambient:
                raise FanError("generator dimension mismatch")
        return Cone(ambient, tuple(prim))

    # -- linear structure --------------------------------------------------

    def span_basis(self):
        """Integer row basis of the linear span (via HNF)."""
        if not self.rays:
            return []
        h, _ = lattice.hnf([list(r) for r in self.rays])
        return [tuple(r) for r in h if any(r)]

    @property
    def dim(self) -> int:
        return len(self.span_basis())

    def contains(self, point) -> bool:
        """Exact membership of an integer/rational point."""
        if not any(point):
            return True
        if not self.rays:
            return False
        return qlp.nonneg_combination([list(r) for r in self.rays], list(point)) is not None

    def is_strictly_convex(self) -> bool:
        """C strictly convex iff no nontrivial nonneg combination vanishes."""
        if not self.rays:
            return True
        k = len(self.rays)
        eqs = [
            ([Fraction(self.rays[i][j]) for i in range(k)], Fraction(0))
            for j in range(self.ambient)
        ]
        # sum of coefficients 1 forbids the trivial solution
        eqs.append(([Fraction(1)] * k, Fraction(1)))
        ineqs = [([Fraction(1 if i == v else 0) for i in range(k)], Fraction(0)) for v in range(k)]
        return qlp.feasible_point(ineqs, eqs, nvars=k) is None

    def is_simplicial(self) -> bool:
        return len(self.extreme_rays()) == self.dim

    def is_regular(self) -> bool:
        """Strictly convex with extreme rays forming part of a lattice basis
        (all SNF invariant factors equal 1)."""
        if not self.is_strictly_convex():
            return False
        rays = self.extreme_rays()
        if not rays:
            return True
        if len(rays) != self.dim:
            return False
        s, _, _ = lattice.snf([list(r) for r in rays])
        diag = [s[i][i] for i in range(len(rays))]
        return all(d == 1 for d in diag)

    # -- facial structure (strictly convex cones) --------------------------

    def extreme_rays(self) -> tuple[tuple[int, ...], ...]:
        """The extreme rays among the generators (requires strict convexity)."""
        if not self.rays:
            return ()
        keep = []
        for i, r in enumerate(self.rays):
            others = [list(x) for j, x in enumerate(self.rays) if j != i]
            if not others or qlp.nonneg_combination(others, list(r)) is None:
                keep.append(r)
        return tuple(keep)

    def _span_coords(self, vecs):
        basis = self.span_basis()
        out = []
        for v in vecs:
            sol = _solve_rational([[basis[i][j] for i in range(len(basis))] for j in range(self.ambient)], list(v))
            if sol is None:
                raise FanError("vector outside cone span")
            out.append(sol)
        return out, basis

    def facet_normals(self):
        """Ambient functionals cutting out the facets (valid on the span).

        Each normal xi satisfies xi . x >= 0 on the cone with equality on a
        facet.  Computed as extreme rays of the dual in span coordinates.
        """
        if not self.rays:
            return []
        if not self.is_strictly_convex():
            raise FanError("facet analysis requires a strictly convex cone")
        d = self.dim
        coords, basis = self._span_coords(self.rays)
        rays_d = [qlp.clear_denominators(c) for c in coords]
        normals_d = _extreme_rays_h(rays_d, d)
        # lift y (functional on span coords) to an ambient functional xi
        # with xi . basis_i = y_i
        normals = []
        for y in normals_d:
            xi = _solve_rational([list(b) for b in basis], list(y))
            if xi is None:
                raise AssertionError("span basis solve failed")
            normals.append(qlp.clear_denominators(xi))
        return normals

    def faces(self):
        """All faces as tuples of extreme rays (including the cone itself
        and the origin), for strictly convex cones."""
        rays = self.extreme_rays()
        if not rays:
            return [()]
        normals = self.facet_normals()
        seen = {rays: None}
        frontier = [rays]
        while frontier:
            face = frontier.pop()
            for xi in normals:
                sub = tuple(r for r in face if _dot(xi, r) == 0)
                if sub != face and sub not in seen:
                    seen[sub] = None
                    frontier.append(sub)
        if () not in seen:
            seen[()] = None
        return sorted(seen, key=lambda f: (len(f), f))

    def facets(self):
        """Facets as tuples of extreme rays."""
        rays = self.extreme_rays()
        return [
            tuple(r for r in rays if _dot(xi, r) == 0) for xi in self.facet_normals()
        ]


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _extreme_rays_h(constraint_rows, dim):
    """Extreme rays of ``{y in Q^dim : y . c >= 0 for all constraints}``
    assuming the region is pointed.  Subset enumeration: a ray is the
    one-dimensional kernel of a tight subset."""
    if dim == 0:
        return []
    if not constraint_rows:
        raise FanError("cannot enumerate rays of all of Q^d")
    found = set()
    idx = range(len(constraint_rows))
    for subset in itertools.combinations(idx, dim - 1) if dim >= 1 else [()]:
        rows = [constraint_rows[i] for i in subset]
        null = _nullspace(rows, dim)
        if len(null) != 1:
            continue
        y = null[0]
        vals = [_dot(y, c) for c in constraint_rows]
        if all(v >= 0 for v in vals):
            found.add(primitive(y))
        elif all(v <= 0 for v in vals):
            found.add(primitive([-c for c in y]))
    # keep only genuine extreme rays: tight set of rank dim-1
    out = []
    for y in sorted(found):
        tight = [c for c in constraint_rows if _dot(y, c) == 0]
        nullity = len(_nullspace(tight, dim)) if tight else dim
        if dim - nullity == dim - 1:
            out.append(y)
    return out


@dataclass(frozen=True)
class ConeReport:
    strictly_convex: bool
    simplicial: bool
    regular: bool
    faces: tuple


def validate_cone(c: Cone) -> ConeReport:
    """Regularity/convexity report; faces listed only in the strictly
    convex case."""
    sc = c.is_strictly_convex()
    if sc:
        simp = c.is_simplicial()
        reg = c.is_regular()
        faces = tuple(c.faces())
    else:
        simp = False
        reg = False
        faces = ()
    return ConeReport(sc, simp, reg, faces)


@dataclass(frozen=True)
class Fan:
    """A fan given by its maximal cones."""

    ambient: int
    maximal_cones: tuple[Cone, ...]

    @staticmethod
    def from_cones(ambient: int, cones) -> "Fan":
        cs = []
        for c in cones:
            if isinstance(c, Cone):
                cs.append(c)
            else:
                cs.append(Cone.from_generators(ambient, c))
        return Fan(ambient, tuple(cs))

    def rays(self) -> tuple[tuple[int, ...], ...]:
        out = set()
        for c in self.maximal_cones:
            out.update(c.extreme_rays())
        return tuple(sorted(out))


@dataclass(frozen=True)
class FanRootWitness:
    """A lattice functional evaluating to 1 on exactly one ray of a fan and
    to <= 0 on every other ray."""

    alpha: tuple[int, ...]
    distinguished_ray: tuple[int, ...]


@dataclass(frozen=True)
class FanReport:
    is_fan: bool
    complete: bool
    regular: bool
    rays: tuple
    witness: tuple | None = None


def _common_face_of(c1: Cone, c2: Cone):
    """Intersection of two strictly convex cones, and whether it is a face
    of both.  Returns (intersection_rays, ok)."""
    n = c1.ambient
    constraints = []
    eqs = []
    for c in (c1, c2):
        if c.rays:
            constraints.extend(c.facet_normals())
            # restrict to the span of each cone
            span = c.span_basis()
            eqs.extend(_nullspace(span, n))
        else:
            eqs.extend(lattice.identity(n))
    if eqs:
        # fold equalities in as opposite inequality pairs
        for e in eqs:
            constraints.append(tuple(e))
            constraints.append(tuple(-x for x in e))
    inter_rays = _extreme_rays_pointed_region(constraints, n)
    ok = _is_face_of(inter_rays, c1) and _is_face_of(inter_rays, c2)
    return inter_rays, ok


def _extreme_rays_pointed_region(constraints, dim):
    if not constraints:
        raise FanError("empty constraint system")
    return tuple(sorted(_extreme_rays_h(constraints, dim)))


def _is_face_of(face_rays, cone: Cone) -> bool:
    """Whether cone(face_rays) is a face of ``cone`` (both strictly
    convex)."""
    rays = cone.extreme_rays()
    if not face_rays:
        return True  # the origin is a face of every strictly convex cone
    for r in face_rays:
        if not cone.contains(r):
            return False
    # minimal face of cone containing the set: rays tight on every facet
    # normal vanishing on all of face_rays
    tight_normals = [
        xi for xi in cone.facet_normals() if all(_dot(xi, r) == 0 for r in face_rays)
    ]
    minimal_face = [
        r for r in rays if all(_dot(xi, r) == 0 for xi in tight_normals)
    ]
    # face_rays must generate exactly that face
    gen = Cone.from_generators(cone.ambient, face_rays)
    for r in minimal_face:
        if not gen.contains(r):
            return False
    return True


def validate_fan(f: Fan) -> FanReport:
    """Check the fan axioms pairwise, completeness by facet pairing, and
    regularity of all maximal cones."""
    cones = f.maximal_cones
    n = f.ambient
    for c in cones:
        if not c.is_strictly_convex():
            return FanReport(False, False, False, (), witness=c.rays)
    # pairwise intersections must be common faces
    for c1, c2 in itertools.combinations(cones, 2):
        inter, ok = _common_face_of(c1, c2)
        if not ok:
            # witness: a point of the offending intersection region
            witness = inter[0] if inter else tuple([0] * n)
            return FanReport(False, False, False, f.rays(), witness=witness)
    regular = all(c.is_regular() for c in cones)
    complete = _is_complete(f)
    return FanReport(True, complete, regular, f.rays())


def _is_complete(f: Fan) -> bool:
    cones = f.maximal_cones
    if not cones:
        return f.ambient == 0
    if any(c.dim != f.ambient for c in cones):
        return False
    if f.ambient == 0:
        return True
    # facet pairing
    facet_count: dict[tuple, list[int]] = {}
    for idx, c in enumerate(cones):
        if f.ambient == 1:
            facets = [()]
        else:
            facets = [tuple(sorted(fc)) for fc in c.facets()]
        for fc in facets:
            facet_count.setdefault(fc, []).append(idx)
    adjacency = {i: set() for i in range(len(cones))}
    for fc, owners in facet_count.items():
        if len(owners) != 2:
            return False
        a, b = owners
        adjacency[a].add(b)
        adjacency[b].add(a)
    # connectivity of the adjacency graph
    seen = {0}
    stack = [0]
    while stack:
        cur = stack.pop()
        for nxt in adjacency[cur]:
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return len(seen) == len(cones)


def fan_root_check(f: Fan, alpha) -> FanRootWitness | None:
    """Whether ``alpha`` is a root of the fan: exactly one ray evaluates to
    1 under ``alpha`` and every other ray evaluates <= 0."""
    alpha = tuple(alpha)
    ones = []
    for ray in f.rays():
        val = _dot(ray, alpha)
        if val == 1:
            ones.append(ray)
        elif val > 0:
            return None
    if len(ones) != 1:
        return None
    return FanRootWitness(alpha, ones[0])
