"""Spherical systems and homogeneous spherical data.

This module carries the general classification layer: the finite catalog of
spherical roots of a group (with the compatibility sandwich
``pp(sigma) <= Pi^p <= p(sigma)``), the axioms of spherical systems and
homogeneous spherical data, the associated full color set, distinguished
subsets of colors with quotient systems, the strong-solvability criterion,
and the effect of spherical closure on the invariants.

A *spherical system* here is a triple ``(Pi^p, Sigma, D^a)`` whose color
functionals are rows over the basis ``Sigma`` of ``Lambda = Z Sigma``; a
*homogeneous spherical datum* additionally carries an explicit weight
sublattice of the ambient character lattice (fundamental-weight coordinates
of the semisimple part plus an optional central block).

Equality of systems is always taken up to bijections of colors preserving
the functionals; ``canonical()`` pins a representative by sorting.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from fractions import Fraction

from spherica import fans, qlp
from spherica.lattice import Sublattice
from spherica.rootsys import (
    RootSystem,
    RootSystemError,
    build_root_system,
    induced_embeddings,
    pairing,
)
from spherica.validation import Check, ValidationReport


class LunaError(ValueError):
    pass


class QuotientNotFreeError(LunaError):
    """The quotient semigroup is not freely generated (never happens for
    quotients by distinguished subsets; kept as an explicit flag)."""


@dataclass(frozen=True)
class SphRoot:
    """A spherical root: ``num/den`` in simple-root coordinates with
    ``den`` 1 or 2 (``den == 2`` encodes the halved entries of the
    catalog)."""

    num: tuple[int, ...]
    den: int = 1

    def __post_init__(self):
        if self.den not in (1, 2):
            raise LunaError(f"invalid denominator {self.den}")

    @staticmethod
    def simple(rs: RootSystem, node: int) -> "SphRoot":
        return SphRoot(rs.simple_root(node), 1)

    def coords(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.den) for c in self.num)

    def weight(self, rs: RootSystem) -> tuple[int, ...]:
        """Fundamental-weight coordinates; integral for every catalog root."""
        w = rs.root_to_weight(self.num)
        if self.den == 1:
            return w
        if any(c % 2 for c in w):
            raise LunaError(f"{self} is not in the weight lattice")
        return tuple(c // 2 for c in w)

    def ambient(self, rs: RootSystem, central_rank: int = 0) -> tuple[int, ...]:
        return self.weight(rs) + (0,) * central_rank

    def coroot_pairing(self, rs: RootSystem, node: int) -> int:
        return self.weight(rs)[node - 1]

    def simple_node(self) -> int | None:
        """The node id when this root is a simple root, else None."""
        if self.den != 1 or sum(self.num) != 1 or any(c not in (0, 1) for c in self.num):
            return None
        return self.num.index(1) + 1

    def doubled(self) -> "SphRoot":
        if self.den == 2:
            return SphRoot(self.num, 1)
        return SphRoot(tuple(2 * c for c in self.num), 1)

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.num):
            if c:
                coeff = "" if c == 1 else str(c)
                terms.append(f"{coeff}a{i + 1}")
        body = "+".join(terms) if terms else "0"
        return body if self.den == 1 else f"({body})/2"


@dataclass(frozen=True)
class CatalogEntry:
    """One spherical root of the group with its compatibility data."""

    sigma: SphRoot
    pp: frozenset[int]          # lower bound of the compatibility sandwich
    p_sigma: frozenset[int]     # upper bound: simple coroots vanishing on sigma
    support_type: str

    def compatible(self, pp_set) -> bool:
        pp_set = frozenset(pp_set)
        return self.pp <= pp_set <= self.p_sigma


#: catalog rows: (support letter, rank constraint, coefficients, pp
#: positions (1-based within the labeling), halvable)
_CATALOG_SHAPES = [
    ("A", lambda r: r == 1, lambda r: (1,), lambda r: (), False),
    ("A", lambda r: r == 1, lambda r: (2,), lambda r: (), False),
    ("A", lambda r: r >= 2, lambda r: (1,) * r, lambda r: tuple(range(2, r)), False),
    ("A", lambda r: r == 3, lambda r: (1, 2, 1), lambda r: (1, 3), True),
    ("B", lambda r: r >= 2, lambda r: (1,) * r, lambda r: tuple(range(2, r)), False),
    ("B", lambda r: r >= 2, lambda r: (2,) * r, lambda r: tuple(range(2, r + 1)), False),
    ("B", lambda r: r == 3, lambda r: (1, 2, 3), lambda r: (1, 2), True),
    ("C", lambda r: r >= 3, lambda r: (1,) + (2,) * (r - 2) + (1,), lambda r: tuple(range(3, r + 1)), False),
    ("D", lambda r: r >= 4, lambda r: (2,) * (r - 2) + (1, 1), lambda r: tuple(range(2, r + 1)), True),
    # stated in Bourbaki numbering (long roots first); the compatibility
    # bound pp <= p(sigma) pins the orientation
    ("F", lambda r: r == 4, lambda r: (1, 2, 3, 2), lambda r: (1, 2, 3), False),
    ("G", lambda r: r == 2, lambda r: (1, 1), lambda r: (), False),
    ("G", lambda r: r == 2, lambda r: (2, 1), lambda r: (2,), False),
    ("G", lambda r: r == 2, lambda r: (4, 2), lambda r: (2,), False),
]


def spherical_roots_of(rs: RootSystem) -> tuple[CatalogEntry, ...]:
    """All spherical roots of the group of ``rs`` lying in the character
    lattice of the simply connected cover, each with its compatibility
    bounds."""
    n = rs.rank
    entries: dict[tuple, CatalogEntry] = {}

    def add(num, den, pp_nodes, letter):
        num = tuple(num)
        root = SphRoot(num, den)
        if den == 2:
            w = rs.root_to_weight(num)
            if any(c % 2 for c in w):
                return
        p_sigma = frozenset(
            node for node in range(1, n + 1) if root.coroot_pairing(rs, node) == 0
        )
        entry = CatalogEntry(root, frozenset(pp_nodes), p_sigma, letter)
        key = (num, den)
        if key in entries:
            if entries[key].pp != entry.pp:
                raise AssertionError(f"conflicting catalog data for {root}")
            return
        entries[key] = entry

    # rank-one and A1 x A1 shapes
    for i in range(1, n + 1):
        e = tuple(1 if k == i - 1 else 0 for k in range(n))
        add(e, 1, (), "A1")
        add(tuple(2 * c for c in e), 1, (), "A1")
    for i, j in itertools.combinations(range(1, n + 1), 2):
        if rs.cartan[i - 1][j - 1] == 0:
            num = tuple(
                1 if k in (i - 1, j - 1) else 0 for k in range(n)
            )
            add(num, 1, (), "A1xA1")
            add(num, 2, (), "A1xA1")

    for letter, rank_ok, coeff_fn, pp_fn, halvable in _CATALOG_SHAPES:
        for r in range(2, n + 1):
            if not rank_ok(r):
                continue
            coeffs = coeff_fn(r)
            pp_positions = pp_fn(r)
            for labeling in induced_embeddings(rs, letter, r):
                num = [0] * n
                for pos, node in enumerate(labeling):
                    num[node - 1] = coeffs[pos]
                pp_nodes = tuple(labeling[p - 1] for p in pp_positions)
                add(tuple(num), 1, pp_nodes, f"{letter}{r}")
                if halvable:
                    add(tuple(num), 2, pp_nodes, f"{letter}{r}")

    return tuple(
        entries[k] for k in sorted(entries, key=lambda k: (sum(k[0]), k[1], k[0]))
    )


def catalog_lookup(rs: RootSystem, sigma: SphRoot) -> CatalogEntry | None:
    for entry in spherical_roots_of(rs):
        if entry.sigma == sigma:
            return entry
    return None


def check_compatibility(rs: RootSystem, pp_set, sigma: SphRoot) -> bool:
    """The sandwich test for the pair ``(Pi^p, sigma)``."""
    entry = catalog_lookup(rs, sigma)
    if entry is None:
        raise LunaError(f"{sigma} is not a spherical root of {rs.diagram}")
    return entry.compatible(pp_set)


# ---------------------------------------------------------------------------
# systems and data
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SphericalSystem:
    """``(Pi^p, Sigma, D^a)`` with the color functionals written as integer
    rows over the basis ``Sigma`` of ``Lambda = Z Sigma``."""

    rs: RootSystem
    pp: frozenset[int]
    sigma: tuple[SphRoot, ...]
    kappa: tuple[tuple[int, ...], ...]

    @property
    def n_colors(self) -> int:
        return len(self.kappa)

    def sigma_index(self, root: SphRoot) -> int | None:
        try:
            return self.sigma.index(root)
        except ValueError:
            return None

    def simple_sigma_nodes(self) -> tuple[int, ...]:
        """Nodes alpha with alpha in Sigma (type-a simple roots)."""
        return tuple(
            node for node in (s.simple_node() for s in self.sigma) if node is not None
        )

    def colors_at(self, node: int) -> tuple[int, ...]:
        """D(alpha) for a simple root alpha in Sigma: the colors whose
        functional takes value 1 on it."""
        j = self.sigma_index(SphRoot.simple(self.rs, node))
        if j is None:
            return ()
        return tuple(i for i, row in enumerate(self.kappa) if row[j] == 1)

    def coroot_on_sigma(self, node: int) -> tuple[int, ...]:
        """``alpha_node^vee`` restricted to the Sigma basis."""
        return tuple(s.coroot_pairing(self.rs, node) for s in self.sigma)

    def canonical(self) -> "SphericalSystem":
        """Sort Sigma by leading support node, permute kappa columns
        accordingly, then sort the rows; the result is the equality
        representative (simple spherical roots stay in node order)."""

        def sigma_key(j):
            s = self.sigma[j]
            lead = next((i for i, c in enumerate(s.num) if c), len(s.num))
            return (s.den, lead, s.num)

        order = sorted(range(len(self.sigma)), key=sigma_key)
        sigma = tuple(self.sigma[j] for j in order)
        rows = sorted(tuple(row[j] for j in order) for row in self.kappa)
        return SphericalSystem(self.rs, self.pp, sigma, tuple(rows))


@dataclass(frozen=True)
class HomogeneousSphericalDatum:
    """``(Lambda, Pi^p, Sigma, D^a)`` over an explicit sublattice of the
    ambient character lattice (weight coordinates plus a central block of
    rank ``central_rank``)."""

    rs: RootSystem
    central_rank: int
    pp: frozenset[int]
    sigma: tuple[SphRoot, ...]
    lam: Sublattice
    kappa: tuple[tuple[int, ...], ...]

    @property
    def ambient_rank(self) -> int:
        return self.rs.rank + self.central_rank

    def sigma_in_lambda(self, root: SphRoot) -> tuple[int, ...] | None:
        return self.lam.solve_membership(root.ambient(self.rs, self.central_rank))

    def kappa_on_sigma(self) -> tuple[tuple[int, ...], ...]:
        """Color functional values on the elements of Sigma."""
        cols = []
        for s in self.sigma:
            coords = self.sigma_in_lambda(s)
            if coords is None:
                raise LunaError(f"{s} is not in the weight lattice of the datum")
            cols.append(coords)
        return tuple(
            tuple(sum(r * c for r, c in zip(row, col)) for col in cols)
            for row in self.kappa
        )

    def coroot_on_lambda(self, node: int) -> tuple[int, ...]:
        return tuple(b[node - 1] for b in self.lam.basis)

    def to_system(self) -> SphericalSystem:
        """Restrict the color functionals to ``Z Sigma``."""
        return SphericalSystem(self.rs, self.pp, self.sigma, self.kappa_on_sigma())


def systems_equal(s1: SphericalSystem, s2: SphericalSystem) -> bool:
    """Equality up to color bijection: same diagram, parabolic set and
    spherical roots, and equal multisets of color functionals."""
    return s1.canonical() == s2.canonical()


def data_equal(d1: HomogeneousSphericalDatum, d2: HomogeneousSphericalDatum) -> bool:
    """Equality of data up to color bijection: the lattices agree (their
    canonical bases are equal), the parabolic sets and spherical-root sets
    agree, and the color functionals agree as multisets of rows over the
    canonical lattice basis."""
    return (
        d1.rs.diagram == d2.rs.diagram
        and d1.central_rank == d2.central_rank
        and d1.pp == d2.pp
        and set(d1.sigma) == set(d2.sigma)
        and d1.lam == d2.lam
        and sorted(d1.kappa) == sorted(d2.kappa)
    )


def system_as_datum(s: SphericalSystem) -> HomogeneousSphericalDatum:
    """View a spherical system as the datum with ``Lambda = Z Sigma``."""
    rows = [sig.ambient(s.rs) for sig in s.sigma]
    lam = Sublattice.from_rows(s.rs.rank, rows)
    # kappa rows must be re-expressed on the canonical HNF basis of Lambda
    cols = []
    for sig in s.sigma:
        coords = lam.solve_membership(sig.ambient(s.rs))
        if coords is None:
            raise AssertionError
        cols.append(coords)
    # solve for each color the functional on the basis: values on sigma are
    # given; sigma coordinates against the basis are cols
    k = len(lam.basis)
    kappa_rows = []
    for row in s.kappa:
        # find f in Z^k with f . cols[j] = row[j] for all j
        f = _solve_functional(cols, row, k)
        if f is None:
            raise LunaError("color functional does not extend integrally")
        kappa_rows.append(f)
    return HomogeneousSphericalDatum(s.rs, 0, s.pp, s.sigma, lam, tuple(kappa_rows))


def _solve_functional(vectors, values, dim):
    """Integer functional f (length dim) with f . v_j == values[j]."""
    from spherica.lattice import solve_integer

    # unknown f: system f @ M == values with M columns = vectors
    m = [[vectors[j][i] for j in range(len(vectors))] for i in range(dim)]
    sol = solve_integer(m, list(values))
    if sol is None:
        return None
    return tuple(sol[0])


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------


def _axiom_checks(rs, pp, sigma, kappa, value_of, coroot_values, lattice_parity,
                  structural: list[Check]) -> ValidationReport:
    """Shared axiom engine.

    ``value_of(color_index, sigma_index)`` gives ``<kappa(D), sigma_j>``;
    ``coroot_values(node)`` gives ``alpha^vee`` on the lattice basis;
    ``lattice_parity(node)`` says whether ``<alpha^vee, Lambda>`` is even.
    """
    checks = list(structural)
    n_colors = len(kappa)
    simple_nodes = {s.simple_node(): j for j, s in enumerate(sigma) if s.simple_node()}

    # (A1)
    bad = []
    for d in range(n_colors):
        for j, s in enumerate(sigma):
            v = value_of(d, j)
            if v > 1 or (v == 1 and s.simple_node() is None):
                bad.append((d, str(s), v))
    checks.append(Check("A1", not bad, tuple(bad)))

    # (A2)
    bad = []
    for node, j in simple_nodes.items():
        ds = [d for d in range(n_colors) if value_of(d, j) == 1]
        if len(ds) != 2:
            bad.append((f"a{node}", tuple(ds)))
            continue
        total = [
            sum(kappa[d][i] for d in ds) for i in range(len(kappa[0]) if kappa else 0)
        ]
        if tuple(total) != tuple(coroot_values(node)):
            bad.append((f"a{node}", tuple(ds), tuple(total)))
    checks.append(Check("A2", not bad, tuple(bad)))

    # (A3)
    covered = set()
    for node, j in simple_nodes.items():
        covered.update(d for d in range(n_colors) if value_of(d, j) == 1)
    bad = tuple(d for d in range(n_colors) if d not in covered)
    checks.append(Check("A3", not bad, bad))

    # (Sigma1)
    bad = []
    doubled_nodes = {}
    for j, s in enumerate(sigma):
        if s.den == 1 and sum(1 for c in s.num if c) == 1:
            idx = next(i for i, c in enumerate(s.num) if c)
            if s.num[idx] == 2:
                doubled_nodes[idx + 1] = j
    for node, j in doubled_nodes.items():
        if not lattice_parity(node):
            bad.append((f"a{node}", "odd pairing with the lattice"))
        for jj, s in enumerate(sigma):
            if jj == j:
                continue
            if s.coroot_pairing(rs, node) > 0:
                bad.append((f"a{node}", str(s)))
    checks.append(Check("Sigma1", not bad, tuple(bad)))

    # (Sigma2)
    bad = []
    sig_set = set(sigma)
    for i, j in itertools.combinations(range(1, rs.rank + 1), 2):
        ai, aj = rs.simple_root(i), rs.simple_root(j)
        if rs.inner(ai, aj) != 0:
            continue
        total = tuple(x + y for x, y in zip(ai, aj))
        if SphRoot(total, 1) in sig_set or SphRoot(total, 2) in sig_set:
            if tuple(coroot_values(i)) != tuple(coroot_values(j)):
                bad.append((f"a{i}", f"a{j}"))
    checks.append(Check("Sigma2", not bad, tuple(bad)))

    # (S)
    bad = []
    for node in sorted(pp):
        vals = tuple(coroot_values(node))
        if any(vals):
            bad.append((f"a{node}", "coroot not zero on the lattice"))
    for s in sigma:
        entry = catalog_lookup(rs, s)
        if entry is not None and not entry.compatible(pp):
            bad.append((str(s), "incompatible with Pi^p"))
    checks.append(Check("S", not bad, tuple(bad)))

    return ValidationReport(tuple(checks))


def validate_system(s: SphericalSystem) -> ValidationReport:
    rs = s.rs
    structural = _structural_checks(rs, s.pp, s.sigma, s.kappa, len(s.sigma))
    # linear independence of Sigma
    coords = [sig.coords() for sig in s.sigma]
    independent = _rank_fractions(coords) == len(s.sigma)
    structural.append(Check("sigma-independent", independent))

    def value_of(d, j):
        return s.kappa[d][j]

    def coroot_values(node):
        return s.coroot_on_sigma(node)

    def lattice_parity(node):
        return all(v % 2 == 0 for v in s.coroot_on_sigma(node))

    return _axiom_checks(rs, s.pp, s.sigma, s.kappa, value_of, coroot_values,
                         lattice_parity, structural)


def validate_hsd(d) -> ValidationReport:
    """Validate either a :class:`HomogeneousSphericalDatum` or a
    :class:`SphericalSystem`; each axiom is reported independently with
    witnesses."""
    if isinstance(d, SphericalSystem):
        return validate_system(d)
    rs = d.rs
    structural = _structural_checks(rs, d.pp, d.sigma, d.kappa, len(d.lam.basis))
    sig_coords = []
    ok_member, ok_prim = [], []
    for s in d.sigma:
        coords = d.sigma_in_lambda(s)
        if coords is None:
            ok_member.append(str(s))
            sig_coords.append(None)
        else:
            sig_coords.append(coords)
            from math import gcd

            g = 0
            for c in coords:
                g = gcd(g, c)
            if g != 1:
                ok_prim.append(str(s))
    structural.append(Check("sigma-in-lattice", not ok_member, tuple(ok_member)))
    structural.append(Check("sigma-primitive", not ok_prim, tuple(ok_prim)))
    coords_q = [sig.coords() for sig in d.sigma]
    structural.append(
        Check("sigma-independent", _rank_fractions(coords_q) == len(d.sigma))
    )
    if any(c is None for c in sig_coords):
        return ValidationReport(tuple(structural))

    kap_sigma = d.kappa_on_sigma()

    def value_of(dd, j):
        return kap_sigma[dd][j]

    def coroot_values(node):
        return d.coroot_on_lambda(node)

    def lattice_parity(node):
        return all(v % 2 == 0 for v in d.coroot_on_lambda(node))

    return _axiom_checks(rs, d.pp, d.sigma, d.kappa, value_of, coroot_values,
                         lattice_parity, structural)


def _structural_checks(rs, pp, sigma, kappa, n_cols) -> list[Check]:
    checks = []
    bad_nodes = tuple(a for a in pp if not 1 <= a <= rs.rank)
    checks.append(Check("pp-nodes", not bad_nodes, bad_nodes))
    not_catalog = tuple(
        str(s) for s in sigma if catalog_lookup(rs, s) is None
    )
    checks.append(Check("sigma-in-catalog", not not_catalog, not_catalog))
    dupes = tuple(str(s) for s, cnt in _counts(sigma).items() if cnt > 1)
    checks.append(Check("sigma-distinct", not dupes, dupes))
    bad_rows = tuple(i for i, row in enumerate(kappa) if len(row) != n_cols)
    checks.append(Check("kappa-shape", not bad_rows, bad_rows))
    return checks


def _counts(items):
    out = {}
    for x in items:
        out[x] = out.get(x, 0) + 1
    return out


def _rank_fractions(rows) -> int:
    m = [[Fraction(c) for c in row] for row in rows]
    if not m:
        return 0
    cols = len(m[0])
    r = 0
    for col in range(cols):
        piv = next((i for i in range(r, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        m[r] = [x / m[r][col] for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col] != 0:
                f = m[i][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        r += 1
    return r


# ---------------------------------------------------------------------------
# colors
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Color:
    """A color of the full set: type ``a`` (position into D^a), ``a2``
    (the type usually written a'), or ``b`` (an equivalence class of
    simple roots)."""

    kind: str
    a_index: int | None = None
    nodes: tuple[int, ...] = ()


@dataclass(frozen=True)
class FullColorSet:
    """The set of colors associated with a system or datum, with the
    extended functional and the map ``alpha -> D(alpha)``."""

    colors: tuple[Color, ...]
    kappa: tuple[tuple[int, ...], ...]   # functionals on the lattice basis
    d_of: dict  # node -> tuple of color indices

    def indices_of_kind(self, kind: str) -> tuple[int, ...]:
        return tuple(i for i, c in enumerate(self.colors) if c.kind == kind)


def full_color_set(obj) -> FullColorSet:
    """Colors of a system (``Lambda = Z Sigma``) or datum: type-a colors
    are D^a; one color per type-a' root with half its coroot; one color per
    b-equivalence class with the full coroot."""
    if isinstance(obj, HomogeneousSphericalDatum):
        rs, pp, sigma = obj.rs, obj.pp, obj.sigma
        kappa_rows = obj.kappa
        coroot = obj.coroot_on_lambda
    else:
        rs, pp, sigma = obj.rs, obj.pp, obj.sigma
        kappa_rows = obj.kappa
        coroot = obj.coroot_on_sigma
    sig_set = set(sigma)
    n = rs.rank
    a_nodes = {s.simple_node() for s in sigma if s.simple_node() is not None}
    a2_nodes = set()
    for s in sigma:
        if s.den == 1 and sum(1 for c in s.num if c) == 1:
            idx = next(i for i, c in enumerate(s.num) if c)
            if s.num[idx] == 2:
                a2_nodes.add(idx + 1)
    b_nodes = [
        node
        for node in range(1, n + 1)
        if node not in pp and node not in a_nodes and node not in a2_nodes
    ]
    # b-equivalence: alpha ~ beta iff orthogonal and alpha+beta in Sigma u 2Sigma
    related = {node: {node} for node in b_nodes}
    for i, j in itertools.combinations(b_nodes, 2):
        ai, aj = rs.simple_root(i), rs.simple_root(j)
        if rs.inner(ai, aj) != 0:
            continue
        total = tuple(x + y for x, y in zip(ai, aj))
        if SphRoot(total, 1) in sig_set or SphRoot(total, 2) in sig_set:
            related[i].add(j)
            related[j].add(i)
    b_classes = []
    seen = set()
    for node in b_nodes:
        if node in seen:
            continue
        cls = tuple(sorted(related[node]))
        seen.update(cls)
        b_classes.append(cls)

    colors = []
    kappa = []
    for i, row in enumerate(kappa_rows):
        colors.append(Color("a", a_index=i))
        kappa.append(tuple(row))
    for node in sorted(a2_nodes):
        colors.append(Color("a2", nodes=(node,)))
        vals = coroot(node)
        if any(v % 2 for v in vals):
            raise LunaError(f"half coroot of a{node} is not integral on the lattice")
        kappa.append(tuple(v // 2 for v in vals))
    for cls in b_classes:
        colors.append(Color("b", nodes=cls))
        kappa.append(tuple(coroot(cls[0])))

    d_of = {}
    for node in range(1, n + 1):
        if node in pp:
            d_of[node] = ()
        elif node in a_nodes:
            j = next(
                j for j, s in enumerate(sigma) if s.simple_node() == node
            )
            if isinstance(obj, HomogeneousSphericalDatum):
                vals = obj.kappa_on_sigma()
                d_of[node] = tuple(
                    d for d in range(len(kappa_rows)) if vals[d][j] == 1
                )
            else:
                d_of[node] = tuple(
                    d for d in range(len(kappa_rows)) if kappa_rows[d][j] == 1
                )
        elif node in a2_nodes:
            idx = len(kappa_rows) + sorted(a2_nodes).index(node)
            d_of[node] = (idx,)
        else:
            for k, cls in enumerate(b_classes):
                if node in cls:
                    d_of[node] = (len(kappa_rows) + len(a2_nodes) + k,)
                    break
    return FullColorSet(tuple(colors), tuple(kappa), d_of)


# ---------------------------------------------------------------------------
# distinguished subsets, quotients, strong solvability
# ---------------------------------------------------------------------------


def colored_cone_report(
    s: SphericalSystem, color_indices, extra_rays=()
) -> ValidationReport:
    """Check the colored-cone conditions for the pair made of the chosen
    colors and extra generators in ``Hom(Z Sigma, Q)``.

    With ``V = {q : <q, sigma> <= 0 for all sigma}``: CC1 asks the extra
    generators to lie in ``V``, CC2 asks the relative interior of the cone
    to meet ``V``, and SCC asks for strict convexity with no zero color
    functional.  :func:`is_distinguished` is this interior test applied to
    the negated pairing.
    """
    fcs, rows = _sigma_values_matrix(s)
    chosen = sorted(set(color_indices))
    m = len(s.sigma)
    gens = [tuple(rows[c]) for c in chosen] + [tuple(r) for r in extra_rays]

    cc1_bad = tuple(
        r for r in extra_rays if any(v > 0 for v in r)
    )
    cc1 = Check("CC1", not cc1_bad, cc1_bad)

    # relative interior: strictly positive coefficients on every generator
    k = len(gens)
    if k == 0:
        cc2 = Check("CC2", True)
    else:
        ineqs = [
            ([Fraction(1 if i == v else 0) for i in range(k)], Fraction(1))
            for v in range(k)
        ]
        for j in range(m):
            ineqs.append(
                ([-Fraction(g[j]) for g in gens], Fraction(0))
            )
        cc2 = Check("CC2", qlp.feasible_point(ineqs, nvars=k) is not None)

    zero_color = tuple(
        c for c in chosen if all(v == 0 for v in rows[c])
    ) if m else ()
    if gens and m:
        cone = fans.Cone.from_generators(m, [g for g in gens if any(g)])
        strictly_convex = cone.is_strictly_convex()
    else:
        strictly_convex = True
    scc = Check("SCC", strictly_convex and not zero_color, zero_color)
    return ValidationReport((cc1, cc2, scc))


@dataclass(frozen=True)
class DistinguishedWitness:
    """Positive integer coefficients on the chosen colors and the resulting
    functional, nonnegative on Sigma."""

    coefficients: tuple[tuple[int, int], ...]  # (color index, n_D > 0)
    delta: tuple[int, ...]


def _sigma_values_matrix(s: SphericalSystem):
    """Rows: color functional values on the Sigma basis (for a system
    these are just the kappa rows of D^a extended by the derived
    colors)."""
    fcs = full_color_set(s)
    return fcs, [list(row) for row in fcs.kappa]


def is_distinguished(s: SphericalSystem, color_indices) -> DistinguishedWitness | None:
    """Decide whether the chosen subset of the full color set is
    distinguished: some strictly positive combination of its functionals is
    nonnegative on every spherical root.

    Implemented as exact rational feasibility (Fourier-Motzkin); the
    witness is returned with cleared denominators.  The chosen subset is a
    colored cone ``(cone(kappa(D')), D')`` and this predicate is its
    interior-meets-the-valuation-cone condition with
    ``V = {q : <q, sigma> <= 0 for all sigma}``.
    """
    fcs, rows = _sigma_values_matrix(s)
    chosen = sorted(set(color_indices))
    k = len(chosen)
    m = len(s.sigma)
    if k == 0:
        return DistinguishedWitness((), tuple([0] * m))
    ineqs = []
    for v in range(k):
        ineqs.append(([Fraction(1 if i == v else 0) for i in range(k)], Fraction(1)))
    for j in range(m):
        coeffs = [Fraction(rows[c][j]) for c in chosen]
        ineqs.append((coeffs, Fraction(0)))
    point = qlp.feasible_point(ineqs, nvars=k)
    if point is None:
        return None
    coeffs_int = qlp.clear_denominators(point)
    delta = tuple(
        sum(coeffs_int[i] * rows[c][j] for i, c in enumerate(chosen))
        for j in range(m)
    )
    return DistinguishedWitness(tuple(zip(chosen, coeffs_int)), delta)


def quotient_system(s: SphericalSystem, color_indices) -> SphericalSystem:
    """The quotient of ``s`` by a distinguished subset of colors.

    The new spherical roots are the indecomposable elements of the
    semigroup of nonnegative Sigma-combinations annihilated by the chosen
    functionals; the quotient lattice is their span (the semigroup is free,
    which is verified).
    """
    witness = is_distinguished(s, color_indices)
    if witness is None:
        raise LunaError("subset of colors is not distinguished")
    fcs, rows = _sigma_values_matrix(s)
    chosen = sorted(set(color_indices))
    m = len(s.sigma)
    constraints = [
        tuple(1 if i == v else 0 for i in range(m)) for v in range(m)
    ]
    for c in chosen:
        constraints.append(tuple(rows[c]))
        constraints.append(tuple(-x for x in rows[c]))
    if m == 0:
        gens = []
    else:
        gens = fans._extreme_rays_h(constraints, m)
    # freeness: generators must be a lattice basis of the saturated kernel
    # intersected with the span
    if gens:
        span_perp = fans._nullspace(gens, m)
        saturated = fans._nullspace(span_perp, m) if span_perp else [
            tuple(1 if i == j else 0 for i in range(m)) for j in range(m)
        ]
        lat_gens = Sublattice.from_rows(m, gens)
        lat_sat = Sublattice.from_rows(m, saturated)
        if lat_gens != lat_sat or len(gens) != lat_gens.rank:
            raise QuotientNotFreeError(
                "quotient semigroup generators do not form a lattice basis"
            )
    new_sigma = []
    for g in sorted(gens):
        acc = [Fraction(0)] * s.rs.rank
        for coeff, sig in zip(g, s.sigma):
            if coeff:
                for i, c in enumerate(sig.coords()):
                    acc[i] += coeff * c
        den = 1
        if any(f.denominator == 2 for f in acc):
            den = 2
        if any(f.denominator > 2 for f in acc):
            raise LunaError("quotient root has denominator > 2")
        num = tuple(int(f * den) for f in acc)
        new_sigma.append(SphRoot(num, den))
    # Pi^p of the quotient: alpha with D(alpha) inside the chosen set
    chosen_set = set(chosen)
    new_pp = frozenset(
        node
        for node in range(1, s.rs.rank + 1)
        if set(fcs.d_of[node]) <= chosen_set
    )
    # colors: D(alpha) for simple alpha still in the quotient Sigma
    new_nodes = {
        sig.simple_node() for sig in new_sigma if sig.simple_node() is not None
    }
    keep = []
    for node in sorted(new_nodes):
        for d in s.colors_at(node):
            if d not in keep:
                keep.append(d)
    # re-express the kept functionals on the new Sigma basis
    new_cols = []
    for g in sorted(gens):
        new_cols.append(tuple(g))
    new_kappa = []
    for d in keep:
        row = s.kappa[d]
        new_kappa.append(
            tuple(sum(row[j] * col[j] for j in range(m)) for col in new_cols)
        )
    return SphericalSystem(s.rs, new_pp, tuple(new_sigma), tuple(new_kappa))


def strong_solvability_witnesses(s: SphericalSystem) -> list[frozenset[int]]:
    """All subsets ``D'`` of D^a witnessing strong solvability: a strictly
    positive combination of their functionals is strictly positive on every
    spherical root, and the remaining colors of the full set number
    ``|Pi|``.

    Every hit is checked to be distinguished with ``Pi^p`` empty and
    ``Sigma`` inside the simple roots.
    """
    fcs, rows = _sigma_values_matrix(s)
    n_a = len(s.kappa)
    total_colors = len(fcs.colors)
    n = s.rs.rank
    m = len(s.sigma)
    hits = []
    for size in range(n_a + 1):
        if total_colors - size != n:
            continue
        for combo in itertools.combinations(range(n_a), size):
            k = len(combo)
            ineqs = []
            for v in range(k):
                ineqs.append(
                    ([Fraction(1 if i == v else 0) for i in range(k)], Fraction(1))
                )
            feasible = True
            if m:
                for j in range(m):
                    ineqs.append(
                        ([Fraction(rows[c][j]) for c in combo], Fraction(1))
                    )
            if k == 0:
                feasible = m == 0
            else:
                feasible = qlp.feasible_point(ineqs, nvars=k) is not None
            if not feasible:
                continue
            assert is_distinguished(s, combo) is not None
            if s.pp or any(sig.simple_node() is None for sig in s.sigma):
                raise LunaError(
                    "strong-solvability witness found but Pi^p or Sigma "
                    "violate the strongly solvable shape"
                )
            hits.append(frozenset(combo))
    return sorted(hits, key=sorted)


def spherical_closure_invariants(d: HomogeneousSphericalDatum) -> SphericalSystem:
    """The spherical system of the spherical closure: every root that is
    not simple but whose double is a compatible spherical root of the group
    gets doubled; the color functionals are restricted to the new ``Z
    Sigma``."""
    rs = d.rs
    kap_sigma = d.kappa_on_sigma()
    new_sigma = []
    factors = []
    for s in d.sigma:
        double = s.doubled()
        if (
            s.simple_node() is None
            and catalog_lookup(rs, double) is not None
            and check_compatibility(rs, d.pp, double)
        ):
            new_sigma.append(double)
            factors.append(2)
        else:
            new_sigma.append(s)
            factors.append(1)
    new_kappa = tuple(
        tuple(v * f for v, f in zip(row, factors)) for row in kap_sigma
    )
    return SphericalSystem(rs, d.pp, tuple(new_sigma), new_kappa)
