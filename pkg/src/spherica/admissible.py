"""Admissible maps, their fans, and the bridge to spherical systems.

An admissible map is an integer matrix ``eta`` on ``Pi x Pi`` with entries
in ``{-3,...,1}`` subject to five axioms; it encodes a strongly solvable
wonderful subgroup.  From ``eta`` one builds a regular complete fan (the
fan of the associated smooth complete toric slice) and, in the other
direction, every strongly solvable spherical system together with one of
its strong-solvability witnesses determines an admissible map.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from spherica import fans, luna
from spherica.fans import Cone, Fan
from spherica.lattice import Sublattice
from spherica.rootsys import RootSystem, pairing
from spherica.validation import Check, ValidationReport


class AdmissibleError(ValueError):
    pass


@dataclass(frozen=True)
class AdmissibleMap:
    """Integer matrix ``eta(alpha, beta)`` indexed by the simple roots."""

    rs: RootSystem
    eta: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = self.rs.rank
        if len(self.eta) != n or any(len(row) != n for row in self.eta):
            raise AdmissibleError("eta must be square on the simple roots")

    @property
    def support(self) -> tuple[int, ...]:
        """Nodes with ``eta(alpha, alpha) == 1`` (the future Sigma)."""
        return tuple(
            i + 1 for i in range(self.rs.rank) if self.eta[i][i] == 1
        )

    def value(self, a: int, b: int) -> int:
        return self.eta[a - 1][b - 1]


def validate_admissible(am: AdmissibleMap) -> ValidationReport:
    """Per-axiom report for the five admissibility conditions."""
    rs, eta = am.rs, am.eta
    n = rs.rank
    checks = []

    bad = tuple(
        (i + 1, j + 1, eta[i][j])
        for i in range(n)
        for j in range(n)
        if not -3 <= eta[i][j] <= 1
    )
    checks.append(Check("range", not bad, bad))

    bad = tuple((i + 1, eta[i][i]) for i in range(n) if eta[i][i] not in (0, 1))
    checks.append(Check("AM1", not bad, bad))

    bad = []
    for i in range(n):
        if eta[i][i] == 0:
            for j in range(n):
                if eta[i][j] != 0 or eta[j][i] != 0:
                    bad.append((i + 1, j + 1))
    checks.append(Check("AM2", not bad, tuple(bad)))

    bad = []
    for i in range(n):
        for j in range(n):
            if eta[i][j] == 1 and eta[i] != eta[j]:
                bad.append((i + 1, j + 1))
    checks.append(Check("AM3", not bad, tuple(bad)))

    bad = tuple(
        (i + 1, j + 1)
        for i in range(n)
        for j in range(n)
        if eta[i][j] < 0 and eta[j][i] != 0
    )
    checks.append(Check("AM4", not bad, bad))

    bad = tuple(
        (i + 1, j + 1)
        for i in range(n)
        for j in range(n)
        if i != j and eta[i][j] < rs.cartan[i][j]
    )
    checks.append(Check("AM5", not bad, bad))

    return ValidationReport(tuple(checks))


@dataclass(frozen=True)
class EnriquesBSystem:
    """Triple of a character sublattice, a fan on its dual, and a map from
    the simple roots to fan rays (or zero, encoded as None).

    The lattice is spanned by ``basis_roots`` (node ids); fan coordinates
    are taken against the dual of that basis.
    """

    rs: RootSystem
    basis_roots: tuple[int, ...]
    fan: Fan
    rho: dict

    def lattice(self) -> Sublattice:
        rows = [self.rs.root_to_weight(self.rs.simple_root(a)) for a in self.basis_roots]
        return Sublattice.from_rows(self.rs.rank, rows)

    def pair(self, q, node: int) -> int:
        """``<q, alpha_node>`` for a fan vector ``q`` and a simple root in
        the lattice."""
        coords = self.root_coords(node)
        if coords is None:
            raise AdmissibleError(f"a{node} is not in the lattice")
        return sum(x * y for x, y in zip(q, coords))

    def root_coords(self, node: int) -> tuple[int, ...] | None:
        """Coordinates of ``alpha_node`` against ``basis_roots``, or None
        if it is outside the lattice."""
        if node in self.basis_roots:
            return tuple(1 if a == node else 0 for a in self.basis_roots)
        target = self.rs.simple_root(node)
        from spherica.lattice import solve_integer

        rows = [list(self.rs.simple_root(a)) for a in self.basis_roots]
        sol = solve_integer(rows, list(target))
        return None if sol is None else tuple(sol[0])


@dataclass(frozen=True)
class FanEtaData:
    system: EnriquesBSystem
    groups: tuple[tuple[int, ...], ...]      # the fibers Pi_1, ..., Pi_s
    group_rays: tuple[tuple[int, ...], ...]  # the shared ray of each fiber
    base_cone: Cone                          # all pairings <= 0 chamber
    n_maximal: int


def rho_eta(am: AdmissibleMap) -> dict:
    """The ray ``rho(alpha)`` of each supported node in coordinates dual to
    the supported simple roots; unsupported nodes map to None."""
    sup = am.support
    out = {}
    for node in range(1, am.rs.rank + 1):
        if node in sup:
            out[node] = tuple(am.value(node, b) for b in sup)
        else:
            out[node] = None
    return out


def build_fan_eta(am: AdmissibleMap) -> FanEtaData:
    """The fan attached to an admissible map.

    Maximal cones are indexed by the subsets of supported nodes picking at
    most one node from each fiber of ``rho``: such a subset contributes the
    rays ``rho(alpha)`` it picks plus the negative dual basis vectors of
    the nodes it leaves out.
    """
    report = validate_admissible(am)
    if not report.ok:
        raise AdmissibleError(
            "invalid admissible map: " + ", ".join(c.name for c in report.failures)
        )
    sup = am.support
    d = len(sup)
    rho = rho_eta(am)

    # fibers of rho on the support, ordered by the paper-free deterministic
    # rule: repeatedly take the lowest node whose eta-row is nonnegative on
    # the remaining nodes
    remaining = list(sup)
    groups = []
    group_rays = []
    while remaining:
        beta = next(
            b for b in remaining if all(am.value(b, g) >= 0 for g in remaining)
        )
        fiber = tuple(g for g in remaining if am.value(beta, g) == 1)
        groups.append(fiber)
        group_rays.append(rho[beta])
        remaining = [g for g in remaining if g not in fiber]

    neg = {
        node: tuple(-1 if s == node else 0 for s in sup) for node in sup
    }
    max_cones = []
    for picks in itertools.product(*[(None, *fiber) for fiber in groups]):
        gens = []
        chosen = [p for p in picks if p is not None]
        for node in sup:
            if node in chosen:
                gens.append(rho[node])
            else:
                gens.append(neg[node])
        max_cones.append(Cone.from_generators(d, gens))
    fan = Fan(d, tuple(max_cones))
    base = Cone.from_generators(d, [neg[node] for node in sup])
    ebs = EnriquesBSystem(am.rs, sup, fan, rho)
    return FanEtaData(ebs, tuple(groups), tuple(group_rays), base, len(max_cones))


def validate_enriques(e: EnriquesBSystem) -> ValidationReport:
    """Check the two defining conditions of the triple, the sign law they
    imply, and that the fan is regular and complete."""
    checks = []
    fan_report = fans.validate_fan(e.fan)
    checks.append(Check("fan-is-fan", fan_report.is_fan))
    checks.append(Check("fan-complete", fan_report.complete))
    checks.append(Check("fan-regular", fan_report.regular))
    rays = set(e.fan.rays())

    bad = []
    for node, q in sorted(e.rho.items()):
        if q is None:
            continue
        coords = e.root_coords(node)
        if coords is None:
            bad.append((node, "root outside the lattice"))
            continue
        if tuple(q) not in rays:
            bad.append((node, "rho value is not a ray"))
            continue
        if e.pair(q, node) != 1:
            bad.append((node, "pairing with own root not 1"))
            continue
        for ray in sorted(rays - {tuple(q)}):
            if sum(x * y for x, y in zip(ray, coords)) > 0:
                bad.append((node, ray))
    checks.append(Check("condition-a", not bad, tuple(bad)))

    bad = []
    for a in range(1, e.rs.rank + 1):
        qa = e.rho.get(a)
        if qa is None:
            continue
        for b in range(1, e.rs.rank + 1):
            if a == b or e.rho.get(b) is None:
                continue
            if e.root_coords(b) is None:
                continue
            if e.pair(qa, b) < e.rs.cartan[a - 1][b - 1]:
                bad.append((a, b))
    checks.append(Check("condition-b", not bad, tuple(bad)))

    # consequence: a negative pairing in one direction forces zero in the
    # other
    bad = []
    for a in range(1, e.rs.rank + 1):
        for b in range(1, e.rs.rank + 1):
            if a == b:
                continue
            qa, qb = e.rho.get(a), e.rho.get(b)
            if qa is None or qb is None:
                continue
            if e.root_coords(a) is None or e.root_coords(b) is None:
                continue
            if e.pair(qa, b) < 0 and e.pair(qb, a) != 0:
                bad.append((a, b))
    checks.append(Check("pair-sign-law", not bad, tuple(bad)))

    return ValidationReport(tuple(checks))


def spherical_system_of_admissible(am: AdmissibleMap):
    """The spherical system of the wonderful variety attached to ``eta``,
    together with the marked strong-solvability witness.

    Colors: one plus-color per distinct ``rho`` value with functional the
    shared ``eta`` row, and one minus-color per supported node with
    functional ``alpha^vee - eta(alpha, .)`` on the support; the marked
    subset is the set of plus-colors.
    """
    report = validate_admissible(am)
    if not report.ok:
        raise AdmissibleError(
            "invalid admissible map: " + ", ".join(c.name for c in report.failures)
        )
    rs = am.rs
    sup = am.support
    sigma = tuple(luna.SphRoot.simple(rs, node) for node in sup)
    rho = rho_eta(am)
    # plus colors keyed by distinct rho values (first occurrence order)
    plus_rows = []
    seen = {}
    for node in sup:
        q = rho[node]
        if q not in seen:
            seen[q] = len(plus_rows)
            plus_rows.append(q)
    minus_rows = []
    for node in sup:
        row = tuple(
            pairing(rs, node, rs.simple_root(b)) - am.value(node, b) for b in sup
        )
        minus_rows.append(row)
    kappa = tuple(plus_rows) + tuple(minus_rows)
    system = luna.SphericalSystem(rs, frozenset(), sigma, kappa)
    marked = frozenset(range(len(plus_rows)))
    return system, marked


def admissible_from_system(s, witness) -> AdmissibleMap:
    """The admissible map determined by a strongly solvable system and one
    of its strong-solvability witnesses: row ``alpha`` of ``eta`` is the
    functional of the unique witness color taking value 1 on ``alpha``."""
    witness = frozenset(witness)
    valid = luna.strong_solvability_witnesses(s)
    if witness not in valid:
        raise AdmissibleError("subset is not a strong-solvability witness")
    rs = s.rs
    n = rs.rank
    eta = [[0] * n for _ in range(n)]
    node_of_sigma = {sig.simple_node(): j for j, sig in enumerate(s.sigma)}
    for node, j in node_of_sigma.items():
        plus = [d for d in witness if s.kappa[d][j] == 1]
        if len(plus) != 1:
            raise AdmissibleError(
                f"witness does not single out a plus-color at a{node}"
            )
        row = s.kappa[plus[0]]
        for other, jj in node_of_sigma.items():
            eta[node - 1][other - 1] = row[jj]
    return AdmissibleMap(rs, tuple(tuple(r) for r in eta))
