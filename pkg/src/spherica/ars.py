"""Active roots and their combinatorial classification data.

A strongly solvable spherical subgroup standardly embedded in the negative
Borel is encoded by the set of its maximal active roots together with the
simple root attached to each and an equivalence relation: an *ARS-set*.
This module holds the admissible (root, attached simple root) patterns, the
subordination closure that expands an ARS-set to the full active root
system, the validators for the pairwise conditions, the tau/J integer
arithmetic, and the conversions to admissible maps, homogeneous spherical
data, and extended-weight-semigroup generators.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from spherica import ews as ews_mod
from spherica import luna
from spherica.admissible import AdmissibleMap, rho_eta, validate_admissible
from spherica.lattice import Sublattice, solve_integer
from spherica.luna import HomogeneousSphericalDatum, SphRoot
from spherica.rootsys import RootSystem, WeightVec, pairing, support
from spherica.validation import Check, ValidationReport


class ARSError(ValueError):
    pass


# ---------------------------------------------------------------------------
# admissible (alpha, pi(alpha)) patterns
# ---------------------------------------------------------------------------


def check_active_pattern(rs: RootSystem, alpha, delta: int) -> bool:
    """Whether ``(alpha, delta)`` is an admissible active-root pattern.

    ``alpha`` is a positive root, ``delta`` a node of its support.  The
    admissible patterns per support type: the coefficient-1 sum over the
    whole support with any attached node; in type B the sum with the short
    root doubled, attached anywhere except the short root; in type C twice
    the short chain plus the long root, attached at the long root; in F4
    the sum with both short roots doubled, attached at a long node; in G2
    the 2-1 and 3-1 patterns attached at the long root.
    """
    if not rs.is_positive_root(tuple(alpha)):
        raise ARSError(f"{alpha} is not a positive root")
    supp = support(alpha)
    if delta not in supp:
        raise ARSError(f"node {delta} is not in the support of {alpha}")
    coeffs = {node: alpha[node - 1] for node in supp}
    if all(c == 1 for c in coeffs.values()):
        return True
    if len(supp) == 1:
        return False
    from spherica.rootsys import induced_type

    letter, r, labelings = induced_type(rs, supp)
    for lab in labelings:
        pattern = tuple(coeffs[node] for node in lab)
        pos = lab.index(delta)
        if letter == "B" and pattern == (1,) * (r - 1) + (2,) and pos < r - 1:
            return True
        if letter == "C" and r >= 3 and pattern == (2,) * (r - 1) + (1,) and pos == r - 1:
            return True
        # Bourbaki numbering: the doubled part sits on the short nodes 3, 4
        if letter == "F" and pattern == (1, 1, 2, 2) and pos in (0, 1):
            return True
        if letter == "G" and pattern in ((2, 1), (3, 1)) and pos == 1:
            return True
    return False


def _allowed_attachments(rs: RootSystem, alpha) -> tuple[int, ...]:
    return tuple(
        node for node in sorted(support(alpha)) if check_active_pattern(rs, alpha, node)
    )


def subordinate_closure(rs: RootSystem, alpha, pi_alpha: int):
    """The set ``F(alpha)`` of ``alpha`` and its subordinate active roots,
    with the attached simple root of every member.

    Members are the positive roots ``beta`` with ``alpha - beta`` a
    positive root and the attached node of ``alpha`` outside the support of
    ``beta``.  The attachment map on the result is the unique
    support-respecting bijection onto the support of ``alpha``; failure of
    existence or uniqueness is a hard error.
    """
    alpha = tuple(alpha)
    if not check_active_pattern(rs, alpha, pi_alpha):
        raise ARSError(f"({alpha}, a{pi_alpha}) is not an admissible pattern")
    members = [alpha]
    for beta in rs.positive_roots:
        diff = tuple(a - b for a, b in zip(alpha, beta))
        if beta != alpha and rs.is_positive_root(diff) and pi_alpha not in support(beta):
            members.append(beta)
    supp = sorted(support(alpha))
    if len(members) != len(supp):
        raise ARSError(
            f"subordinate set of ({alpha}, a{pi_alpha}) has size {len(members)}, "
            f"expected {len(supp)}"
        )
    allowed = {beta: set(_allowed_attachments(rs, beta)) for beta in members}
    allowed[alpha] = {pi_alpha}
    assignments = []
    members_sorted = sorted(members, key=lambda b: (sum(b), b))
    for perm in itertools.permutations(supp):
        trial = dict(zip(members_sorted, perm))
        if all(trial[b] in allowed[b] for b in members_sorted):
            assignments.append(trial)
    if len(assignments) != 1:
        raise ARSError(
            f"attachment map on F({alpha}) is not unique "
            f"({len(assignments)} candidates)"
        )
    return assignments[0]


# ---------------------------------------------------------------------------
# data types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ARSSet:
    """Maximal active roots with attachments and equivalence classes.

    ``pi[i]`` is the node attached to ``maximal[i]``; ``classes`` is a
    partition of the indices of ``maximal``.
    """

    rs: RootSystem
    maximal: tuple[tuple[int, ...], ...]
    pi: tuple[int, ...]
    classes: tuple[frozenset[int], ...]

    @property
    def support_nodes(self) -> tuple[int, ...]:
        nodes = set()
        for m in self.maximal:
            nodes.update(support(m))
        return tuple(sorted(nodes))

    def class_of(self, index: int) -> int:
        for k, cls in enumerate(self.classes):
            if index in cls:
                return k
        raise ARSError(f"index {index} not covered by the classes")

    @staticmethod
    def build(rs, maximal_with_pi, classes=None) -> "ARSSet":
        """``maximal_with_pi``: list of (root, node); ``classes``: list of
        index lists (default: all singletons)."""
        roots = tuple(tuple(r) for r, _ in maximal_with_pi)
        pis = tuple(p for _, p in maximal_with_pi)
        if classes is None:
            classes = [[i] for i in range(len(roots))]
        return ARSSet(rs, roots, pis, tuple(frozenset(c) for c in classes))


@dataclass(frozen=True)
class ExtendedARSSet:
    """An ARS-set together with the kernel of the character-restriction
    map, as a sublattice of the ambient character lattice (weight
    coordinates plus an optional central block)."""

    ars: ARSSet
    central_rank: int
    ker_tau: Sublattice

    @property
    def rs(self) -> RootSystem:
        return self.ars.rs

    @property
    def ambient_rank(self) -> int:
        return self.rs.rank + self.central_rank


@dataclass(frozen=True)
class ActiveRootSystem:
    """The full set of active roots partitioned into classes, with the
    attachment map on every active root."""

    rs: RootSystem
    classes: tuple[tuple[tuple[int, ...], ...], ...]
    pi: tuple[tuple[tuple[int, ...], int], ...]  # (root, attached node)

    @property
    def psi(self) -> tuple[tuple[int, ...], ...]:
        out = []
        for cls in self.classes:
            out.extend(cls)
        return tuple(sorted(out, key=lambda r: (sum(r), r)))

    def pi_map(self) -> dict:
        return {root: node for root, node in self.pi}

    def class_index_of_root(self, root) -> int:
        root = tuple(root)
        for k, cls in enumerate(self.classes):
            if root in cls:
                return k
        raise ARSError(f"{root} is not an active root")

    def pi_image(self, class_index: int) -> tuple[int, ...]:
        pm = self.pi_map()
        return tuple(sorted({pm[r] for r in self.classes[class_index]}))

    def phi_of_node(self) -> dict:
        """The class whose attachment image contains each support node."""
        out = {}
        for k in range(len(self.classes)):
            for node in self.pi_image(k):
                if node in out:
                    raise ARSError("attachment images of classes overlap")
                out[node] = k
        return out

    @property
    def support_nodes(self) -> tuple[int, ...]:
        nodes = set()
        for root in self.psi:
            nodes.update(support(root))
        return tuple(sorted(nodes))


def _canonical_classes(classes):
    cls = [tuple(sorted(c, key=lambda r: (sum(r), r))) for c in classes]
    return tuple(sorted(cls, key=lambda c: (sum(c[0]), c[0])))


def expand_ars(a: ARSSet) -> ActiveRootSystem:
    """Expand maximal active roots to the full active root system.

    The equivalence extends by common shifts into the maximal set: two
    active roots are equivalent iff adding one positive root (or zero) to
    both lands them in equivalent maximal roots.  Conflicting attachment
    assignments trip an internal-consistency error.
    """
    rs = a.rs
    pi_all: dict = {}
    f_sets = []
    for root, node in zip(a.maximal, a.pi):
        fmap = subordinate_closure(rs, root, node)
        f_sets.append(set(fmap))
        for beta, delta in fmap.items():
            if beta in pi_all and pi_all[beta] != delta:
                raise ARSError(
                    f"conflicting attachments {pi_all[beta]} and {delta} for {beta}"
                )
            pi_all[beta] = delta
    psi = sorted(pi_all, key=lambda r: (sum(r), r))
    maximal_set = {m: i for i, m in enumerate(a.maximal)}

    # union-find over psi driven by the shift rule
    parent = {r: r for r in psi}

    def find(r):
        while parent[r] != r:
            parent[r] = parent[parent[r]]
            r = parent[r]
        return r

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry

    shifts = [tuple([0] * rs.rank)] + [list(r) for r in rs.positive_roots]
    for x, y in itertools.combinations(psi, 2):
        for gamma in shifts:
            xs = tuple(c + g for c, g in zip(x, gamma))
            ys = tuple(c + g for c, g in zip(y, gamma))
            if xs in maximal_set and ys in maximal_set:
                if a.class_of(maximal_set[xs]) == a.class_of(maximal_set[ys]):
                    union(x, y)
                    break
    groups: dict = {}
    for r in psi:
        groups.setdefault(find(r), []).append(r)
    classes = _canonical_classes(groups.values())
    # consistency: restricted to the maximal roots the classes must agree
    for cls in classes:
        idxs = {maximal_set[r] for r in cls if r in maximal_set}
        if idxs:
            orig = {a.class_of(i) for i in idxs}
            if len(orig) != 1:
                raise ARSError("expansion merged distinct maximal classes")
            full = a.classes[orig.pop()]
            if idxs != set(full):
                raise ARSError("expansion split a maximal class")
    pi_pairs = tuple(sorted(pi_all.items(), key=lambda kv: (sum(kv[0]), kv[0])))
    system = ActiveRootSystem(rs, classes, pi_pairs)
    system.phi_of_node()  # raises when attachment images overlap
    return system


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------


def _is_path(rs: RootSystem, nodes) -> int | None:
    """If the induced graph on ``nodes`` is a path, return nothing falsy;
    used via endpoints."""
    nodes = sorted(nodes)
    if not nodes:
        return None
    deg = {x: sum(1 for y in nodes if y != x and rs.adjacent(x, y)) for x in nodes}
    if len(nodes) == 1:
        return nodes[0]
    if sorted(deg.values())[-1] > 2 or sum(1 for d in deg.values() if d == 1) != 2:
        return None
    # connectivity
    seen = {nodes[0]}
    stack = [nodes[0]]
    while stack:
        cur = stack.pop()
        for y in nodes:
            if y not in seen and rs.adjacent(cur, y):
                seen.add(y)
                stack.append(y)
    return nodes[0] if len(seen) == len(nodes) else None


def _star_shape(rs: RootSystem, alpha, beta) -> int | None:
    """Detect the branch-node shape: the two supports overlap in a chain
    hanging off a single node gamma_0 to which both leftover arms attach.
    Returns gamma_0, or None when the shape does not match."""
    sa, sb = support(alpha), support(beta)
    common = sa & sb
    arm_a, arm_b = sa - common, sb - common
    if len(common) < 2 or not arm_a or not arm_b:
        return None
    if any(alpha[n - 1] != 1 for n in sa) or any(beta[n - 1] != 1 for n in sb):
        return None
    if any(rs.adjacent(x, y) for x in arm_a for y in arm_b):
        return None
    g0a = {c for c in common if any(rs.adjacent(c, x) for x in arm_a)}
    g0b = {c for c in common if any(rs.adjacent(c, x) for x in arm_b)}
    if len(g0a) != 1 or g0a != g0b:
        return None
    g0 = next(iter(g0a))
    # the common part must be a path with g0 as an endpoint
    if _is_path(rs, common) is None:
        return None
    deg_in_common = sum(1 for y in common if y != g0 and rs.adjacent(g0, y))
    if deg_in_common != 1:
        return None
    for arm in (arm_a, arm_b):
        if _is_path(rs, arm) is None:
            return None
        attach = [x for x in arm if rs.adjacent(x, g0)]
        if len(attach) != 1:
            return None
        x = attach[0]
        if sum(1 for y in arm if y != x and rs.adjacent(x, y)) > 1:
            return None
    return g0


def _terminal(rs: RootSystem, node: int, supp) -> bool:
    return sum(1 for y in supp if y != node and rs.adjacent(node, y)) == 1


def pair_conditions(rs: RootSystem, alpha, pa: int, beta, pb: int) -> set[str]:
    """The set of pairwise conditions satisfied by two attached roots."""
    alpha, beta = tuple(alpha), tuple(beta)
    sa, sb = support(alpha), support(beta)
    common = sa & sb
    out = set()
    if not common:
        out.add("D0")
        return out
    if len(common) == 1:
        delta = next(iter(common))
        term = _terminal(rs, delta, sa) and _terminal(rs, delta, sb)
        if term and pa != delta and pb != delta:
            out.add("D1")
        if term and pa == delta == pb:
            da = tuple(a - d for a, d in zip(alpha, rs.simple_root(delta)))
            db = tuple(b - d for b, d in zip(beta, rs.simple_root(delta)))
            if rs.is_positive_root(da) and rs.is_positive_root(db):
                out.add("E1")
        return out
    g0 = _star_shape(rs, alpha, beta)
    if g0 is not None:
        if pa not in common and pb not in common:
            out.add("D2")
        if pa == pb and pa in common:
            out.add("E2")
    return out


def validate_ars(a: ARSSet) -> ValidationReport:
    """Check the defining conditions of an ARS-set, reporting each with
    the witnessing roots or pairs."""
    rs = a.rs
    checks = []

    bad = tuple(
        (m, f"a{p}")
        for m, p in zip(a.maximal, a.pi)
        if not rs.is_positive_root(m) or p not in support(m) or not check_active_pattern(rs, m, p)
    )
    checks.append(Check("A", not bad, bad))

    # partition sanity
    covered = sorted(i for cls in a.classes for i in cls)
    part_ok = covered == list(range(len(a.maximal))) and len(covered) == len(set(covered))
    checks.append(Check("classes-partition", part_ok))

    dupes = len(set(a.maximal)) != len(a.maximal)
    checks.append(Check("maximal-distinct", not dupes))

    bad_d, bad_e = [], []
    for i, j in itertools.combinations(range(len(a.maximal)), 2):
        conds = pair_conditions(rs, a.maximal[i], a.pi[i], a.maximal[j], a.pi[j])
        same = a.class_of(i) == a.class_of(j)
        if same:
            if not conds & {"D0", "D1", "E1", "D2", "E2"}:
                bad_e.append((a.maximal[i], a.maximal[j]))
        else:
            if not conds & {"D0", "D1", "D2"}:
                bad_d.append((a.maximal[i], a.maximal[j]))
    checks.append(Check("D", not bad_d, tuple(bad_d)))
    checks.append(Check("E", not bad_e, tuple(bad_e)))

    bad = []
    for i, m in enumerate(a.maximal):
        rest = set()
        for j, other in enumerate(a.maximal):
            if j != i:
                rest.update(support(other))
        if support(m) <= rest:
            bad.append(m)
    checks.append(Check("C", not bad, tuple(bad)))

    return ValidationReport(tuple(checks))


def difference_lattice(a: ARSSet, central_rank: int = 0) -> Sublattice:
    """The lattice spanned by differences of equivalent maximal roots, in
    ambient coordinates."""
    rs = a.rs
    n_amb = rs.rank + central_rank
    rows = []
    for cls in a.classes:
        idxs = sorted(cls)
        for i, j in itertools.combinations(idxs, 2):
            wi = rs.root_to_weight(a.maximal[i]) + (0,) * central_rank
            wj = rs.root_to_weight(a.maximal[j]) + (0,) * central_rank
            rows.append(tuple(x - y for x, y in zip(wi, wj)))
    return Sublattice.from_rows(n_amb, rows)


def support_lattice(a: ARSSet, central_rank: int = 0) -> Sublattice:
    rs = a.rs
    rows = [
        rs.root_to_weight(rs.simple_root(node)) + (0,) * central_rank
        for node in a.support_nodes
    ]
    return Sublattice.from_rows(rs.rank + central_rank, rows)


def validate_extended(e: ExtendedARSSet) -> ValidationReport:
    """An ARS-set report plus the lattice condition tying the kernel of
    the character restriction to the differences of equivalent maximal
    roots."""
    base = validate_ars(e.ars)
    checks = list(base.checks)
    n_amb = e.rs.rank + e.central_rank
    if e.ker_tau.ambient_rank != n_amb:
        checks.append(Check("T", False, ("kernel ambient rank mismatch",)))
        return ValidationReport(tuple(checks))
    inter = e.ker_tau.intersection(support_lattice(e.ars, e.central_rank))
    diff = difference_lattice(e.ars, e.central_rank)
    checks.append(Check("T", inter == diff, (inter.basis, diff.basis)))
    return ValidationReport(tuple(checks))


def normalize_wonderful(e: ExtendedARSSet) -> ExtendedARSSet:
    """The representative with the kernel exactly the difference lattice
    of equivalent maximal roots (the spherical closure)."""
    return ExtendedARSSet(e.ars, e.central_rank, difference_lattice(e.ars, e.central_rank))


def is_wonderful_normalized(e: ExtendedARSSet) -> bool:
    return e.ker_tau == difference_lattice(e.ars, e.central_rank)


# ---------------------------------------------------------------------------
# tau / J arithmetic
# ---------------------------------------------------------------------------


def _class_reps(system: ActiveRootSystem):
    return [cls[0] for cls in system.classes]


def _stacked_rows(e: ExtendedARSSet, system: ActiveRootSystem):
    rs = e.rs
    pad = (0,) * e.central_rank
    rows = [rs.root_to_weight(rep) + pad for rep in _class_reps(system)]
    rows.extend(e.ker_tau.basis)
    return rows


def check_sphericity_combinatorial(e: ExtendedARSSet) -> bool:
    """Whether the class characters are linearly independent modulo the
    kernel (the codimension-one half of the sphericity criterion is built
    into the data model)."""
    system = expand_ars(e.ars)
    k = len(system.classes)
    if k == 0:
        return True
    rows = _stacked_rows(e, system)
    from spherica.lattice import kernel

    for vec in kernel([list(r) for r in rows]):
        if any(vec[:k]):
            return False
    return True


def tau_J(e: ExtendedARSSet, mu, system: ActiveRootSystem | None = None) -> dict:
    """The integer coordinates of ``tau(mu)`` against the class characters.

    ``mu`` is an ambient character vector lying in the span of the support
    roots plus the kernel; the solution is unique exactly when the class
    characters are independent, which is part of validity.
    """
    if system is None:
        system = expand_ars(e.ars)
    k = len(system.classes)
    rows = _stacked_rows(e, system)
    mu = tuple(mu)
    if len(mu) != e.rs.rank + e.central_rank:
        raise ARSError("ambient dimension mismatch")
    sol = solve_integer([list(r) for r in rows], list(mu))
    if sol is None:
        raise ARSError(f"{mu} is not in the admissible character sublattice")
    x, ker = sol
    for vec in ker:
        if any(vec[:k]):
            raise ARSError("class characters are dependent; extended set invalid")
    return {idx: x[idx] for idx in range(k)}


# ---------------------------------------------------------------------------
# conversions
# ---------------------------------------------------------------------------


def admissible_from_ars(e: ExtendedARSSet) -> AdmissibleMap:
    """The admissible map of a wonderful-normalized extended ARS-set: row
    ``alpha`` holds the class coordinates of ``tau(beta)`` for the class
    attached to ``alpha``."""
    rep = validate_extended(e)
    if not rep.ok:
        raise ARSError(
            "invalid extended ARS-set: " + ", ".join(c.name for c in rep.failures)
        )
    if not is_wonderful_normalized(e):
        raise ARSError(
            "extended set is not wonderful-normalized; apply normalize_wonderful"
        )
    rs = e.rs
    system = expand_ars(e.ars)
    phi_of = system.phi_of_node()
    n = rs.rank
    pad = (0,) * e.central_rank
    eta = [[0] * n for _ in range(n)]
    support_nodes = system.support_nodes
    j_cache = {
        b: tau_J(e, rs.root_to_weight(rs.simple_root(b)) + pad, system)
        for b in support_nodes
    }
    for a in support_nodes:
        for b in support_nodes:
            eta[a - 1][b - 1] = j_cache[b][phi_of[a]]
    am = AdmissibleMap(rs, tuple(tuple(r) for r in eta))
    report = validate_admissible(am)
    if not report.ok:
        raise ARSError(
            "derived map violates admissibility: "
            + ", ".join(c.name for c in report.failures)
        )
    return am


def ars_from_admissible(am: AdmissibleMap) -> tuple[ActiveRootSystem, ARSSet]:
    """Recover the active root system of an admissible map.

    For each distinct row value of ``rho`` the corresponding class is cut
    out of the positive roots supported on the map's support by one linear
    system: pairing 1 against the chosen ray, 0 against every other ray.
    """
    report = validate_admissible(am)
    if not report.ok:
        raise ARSError("invalid admissible map")
    rs = am.rs
    sup = set(am.support)
    rho = rho_eta(am)
    distinct = []
    for node in am.support:
        q = rho[node]
        if q not in distinct:
            distinct.append(q)
    classes = []
    for q0 in distinct:
        cls = []
        for gamma in rs.positive_roots:
            if not support(gamma) <= sup:
                continue
            vals = {}
            ok = True
            for q in distinct:
                v = sum(
                    qc * gamma[node - 1]
                    for qc, node in zip(q, am.support)
                )
                if q == q0:
                    ok = ok and v == 1
                else:
                    ok = ok and v == 0
            if ok:
                cls.append(gamma)
        if not cls:
            raise ARSError("empty active class for a ray; map inconsistent")
        classes.append(tuple(sorted(cls, key=lambda r: (sum(r), r))))
    classes = _canonical_classes(classes)
    system = _assemble_active_system(rs, classes)
    return system, ars_set_of(system)


def _assemble_active_system(rs: RootSystem, classes) -> ActiveRootSystem:
    """Reconstruct the attachment map of a class partition of active roots
    by matching the (unique) maximal-root assignment whose expansion
    reproduces the partition."""
    psi = sorted({r for cls in classes for r in cls}, key=lambda r: (sum(r), r))
    psi_set = set(psi)
    maximal = [
        m
        for m in psi
        if not any(
            rs.is_positive_root(tuple(b - mm for b, mm in zip(other, m)))
            for other in psi
            if other != m
        )
    ]
    class_index = {}
    for k, cls in enumerate(classes):
        for r in cls:
            class_index[r] = k
    m_classes_idx: dict = {}
    for i, m in enumerate(maximal):
        m_classes_idx.setdefault(class_index[m], []).append(i)
    m_classes = [frozenset(v) for _, v in sorted(m_classes_idx.items())]
    candidates = []
    for m in maximal:
        opts = []
        for node in _allowed_attachments(rs, m):
            try:
                fmap = subordinate_closure(rs, m, node)
            except ARSError:
                continue
            if set(fmap) <= psi_set:
                opts.append(node)
        if not opts:
            raise ARSError(f"no admissible attachment for maximal root {m}")
        candidates.append(opts)
    matches = []
    for combo in itertools.product(*candidates):
        trial = ARSSet(rs, tuple(maximal), tuple(combo), tuple(m_classes))
        try:
            expanded = expand_ars(trial)
        except ARSError:
            continue
        if expanded.classes == tuple(classes):
            matches.append(expanded)
    if not matches:
        raise ARSError("no attachment assignment reproduces the classes")
    first = matches[0]
    if any(m.pi != first.pi for m in matches[1:]):
        raise ARSError("ambiguous attachment reconstruction")
    return first


def ars_set_of(system: ActiveRootSystem) -> ARSSet:
    """The maximal-root presentation of an expanded active root system."""
    rs = system.rs
    psi = system.psi
    maximal = [
        m
        for m in psi
        if not any(
            rs.is_positive_root(tuple(b - mm for b, mm in zip(other, m)))
            for other in psi
            if other != m
        )
    ]
    maximal = sorted(maximal, key=lambda r: (sum(r), r))
    pm = system.pi_map()
    pis = tuple(pm[m] for m in maximal)
    cls_map: dict = {}
    for i, m in enumerate(maximal):
        cls_map.setdefault(system.class_index_of_root(m), []).append(i)
    classes = tuple(frozenset(v) for _, v in sorted(cls_map.items()))
    return ARSSet(rs, tuple(maximal), pis, classes)


def hsd_from_ars(e: ExtendedARSSet) -> HomogeneousSphericalDatum:
    """The homogeneous spherical datum of an extended ARS-set.

    The weight lattice is the span of the support roots plus the kernel;
    the spherical roots are the support simple roots; colors split into one
    per support node and one per class, with functionals read off the tau/J
    coordinates.
    """
    rep = validate_extended(e)
    if not rep.ok:
        raise ARSError(
            "invalid extended ARS-set: " + ", ".join(c.name for c in rep.failures)
        )
    rs = e.rs
    system = expand_ars(e.ars)
    phi_of = system.phi_of_node()
    pad = (0,) * e.central_rank
    n_amb = rs.rank + e.central_rank
    support_nodes = system.support_nodes
    lam = Sublattice.from_rows(
        n_amb,
        [rs.root_to_weight(rs.simple_root(a)) + pad for a in support_nodes]
        + list(e.ker_tau.basis),
    )
    sigma = tuple(SphRoot.simple(rs, a) for a in support_nodes)
    j_rows = [tau_J(e, b, system) for b in lam.basis]
    kappa = []
    for a in support_nodes:
        kappa.append(
            tuple(
                b[a - 1] - j_rows[t][phi_of[a]] for t, b in enumerate(lam.basis)
            )
        )
    for k in range(len(system.classes)):
        kappa.append(tuple(j_rows[t][k] for t in range(len(lam.basis))))
    return HomogeneousSphericalDatum(
        rs, e.central_rank, frozenset(), sigma, lam, tuple(kappa)
    )


def ars_from_hsd(d: HomogeneousSphericalDatum, witness) -> ExtendedARSSet:
    """Recover the extended ARS-set of a strongly solvable datum and one of
    its strong-solvability witnesses.

    The character group is presented on the full color set plus the
    central block; the kernel of the restriction map is cut out of the
    presentation kernel by the coordinate subgroup spanned by the
    non-witness colors, and the active classes are the fibers of the
    restriction over the witness characters.
    """
    system_view = d.to_system()
    witness = frozenset(witness)
    if witness not in set(luna.strong_solvability_witnesses(system_view)):
        raise ARSError("subset is not a strong-solvability witness")
    rs = d.rs
    n = rs.rank
    fcs = luna.full_color_set(d)
    pres = ews_mod.character_group_from_hsd(d)
    k = len(fcs.colors)
    c = d.central_rank

    # the non-witness colors, one per simple root
    kappa_sigma = d.kappa_on_sigma()
    node_color = {}
    for node in range(1, n + 1):
        pool = [i for i in fcs.d_of[node] if i not in witness]
        if len(pool) != 1:
            raise ARSError(f"witness does not leave one color at a{node}")
        node_color[node] = pool[0]

    def lift_of_mu(mu):
        """Image of an ambient character in the color presentation."""
        vec = [0] * (k + c)
        for node in range(1, n + 1):
            vec[node_color[node]] -= mu[node - 1]
        for t in range(c):
            vec[k + t] = mu[n + t]
        return vec

    # kernel of the restriction: presentation relations supported on the
    # identified coordinates
    keep = sorted({node_color[node] for node in range(1, n + 1)}) + [
        k + t for t in range(c)
    ]
    rel_lattice = Sublattice.from_rows(k + c, pres.relations)
    restricted = rel_lattice.restrict_rows(keep)
    ker_rows = []
    for row in restricted.basis:
        mu = [0] * (n + c)
        for node in range(1, n + 1):
            mu[node - 1] = -row[node_color[node]]
        for t in range(c):
            mu[n + t] = row[k + t]
        ker_rows.append(tuple(mu))
    ker_tau = Sublattice.from_rows(n + c, ker_rows)

    # witness characters and their active classes
    group = pres.group
    sigma_nodes = [s.simple_node() for s in d.sigma]
    classes = []
    for w in sorted(witness):
        vec = [0] * (k + c)
        vec[w] += 1
        for jj, node in enumerate(sigma_nodes):
            if kappa_sigma[w][jj] == 1:
                vec[node_color[node]] -= 1
        phi = group.reduce(vec)
        cls = []
        for gamma in rs.positive_roots:
            if not support(gamma) <= {node for node in sigma_nodes}:
                continue
            mu = list(rs.root_to_weight(gamma)) + [0] * c
            if group.reduce(lift_of_mu(mu)) == phi:
                cls.append(gamma)
        if not cls:
            raise ARSError("a witness color carries no active root")
        classes.append(tuple(sorted(cls, key=lambda r: (sum(r), r))))
    classes = _canonical_classes(classes)
    active = _assemble_active_system(rs, classes)
    return ExtendedARSSet(ars_set_of(active), c, ker_tau)


def ews_generators_from_ars(e: ExtendedARSSet) -> "ews_mod.EWSGenerators":
    """The free generators of the extended weight semigroup: one generator
    per simple root pairing a fundamental weight with its restriction, and
    one per active class shifting the restriction by the class character."""
    rs = e.rs
    n = rs.rank
    c = e.central_rank
    system = expand_ars(e.ars)
    char_group = lattice_quotient(n + c, e.ker_tau)
    gens = []
    for node in range(1, n + 1):
        lam = WeightVec(tuple(1 if i == node - 1 else 0 for i in range(n)), (0,) * c)
        chi = tuple(-x for x in lam.ambient())
        gens.append((lam, chi))
    for idx, cls in enumerate(system.classes):
        image = system.pi_image(idx)
        lam = WeightVec(
            tuple(1 if i + 1 in image else 0 for i in range(n)), (0,) * c
        )
        rep_w = rs.root_to_weight(cls[0]) + (0,) * c
        chi = tuple(r - l for l, r in zip(lam.ambient(), rep_w))
        gens.append((lam, chi))
    central = []
    for t in range(c):
        central.append(tuple(1 if i == n + t else 0 for i in range(n + c)))
    return ews_mod.EWSGenerators(
        rs, c, char_group, tuple(gens), tuple(central)
    )


def lattice_quotient(n_amb: int, ker: Sublattice):
    from spherica.lattice import quotient_group

    return quotient_group(n_amb, ker)
