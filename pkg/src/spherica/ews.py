"""Extended weight semigroups as an intermediate invariant.

The free generators of the extended weight semigroup of a spherical
homogeneous space pair a dominant weight with a character of the subgroup;
from them the weight lattice, the functionals of the colors, the parabolic
set, and the simple (or doubled-simple) spherical roots can all be read
off.  Conversely the character group of the subgroup is presented on the
colors of a homogeneous spherical datum.

Character groups routinely have torsion (two-torsion already for the
triple product of rank-one groups), so all character arithmetic goes
through :class:`~spherica.lattice.FgAbelianGroup` normal forms.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from spherica import luna
from spherica.lattice import FgAbelianGroup, Sublattice, kernel, quotient_group, solve_integer
from spherica.luna import HomogeneousSphericalDatum, SphRoot, SphericalSystem
from spherica.rootsys import RootSystem, WeightVec


class EWSError(ValueError):
    pass


@dataclass(frozen=True)
class EWSGenerators:
    """Free generators ``(lambda, chi)`` of the extended weight semigroup.

    ``char_group`` presents the character group of the subgroup on some
    generating set; ``chi`` components of the generators are lifts into
    that presentation.  ``central_chi[t]`` is the lift of the restriction
    of the t-th central character (the implicit ``(nu, -nu|_H)`` block).
    """

    rs: RootSystem
    central_rank: int
    char_group: FgAbelianGroup
    generators: tuple[tuple[WeightVec, tuple[int, ...]], ...]
    central_chi: tuple[tuple[int, ...], ...]

    @property
    def n_generators(self) -> int:
        return len(self.generators)


@dataclass(frozen=True)
class EWSInvariants:
    """Invariants recovered from an extended weight semigroup."""

    lam: Sublattice
    pp: frozenset[int]
    kappa: tuple[tuple[int, ...], ...]   # one functional per generator, on lam.basis
    lambda_weights: tuple[WeightVec, ...]
    sigma_detected: tuple[SphRoot, ...]


def _freeness_kernel(g: EWSGenerators):
    """Integer relations among the generators (weight and character parts
    simultaneously); empty for a free family."""
    k = g.char_group.n
    rows = []
    for lam, chi in g.generators:
        rows.append(list(lam.ambient()) + list(chi))
    # character-only lattice directions that are relations of the group
    n_amb = g.rs.rank + g.central_rank
    extra = []
    for rel in g.char_group.relations:
        extra.append([0] * n_amb + list(rel))
    out = []
    for vec in kernel(rows + extra):
        head = vec[: len(g.generators)]
        if any(head):
            out.append(head)
    return out


def invariants_from_ews(g: EWSGenerators) -> EWSInvariants:
    """Recover ``(Lambda, Pi^p, colors-with-functionals, Sigma within the
    simple roots and their doubles)`` from free generators.

    The weight lattice collects the weights expressible with trivial total
    character; the functional of each color is the (unique, by freeness)
    coefficient of its generator in that expression.
    """
    witnesses = _freeness_kernel(g)
    if witnesses:
        raise EWSError(f"generator family is not free: relation {witnesses[0]}")
    rs = g.rs
    n = rs.rank
    c = g.central_rank
    n_amb = n + c
    k = g.char_group.n
    ng = len(g.generators)

    # solution lattice of: sum c_i chi_i - sum nu_t central_chi_t + relations = 0
    rows = []
    for _, chi in g.generators:
        rows.append(list(chi))
    for t in range(c):
        rows.append([-x for x in g.central_chi[t]])
    rel_rows = [list(r) for r in g.char_group.relations]
    rows.extend(rel_rows)
    lam_rows = []
    solution_basis = kernel(rows) if rows else []
    for vec in solution_basis:
        cs = vec[:ng]
        nus = vec[ng : ng + c]
        mu = [0] * n_amb
        for coeff, (lam, _) in zip(cs, g.generators):
            if coeff:
                amb = lam.ambient()
                mu = [m + coeff * a for m, a in zip(mu, amb)]
        for t, coeff in enumerate(nus):
            mu[n + t] += coeff
        lam_rows.append(tuple(mu))
    lam = Sublattice.from_rows(n_amb, lam_rows)

    # functionals: solve the expression for each basis vector of Lambda
    kappa_rows = [[] for _ in range(ng)]
    for b in lam.basis:
        cs = _coefficients_of(g, b)
        for i in range(ng):
            kappa_rows[i].append(cs[i])
    kappa = tuple(tuple(row) for row in kappa_rows)

    # supports of the dominant weights drive the type bookkeeping
    pp = frozenset(
        node
        for node in range(1, n + 1)
        if all(lam.ss[node - 1] == 0 for lam, _ in g.generators)
    )
    sigma = []
    for node in range(1, n + 1):
        hits = [i for i, (lam, _) in enumerate(g.generators) if lam.ss[node - 1] > 0]
        if len(hits) == 2:
            sigma.append(SphRoot.simple(rs, node))
        for i in hits:
            lam_i = g.generators[i][0]
            if (
                lam_i.ss[node - 1] == 2
                and sum(lam_i.ss) == 2
                and not any(lam_i.central)
            ):
                doubled = SphRoot(
                    tuple(2 if t == node - 1 else 0 for t in range(n)), 1
                )
                if doubled not in sigma:
                    sigma.append(doubled)
    return EWSInvariants(
        lam,
        pp,
        kappa,
        tuple(lam for lam, _ in g.generators),
        tuple(sigma),
    )


def _coefficients_of(g: EWSGenerators, mu) -> tuple[int, ...]:
    """Coefficients of the generators in the expression of ``(mu, 0)``."""
    rs = g.rs
    n = rs.rank
    c = g.central_rank
    k = g.char_group.n
    ng = len(g.generators)
    # unknowns: (c_1..c_ng, nu_1..nu_c, r_1..r_nrel)
    rel_rows = [list(r) for r in g.char_group.relations]
    rows = []
    for lam, chi in g.generators:
        rows.append(list(lam.ambient()) + list(chi))
    for t in range(c):
        row = [0] * (n + c)
        row[n + t] = 1
        rows.append(row + [-x for x in g.central_chi[t]])
    for rel in rel_rows:
        rows.append([0] * (n + c) + list(rel))
    target = list(mu) + [0] * k
    sol = solve_integer(rows, target)
    if sol is None:
        raise EWSError(f"{mu} is not in the recovered weight lattice")
    return tuple(sol[0][:ng])


@dataclass(frozen=True)
class CharacterPresentation:
    """The character group of the subgroup presented on the full color set
    plus the central block."""

    group: FgAbelianGroup
    n_colors: int
    central_rank: int
    relations: tuple[tuple[int, ...], ...]

    def chi_of_color(self, index: int) -> tuple[int, ...]:
        vec = [0] * self.group.n
        vec[index] = 1
        return self.group.reduce(vec)


def character_group_from_hsd(d) -> CharacterPresentation:
    """Present the character group on the colors: one generator per color
    of the full set plus the central block, one relation per basis element
    of the weight lattice pairing the color functionals against it."""
    if isinstance(d, SphericalSystem):
        d = luna.system_as_datum(d)
    fcs = luna.full_color_set(d)
    k = len(fcs.colors)
    c = d.central_rank
    n = d.rs.rank
    relations = []
    for t, b in enumerate(d.lam.basis):
        row = [fcs.kappa[i][t] for i in range(k)]
        row += [-b[n + s] for s in range(c)]
        relations.append(tuple(row))
    group = quotient_group(k + c, relations)
    return CharacterPresentation(group, k, c, tuple(relations))


def lambda_D_of_colors(obj) -> tuple[WeightVec, ...]:
    """The dominant weight attached to every color of the full set: the
    sum of fundamental weights over the simple roots moving the color, with
    the doubled-root colors carrying twice theirs."""
    if isinstance(obj, (SphericalSystem, HomogeneousSphericalDatum)):
        fcs = luna.full_color_set(obj)
        rs = obj.rs
        central = obj.central_rank if isinstance(obj, HomogeneousSphericalDatum) else 0
        d_of = fcs.d_of
        n_colors = len(fcs.colors)
        kinds = [col.kind for col in fcs.colors]
    else:
        raise EWSError("expected a spherical system or homogeneous datum")
    n = rs.rank
    out = []
    for i in range(n_colors):
        coeffs = [0] * n
        for node in range(1, n + 1):
            if i in d_of[node]:
                coeffs[node - 1] = 2 if kinds[i] == "a2" else 1
        out.append(WeightVec(tuple(coeffs), (0,) * central))
    return tuple(out)
