"""Exhaustive classification at small rank.

Admissible maps are enumerated by backtracking over the off-diagonal
entries (bounded below by the Cartan pairing and above by one), pruned by
the pairwise sign condition and finished by full validation.  Grouping the
resulting spherical systems up to color bijection yields one classification
record per strongly solvable wonderful subgroup, carrying every
strong-solvability witness with its admissible map and active-root
classes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from spherica import ars as ars_mod
from spherica import luna
from spherica.admissible import (
    AdmissibleMap,
    admissible_from_system,
    spherical_system_of_admissible,
    validate_admissible,
)
from spherica.rootsys import RootSystem

DEFAULT_RANK_BOUND = 4


class EnumerationError(ValueError):
    pass


def enumerate_admissible(
    rs: RootSystem, cuspidal_only: bool = True, rank_bound: int = DEFAULT_RANK_BOUND
) -> list[AdmissibleMap]:
    """All admissible maps of the diagram, in a deterministic order.

    ``cuspidal_only`` restricts to maps supported on the whole diagram
    (diagonal all ones); otherwise every support subset is covered.
    """
    n = rs.rank
    if n > rank_bound:
        raise EnumerationError(
            f"rank {n} exceeds the enumeration bound {rank_bound}"
        )
    diagonals = (
        [tuple([1] * n)]
        if cuspidal_only
        else [tuple(bits) for bits in itertools.product((0, 1), repeat=n)]
    )
    out = []
    for diag in diagonals:
        sup = [i for i in range(n) if diag[i] == 1]
        pairs = list(itertools.combinations(sup, 2))

        def domains(i, j):
            return range(max(-3, rs.cartan[i][j]), 2)

        def backtrack(idx, eta):
            if idx == len(pairs):
                am = AdmissibleMap(rs, tuple(tuple(row) for row in eta))
                if validate_admissible(am).ok:
                    out.append(am)
                return
            i, j = pairs[idx]
            for a in domains(i, j):
                for b in domains(j, i):
                    if a < 0 and b != 0:
                        continue
                    if b < 0 and a != 0:
                        continue
                    # quick row-equality consequences of a 1-entry; the
                    # full axiom check happens at the leaf
                    if a == 1 and b != 1:
                        continue
                    if b == 1 and a != 1:
                        continue
                    eta[i][j], eta[j][i] = a, b
                    backtrack(idx + 1, eta)
                    eta[i][j], eta[j][i] = 0, 0

        eta0 = [[0] * n for _ in range(n)]
        for i in range(n):
            eta0[i][i] = diag[i]
        backtrack(0, eta0)
    return out


@dataclass(frozen=True)
class WitnessData:
    witness: frozenset[int]
    eta: AdmissibleMap
    active_classes: tuple[tuple[tuple[int, ...], ...], ...]


@dataclass(frozen=True)
class ClassificationRecord:
    """One strongly solvable wonderful subgroup: its canonical spherical
    system, all strong-solvability witnesses, and per-witness admissible
    map and active-root classes."""

    system: luna.SphericalSystem
    per_witness: tuple[WitnessData, ...]

    @property
    def dsc_list(self) -> tuple[frozenset[int], ...]:
        return tuple(w.witness for w in self.per_witness)


def _record_for_system(system: luna.SphericalSystem) -> ClassificationRecord:
    witnesses = luna.strong_solvability_witnesses(system)
    data = []
    for w in witnesses:
        eta = admissible_from_system(system, w)
        active, _ = ars_mod.ars_from_admissible(eta)
        data.append(WitnessData(w, eta, active.classes))
    return ClassificationRecord(system, tuple(data))


def enumerate_cuspidal_systems(
    rs: RootSystem,
    rank_bound: int = DEFAULT_RANK_BOUND,
    cuspidal_only: bool = True,
) -> list[ClassificationRecord]:
    """Classification records of the diagram, grouped from the enumerated
    admissible maps and deduplicated by the canonical system."""
    maps = enumerate_admissible(rs, cuspidal_only=cuspidal_only, rank_bound=rank_bound)
    systems = {}
    for am in maps:
        system, _ = spherical_system_of_admissible(am)
        canon = system.canonical()
        systems.setdefault(_dedup_key(canon), canon)
    records = [
        _record_for_system(systems[k]) for k in sorted(systems, key=_sort_key)
    ]
    return records


def _dedup_key(canon: luna.SphericalSystem):
    return (
        tuple(sorted((s.num, s.den) for s in canon.sigma)),
        tuple(sorted(canon.kappa)),
    )


def _sort_key(key):
    sigma_part, kappa_part = key
    return (len(sigma_part), len(kappa_part), sigma_part, kappa_part)
