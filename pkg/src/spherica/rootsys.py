"""Exact root-system arithmetic for products of simple Dynkin types A-G.

Conventions (pinned in docs/conventions.md, single source of truth):

* node numbering follows Bourbaki; nodes are numbered 1..n globally across
  the components of a product diagram;
* ``cartan[i][j]`` is the pairing ``<alpha_i^vee, alpha_j>``, so e.g. in
  type B_2 (with alpha_2 short) one has ``cartan[1][0] == -2``;
* the Weyl-invariant inner product is normalised so that short roots of
  every simple component have squared length 2.

Roots are plain integer tuples in the simple-root basis; weights are
:class:`WeightVec` instances in the fundamental-weight basis (plus an
optional central-torus block).  Everything is immutable after construction.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction


class RootSystemError(ValueError):
    """Raised for invalid diagrams or ill-formed root/weight input."""


#: admissible (type letter, rank) combinations
_RANK_RULES = {
    "A": lambda r: r >= 1,
    "B": lambda r: r >= 2,
    "C": lambda r: r >= 2,
    "D": lambda r: r >= 3,
    "E": lambda r: r in (6, 7, 8),
    "F": lambda r: r == 4,
    "G": lambda r: r == 2,
}


def cartan_block(letter: str, rank: int) -> list[list[int]]:
    """Cartan matrix ``<alpha_i^vee, alpha_j>`` of one simple component."""
    if letter not in _RANK_RULES or not _RANK_RULES[letter](rank):
        raise RootSystemError(f"invalid simple component {letter}{rank}")
    a = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]

    def join(i, j, aij=-1, aji=-1):
        a[i][j] = aij
        a[j][i] = aji

    if letter in ("A", "B", "C"):
        for i in range(rank - 1):
            join(i, i + 1)
        if letter == "B" and rank >= 2:
            # alpha_rank is short: <alpha_r^vee, alpha_{r-1}> = -2
            join(rank - 2, rank - 1, -1, -2)
        if letter == "C" and rank >= 2:
            # alpha_rank is long
            join(rank - 2, rank - 1, -2, -1)
    elif letter == "D":
        for i in range(rank - 2):
            join(i, i + 1)
        join(rank - 3, rank - 1)
    elif letter == "E":
        # Bourbaki: chain 1-3-4-5-...-rank, node 2 attached to node 4
        chain = [0, 2, 3, 4, 5, 6, 7][: rank - 1]
        for i, j in zip(chain, chain[1:]):
            join(i, j)
        join(1, 3)
    elif letter == "F":
        join(0, 1)
        join(1, 2, -1, -2)  # alpha_3, alpha_4 short
        join(2, 3)
    elif letter == "G":
        join(0, 1, -3, -1)  # alpha_1 short, long root is 3a1+2a2
    return a


_DIAGRAM_RE = re.compile(r"([A-G])(\d+)")


@dataclass(frozen=True)
class DynkinDiagram:
    """A product of simple Dynkin diagrams, e.g. ``A_1 x A_1`` or ``G_2``.

    ``components`` is an ordered tuple of ``(letter, rank)`` pairs; node ids
    are 1..n running through the components in order.
    """

    components: tuple[tuple[str, int], ...]

    def __post_init__(self):
        if not self.components:
            raise RootSystemError("diagram needs at least one component")
        for letter, rank in self.components:
            if letter not in _RANK_RULES or not _RANK_RULES[letter](rank):
                raise RootSystemError(f"invalid simple component {letter}{rank}")

    @staticmethod
    def parse(text: str) -> "DynkinDiagram":
        """Parse strings like ``"A2"``, ``"B2"``, ``"A1xA1"``, ``"A1 x G2"``."""
        parts = [p for p in re.split(r"[x*\s]+", text.strip()) if p]
        comps = []
        for part in parts:
            m = _DIAGRAM_RE.fullmatch(part)
            if m is None:
                raise RootSystemError(f"cannot parse diagram component {part!r}")
            comps.append((m.group(1), int(m.group(2))))
        return DynkinDiagram(tuple(comps))

    @property
    def rank(self) -> int:
        return sum(r for _, r in self.components)

    def node_component(self, node: int) -> int:
        """0-based index of the component containing global node id (1-based)."""
        if not 1 <= node <= self.rank:
            raise RootSystemError(f"node {node} out of range")
        offset = 0
        for idx, (_, r) in enumerate(self.components):
            if node <= offset + r:
                return idx
            offset += r
        raise AssertionError

    def __str__(self) -> str:
        return "x".join(f"{l}{r}" for l, r in self.components)


@dataclass(frozen=True)
class WeightVec:
    """Integer vector in the fundamental-weight basis of the semisimple part,
    optionally extended by coordinates in a basis of the central-torus
    character group."""

    ss: tuple[int, ...]
    central: tuple[int, ...] = ()

    @property
    def dominant(self) -> bool:
        return all(c >= 0 for c in self.ss)

    def ambient(self) -> tuple[int, ...]:
        return self.ss + self.central

    def __add__(self, other: "WeightVec") -> "WeightVec":
        return WeightVec(
            tuple(a + b for a, b in zip(self.ss, other.ss)),
            tuple(a + b for a, b in zip(self.central, other.central)),
        )

    def __neg__(self) -> "WeightVec":
        return WeightVec(tuple(-a for a in self.ss), tuple(-a for a in self.central))


@dataclass(frozen=True)
class RootSystem:
    """Root system data for a Dynkin diagram.

    ``positive_roots`` is ordered by (height, coordinates) and is closed
    under the simple-reflection orbit construction.  ``dvec[i]`` is half the
    squared length of ``alpha_{i+1}``, so the inner product is
    ``(alpha_i, alpha_j) = dvec[i] * cartan[i][j]``.
    """

    diagram: DynkinDiagram
    cartan: tuple[tuple[int, ...], ...]
    dvec: tuple[int, ...]
    positive_roots: tuple[tuple[int, ...], ...] = field(repr=False)

    @property
    def rank(self) -> int:
        return self.diagram.rank

    # -- basic queries ----------------------------------------------------

    def is_positive_root(self, v: tuple[int, ...]) -> bool:
        return tuple(v) in self._posset

    @property
    def _posset(self) -> frozenset:
        # cached lazily; object.__setattr__ sidesteps frozen
        cached = self.__dict__.get("_posset_cache")
        if cached is None:
            cached = frozenset(self.positive_roots)
            object.__setattr__(self, "_posset_cache", cached)
        return cached

    def simple_root(self, node: int) -> tuple[int, ...]:
        if not 1 <= node <= self.rank:
            raise RootSystemError(f"node {node} out of range")
        return tuple(1 if i == node - 1 else 0 for i in range(self.rank))

    def inner(self, v: tuple[int, ...], w: tuple[int, ...]) -> int:
        """Weyl-invariant inner product of two root-basis vectors (exact)."""
        total = 0
        for i, vi in enumerate(v):
            if vi == 0:
                continue
            for j, wj in enumerate(w):
                if wj:
                    total += vi * wj * self.dvec[i] * self.cartan[i][j]
        return total

    def root_to_weight(self, v: tuple[int, ...]) -> tuple[int, ...]:
        """Fundamental-weight coordinates of a root-lattice vector."""
        return tuple(
            sum(self.cartan[i][j] * v[j] for j in range(self.rank))
            for i in range(self.rank)
        )

    def adjacent(self, i: int, j: int) -> bool:
        """Whether nodes i, j (1-based) are joined in the Dynkin diagram."""
        return i != j and self.cartan[i - 1][j - 1] != 0


def build_root_system(diagram: DynkinDiagram) -> RootSystem:
    """Construct the root system of ``diagram``.

    Positive roots are generated as the simple-reflection orbit of the
    simple roots; the result is independent of the order reflections are
    applied in.
    """
    n = diagram.rank
    cartan = [[0] * n for _ in range(n)]
    dvec = [1] * n
    offset = 0
    for letter, rank in diagram.components:
        block = cartan_block(letter, rank)
        for i in range(rank):
            for j in range(rank):
                cartan[offset + i][offset + j] = block[i][j]
        if letter in ("B", "C", "F", "G"):
            # mark the long roots of the component (short ones keep d = 1)
            longs = {
                "B": range(rank - 1),
                "C": [rank - 1],
                "F": [0, 1],
                "G": [1],
            }[letter]
            scale = 3 if letter == "G" else 2
            for i in longs:
                dvec[offset + i] = scale
        offset += rank

    cartan_t = tuple(tuple(row) for row in cartan)

    # orbit of the simple roots under all simple reflections
    simple = [tuple(1 if i == k else 0 for i in range(n)) for k in range(n)]
    seen = set(simple)
    queue = list(simple)
    while queue:
        gamma = queue.pop()
        for i in range(n):
            pairing = sum(cartan[i][j] * gamma[j] for j in range(n))
            if pairing == 0:
                continue
            refl = tuple(
                g - (pairing if j == i else 0) for j, g in enumerate(gamma)
            )
            if refl not in seen:
                seen.add(refl)
                queue.append(refl)
    positive = sorted(
        (g for g in seen if all(c >= 0 for c in g)),
        key=lambda g: (sum(g), g),
    )
    return RootSystem(diagram, cartan_t, tuple(dvec), tuple(positive))


def pairing(rs: RootSystem, coroot_of: int, target) -> int:
    """``<alpha_i^vee, target>`` for a simple root ``alpha_i`` (1-based id).

    ``target`` may be a root-basis integer tuple or a :class:`WeightVec`;
    the result is always an exact integer.
    """
    i = coroot_of - 1
    if not 0 <= i < rs.rank:
        raise RootSystemError(f"node {coroot_of} out of range")
    if isinstance(target, WeightVec):
        return target.ss[i]
    return sum(rs.cartan[i][j] * target[j] for j in range(rs.rank))


def root_attrs(rs: RootSystem, gamma: tuple[int, ...]):
    """Support, height and an orthogonality tester for a vector in the
    non-negative span of the simple roots.

    Returns ``(supp, hgt, ortho)`` where ``supp`` is a frozenset of 1-based
    node ids, ``hgt`` is the coefficient sum, and ``ortho(delta)`` tests
    ``gamma`` perpendicular ``delta`` in the invariant inner product.
    """
    if any(c < 0 for c in gamma) and any(c > 0 for c in gamma):
        raise RootSystemError(f"mixed-sign coefficients in {gamma}")
    if any(c < 0 for c in gamma):
        raise RootSystemError(f"negative vector {gamma}; pass the positive form")
    supp = frozenset(i + 1 for i, c in enumerate(gamma) if c > 0)
    hgt = sum(gamma)

    def ortho(delta: tuple[int, ...]) -> bool:
        return rs.inner(gamma, delta) == 0

    return supp, hgt, ortho


def support(gamma) -> frozenset[int]:
    """1-based support of a root-basis vector (no sign checks)."""
    return frozenset(i + 1 for i, c in enumerate(gamma) if c != 0)


def induced_embeddings(rs: RootSystem, letter: str, rank: int):
    """All injective node labelings ``(a_1, ..., a_rank)`` of the shape
    ``letter``/``rank`` into the diagram of ``rs``: the pairwise Cartan
    pairings of the image must reproduce the shape's Cartan matrix exactly.
    """
    shape = cartan_block(letter, rank)
    nodes = range(1, rs.rank + 1)
    results = []

    def extend(assigned: list[int]):
        k = len(assigned)
        if k == rank:
            results.append(tuple(assigned))
            return
        for node in nodes:
            if node in assigned:
                continue
            ok = True
            for pos, prev in enumerate(assigned):
                if (
                    rs.cartan[prev - 1][node - 1] != shape[pos][k]
                    or rs.cartan[node - 1][prev - 1] != shape[k][pos]
                ):
                    ok = False
                    break
            if ok:
                assigned.append(node)
                extend(assigned)
                assigned.pop()

    extend([])
    return results


def induced_type(rs: RootSystem, nodes: frozenset[int]):
    """Type and Bourbaki labeling(s) of the subdiagram induced on ``nodes``.

    Only connected subsets are classified; returns ``(letter, rank,
    labelings)`` where each labeling is a tuple sending shape position i to
    the node playing the role of ``alpha_{i+1}``.  Raises if the subset is
    not connected or matches no simple type.
    """
    r = len(nodes)
    for letter in ("A", "B", "C", "D", "E", "F", "G"):
        if not _RANK_RULES[letter](r):
            continue
        labelings = [
            lab
            for lab in induced_embeddings(rs, letter, r)
            if frozenset(lab) == nodes
        ]
        if labelings:
            return letter, r, labelings
    raise RootSystemError(f"nodes {sorted(nodes)} do not induce a connected simple type")


def half_sum_is_integral(rs: RootSystem, num: tuple[int, ...]) -> bool:
    """Whether ``num/2`` lies in the weight lattice (all fundamental-weight
    coordinates even)."""
    return all(c % 2 == 0 for c in rs.root_to_weight(num))


def fraction_coords(num: tuple[int, ...], den: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(c, den) for c in num)


def connected_subsets(rs: RootSystem) -> list[frozenset[int]]:
    """All nonempty subsets of nodes whose induced diagram is connected."""
    n = rs.rank
    out = []
    for size in range(1, n + 1):
        for combo in itertools.combinations(range(1, n + 1), size):
            sset = frozenset(combo)
            if _is_connected(rs, sset):
                out.append(sset)
    return out


def _is_connected(rs: RootSystem, nodes: frozenset[int]) -> bool:
    if not nodes:
        return False
    start = next(iter(nodes))
    seen = {start}
    stack = [start]
    while stack:
        cur = stack.pop()
        for other in nodes:
            if other not in seen and rs.adjacent(cur, other):
                seen.add(other)
                stack.append(other)
    return seen == nodes
