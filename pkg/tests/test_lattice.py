import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import determinantal_divisors, elementary_snf_diagonal, membership_by_enumeration
from spherica.lattice import (
    FgAbelianGroup,
    Sublattice,
    hnf,
    hnf_snf,
    kernel,
    mat_mul,
    quotient_group,
    snf,
    solve_integer,
)


def diagonal_of(s):
    return [s[i][i] for i in range(min(len(s), len(s[0]) if s else 0)) if s[i][i]]


def test_snf_diag_2_3():
    _, s, _ = hnf_snf([[2, 0], [0, 3]])
    assert diagonal_of(s) == [1, 6]


def test_snf_identity():
    _, s, _ = hnf_snf([[1, 0], [0, 1]])
    assert diagonal_of(s) == [1, 1]


def test_snf_rank_one_example():
    # oracle: gcd of entries 1, all 2x2 minors vanish -> diag(1), rank 1
    m = [[4, 6], [6, 9]]
    assert elementary_snf_diagonal(m) == [1]
    assert determinantal_divisors(m) == [1]
    _, s, (u, v) = hnf_snf(m)
    assert diagonal_of(s) == [1]
    assert mat_mul(mat_mul(u, m), v) == s


def test_membership_examples():
    line = Sublattice.from_rows(2, [(1, -1)])
    assert line.solve_membership((2, -2)) == (2,)
    assert line.solve_membership((1, 0)) is None
    grid = Sublattice.from_rows(2, [(2, 0), (0, 3)])
    assert grid.solve_membership((2, 3)) == (1, 1)


def test_membership_dimension_mismatch():
    line = Sublattice.from_rows(2, [(1, -1)])
    with pytest.raises(ValueError):
        line.solve_membership((1, 0, 0))


def test_quotient_examples():
    g = quotient_group(2, [(2, 0), (0, 2)])
    assert g.invariant_factors == (2, 2) and g.free_rank == 0
    assert g.reduce((3, 1)) == (1, 1)

    h = quotient_group(2, [(1, -1)])
    assert h.invariant_factors == () and h.free_rank == 1
    # reduce is determined by a + b up to the sign convention of the basis
    assert h.same((2, 3), (5, 0))
    assert not h.same((2, 3), (4, 0))

    # oracle: SNF of [[1,1,0],[0,2,2]] has invariant factors (1, 2)
    assert elementary_snf_diagonal([[1, 1, 0], [0, 2, 2]]) == [1, 2]
    k = quotient_group(3, [(1, 1, 0), (0, 2, 2)])
    assert k.invariant_factors == (2,) and k.free_rank == 1


def test_quotient_reduce_is_homomorphism():
    g = quotient_group(3, [(1, 1, 0), (0, 2, 2)])
    a, b = (1, 2, 3), (4, -1, 0)
    total = tuple(x + y for x, y in zip(a, b))
    # normal forms add componentwise (mod the divisor on torsion slots)
    summed = tuple(
        (x + y) % d if d > 0 else x + y
        for x, y, d in zip(g.reduce(a), g.reduce(b), g._divisors)
    )
    assert g.reduce(total) == summed
    for rel in [(1, 1, 0), (0, 2, 2)]:
        assert g.is_zero(rel)


def _random_matrix(rng, max_dim=4, bound=9):
    rows = rng.randint(1, max_dim)
    cols = rng.randint(1, max_dim)
    return [[rng.randint(-bound, bound) for _ in range(cols)] for _ in range(rows)]


def test_snf_matches_oracles_on_random_matrices():
    rng = random.Random(20260810)
    for _ in range(300):
        m = _random_matrix(rng)
        _, s, (u, v) = hnf_snf(m)
        assert mat_mul(mat_mul(u, m), v) == s
        got = diagonal_of(s)
        assert got == elementary_snf_diagonal(m)
        assert got == determinantal_divisors(m)
        # divisibility chain
        for a, b in zip(got, got[1:]):
            assert b % a == 0


def test_hnf_canonical_and_idempotent():
    rng = random.Random(7)
    for _ in range(200):
        m = _random_matrix(rng)
        h, u = hnf(m)
        h2, _ = hnf(h)
        assert h2 == h
        # canonical: invariant under row permutation of the input
        perm = m[:]
        rng.shuffle(perm)
        hp, _ = hnf(perm)
        assert [r for r in h if any(r)] == [r for r in hp if any(r)]


def test_snf_idempotent():
    rng = random.Random(33)
    for _ in range(100):
        m = _random_matrix(rng)
        _, s, _ = hnf_snf(m)
        _, s2, _ = hnf_snf(s)
        assert s2 == s


def test_membership_agrees_with_enumeration():
    rng = random.Random(99)
    for _ in range(150):
        amb = rng.randint(1, 4)
        k = rng.randint(1, amb)
        rows = [[rng.randint(-3, 3) for _ in range(amb)] for _ in range(k)]
        lat = Sublattice.from_rows(amb, rows)
        coeffs = [rng.randint(-5, 5) for _ in range(k)]
        v = [0] * amb
        for c, row in zip(coeffs, rows):
            v = [x + c * y for x, y in zip(v, row)]
        coords = lat.solve_membership(tuple(v))
        assert coords is not None
        rebuilt = [0] * amb
        for c, row in zip(coords, lat.basis):
            rebuilt = [x + c * y for x, y in zip(rebuilt, row)]
        assert tuple(rebuilt) == tuple(v)
        # a random probe: both the solver and the box search must agree
        probe = tuple(rng.randint(-4, 4) for _ in range(amb))
        found = membership_by_enumeration(lat.basis, probe, box=5)
        got = lat.solve_membership(probe)
        if got is not None and all(abs(c) <= 5 for c in got):
            assert found is not None
        if got is None:
            assert found is None


def test_solve_integer_roundtrip():
    m = [[2, 1, 0], [0, 1, 1]]
    sol = solve_integer(m, [2, 3, 2])
    assert sol is not None
    x, ker = sol
    built = [0, 0, 0]
    for c, row in zip(x, m):
        built = [b + c * r for b, r in zip(built, row)]
    assert built == [2, 3, 2]
    assert solve_integer([[2, 0]], [1, 0]) is None


def test_kernel_rows_annihilate():
    m = [[1, 2], [2, 4], [0, 1]]
    for vec in kernel(m):
        out = [0, 0]
        for c, row in zip(vec, m):
            out = [o + c * r for o, r in zip(out, row)]
        assert out == [0, 0]
    assert len(kernel(m)) == 1


def test_sublattice_intersection_and_sum():
    a = Sublattice.from_rows(2, [(2, 0)])
    b = Sublattice.from_rows(2, [(3, 0)])
    assert a.intersection(b) == Sublattice.from_rows(2, [(6, 0)])
    assert a.sum(b) == Sublattice.from_rows(2, [(1, 0)])


@settings(max_examples=60, deadline=None)
@given(
    st.lists(
        st.lists(st.integers(min_value=-9, max_value=9), min_size=2, max_size=2),
        min_size=1,
        max_size=4,
    )
)
def test_snf_transforms_unimodular(rows):
    from spherica.lattice import det

    _, s, (u, v) = hnf_snf(rows)
    assert det(u) in (1, -1)
    assert det(v) in (1, -1)
    assert mat_mul(mat_mul(u, rows), v) == s
