"""Independent brute-force oracles for the exact linear algebra layer.

Deliberately naive and separate from the package implementation: the Smith
form oracle runs plain elementary operations with no transform tracking and
cross-checks against determinantal divisors; the membership oracle
enumerates small coefficient boxes.
"""

import itertools
from math import gcd


def elementary_snf_diagonal(matrix):
    """Invariant factors by raw elementary row/column operations."""
    a = [list(r) for r in matrix]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    diag = []
    t = 0
    while t < min(rows, cols):
        if not any(a[i][j] for i in range(t, rows) for j in range(t, cols)):
            break
        while True:
            # pick the smallest nonzero entry and move it to (t, t)
            best = None
            for i in range(t, rows):
                for j in range(t, cols):
                    if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                        best = (i, j)
            bi, bj = best
            a[t], a[bi] = a[bi], a[t]
            for row in a:
                row[t], row[bj] = row[bj], row[t]
            done = True
            for i in range(rows):
                if i != t and a[i][t]:
                    q = a[i][t] // a[t][t]
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                    if a[i][t]:
                        done = False
            for j in range(cols):
                if j != t and a[t][j]:
                    q = a[t][j] // a[t][t]
                    for row in a:
                        row[j] -= q * row[t]
                    if a[t][j]:
                        done = False
            if done:
                break
        # repair divisibility by folding offending entries into row t
        fixed = False
        while not fixed:
            fixed = True
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if a[i][j] % a[t][t] != 0:
                        a[t] = [x + y for x, y in zip(a[t], a[i])]
                        fixed = False
                        break
                if not fixed:
                    break
            if not fixed:
                while True:
                    done = True
                    for j in range(cols):
                        if j != t and a[t][j]:
                            q = a[t][j] // a[t][t] if a[t][t] else 0
                            if a[t][t] == 0 or abs(a[t][j]) < abs(a[t][t]):
                                for row in a:
                                    row[t], row[j] = row[j], row[t]
                                done = False
                                continue
                            for row in a:
                                row[j] -= q * row[t]
                            if a[t][j]:
                                done = False
                    for i in range(rows):
                        if i != t and a[i][t]:
                            q = a[i][t] // a[t][t]
                            a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                            if a[i][t]:
                                done = False
                    if done:
                        break
        diag.append(abs(a[t][t]))
        t += 1
    return diag


def determinantal_divisors(matrix):
    """Invariant factors via gcds of k x k minors (a second oracle)."""
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    factors = []
    prev = 1
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for ris in itertools.combinations(range(rows), k):
            for cis in itertools.combinations(range(cols), k):
                sub = [[matrix[i][j] for j in cis] for i in ris]
                g = gcd(g, _det(sub))
        if g == 0:
            break
        factors.append(g // prev)
        prev = g
    return factors


def _det(m):
    n = len(m)
    if n == 1:
        return m[0][0]
    total = 0
    for j in range(n):
        minor = [row[:j] + row[j + 1 :] for row in m[1:]]
        total += (-1) ** j * m[0][j] * _det(minor)
    return total


def membership_by_enumeration(basis_rows, target, box=5):
    """Search the coefficient box [-box, box]^k for an exact combination."""
    k = len(basis_rows)
    if k == 0:
        return () if not any(target) else None
    for coeffs in itertools.product(range(-box, box + 1), repeat=k):
        vec = [0] * len(target)
        for c, row in zip(coeffs, basis_rows):
            if c:
                vec = [v + c * x for v, x in zip(vec, row)]
        if tuple(vec) == tuple(target):
            return coeffs
    return None
