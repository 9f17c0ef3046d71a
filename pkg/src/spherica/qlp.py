"""Exact rational linear feasibility via Fourier-Motzkin elimination.

Constraints are rows ``(coeffs, rhs)`` meaning ``coeffs . x >= rhs`` (or
``== rhs`` for equalities), with Fraction/int entries.  Desk-scale only: the
variable counts in this package stay below ~15, well inside FM territory.
"""

from __future__ import annotations

from fractions import Fraction

GE = "ge"
EQ = "eq"


def _frac_row(coeffs, rhs):
    return [Fraction(c) for c in coeffs], Fraction(rhs)


def feasible_point(ineqs, eqs=(), nvars=None):
    """A rational point satisfying all constraints, or None.

    ``ineqs``: iterable of (coeffs, rhs) meaning coeffs.x >= rhs;
    ``eqs``: iterable of (coeffs, rhs) meaning coeffs.x == rhs.
    """
    ineq_rows = [_frac_row(c, r) for c, r in ineqs]
    eq_rows = [_frac_row(c, r) for c, r in eqs]
    if nvars is None:
        sizes = [len(c) for c, _ in ineq_rows + eq_rows]
        nvars = max(sizes) if sizes else 0

    # Gaussian elimination on equalities, substituting into everything.
    # substitutions[var] = (coeffs, rhs) meaning x_var == coeffs . x + rhs
    substitutions: dict[int, tuple[list[Fraction], Fraction]] = {}
    pending = list(eq_rows)
    while pending:
        coeffs, rhs = pending.pop()
        piv = next((i for i, c in enumerate(coeffs) if c != 0), None)
        if piv is None:
            if rhs != 0:
                return None
            continue
        pc = coeffs[piv]
        expr = [-c / pc for c in coeffs]
        expr[piv] = Fraction(0)
        const = rhs / pc
        # substitute into previously solved variables
        for var, (e, k) in list(substitutions.items()):
            if e[piv] != 0:
                f = e[piv]
                e = [a + f * b for a, b in zip(e, expr)]
                e[piv] = Fraction(0)
                substitutions[var] = (e, k + f * const)
        # substitute into remaining equalities
        new_pending = []
        for c2, r2 in pending:
            if c2[piv] != 0:
                f = c2[piv]
                c2 = [a + f * b for a, b in zip(c2, expr)]
                c2[piv] = Fraction(0)
                r2 = r2 - f * const
            new_pending.append((c2, r2))
        pending = new_pending
        substitutions[piv] = (expr, const)
    # apply substitutions to inequalities
    solved_vars = list(substitutions)
    reduced = []
    for coeffs, rhs in ineq_rows:
        coeffs = list(coeffs)
        for var in solved_vars:
            if coeffs[var] != 0:
                f = coeffs[var]
                e, k = substitutions[var]
                coeffs = [a + f * b for a, b in zip(coeffs, e)]
                coeffs[var] = Fraction(0)
                rhs = rhs - f * k
        reduced.append((coeffs, rhs))

    free_vars = [v for v in range(nvars) if v not in substitutions]
    values = _fm_solve(reduced, free_vars)
    if values is None:
        return None
    point = [Fraction(0)] * nvars
    for v in free_vars:
        point[v] = values[v]
    # back-substitute equality variables in reverse solve order
    for var in reversed(solved_vars):
        e, k = substitutions[var]
        point[var] = k + sum(c * point[i] for i, c in enumerate(e) if c != 0)
    return point


def _fm_solve(ineqs, variables):
    """Fourier-Motzkin on ``coeffs.x >= rhs`` over the given variables.
    Returns a dict var -> Fraction, or None if infeasible."""
    system = [(list(c), r) for c, r in ineqs]
    order = list(variables)
    eliminated = []  # (var, lower_rows, upper_rows) for back-substitution
    for var in order:
        lowers, uppers, rest = [], [], []
        for coeffs, rhs in system:
            c = coeffs[var]
            if c > 0:
                # x >= (rhs - other)/c
                lowers.append((coeffs, rhs))
            elif c < 0:
                uppers.append((coeffs, rhs))
            else:
                rest.append((coeffs, rhs))
        eliminated.append((var, lowers, uppers))
        new_rows = rest
        for lc, lr in lowers:
            for uc, ur in uppers:
                # combine: eliminate var between lower and upper bound
                a, b = lc[var], uc[var]  # a > 0, b < 0
                coeffs = [x * (-b) + y * a for x, y in zip(lc, uc)]
                rhs = lr * (-b) + ur * a
                coeffs[var] = Fraction(0)
                new_rows.append((coeffs, rhs))
        system = new_rows
    for coeffs, rhs in system:
        if any(c != 0 for c in coeffs):
            raise AssertionError("unexpected leftover variable")
        if rhs > 0:
            return None
    # feasible: back-substitute a witness
    values: dict[int, Fraction] = {}
    for var, lowers, uppers in reversed(eliminated):
        lo, hi = None, None
        for coeffs, rhs in lowers:
            bound = (rhs - sum(c * values.get(i, Fraction(0)) for i, c in enumerate(coeffs) if i != var and c != 0)) / coeffs[var]
            lo = bound if lo is None else max(lo, bound)
        for coeffs, rhs in uppers:
            bound = (rhs - sum(c * values.get(i, Fraction(0)) for i, c in enumerate(coeffs) if i != var and c != 0)) / coeffs[var]
            hi = bound if hi is None else min(hi, bound)
        if lo is not None and hi is not None:
            values[var] = (lo + hi) / 2
        elif lo is not None:
            values[var] = lo
        elif hi is not None:
            values[var] = hi
        else:
            values[var] = Fraction(0)
    return values


def nonneg_combination(rows, target, strict_vars=False):
    """Coefficients ``n >= 0`` (or ``>= 1`` if ``strict_vars``) with
    ``sum n_i rows[i] == target``; None if impossible."""
    k = len(rows)
    dim = len(target)
    eqs = []
    for j in range(dim):
        eqs.append(([Fraction(rows[i][j]) for i in range(k)], Fraction(target[j])))
    low = Fraction(1) if strict_vars else Fraction(0)
    ineqs = [([Fraction(1 if i == v else 0) for i in range(k)], low) for v in range(k)]
    return feasible_point(ineqs, eqs, nvars=k)


def clear_denominators(fracs) -> tuple[int, ...]:
    """Scale a rational vector to a primitive integer vector (positive
    multiple)."""
    from math import gcd, lcm

    fracs = [Fraction(f) for f in fracs]
    denominator = lcm(*[f.denominator for f in fracs]) if fracs else 1
    ints = [int(f * denominator) for f in fracs]
    g = 0
    for c in ints:
        g = gcd(g, c)
    if g > 1:
        ints = [c // g for c in ints]
    return tuple(ints)
