"""Exact-rational primal simplex with optimality certificates.

Solves the standard form

    maximize    c . x
    subject to  A x <= b,   x >= 0,   b >= 0 entrywise,

on a dense tableau.  Nonnegative right-hand sides make the all-slack basis
feasible, so no phase-1 is needed; every polytope built in this package has
that shape.  Pivoting uses Bland's anti-cycling rule (smallest-index
entering column with positive reduced cost; ratio ties broken by smallest
basic variable index), which terminates on degenerate polytopes.

Every solve returns a :class:`SimplexResult` carrying the optimal vertex
and the dual multipliers read off the final tableau, and
:func:`verify_certificate` re-checks primal feasibility, dual feasibility
and equality of the two objectives exactly, against the *original* data
rather than the tableau.  A certificate failure means a solver bug, never a
caller error, hence the dedicated exception type.
"""

from __future__ import annotations

from dataclasses import dataclass
from numbers import Rational
from typing import Mapping, Sequence

from .rational import rat

# Bland's rule terminates; this cap only trips on an implementation bug.
_MAX_PIVOTS = 200_000


class SimplexError(RuntimeError):
    """Internal solver failure (never caused by caller input)."""


class CertificateError(SimplexError):
    """An optimality certificate failed exact re-verification."""


@dataclass(frozen=True)
class SimplexResult:
    """Optimal vertex, dual multipliers and their common objective value."""

    primal: tuple[Rational, ...]
    dual: tuple[Rational, ...]
    objective_value: Rational
    pivots: int


def simplex_max(
    objective: Sequence[Rational],
    rows: Sequence[Mapping[int, Rational]],
    rhs: Sequence[Rational],
) -> SimplexResult:
    """Maximize objective . x over {x >= 0 : rows x <= rhs}.

    ``rows`` holds one sparse coefficient mapping per constraint.  Raises
    ValueError if some rhs entry is negative (the all-slack start would be
    infeasible) and SimplexError on unboundedness, which cannot happen for
    the box-bounded polytopes built here.
    """
    nv = len(objective)
    nr = len(rows)
    if len(rhs) != nr:
        raise ValueError(f"{nr} constraint rows but {len(rhs)} right-hand sides")
    zero = rat(0)
    one = rat(1)
    for i, b in enumerate(rhs):
        if b < 0:
            raise ValueError(f"negative right-hand side {b} in row {i}")

    ncols = nv + nr + 1
    tableau: list[list[Rational]] = []
    for i, coeffs in enumerate(rows):
        row = [zero] * ncols
        for j, a in coeffs.items():
            if not 0 <= j < nv:
                raise ValueError(f"variable index {j} out of range in row {i}")
            row[j] = rat(a)
        row[nv + i] = one
        row[-1] = rat(rhs[i])
        tableau.append(row)
    # Objective row: reduced costs; its rhs cell accumulates -(objective value).
    obj = [rat(c) for c in objective] + [zero] * (nr + 1)

    basis = list(range(nv, nv + nr))
    pivots = 0
    while True:
        enter = -1
        for j in range(ncols - 1):
            if obj[j] > 0:
                enter = j
                break
        if enter < 0:
            break

        leave = -1
        best = None
        for i in range(nr):
            a = tableau[i][enter]
            if a > 0:
                ratio = tableau[i][-1] / a
                if (
                    best is None
                    or ratio < best
                    or (ratio == best and basis[i] < basis[leave])
                ):
                    best = ratio
                    leave = i
        if leave < 0:
            raise SimplexError("unbounded direction in a box-bounded polytope")

        pivots += 1
        if pivots > _MAX_PIVOTS:
            raise SimplexError(f"pivot cap exceeded ({_MAX_PIVOTS}); cycling suspected")

        prow = tableau[leave]
        pval = prow[enter]
        if pval != 1:
            inv = one / pval
            prow = [x * inv if x else x for x in prow]
            tableau[leave] = prow
        for i in range(nr):
            if i == leave:
                continue
            f = tableau[i][enter]
            if f:
                r = tableau[i]
                tableau[i] = [a - f * p if p else a for a, p in zip(r, prow)]
        f = obj[enter]
        if f:
            obj = [a - f * p if p else a for a, p in zip(obj, prow)]
        basis[leave] = enter

    primal = [zero] * nv
    for i, bvar in enumerate(basis):
        if bvar < nv:
            primal[bvar] = tableau[i][-1]
    # At optimality the slack column j of the objective row holds -y_j.
    dual = tuple(-obj[nv + i] for i in range(nr))
    value = -obj[-1]

    result = SimplexResult(tuple(primal), dual, value, pivots)
    verify_certificate(objective, rows, rhs, result)
    return result


def verify_certificate(
    objective: Sequence[Rational],
    rows: Sequence[Mapping[int, Rational]],
    rhs: Sequence[Rational],
    result: SimplexResult,
) -> None:
    """Exact strong-duality check against the original problem data.

    Confirms primal feasibility (x >= 0, Ax <= b), dual feasibility
    (y >= 0, A^T y >= c) and objective equality (c.x == b.y); raises
    CertificateError otherwise.
    """
    x = result.primal
    y = result.dual
    nv = len(objective)
    if len(x) != nv or len(y) != len(rows):
        raise CertificateError("certificate dimensions do not match the problem")
    for j, xj in enumerate(x):
        if xj < 0:
            raise CertificateError(f"primal variable {j} negative: {xj}")
    for i, coeffs in enumerate(rows):
        lhs = sum((a * x[j] for j, a in coeffs.items()), rat(0))
        if lhs > rhs[i]:
            raise CertificateError(f"primal row {i} violated: {lhs} > {rhs[i]}")
        if y[i] < 0:
            raise CertificateError(f"dual multiplier {i} negative: {y[i]}")
    column_sums = [rat(0)] * nv
    for i, coeffs in enumerate(rows):
        yi = y[i]
        if yi:
            for j, a in coeffs.items():
                column_sums[j] += a * yi
    for j in range(nv):
        if column_sums[j] < objective[j]:
            raise CertificateError(
                f"dual row for variable {j} violated: {column_sums[j]} < {objective[j]}"
            )
    primal_value = sum((objective[j] * x[j] for j in range(nv)), rat(0))
    dual_value = sum((rhs[i] * y[i] for i in range(len(rows))), rat(0))
    if primal_value != result.objective_value or dual_value != result.objective_value:
        raise CertificateError(
            f"objective mismatch: primal {primal_value}, dual {dual_value}, "
            f"reported {result.objective_value}"
        )
