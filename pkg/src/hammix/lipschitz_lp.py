"""Linear programming over the polytope of 1-Lipschitz functions.

For weights w on S^n and a slack v >= 0, the feasible set is every table
phi with

    0 <= phi(x) <= v + sum_i w_i           (box)
    |phi(x) - phi(y)| <= d_w(x, y)         (1-Lipschitz)

where d_w is the weighted Hamming metric.  Since d_w is the shortest-path
metric of the graph whose edges flip a single coordinate (edge weight w_i),
imposing the difference constraints only on pairs at Hamming distance 1
already forces them for all pairs; that cuts the constraint count from
O(m^2n) pairs to O(n * m^(n+1)) and is cross-checked against the all-pairs
formulation in the test suite.

The central quantities:

* ``phi_sup(k, w, v)``  -- sup of <k, phi> over the polytope (one LP);
* ``phi_norm(k, w)``    -- sup of |<k, phi>| at v = 0, i.e. the max of the
  two signed LPs (the absolute value of a linear functional over a set is
  the max of the two signed suprema);
* ``verify_phi_psi``    -- exact comparison of phi_sup against the psi
  functional, which dominates it:  phi_sup <= psi + v * ramp(total(k)).

Every solve goes through the exact simplex and carries a strong-duality
certificate; see :mod:`hammix.simplex`.
"""

from __future__ import annotations

from dataclasses import dataclass
from numbers import Rational
from typing import Iterator, Literal

from .psi import psi, psi_norm, ramp
from .rational import RationalLike, rat
from .simplex import SimplexResult, simplex_max, verify_certificate
from .words import TableFunction, WeightVector, word_unindex


@dataclass(frozen=True)
class LpProblem:
    """Maximize <objective, phi> over the 1-Lipschitz polytope.

    ``upper_bound`` (= v + sum w, shared by all variables) is the box
    ceiling; each difference constraint (x, y, rhs) encodes
    phi[x] - phi[y] <= rhs for one ordered pair at Hamming distance 1
    (or an arbitrary ordered pair in the all-pairs cross-check build).
    """

    num_vars: int
    objective: tuple[Rational, ...]
    upper_bound: Rational
    difference_constraints: tuple[tuple[int, int, Rational], ...]

    def __post_init__(self) -> None:
        if len(self.objective) != self.num_vars:
            raise ValueError(
                f"objective length {len(self.objective)} != num_vars {self.num_vars}"
            )
        if self.upper_bound <= 0:
            raise ValueError(f"box upper bound must be positive, got {self.upper_bound}")
        for x, y, rhs in self.difference_constraints:
            if not (0 <= x < self.num_vars and 0 <= y < self.num_vars) or x == y:
                raise ValueError(f"bad difference constraint pair ({x}, {y})")
            if rhs <= 0:
                raise ValueError(f"difference constraint rhs must be positive, got {rhs}")


@dataclass(frozen=True)
class LpCertificate:
    """Optimal vertex with an exactly verified strong-duality certificate.

    The dual vector is indexed by constraint rows in build order: first the
    num_vars box rows, then the difference rows.
    """

    primal: tuple[Rational, ...]
    dual: tuple[Rational, ...]
    objective_value: Rational


def _adjacent_pairs(m: int, n: int, ordered: bool = True) -> Iterator[tuple[int, int, int]]:
    """Index pairs of words differing in exactly one coordinate.

    Yields (x_index, y_index, coordinate); coordinate 0 is the first (most
    significant) symbol.  With ordered=False each unordered pair appears
    once.
    """
    size = m**n
    for idx in range(size):
        stride = size
        for pos in range(n):
            stride //= m
            digit = (idx // stride) % m
            for other in range(m):
                if other == digit or (not ordered and other < digit):
                    continue
                yield idx, idx + (other - digit) * stride, pos


def build_polytope_lp(
    k: TableFunction,
    w: WeightVector,
    v: RationalLike = 0,
    pairs: Literal["adjacent", "all"] = "adjacent",
) -> LpProblem:
    """Construct the LP for sup <k, phi> over the polytope with slack v.

    pairs="all" emits one constraint per arbitrary ordered word pair with
    rhs d_w(x, y); it is exponentially larger and exists only as the oracle
    for the adjacent-pair reduction.
    """
    if len(w) != k.arity:
        raise ValueError(f"weight length {len(w)} != table arity {k.arity}")
    v = rat(v)
    if v < 0:
        raise ValueError(f"box slack v must be >= 0, got {v}")
    m, n = k.alphabet_size, k.arity
    upper = v + w.total()
    constraints: list[tuple[int, int, Rational]] = []
    if pairs == "adjacent":
        for x, y, pos in _adjacent_pairs(m, n, ordered=True):
            constraints.append((x, y, w[pos]))
    elif pairs == "all":
        size = m**n
        cache = [word_unindex(i, m, n) for i in range(size)]
        for x in range(size):
            for y in range(size):
                if x == y:
                    continue
                dist = sum(
                    (w[i] for i in range(n) if cache[x][i] != cache[y][i]), rat(0)
                )
                constraints.append((x, y, dist))
    else:
        raise ValueError(f"unknown pair mode {pairs!r}")
    return LpProblem(m**n, k.values, upper, tuple(constraints))


def _standard_form(p: LpProblem):
    rows: list[dict[int, Rational]] = [{j: rat(1)} for j in range(p.num_vars)]
    rhs: list[Rational] = [p.upper_bound] * p.num_vars
    one = rat(1)
    for x, y, bound in p.difference_constraints:
        rows.append({x: one, y: -one})
        rhs.append(bound)
    return rows, rhs


def solve_lp(p: LpProblem) -> LpCertificate:
    """Exact simplex solve; the returned certificate has already been verified."""
    rows, rhs = _standard_form(p)
    result = simplex_max(p.objective, rows, rhs)
    return LpCertificate(result.primal, result.dual, result.objective_value)


def check_certificate(p: LpProblem, cert: LpCertificate) -> None:
    """Re-verify a certificate against the problem; raises CertificateError."""
    rows, rhs = _standard_form(p)
    verify_certificate(
        p.objective,
        rows,
        rhs,
        SimplexResult(cert.primal, cert.dual, cert.objective_value, 0),
    )


def phi_sup(k: TableFunction, w: WeightVector, v: RationalLike = 0) -> Rational:
    """sup of <k, phi> over the polytope with slack v (no absolute value)."""
    return solve_lp(build_polytope_lp(k, w, v)).objective_value


def phi_norm(k: TableFunction, w: WeightVector) -> Rational:
    """sup of |<k, phi>| over the v = 0 polytope: max of the two signed LPs."""
    return max(phi_sup(k, w, 0), phi_sup(-k, w, 0))


@dataclass(frozen=True)
class PhiPsiReport:
    """Exact comparison of the polytope supremum against its psi bound.

    lhs = phi_sup(k, w, v), rhs = psi(w, k) + v * ramp(total(k)).  When
    v = 0 the report also compares the norms (norm_lhs = phi_norm,
    norm_rhs = psi_norm); for v > 0 those fields are None.
    """

    lhs: Rational
    rhs: Rational
    holds: bool
    norm_lhs: Rational | None = None
    norm_rhs: Rational | None = None
    norm_holds: bool | None = None


def verify_phi_psi(k: TableFunction, w: WeightVector, v: RationalLike = 0) -> PhiPsiReport:
    """Check phi_sup <= psi + v * ramp(total), exactly; norms too when v = 0."""
    v = rat(v)
    lhs = phi_sup(k, w, v)
    rhs = psi(w, k) + v * ramp(k.total())
    report = PhiPsiReport(lhs=lhs, rhs=rhs, holds=lhs <= rhs)
    if v == 0:
        # phi_sup at v = 0 is already one side of the norm.
        norm_lhs = max(lhs, phi_sup(-k, w, 0))
        norm_rhs = psi_norm(w, k)
        report = PhiPsiReport(
            lhs=lhs,
            rhs=rhs,
            holds=lhs <= rhs,
            norm_lhs=norm_lhs,
            norm_rhs=norm_rhs,
            norm_holds=norm_lhs <= norm_rhs,
        )
    return report


def lipschitz_constant(f: TableFunction, w: WeightVector) -> Rational:
    """Smallest c with |f(x) - f(y)| <= c * d_w(x, y) for all word pairs.

    It suffices to scan pairs at Hamming distance 1 (path metric), taking
    max |f(x) - f(y)| / w_i over the coordinate i they differ in.  Constant
    functions give 0.
    """
    if len(w) != f.arity:
        raise ValueError(f"weight length {len(w)} != table arity {f.arity}")
    best = rat(0)
    vals = f.values
    for x, y, pos in _adjacent_pairs(f.alphabet_size, f.arity, ordered=False):
        c = abs(vals[x] - vals[y]) / w[pos]
        if c > best:
            best = c
    return best
