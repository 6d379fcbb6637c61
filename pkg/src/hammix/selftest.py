"""Random-instance verification suite.

Each function here checks one acceptance-grade property family on seeded
random instances and returns a :class:`CriterionResult`; :func:`run_selftest`
bundles them into the report served by the ``selftest`` CLI subcommand.
Inequality checks are exact rational comparisons throughout -- a single
violation fails the criterion and is recorded in the result detail.

The LP-based criteria share instance loops so each random (k, w, v) is
solved once for the supremum check and once per sign for the norm check,
with every certificate re-verified against the original constraint data.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable

from . import martingale as mg
from .instances import (
    random_dense_measure,
    random_lipschitz_function,
    random_markov_measure,
    random_product_measure,
    random_rational,
    random_table,
    random_weights,
)
from .lipschitz_lp import build_polytope_lp, check_certificate, solve_lp
from .mixing import (
    DeltaMatrix,
    MarkovSpec,
    Measure,
    delta_matrix,
    eta_bar,
    expand_markov,
    operator_norm_2,
)
from .montecarlo import SimulationConfig, empirical_tail
from .psi import psi, psi_decomposition_rhs, psi_norm, ramp
from .rational import rat, rat_str
from .words import (
    TableFunction,
    WeightVector,
    marginal_projection,
    words,
    y_section,
)

DEFAULT_SEED = 20240801

_CHAIN_ROWS = ((rat("9/10"), rat("1/10")), (rat("1/10"), rat("9/10")))


def _binary_chain(n: int) -> MarkovSpec:
    """The two-state chain used for ground-truth values (symmetric init)."""
    return MarkovSpec(
        initial=(rat("1/2"), rat("1/2")),
        transitions=tuple(_CHAIN_ROWS for _ in range(n - 1)),
    )


@dataclass(frozen=True)
class CriterionResult:
    number: int
    name: str
    passed: bool
    checked: int
    failures: int
    detail: dict = field(default_factory=dict)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"criterion {self.number:2d} {self.name}: {status} ({self.checked} checks, {self.failures} failures)"


@dataclass(frozen=True)
class SelftestReport:
    criteria: tuple[CriterionResult, ...]
    all_passed: bool
    seed: int
    instance_count: int
    elapsed_seconds: float


def _draw_lp_instance(rng: random.Random):
    m = rng.choice((2, 3))
    n = rng.choice((1, 2, 3))
    k = random_table(rng, m, n)
    w = random_weights(rng, n)
    v = rat(rng.choice(("0", "1/2", "1")))
    return m, n, k, w, v


def lp_criteria(
    instance_count: int, seed: int, reduction_count: int | None = None
) -> tuple[CriterionResult, CriterionResult, CriterionResult]:
    """Criteria 1, 2 and 5: supremum bound, norm bound, certificates.

    Returns (lp_inequality, norm_inequality, certificates) results.  Every
    solve's certificate is re-verified from the raw constraint rows; the
    adjacent-pair constraint reduction is cross-checked against the
    all-pairs build on m=2, n=2 instances.
    """
    rng = random.Random(seed)
    sup_failures = 0
    norm_failures = 0
    n1_equality_failures = 0
    cert_checks = 0
    gap_min = None
    gap_max = None
    started = time.monotonic()

    for _ in range(instance_count):
        _, n, k, w, v = _draw_lp_instance(rng)

        problem = build_polytope_lp(k, w, v)
        cert = solve_lp(problem)
        check_certificate(problem, cert)
        cert_checks += 1
        lhs = cert.objective_value
        rhs = psi(w, k) + v * ramp(k.total())
        if not lhs <= rhs:
            sup_failures += 1
        gap = rhs - lhs
        gap_min = gap if gap_min is None else min(gap_min, gap)
        gap_max = gap if gap_max is None else max(gap_max, gap)

        norm_sides = []
        for signed in (k, -k):
            p0 = build_polytope_lp(signed, w, 0)
            c0 = solve_lp(p0)
            check_certificate(p0, c0)
            cert_checks += 1
            norm_sides.append(c0.objective_value)
        phi_norm_value = max(norm_sides)
        psi_norm_value = psi_norm(w, k)
        if not phi_norm_value <= psi_norm_value:
            norm_failures += 1
        if n == 1 and phi_norm_value != psi_norm_value:
            n1_equality_failures += 1

    reduction_count = max(1, instance_count // 10) if reduction_count is None else reduction_count
    reduction_failures = 0
    for _ in range(reduction_count):
        k = random_table(rng, 2, 2)
        w = random_weights(rng, 2)
        v = rat(rng.choice(("0", "1/2", "1")))
        edge_value = solve_lp(build_polytope_lp(k, w, v)).objective_value
        all_pairs_value = solve_lp(build_polytope_lp(k, w, v, pairs="all")).objective_value
        cert_checks += 2
        if edge_value != all_pairs_value:
            reduction_failures += 1

    elapsed = time.monotonic() - started
    c1 = CriterionResult(
        1,
        "lp supremum bound",
        sup_failures == 0,
        instance_count,
        sup_failures,
        {
            "gap_min": rat_str(gap_min) if gap_min is not None else None,
            "gap_max": rat_str(gap_max) if gap_max is not None else None,
            "elapsed_seconds": round(elapsed, 3),
        },
    )
    c2 = CriterionResult(
        2,
        "norm bound + n=1 tightness",
        norm_failures == 0 and n1_equality_failures == 0,
        instance_count,
        norm_failures + n1_equality_failures,
        {"n1_equality_failures": n1_equality_failures},
    )
    c5 = CriterionResult(
        5,
        "certificates + constraint reduction",
        reduction_failures == 0,
        cert_checks,
        reduction_failures,
        {"certificates_verified": cert_checks, "reduction_instances": reduction_count},
    )
    return c1, c2, c5


def decomposition_criterion(instance_count: int, seed: int) -> CriterionResult:
    """Criterion 3: psi equals its section decomposition, exactly."""
    rng = random.Random(seed)
    failures = 0
    for i in range(instance_count):
        m = rng.choice((2, 3))
        # Force a steady share of n=1 base cases.
        n = 1 if i % 5 == 0 else rng.choice((1, 2, 3))
        k = random_table(rng, m, n)
        w = random_weights(rng, n)
        if psi(w, k) != psi_decomposition_rhs(w, k):
            failures += 1
    return CriterionResult(3, "psi decomposition", failures == 0, instance_count, failures)


def commutation_criterion(instance_count: int, seed: int) -> CriterionResult:
    """Criterion 4: projection and sections commute on arity-3 tables."""
    rng = random.Random(seed)
    failures = 0
    for _ in range(instance_count):
        m = rng.choice((2, 3))
        k = random_table(rng, m, 3)
        projected = marginal_projection(k)
        for y in range(m):
            if marginal_projection(y_section(k, y)) != y_section(projected, y):
                failures += 1
                break
    return CriterionResult(4, "projection/section commutation", failures == 0, instance_count, failures)


def mixing_ground_truth_criterion(seed: int) -> CriterionResult:
    """Criterion 6: chain eta values and identity Delta for product measures."""
    rng = random.Random(seed)
    failures = []

    chain2 = expand_markov(_binary_chain(2))
    if eta_bar(chain2, 1, 2) != rat(4, 5):
        failures.append("eta_bar_12 on n=2 chain")
    if delta_matrix(chain2) != DeltaMatrix(((rat(1), rat(4, 5)), (rat(0), rat(1)))):
        failures.append("delta matrix on n=2 chain")

    chain3 = expand_markov(_binary_chain(3))
    if eta_bar(chain3, 1, 2) != rat(4, 5):
        failures.append("eta_bar_12 on n=3 chain")
    if eta_bar(chain3, 2, 3) != rat(4, 5):
        failures.append("eta_bar_23 on n=3 chain")
    if eta_bar(chain3, 1, 3) != rat(16, 25):
        failures.append("eta_bar_13 on n=3 chain")

    product_cases = [Measure.uniform(2, 3), Measure.uniform(3, 2)]
    product_cases += [random_product_measure(rng, rng.choice((2, 3)), 3) for _ in range(8)]
    for idx, P in enumerate(product_cases):
        if delta_matrix(P) != DeltaMatrix.identity(P.arity):
            failures.append(f"product measure {idx} has non-identity delta")

    checked = 5 + len(product_cases)
    return CriterionResult(
        6,
        "mixing ground truth",
        not failures,
        checked,
        len(failures),
        {"failed_cases": failures},
    )


def _draw_martingale_instance(rng: random.Random):
    m = rng.choice((2, 3))
    n = rng.choice((1, 2, 3))
    w = random_weights(rng, n)
    kind = rng.randrange(4)
    if kind == 0:
        P = random_markov_measure(rng, m, n)
    elif kind == 1:
        P = random_product_measure(rng, m, n)
    else:
        P = random_dense_measure(rng, m, n, allow_zeros=(kind == 3))
    f = random_lipschitz_function(rng, m, n, w) if rng.random() < 0.4 else random_table(rng, m, n)
    return m, n, f, P, w


def martingale_criteria(instance_count: int, seed: int) -> tuple[CriterionResult, CriterionResult]:
    """Criteria 7 and 8: the mixing bound and the martingale structure."""
    rng = random.Random(seed)
    bound_failures = 0
    per_i_failures = 0
    structure_failures = 0
    for _ in range(instance_count):
        m, n, f, P, w = _draw_martingale_instance(rng)
        report = mg.verify_sumvi(f, P, w)
        if not report.holds:
            bound_failures += 1
        if not all(report.per_i_holds):
            per_i_failures += 1
        if not _martingale_structure_ok(rng, f, P):
            structure_failures += 1
    c7 = CriterionResult(
        7,
        "martingale mixing bound",
        bound_failures == 0 and per_i_failures == 0,
        instance_count,
        bound_failures + per_i_failures,
        {"sum_failures": bound_failures, "per_coordinate_failures": per_i_failures},
    )
    c8 = CriterionResult(
        8,
        "martingale structure",
        structure_failures == 0,
        instance_count,
        structure_failures,
    )
    return c7, c8


def _martingale_structure_ok(rng: random.Random, f: TableFunction, P: Measure) -> bool:
    """Exact conditional-mean-zero and translation-invariance checks."""
    m, n = f.alphabet_size, f.arity
    shift = random_rational(rng, -3, 3)
    shifted = f.shift(shift)
    for i in range(1, n + 1):
        for parent in words(m, i - 1):
            parent_mass = P.prefix_mass(parent)
            if parent_mass == 0:
                continue
            total = rat(0)
            for z in range(m):
                y = parent + (z,)
                child_mass = P.prefix_mass(y)
                if child_mass == 0:
                    continue
                value = mg.v_i(f, P, y)
                if value != mg.v_i(shifted, P, y):
                    return False
                total += (child_mass / parent_mass) * value
            if total != 0:
                return False
    return True


def montecarlo_criterion(
    seed: int, sample_count: int = 100_000, n: int = 8
) -> CriterionResult:
    """Criterion 9: empirical tails stay below the proved bounds; runs are
    bit-identical for a fixed seed."""
    P = expand_markov(_binary_chain(n))
    f = TableFunction.from_callable(2, n, lambda x: sum(x))
    w = WeightVector((1,) * n)
    cfg = SimulationConfig(sample_count, seed, (1.0, 2.0, 3.0, 4.0))
    started = time.monotonic()
    report = empirical_tail(f, P, w, cfg)
    elapsed = time.monotonic() - started
    report_again = empirical_tail(f, P, w, cfg)

    failures = []
    if report != report_again:
        failures.append("report not reproducible for identical seed")
    for row in report.rows:
        p_hat = row.frequency
        slack = 3.0 * (p_hat * (1.0 - p_hat) / cfg.sample_count) ** 0.5
        if p_hat > min(1.0, row.azuma) + slack:
            failures.append(f"t={row.threshold}: frequency {p_hat} above bound")
    return CriterionResult(
        9,
        "monte carlo tail sanity",
        not failures,
        len(report.rows) + 1,
        len(failures),
        {
            "elapsed_seconds": round(elapsed, 3),
            "frequencies": [row.frequency for row in report.rows],
            "azuma": [row.azuma for row in report.rows],
            "failed_cases": failures,
        },
    )


def spot_values_criterion() -> CriterionResult:
    """Criterion 10: pinned numeric values with independent oracles."""
    failures = []

    # 2 * exp(-2), frozen to 17 significant digits from an independent
    # high-precision evaluation.
    expected = 0.2706705664732254
    got = mg.azuma_bound(2.0, 1.0)
    if abs(got - expected) > 1e-12 * expected:
        failures.append(f"azuma_bound(2, 1) = {got}, expected {expected}")

    for n in (1, 2, 5):
        got = operator_norm_2(DeltaMatrix.identity(n))
        if abs(got - 1.0) > 1e-12:
            failures.append(f"operator norm of identity({n}) = {got}")

    # Independent 2x2 oracle: largest eigenvalue of D^T D by the quadratic
    # formula, for D = ((1, 4/5), (0, 1)).
    d = DeltaMatrix(((rat(1), rat(4, 5)), (rat(0), rat(1))))
    a11, a12, a22 = 1.0, 0.8, 0.8 * 0.8 + 1.0
    trace = a11 + a22
    det = a11 * a22 - a12 * a12
    lam_max = (trace + (trace * trace - 4.0 * det) ** 0.5) / 2.0
    oracle = lam_max**0.5
    got = operator_norm_2(d)
    if abs(got - oracle) > 1e-9:
        failures.append(f"operator norm {got} vs quadratic oracle {oracle}")

    return CriterionResult(
        10,
        "spot values",
        not failures,
        5,
        len(failures),
        {"failed_cases": failures},
    )


def run_selftest(
    instance_count: int = 500,
    seed: int = DEFAULT_SEED,
    mc_samples: int = 100_000,
    progress: Callable[[str], None] | None = None,
) -> SelftestReport:
    """Run every criterion family; counts for the cheaper families scale
    with instance_count at the same ratios as the default configuration."""
    started = time.monotonic()
    results: list[CriterionResult] = []

    def emit(result: CriterionResult) -> None:
        results.append(result)
        if progress is not None:
            progress(result.line())

    c1, c2, c5 = lp_criteria(instance_count, seed)
    emit(c1)
    emit(c2)
    emit(decomposition_criterion(instance_count, seed + 1))
    emit(commutation_criterion(max(1, instance_count // 5), seed + 2))
    emit(c5)
    emit(mixing_ground_truth_criterion(seed + 3))
    c7, c8 = martingale_criteria(max(1, (3 * instance_count) // 5), seed + 4)
    emit(c7)
    emit(c8)
    emit(montecarlo_criterion(seed + 5, sample_count=mc_samples))
    emit(spot_values_criterion())

    results.sort(key=lambda r: r.number)
    elapsed = time.monotonic() - started
    return SelftestReport(
        criteria=tuple(results),
        all_passed=all(r.passed for r in results),
        seed=seed,
        instance_count=instance_count,
        elapsed_seconds=elapsed,
    )
