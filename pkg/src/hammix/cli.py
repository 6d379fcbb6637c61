"""Batch front door: parse a problem file, compute, emit one JSON report.

Subcommands
-----------
psi         psi value and psi-norm of the function
phi         phi-norm with both signed LP certificates
verify-lp   exact supremum-vs-psi comparison (exit 3 on violation)
decompose   both sides of the psi section decomposition
eta         eta_bar / Delta matrix of the measure and its operator norm
martingale  martingale profile and the exact mixing-bound report
bound       concentration tail bound per threshold
simulate    seeded Monte Carlo tail estimate vs the proved bounds
selftest    the full random-instance verification suite

The report goes to stdout as a single JSON document (rationals as "p/q"
strings, floats in shortest round-trip decimal); a short human summary
goes to stderr.  Exit codes: 0 success, 1 invalid input (the message names
the offending field), 2 internal certificate failure, 3 a verify-style
subcommand found a violation.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from dataclasses import asdict
from typing import Any

from . import __version__
from .lipschitz_lp import build_polytope_lp, lipschitz_constant, solve_lp, verify_phi_psi
from .martingale import concentration_bound, verify_sumvi
from .mixing import MAX_DENSE_TABLE, delta_matrix, operator_norm_2
from .montecarlo import SimulationConfig, empirical_tail
from .problemfile import (
    ProblemFile,
    ProblemFileError,
    parse_problem,
    resolve_function,
    resolve_measure,
)
from .psi import psi, psi_decomposition_rhs, psi_norm
from .rational import rat, rat_str
from .selftest import run_selftest
from .simplex import SimplexError

_EXIT_OK = 0
_EXIT_INVALID_INPUT = 1
_EXIT_CERTIFICATE = 2
_EXIT_VIOLATION = 3


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hammix",
        description="exact verification of weighted-Hamming Lipschitz and mixing bounds",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_text: str, needs_file: bool = True) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        if needs_file:
            p.add_argument("problem_file", help="path to the JSON problem file")
            p.add_argument(
                "--max-table",
                type=int,
                default=MAX_DENSE_TABLE,
                help="largest dense table (m^n) this run may expand",
            )
        return p

    add("psi", "psi value and psi-norm of the function")
    add("phi", "phi-norm with LP certificates")
    add("verify-lp", "check the supremum against its psi bound (exit 3 on violation)")
    add("decompose", "evaluate both sides of the psi section decomposition")
    add("eta", "mixing matrix of the measure and its operator norm")
    add("martingale", "martingale profile and the mixing-bound report")
    add("bound", "concentration tail bound per threshold")
    sim = add("simulate", "seeded Monte Carlo tail estimate")
    sim.add_argument("--seed", type=int, default=None, help="override the file's seed")

    self_test = add("selftest", "run the random-instance verification suite", needs_file=False)
    self_test.add_argument("--instances", type=int, default=500, help="random instances per LP criterion")
    self_test.add_argument("--seed", type=int, default=None, help="seed for instance generation")
    self_test.add_argument(
        "--mc-samples", type=int, default=100_000, help="Monte Carlo sample count"
    )
    return parser


def _load(args: argparse.Namespace) -> tuple[ProblemFile, str]:
    try:
        with open(args.problem_file, "rb") as handle:
            raw = handle.read()
    except OSError as exc:
        raise ProblemFileError("$", f"cannot read {args.problem_file}: {exc}") from None
    digest = "sha256:" + hashlib.sha256(raw).hexdigest()
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ProblemFileError("$", f"not valid JSON: {exc}") from None
    return parse_problem(doc), digest


def _certificate_payload(cert) -> dict:
    return {
        "objective_value": rat_str(cert.objective_value),
        "primal": [rat_str(x) for x in cert.primal],
        "dual": [rat_str(y) for y in cert.dual],
    }


def _cmd_psi(problem: ProblemFile, args) -> tuple[dict, int, str]:
    f = resolve_function(problem, args.max_table)
    w = _weights(problem)
    value = psi(w, f)
    norm = psi_norm(w, f)
    payload = {"psi": rat_str(value), "psi_norm": rat_str(norm)}
    return payload, _EXIT_OK, f"psi = {rat_str(value)}, psi_norm = {rat_str(norm)}"


def _cmd_phi(problem: ProblemFile, args) -> tuple[dict, int, str]:
    f = resolve_function(problem, args.max_table)
    w = _weights(problem)
    cert_pos = solve_lp(build_polytope_lp(f, w, 0))
    cert_neg = solve_lp(build_polytope_lp(-f, w, 0))
    norm = max(cert_pos.objective_value, cert_neg.objective_value)
    payload = {
        "phi_norm": rat_str(norm),
        "positive": _certificate_payload(cert_pos),
        "negative": _certificate_payload(cert_neg),
    }
    return payload, _EXIT_OK, f"phi_norm = {rat_str(norm)}"


def _cmd_verify_lp(problem: ProblemFile, args) -> tuple[dict, int, str]:
    f = resolve_function(problem, args.max_table)
    w = _weights(problem)
    report = verify_phi_psi(f, w, problem.v)
    payload = {
        "v": rat_str(problem.v),
        "lhs": rat_str(report.lhs),
        "rhs": rat_str(report.rhs),
        "holds": report.holds,
        "norm_lhs": rat_str(report.norm_lhs) if report.norm_lhs is not None else None,
        "norm_rhs": rat_str(report.norm_rhs) if report.norm_rhs is not None else None,
        "norm_holds": report.norm_holds,
    }
    ok = report.holds and report.norm_holds is not False
    code = _EXIT_OK if ok else _EXIT_VIOLATION
    summary = f"verify-lp: lhs {rat_str(report.lhs)} <= rhs {rat_str(report.rhs)}: {'holds' if ok else 'VIOLATED'}"
    return payload, code, summary


def _cmd_decompose(problem: ProblemFile, args) -> tuple[dict, int, str]:
    f = resolve_function(problem, args.max_table)
    w = _weights(problem)
    lhs = psi(w, f)
    rhs = psi_decomposition_rhs(w, f)
    payload = {"psi": rat_str(lhs), "decomposition_rhs": rat_str(rhs), "equal": lhs == rhs}
    return payload, _EXIT_OK, f"decompose: {rat_str(lhs)} vs {rat_str(rhs)}"


def _cmd_eta(problem: ProblemFile, args) -> tuple[dict, int, str]:
    P = resolve_measure(problem, args.max_table)
    delta = delta_matrix(P)
    norm = operator_norm_2(delta)
    payload = {
        "eta_bar": [
            {"i": i + 1, "j": j + 1, "value": rat_str(delta.entries[i][j])}
            for i in range(delta.size)
            for j in range(i + 1, delta.size)
        ],
        "delta": [[rat_str(x) for x in row] for row in delta.entries],
        "delta_operator_norm": norm,
    }
    return payload, _EXIT_OK, f"eta: {P.arity}x{P.arity} mixing matrix, ||Delta||_2 ~= {norm:.6g}"


def _cmd_martingale(problem: ProblemFile, args) -> tuple[dict, int, str]:
    f = resolve_function(problem, args.max_table)
    P = resolve_measure(problem, args.max_table)
    w = _weights(problem)
    report = verify_sumvi(f, P, w)
    payload = {
        "v_bars": [rat_str(x) for x in report.v_bars],
        "d_squared": rat_str(report.lhs),
        "lipschitz": rat_str(report.lipschitz),
        "delta_w": [rat_str(x) for x in report.delta_w],
        "lhs": rat_str(report.lhs),
        "rhs": rat_str(report.rhs),
        "per_coordinate_holds": list(report.per_i_holds),
        "holds": report.holds,
    }
    summary = f"martingale: d^2 {rat_str(report.lhs)} <= {rat_str(report.rhs)}: {'holds' if report.holds else 'VIOLATED'}"
    return payload, _EXIT_OK, summary


def _cmd_bound(problem: ProblemFile, args) -> tuple[dict, int, str]:
    f = resolve_function(problem, args.max_table)
    P = resolve_measure(problem, args.max_table)
    w = _weights(problem)
    if not problem.thresholds:
        raise ProblemFileError("thresholds", "bound needs a 'thresholds' section")
    lip = lipschitz_constant(f, w)
    w_norm_sq = sum((x * x for x in w), rat(0))
    delta = delta_matrix(P)
    payload = {
        "lipschitz": rat_str(lip),
        "w_norm_sq": rat_str(w_norm_sq),
        "delta_operator_norm": operator_norm_2(delta),
        "per_t": [
            {"t": t, "bound": concentration_bound(f, P, w, t, delta=delta)}
            for t in problem.thresholds
        ],
    }
    return payload, _EXIT_OK, f"bound: {len(problem.thresholds)} thresholds"


def _cmd_simulate(problem: ProblemFile, args) -> tuple[dict, int, str]:
    f = resolve_function(problem, args.max_table)
    P = resolve_measure(problem, args.max_table)
    w = _weights(problem)
    if problem.simulation is None:
        raise ProblemFileError("simulation", "simulate needs a 'simulation' section")
    cfg = problem.simulation
    if args.seed is not None:
        cfg = SimulationConfig(cfg.sample_count, args.seed, cfg.thresholds)
    report = empirical_tail(f, P, w, cfg)
    payload = {
        "sample_count": report.sample_count,
        "seed": report.seed,
        "mean": rat_str(report.mean),
        "d_squared": rat_str(report.d_squared),
        "per_t": [
            {
                "t": row.threshold,
                "exceed_count": row.exceed_count,
                "frequency": row.frequency,
                "azuma": row.azuma,
                "corollary": row.corollary,
            }
            for row in report.rows
        ],
    }
    return payload, _EXIT_OK, f"simulate: {report.sample_count} samples, seed {report.seed}"


def _weights(problem: ProblemFile):
    if problem.weights is None:
        raise ProblemFileError("weights", "this subcommand needs a 'weights' section")
    return problem.weights


_COMMANDS = {
    "psi": _cmd_psi,
    "phi": _cmd_phi,
    "verify-lp": _cmd_verify_lp,
    "decompose": _cmd_decompose,
    "eta": _cmd_eta,
    "martingale": _cmd_martingale,
    "bound": _cmd_bound,
    "simulate": _cmd_simulate,
}


def main(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    envelope: dict[str, Any] = {"tool": "hammix", "version": __version__, "command": args.command}
    try:
        if args.command == "selftest":
            seed = args.seed if args.seed is not None else None
            kwargs = {"instance_count": args.instances, "mc_samples": args.mc_samples}
            if seed is not None:
                kwargs["seed"] = seed
            report = run_selftest(progress=lambda line: print(line, file=sys.stderr), **kwargs)
            envelope.update(
                {
                    "seed": report.seed,
                    "instances": report.instance_count,
                    "elapsed_seconds": round(report.elapsed_seconds, 3),
                    "all_passed": report.all_passed,
                    "criteria": [asdict(c) for c in report.criteria],
                }
            )
            code = _EXIT_OK if report.all_passed else _EXIT_VIOLATION
            summary = "selftest: all criteria passed" if report.all_passed else "selftest: FAILURES"
        else:
            problem, digest = _load(args)
            envelope["input_digest"] = digest
            if args.command == "simulate" and problem.simulation is not None:
                envelope["seed"] = (
                    args.seed if args.seed is not None else problem.simulation.seed
                )
            payload, code, summary = _COMMANDS[args.command](problem, args)
            envelope.update(payload)
    except ProblemFileError as exc:
        print(f"invalid problem file: {exc}", file=sys.stderr)
        return _EXIT_INVALID_INPUT
    except SimplexError as exc:
        print(f"internal certificate failure: {exc}", file=sys.stderr)
        return _EXIT_CERTIFICATE

    print(json.dumps(envelope, indent=2))
    print(summary, file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
