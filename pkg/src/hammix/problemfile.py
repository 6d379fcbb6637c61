"""JSON problem files: parsing, validation, serialization.

One JSON document describes one problem instance: alphabet, word length,
weights, a function (dense table or named builtin), a measure (dense table
or Markov chain spec), the box slack v, tail thresholds and a simulation
config.  Subcommands require different subsets; parsing validates the
whole document structurally and records the JSON path of the first
offending field in :class:`ProblemFileError`.

All rationals are parsed exactly: "3/2", "0.125" (decimal strings convert
without rounding) and plain integers are accepted; JSON floats are not,
except in ``thresholds`` / ``simulation.thresholds``, which are genuinely
floating-point quantities.

Builtins avoid shipping m^n-entry tables for the canonical test functions:

    "sum_of_symbols"        f(x) = x_1 + ... + x_n
    "indicator:<word>"      1 at the given word, else 0
    "hamming_to:<word>"     d_w(x, word) with the file's weights

``<word>`` is a digit string ("0110") or comma-separated symbols
("0,1,1,0"); the comma form is required when the alphabet has more than
ten symbols.  Dense expansion is capped (``max_table``) since every
downstream computation is O(m^n) anyway.
"""

from __future__ import annotations

from dataclasses import dataclass
from numbers import Rational
from typing import Any

from .mixing import MAX_DENSE_TABLE, MarkovSpec, Measure
from .montecarlo import SimulationConfig
from .rational import rat, rat_str
from .words import Alphabet, TableFunction, WeightVector, Word, hamming_distance, words

_BUILTIN_NAMES = ("sum_of_symbols", "indicator", "hamming_to")


class ProblemFileError(ValueError):
    """Invalid problem file; ``path`` points at the offending field."""

    def __init__(self, path: str, message: str) -> None:
        self.path = path
        super().__init__(f"{path}: {message}")


@dataclass(frozen=True)
class FunctionSpec:
    """Either a dense table or a builtin string, as written in the file."""

    table: tuple[Rational, ...] | None = None
    builtin: str | None = None

    def __post_init__(self) -> None:
        if (self.table is None) == (self.builtin is None):
            raise ValueError("exactly one of table/builtin must be set")


@dataclass(frozen=True)
class MeasureSpec:
    dense: tuple[Rational, ...] | None = None
    markov: MarkovSpec | None = None

    def __post_init__(self) -> None:
        if (self.dense is None) == (self.markov is None):
            raise ValueError("exactly one of dense/markov must be set")


@dataclass(frozen=True)
class ProblemFile:
    alphabet: Alphabet
    n: int
    weights: WeightVector | None
    function: FunctionSpec | None
    measure: MeasureSpec | None
    v: Rational
    thresholds: tuple[float, ...]
    simulation: SimulationConfig | None


def _require(doc: dict, key: str, path: str) -> Any:
    if key not in doc:
        raise ProblemFileError(f"{path}{key}", "required field is missing")
    return doc[key]


def _parse_rational(value: Any, path: str, *, positive: bool = False, nonnegative: bool = False):
    if isinstance(value, float):
        raise ProblemFileError(
            path, f"floats are not exact; write {value!r} as a decimal string"
        )
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise ProblemFileError(path, f"expected a rational (int or string), got {value!r}")
    try:
        parsed = rat(value)
    except (ValueError, TypeError) as exc:
        raise ProblemFileError(path, str(exc)) from None
    if positive and parsed <= 0:
        raise ProblemFileError(path, f"must be > 0, got {rat_str(parsed)}")
    if nonnegative and parsed < 0:
        raise ProblemFileError(path, f"must be >= 0, got {rat_str(parsed)}")
    return parsed


def _parse_word(text: str, m: int, n: int, path: str) -> Word:
    if "," in text:
        parts = text.split(",")
    else:
        if m > 10:
            raise ProblemFileError(
                path, "alphabets larger than 10 need comma-separated words"
            )
        parts = list(text)
    try:
        symbols = tuple(int(p) for p in parts)
    except ValueError:
        raise ProblemFileError(path, f"cannot parse word from {text!r}") from None
    if len(symbols) != n:
        raise ProblemFileError(path, f"word {text!r} has length {len(symbols)}, expected {n}")
    for s in symbols:
        if not 0 <= s < m:
            raise ProblemFileError(path, f"symbol {s} out of range for alphabet of size {m}")
    return symbols


def _parse_alphabet(value: Any) -> Alphabet:
    if isinstance(value, bool):
        raise ProblemFileError("alphabet", f"expected size or object, got {value!r}")
    if isinstance(value, int):
        try:
            return Alphabet(value)
        except ValueError as exc:
            raise ProblemFileError("alphabet", str(exc)) from None
    if isinstance(value, dict):
        size = _require(value, "size", "alphabet.")
        labels = value.get("labels")
        if not isinstance(size, int) or isinstance(size, bool):
            raise ProblemFileError("alphabet.size", f"expected an integer, got {size!r}")
        try:
            return Alphabet(size, tuple(labels) if labels is not None else None)
        except (ValueError, TypeError) as exc:
            raise ProblemFileError("alphabet", str(exc)) from None
    raise ProblemFileError("alphabet", f"expected size or object, got {value!r}")


def _parse_function(value: Any, m: int, n: int) -> FunctionSpec:
    if isinstance(value, dict) and "table" in value:
        table = value["table"]
        if not isinstance(table, list):
            raise ProblemFileError("function.table", "expected a list of rationals")
        if len(table) != m**n:
            raise ProblemFileError(
                "function.table", f"expected {m**n} entries for {m}^{n} words, got {len(table)}"
            )
        vals = tuple(
            _parse_rational(entry, f"function.table[{i}]") for i, entry in enumerate(table)
        )
        return FunctionSpec(table=vals)
    if isinstance(value, dict) and "builtin" in value:
        value = value["builtin"]
    if isinstance(value, str):
        name = value.split(":", 1)[0]
        if name not in _BUILTIN_NAMES:
            raise ProblemFileError(
                "function.builtin", f"unknown builtin {name!r}; known: {', '.join(_BUILTIN_NAMES)}"
            )
        if name != "sum_of_symbols":
            if ":" not in value:
                raise ProblemFileError("function.builtin", f"{name} needs an argument word")
            _parse_word(value.split(":", 1)[1], m, n, "function.builtin")
        return FunctionSpec(builtin=value)
    raise ProblemFileError("function", f"expected a table or builtin, got {value!r}")


def _parse_measure(value: Any, m: int, n: int) -> MeasureSpec:
    if not isinstance(value, dict):
        raise ProblemFileError("measure", f"expected an object, got {value!r}")
    if "dense" in value:
        table = value["dense"]
        if not isinstance(table, list):
            raise ProblemFileError("measure.dense", "expected a list of rationals")
        if len(table) != m**n:
            raise ProblemFileError(
                "measure.dense", f"expected {m**n} entries for {m}^{n} words, got {len(table)}"
            )
        vals = tuple(
            _parse_rational(entry, f"measure.dense[{i}]", nonnegative=True)
            for i, entry in enumerate(table)
        )
        if sum(vals, rat(0)) != 1:
            raise ProblemFileError("measure.dense", "entries must sum to exactly 1")
        return MeasureSpec(dense=vals)
    if "markov" in value:
        spec = value["markov"]
        if not isinstance(spec, dict):
            raise ProblemFileError("measure.markov", "expected an object")
        init = _require(spec, "init", "measure.markov.")
        transitions = _require(spec, "transitions", "measure.markov.")
        if not isinstance(init, list) or len(init) != m:
            raise ProblemFileError("measure.markov.init", f"expected {m} entries")
        if not isinstance(transitions, list) or len(transitions) != n - 1:
            raise ProblemFileError(
                "measure.markov.transitions", f"expected {n - 1} transition matrices"
            )
        init_vals = tuple(
            _parse_rational(p, f"measure.markov.init[{i}]", nonnegative=True)
            for i, p in enumerate(init)
        )
        mats = []
        for t, matrix in enumerate(transitions):
            if not isinstance(matrix, list) or len(matrix) != m:
                raise ProblemFileError(
                    f"measure.markov.transitions[{t}]", f"expected {m} rows"
                )
            rows = []
            for a, row in enumerate(matrix):
                if not isinstance(row, list) or len(row) != m:
                    raise ProblemFileError(
                        f"measure.markov.transitions[{t}][{a}]", f"expected {m} entries"
                    )
                rows.append(
                    tuple(
                        _parse_rational(
                            p,
                            f"measure.markov.transitions[{t}][{a}][{b}]",
                            nonnegative=True,
                        )
                        for b, p in enumerate(row)
                    )
                )
            mats.append(tuple(rows))
        try:
            markov = MarkovSpec(init_vals, tuple(mats))
        except ValueError as exc:
            raise ProblemFileError("measure.markov", str(exc)) from None
        return MeasureSpec(markov=markov)
    raise ProblemFileError("measure", "expected a 'dense' or 'markov' key")


def _parse_thresholds(value: Any, path: str) -> tuple[float, ...]:
    if not isinstance(value, list) or not value:
        raise ProblemFileError(path, "expected a nonempty list of positive numbers")
    out = []
    for i, t in enumerate(value):
        if isinstance(t, bool) or not isinstance(t, (int, float)):
            raise ProblemFileError(f"{path}[{i}]", f"expected a number, got {t!r}")
        if t <= 0:
            raise ProblemFileError(f"{path}[{i}]", f"thresholds must be > 0, got {t}")
        out.append(float(t))
    return tuple(out)


def parse_problem(doc: Any) -> ProblemFile:
    """Validate a decoded JSON document into a :class:`ProblemFile`."""
    if not isinstance(doc, dict):
        raise ProblemFileError("$", "problem file must be a JSON object")
    alphabet = _parse_alphabet(_require(doc, "alphabet", ""))
    n = _require(doc, "n", "")
    if isinstance(n, bool) or not isinstance(n, int) or n < 0:
        raise ProblemFileError("n", f"expected an integer >= 0, got {n!r}")
    m = alphabet.size

    weights = None
    if "weights" in doc:
        raw = doc["weights"]
        if not isinstance(raw, list) or len(raw) != n:
            raise ProblemFileError("weights", f"expected a list of {n} rationals")
        entries = [
            _parse_rational(e, f"weights[{i}]", positive=True) for i, e in enumerate(raw)
        ]
        weights = WeightVector(entries)

    function = _parse_function(doc["function"], m, n) if "function" in doc else None
    measure = _parse_measure(doc["measure"], m, n) if "measure" in doc else None
    v = _parse_rational(doc["v"], "v", nonnegative=True) if "v" in doc else rat(0)
    thresholds = (
        _parse_thresholds(doc["thresholds"], "thresholds") if "thresholds" in doc else ()
    )

    simulation = None
    if "simulation" in doc:
        sim = doc["simulation"]
        if not isinstance(sim, dict):
            raise ProblemFileError("simulation", "expected an object")
        count = _require(sim, "sample_count", "simulation.")
        seed = _require(sim, "seed", "simulation.")
        if isinstance(count, bool) or not isinstance(count, int) or count < 1:
            raise ProblemFileError("simulation.sample_count", f"expected an integer >= 1, got {count!r}")
        if isinstance(seed, bool) or not isinstance(seed, int):
            raise ProblemFileError("simulation.seed", f"expected an integer, got {seed!r}")
        sim_thresholds = _parse_thresholds(
            sim.get("thresholds", list(thresholds)), "simulation.thresholds"
        )
        simulation = SimulationConfig(count, seed, sim_thresholds)

    return ProblemFile(
        alphabet=alphabet,
        n=n,
        weights=weights,
        function=function,
        measure=measure,
        v=v,
        thresholds=thresholds,
        simulation=simulation,
    )


def resolve_function(
    problem: ProblemFile, max_table: int = MAX_DENSE_TABLE
) -> TableFunction:
    """Dense table for the file's function; builtins are expanded here."""
    if problem.function is None:
        raise ProblemFileError("function", "this subcommand needs a 'function' section")
    m, n = problem.alphabet.size, problem.n
    _check_table_size(m, n, max_table)
    spec = problem.function
    if spec.table is not None:
        return TableFunction(m, n, spec.table)
    builtin = spec.builtin
    name, _, arg = builtin.partition(":")
    if name == "sum_of_symbols":
        return TableFunction(m, n, tuple(rat(sum(x)) for x in words(m, n)))
    target = _parse_word(arg, m, n, "function.builtin")
    if name == "indicator":
        return TableFunction(
            m, n, tuple(rat(1) if x == target else rat(0) for x in words(m, n))
        )
    # hamming_to: the distance uses the file's weights.
    if problem.weights is None:
        raise ProblemFileError(
            "function.builtin", "hamming_to requires a 'weights' section"
        )
    w = problem.weights
    return TableFunction(
        m, n, tuple(hamming_distance(x, target, w) for x in words(m, n))
    )


def resolve_measure(problem: ProblemFile, max_table: int = MAX_DENSE_TABLE) -> Measure:
    """Dense measure for the file's measure section."""
    if problem.measure is None:
        raise ProblemFileError("measure", "this subcommand needs a 'measure' section")
    m, n = problem.alphabet.size, problem.n
    _check_table_size(m, n, max_table)
    if problem.measure.dense is not None:
        return Measure(m, n, problem.measure.dense)
    from .mixing import expand_markov

    return expand_markov(problem.measure.markov)


def _check_table_size(m: int, n: int, max_table: int) -> None:
    size = m**n
    if size > max_table:
        raise ProblemFileError(
            "n", f"dense table of {m}^{n} = {size} entries exceeds the cap of {max_table}"
        )


def problem_to_jsonable(problem: ProblemFile) -> dict:
    """Canonical JSON form; parsing it back reproduces the ProblemFile."""
    doc: dict[str, Any] = {}
    if problem.alphabet.labels is None:
        doc["alphabet"] = problem.alphabet.size
    else:
        doc["alphabet"] = {
            "size": problem.alphabet.size,
            "labels": list(problem.alphabet.labels),
        }
    doc["n"] = problem.n
    if problem.weights is not None:
        doc["weights"] = [rat_str(e) for e in problem.weights]
    if problem.function is not None:
        if problem.function.table is not None:
            doc["function"] = {"table": [rat_str(x) for x in problem.function.table]}
        else:
            doc["function"] = {"builtin": problem.function.builtin}
    if problem.measure is not None:
        if problem.measure.dense is not None:
            doc["measure"] = {"dense": [rat_str(p) for p in problem.measure.dense]}
        else:
            markov = problem.measure.markov
            doc["measure"] = {
                "markov": {
                    "init": [rat_str(p) for p in markov.initial],
                    "transitions": [
                        [[rat_str(p) for p in row] for row in matrix]
                        for matrix in markov.transitions
                    ],
                }
            }
    doc["v"] = rat_str(problem.v)
    if problem.thresholds:
        doc["thresholds"] = list(problem.thresholds)
    if problem.simulation is not None:
        doc["simulation"] = {
            "sample_count": problem.simulation.sample_count,
            "seed": problem.simulation.seed,
            "thresholds": list(problem.simulation.thresholds),
        }
    return doc
