import pytest

from hammix.mixing import expand_markov
from hammix.problemfile import (
    ProblemFileError,
    parse_problem,
    problem_to_jsonable,
    resolve_function,
    resolve_measure,
)
from hammix.rational import rat


def _doc(**overrides):
    doc = {
        "alphabet": 2,
        "n": 2,
        "weights": ["1", "1"],
        "function": {"table": ["1", "0", "0", "-1"]},
        "measure": {"dense": ["9/20", "1/20", "1/20", "9/20"]},
        "v": "1/2",
        "thresholds": [1.0, 2.0],
        "simulation": {"sample_count": 100, "seed": 7, "thresholds": [1.5]},
    }
    doc.update(overrides)
    return doc


def test_parse_full_document():
    problem = parse_problem(_doc())
    assert problem.alphabet.size == 2
    assert problem.n == 2
    assert problem.weights.entries == (rat(1), rat(1))
    assert problem.function.table == (rat(1), 0, 0, rat(-1))
    assert problem.measure.dense[0] == rat(9, 20)
    assert problem.v == rat(1, 2)
    assert problem.thresholds == (1.0, 2.0)
    assert problem.simulation.sample_count == 100
    assert problem.simulation.thresholds == (1.5,)


def test_round_trip_identity():
    for doc in (
        _doc(),
        _doc(function="sum_of_symbols", v="0"),
        _doc(
            measure={
                "markov": {
                    "init": ["1/2", "1/2"],
                    "transitions": [[["9/10", "1/10"], ["1/10", "9/10"]]],
                }
            }
        ),
        {"alphabet": {"size": 2, "labels": ["a", "b"]}, "n": 1, "weights": ["2"]},
    ):
        first = parse_problem(doc)
        emitted = problem_to_jsonable(first)
        assert parse_problem(emitted) == first


def test_decimal_strings_parse_exactly():
    problem = parse_problem(_doc(weights=["0.125", "3"]))
    assert problem.weights.entries == (rat(1, 8), rat(3))


def test_resolve_dense_function_and_measure():
    problem = parse_problem(_doc())
    f = resolve_function(problem)
    assert f.values == (1, 0, 0, -1)
    P = resolve_measure(problem)
    assert P.probabilities == (rat(9, 20), rat(1, 20), rat(1, 20), rat(9, 20))


def test_resolve_markov_measure():
    problem = parse_problem(
        _doc(
            measure={
                "markov": {
                    "init": ["1/2", "1/2"],
                    "transitions": [[["9/10", "1/10"], ["1/10", "9/10"]]],
                }
            }
        )
    )
    P = resolve_measure(problem)
    assert P == expand_markov(problem.measure.markov)
    assert P.probabilities[0] == rat(9, 20)


def test_builtin_sum_of_symbols():
    problem = parse_problem(_doc(function="sum_of_symbols"))
    assert resolve_function(problem).values == (0, 1, 1, 2)


def test_builtin_indicator():
    problem = parse_problem(_doc(function={"builtin": "indicator:11"}))
    assert resolve_function(problem).values == (0, 0, 0, 1)


def test_builtin_hamming_to_uses_weights():
    problem = parse_problem(_doc(function={"builtin": "hamming_to:01"}, weights=["1/2", "3"]))
    f = resolve_function(problem)
    # distances from (0,1) to 00, 01, 10, 11 under w = (1/2, 3)
    assert f.values == (rat(3), rat(0), rat(7, 2), rat(1, 2))


def test_builtin_hamming_to_comma_form():
    problem = parse_problem(_doc(function={"builtin": "hamming_to:0,1"}))
    assert resolve_function(problem).values[1] == 0


def test_missing_sections_reported_with_path():
    problem = parse_problem({"alphabet": 2, "n": 2})
    with pytest.raises(ProblemFileError, match="function"):
        resolve_function(problem)
    with pytest.raises(ProblemFileError, match="measure"):
        resolve_measure(problem)


@pytest.mark.parametrize(
    "overrides,fragment",
    [
        ({"weights": ["0", "1"]}, "weights[0]"),
        ({"weights": ["1"]}, "weights"),
        ({"weights": ["1", 0.5]}, "weights[1]"),
        ({"v": "-1"}, "v"),
        ({"function": {"table": ["1"]}}, "function.table"),
        ({"function": {"builtin": "frobnicate"}}, "function.builtin"),
        ({"function": {"builtin": "indicator:31"}}, "function.builtin"),
        ({"function": {"builtin": "indicator:111"}}, "function.builtin"),
        ({"measure": {"dense": ["1/2", "1/4", "0", "0"]}}, "measure.dense"),
        ({"measure": {"dense": ["1/2", "3/5", "0", "-1/10"]}}, "measure.dense"),
        ({"measure": {"markov": {"init": ["1"], "transitions": []}}}, "measure.markov"),
        ({"thresholds": []}, "thresholds"),
        ({"thresholds": [0.0]}, "thresholds[0]"),
        ({"simulation": {"sample_count": 0, "seed": 1}}, "simulation.sample_count"),
        ({"n": -1}, "n"),
        ({"alphabet": 0}, "alphabet"),
    ],
)
def test_invalid_documents(overrides, fragment):
    with pytest.raises(ProblemFileError) as err:
        problem = parse_problem(_doc(**overrides))
        resolve_function(problem)  # builtins validate their argument lazily
    assert fragment in str(err.value)


def test_weight_zero_message_cites_positivity():
    with pytest.raises(ProblemFileError, match="> 0"):
        parse_problem(_doc(weights=["0", "1"]))


def test_table_size_cap():
    problem = parse_problem(_doc())
    with pytest.raises(ProblemFileError, match="exceeds"):
        resolve_function(problem, max_table=3)
    with pytest.raises(ProblemFileError, match="exceeds"):
        resolve_measure(problem, max_table=3)


def test_non_object_document():
    with pytest.raises(ProblemFileError):
        parse_problem([1, 2, 3])
