import math
import random

import pytest

from hammix.instances import random_dense_measure, random_product_measure
from hammix.mixing import (
    DeltaMatrix,
    MarkovSpec,
    Measure,
    ZeroPrefixProbability,
    conditional_law,
    delta_matrix,
    eta,
    eta_bar,
    expand_markov,
    operator_norm_2,
    tv_distance,
)
from hammix.rational import rat
from hammix.words import WeightVector, words


def _chain(n):
    rows = ((rat("9/10"), rat("1/10")), (rat("1/10"), rat("9/10")))
    return MarkovSpec((rat("1/2"), rat("1/2")), (rows,) * (n - 1))


def test_measure_validation():
    with pytest.raises(ValueError):
        Measure(2, 1, (rat(1, 2), rat(1, 3)))
    with pytest.raises(ValueError):
        Measure(2, 1, (rat(3, 2), rat(-1, 2)))
    with pytest.raises(ValueError):
        Measure(2, 2, (rat(1),))
    assert Measure.uniform(3, 2).prefix_mass((0,)) == rat(1, 3)
    assert Measure.point_mass(2, 2, (1, 0)).probabilities == (0, 0, 1, 0)


def test_markov_spec_validation():
    with pytest.raises(ValueError):
        MarkovSpec((rat(1, 2), rat(1, 3)), ())
    with pytest.raises(ValueError):
        MarkovSpec((rat(1),), (((rat(1, 2),),),))
    with pytest.raises(ValueError):
        MarkovSpec((rat(1, 2), rat(1, 2)), (((rat(1), rat(0)),),))


def test_expand_markov_n1_is_initial():
    spec = MarkovSpec((rat(1, 4), rat(3, 4)), ())
    assert expand_markov(spec).probabilities == (rat(1, 4), rat(3, 4))


def test_expand_markov_two_state_example():
    P = expand_markov(_chain(2))
    assert P.probabilities == (rat(9, 20), rat(1, 20), rat(1, 20), rat(9, 20))


def test_expand_markov_uniform():
    uniform_t = ((rat(1, 2), rat(1, 2)), (rat(1, 2), rat(1, 2)))
    spec = MarkovSpec((rat(1, 2), rat(1, 2)), (uniform_t, uniform_t))
    assert expand_markov(spec) == Measure.uniform(2, 3)


def test_conditional_law_product_measure_is_marginal():
    rng = random.Random(2)
    P = random_product_measure(rng, 2, 3)
    # Under independence the conditional law of the tail never depends on
    # the prefix.
    for j in (2, 3):
        laws = {conditional_law(P, prefix, j) for prefix in words(2, j - 1)}
        assert len(laws) == 1
        shorter = {conditional_law(P, prefix, j) for prefix in words(2, 1)} if j == 3 else laws
        assert shorter == laws


def test_conditional_law_markov_row():
    P = expand_markov(_chain(2))
    assert conditional_law(P, (0,), 2) == (rat(9, 10), rat(1, 10))
    assert conditional_law(P, (1,), 2) == (rat(1, 10), rat(9, 10))


def test_conditional_law_last_symbol_by_direct_normalization():
    rng = random.Random(3)
    P = random_dense_measure(rng, 3, 3, allow_zeros=False)
    for prefix in words(3, 2):
        law = conditional_law(P, prefix, 3)
        lo, hi = P.prefix_block(prefix)
        mass = P.block_mass(lo, hi)
        direct = tuple(P.probabilities[lo + s] / mass for s in range(3))
        assert law == direct
        assert sum(law, rat(0)) == 1


def test_conditional_law_null_prefix_raises():
    P = Measure.point_mass(2, 2, (0, 0))
    with pytest.raises(ZeroPrefixProbability):
        conditional_law(P, (1,), 2)
    with pytest.raises(ValueError):
        conditional_law(P, (0,), 3)


def test_tv_distance():
    assert tv_distance((rat(1, 2), rat(1, 2)), (rat(1, 2), rat(1, 2))) == 0
    assert tv_distance((rat(1), rat(0)), (rat(0), rat(1))) == 1
    assert tv_distance((rat(9, 10), rat(1, 10)), (rat(1, 10), rat(9, 10))) == rat(4, 5)
    with pytest.raises(ValueError):
        tv_distance((rat(1),), (rat(1, 2), rat(1, 2)))


def test_eta_examples():
    rng = random.Random(4)
    product_P = random_product_measure(rng, 2, 3)
    for j in (2, 3):
        assert eta(product_P, 1, j, (), 0, 1) == 0

    P = expand_markov(_chain(2))
    assert eta(P, 1, 2, (), 0, 1) == rat(4, 5)
    assert eta(P, 1, 2, (), 1, 0) == rat(4, 5)  # symmetric in the swap
    assert eta(P, 1, 2, (), 0, 0) == 0

    with pytest.raises(ValueError):
        eta(P, 1, 2, (0,), 0, 1)  # past must have length i-1
    with pytest.raises(ValueError):
        eta(P, 2, 2, (0,), 0, 1)


def test_eta_symmetric_and_bounded_on_random_measures():
    rng = random.Random(44)
    for _ in range(10):
        P = random_dense_measure(rng, 2, 3, allow_zeros=False)
        for i in (1, 2):
            for j in range(i + 1, 4):
                for y in words(2, i - 1):
                    value = eta(P, i, j, y, 0, 1)
                    assert value == eta(P, i, j, y, 1, 0)
                    assert 0 <= value <= 1


def test_eta_null_prefix_raises():
    P = Measure.point_mass(2, 2, (0, 1))
    with pytest.raises(ZeroPrefixProbability):
        eta(P, 1, 2, (), 0, 1)


def test_eta_bar_chain_ground_truth():
    P2 = expand_markov(_chain(2))
    assert eta_bar(P2, 1, 2) == rat(4, 5)

    P3 = expand_markov(_chain(3))
    assert eta_bar(P3, 1, 2) == rat(4, 5)
    assert eta_bar(P3, 2, 3) == rat(4, 5)
    # Two-step mixing: total variation between the rows of T^2.
    assert eta_bar(P3, 1, 3) == rat(16, 25)


def test_eta_bar_product_is_zero():
    rng = random.Random(5)
    for _ in range(5):
        P = random_product_measure(rng, rng.choice((2, 3)), 3)
        for i in range(1, 3):
            for j in range(i + 1, 4):
                assert eta_bar(P, i, j) == 0


def test_eta_bar_skips_null_prefixes():
    # Only one admissible symbol after the forced first coordinate: the max
    # ranges over an empty pair set and must be 0, not an error.
    P = Measure.point_mass(2, 3, (0, 1, 0))
    assert eta_bar(P, 1, 2) == 0
    assert eta_bar(P, 2, 3) == 0


def test_eta_bounded_in_unit_interval():
    rng = random.Random(6)
    for _ in range(20):
        P = random_dense_measure(rng, 2, 3)
        for i in (1, 2):
            for j in range(i + 1, 4):
                value = eta_bar(P, i, j)
                assert 0 <= value <= 1


def test_delta_matrix_examples():
    rng = random.Random(7)
    assert delta_matrix(random_product_measure(rng, 2, 3)) == DeltaMatrix.identity(3)

    P2 = expand_markov(_chain(2))
    assert delta_matrix(P2) == DeltaMatrix(((1, rat(4, 5)), (0, 1)))

    P3 = expand_markov(_chain(3))
    assert delta_matrix(P3) == DeltaMatrix(
        ((1, rat(4, 5), rat(16, 25)), (0, 1, rat(4, 5)), (0, 0, 1))
    )


def test_delta_matrix_validation():
    with pytest.raises(ValueError):
        DeltaMatrix(((rat(2), rat(0)), (rat(0), rat(1))))
    with pytest.raises(ValueError):
        DeltaMatrix(((rat(1), rat(0)), (rat(1, 2), rat(1))))
    with pytest.raises(ValueError):
        DeltaMatrix(((rat(1), rat(3, 2)), (rat(0), rat(1))))
    with pytest.raises(ValueError):
        DeltaMatrix(((rat(1), rat(0)),))


def test_delta_apply_and_norm_sq():
    d = DeltaMatrix(((1, rat(4, 5)), (0, 1)))
    w = WeightVector((1, 1))
    assert d.apply(w) == (rat(9, 5), rat(1))
    assert d.weighted_norm_sq(w) == rat(106, 25)
    # Independent recomputation of ||Delta w||^2 entry by entry.
    manual = sum(
        (sum((d.entries[i][j] * w[j] for j in range(2)), rat(0)) ** 2 for i in range(2)),
        rat(0),
    )
    assert manual == rat(106, 25)


def test_operator_norm_identity():
    for n in (1, 2, 4, 7):
        assert abs(operator_norm_2(DeltaMatrix.identity(n)) - 1.0) <= 1e-12


def test_operator_norm_2x2_quadratic_oracle():
    d = DeltaMatrix(((1, rat(4, 5)), (0, 1)))
    # Largest eigenvalue of D^T D = ((1, 4/5), (4/5, 41/25)) by the
    # quadratic formula; its square root is the singular value.
    trace = 1.0 + 41.0 / 25.0
    det = 1.0 * (41.0 / 25.0) - 0.8 * 0.8
    lam_max = (trace + math.sqrt(trace * trace - 4.0 * det)) / 2.0
    assert abs(operator_norm_2(d) - math.sqrt(lam_max)) <= 1e-9


def test_operator_norm_dominates_weighted_action():
    rng = random.Random(8)
    for _ in range(10):
        P = random_dense_measure(rng, 2, 3, allow_zeros=False)
        d = delta_matrix(P)
        w = WeightVector([rat(rng.randint(1, 8), rng.randint(1, 4)) for _ in range(3)])
        lhs = math.sqrt(float(d.weighted_norm_sq(w)))
        w_norm = math.sqrt(float(sum((x * x for x in w), rat(0))))
        assert lhs <= operator_norm_2(d) * w_norm + 1e-9


def test_conditional_laws_sum_to_one():
    rng = random.Random(9)
    for _ in range(10):
        P = random_dense_measure(rng, 2, 3)
        for i in (1, 2):
            for prefix in words(2, i):
                if P.prefix_mass(prefix) == 0:
                    continue
                law = conditional_law(P, prefix, i + 1)
                assert sum(law, rat(0)) == 1
