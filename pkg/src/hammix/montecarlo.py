"""Seeded Monte Carlo checks of the proved tail bounds.

Sampling is exact: a word is drawn symbol by symbol from its conditional
distribution given the sampled prefix, and every comparison against the
uniform variate happens in rational arithmetic (the variate is the exact
rational r / 2^64 of a 64-bit draw), so a run is a pure function of
(measure, seed, sample count) -- bit-identical across platforms and
schedules.

Randomness comes from splitmix64 streams: sample k uses the stream whose
initial state is seed + (k+1) * GAMMA mod 2^64, advanced by the standard
splitmix64 output function.  Streams depend only on (seed, k), so samples
may be generated in any order or in parallel without changing the result.

:func:`empirical_tail` estimates P(|f - E f| > t) by simulation (E f is
computed exactly, removing one noise source) and reports the Azuma and
mixing-matrix bounds next to each estimated frequency.
"""

from __future__ import annotations

from dataclasses import dataclass
from numbers import Rational
from .martingale import azuma_bound, concentration_bound, martingale_profile
from .mixing import Measure, delta_matrix
from .rational import rat, rat_from_float
from .words import TableFunction, WeightVector, Word

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_TWO64 = 1 << 64


def _mix64(z: int) -> int:
    """splitmix64 output function."""
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 & _MASK64
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB & _MASK64
    return z ^ (z >> 31)


class SampleStream:
    """Deterministic 64-bit stream for one sample index."""

    __slots__ = ("_state",)

    def __init__(self, seed: int, index: int) -> None:
        self._state = (seed + (index + 1) * _GAMMA) & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK64
        return _mix64(self._state)


@dataclass(frozen=True)
class SimulationConfig:
    """Sample count, seed and the tail thresholds to estimate."""

    sample_count: int
    seed: int
    thresholds: tuple[float, ...]

    def __post_init__(self) -> None:
        if self.sample_count < 1:
            raise ValueError(f"sample_count must be >= 1, got {self.sample_count}")
        if not isinstance(self.seed, int):
            raise ValueError(f"seed must be an integer, got {type(self.seed).__name__}")
        object.__setattr__(self, "seed", self.seed & _MASK64)
        thresholds = tuple(float(t) for t in self.thresholds)
        object.__setattr__(self, "thresholds", thresholds)
        if not thresholds:
            raise ValueError("thresholds must be nonempty")
        if any(t <= 0 for t in thresholds):
            raise ValueError(f"thresholds must be positive, got {thresholds}")


def sample_word(P: Measure, stream: SampleStream) -> Word:
    """Draw one word with probability exactly P(x).

    Symbol i is drawn from P(x_i | x_1..i-1) by comparing u = r / 2^64
    against the cumulative sub-block masses of the current prefix block;
    all comparisons are exact, and zero-probability branches can never be
    selected.
    """
    m = P.alphabet_size
    block = m**P.arity
    lo = 0
    symbols = []
    for _ in range(P.arity):
        block //= m
        mass = P.block_mass(lo, lo + block * m)
        # target = u * mass with u in [0, 1); strictly below the block mass,
        # so the scan always terminates at some positive sub-block.
        target = rat(stream.next_u64(), _TWO64) * mass
        acc = rat(0)
        for a in range(m):
            acc += P.block_mass(lo + a * block, lo + (a + 1) * block)
            if target < acc:
                symbols.append(a)
                lo += a * block
                break
        else:  # pragma: no cover - unreachable: target < mass == final acc
            raise AssertionError("cumulative scan failed to select a symbol")
    return tuple(symbols)


@dataclass(frozen=True)
class ThresholdReport:
    """Simulation outcome for one threshold t, next to the proved bounds."""

    threshold: float
    exceed_count: int
    frequency: float
    azuma: float
    corollary: float


@dataclass(frozen=True)
class TailReport:
    sample_count: int
    seed: int
    mean: Rational
    d_squared: Rational
    rows: tuple[ThresholdReport, ...]


def empirical_tail(
    f: TableFunction, P: Measure, w: WeightVector, cfg: SimulationConfig
) -> TailReport:
    """Estimate P(|f - E f| > t) for each configured t.

    E f and the per-sample comparisons are exact (thresholds enter as the
    exact rational values of their floats); only the reported frequency and
    bounds are floating point.  Identical (f, P, w, cfg) give bit-identical
    reports.
    """
    if f.alphabet_size != P.alphabet_size or f.arity != P.arity:
        raise ValueError("function and measure shapes do not match")
    mean = sum(
        (fv * pv for fv, pv in zip(f.values, P.probabilities) if pv), rat(0)
    )
    profile = martingale_profile(f, P)
    exact_thresholds = [rat_from_float(t) for t in cfg.thresholds]
    counts = [0] * len(exact_thresholds)
    for k in range(cfg.sample_count):
        word = sample_word(P, SampleStream(cfg.seed, k))
        deviation = abs(f(word) - mean)
        for idx, t_exact in enumerate(exact_thresholds):
            if deviation > t_exact:
                counts[idx] += 1

    d2 = float(profile.d_squared)
    delta = delta_matrix(P)
    rows = []
    for t, count in zip(cfg.thresholds, counts):
        azuma = azuma_bound(t, d2) if d2 > 0 else 0.0
        corollary = concentration_bound(f, P, w, t, delta=delta)
        rows.append(
            ThresholdReport(
                threshold=t,
                exceed_count=count,
                frequency=count / cfg.sample_count,
                azuma=azuma,
                corollary=corollary,
            )
        )
    return TailReport(
        sample_count=cfg.sample_count,
        seed=cfg.seed,
        mean=mean,
        d_squared=profile.d_squared,
        rows=tuple(rows),
    )
