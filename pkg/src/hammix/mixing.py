"""Probability measures on S^n and their mixing structure.

A :class:`Measure` is a dense exact-rational probability table over words,
indexed like :class:`~hammix.words.TableFunction`.  Because the first
symbol is most significant, the words sharing a prefix form one contiguous
index block, so prefix masses and conditional laws are block sums over a
precomputed cumulative array.

The eta coefficient for positions i < j measures how much the conditional
law of the tail X_j..n moves when the i-th symbol is swapped under a common
past:

    eta(i, j, y, z, z') = ||L(X_j..n | X_1..i = y z) - L(X_j..n | X_1..i = y z')||_tv

with total variation ||tau||_tv = (1/2) sum |tau(x)|.  eta_bar(i, j) is the
max over admissible (y, z, z'); the upper-triangular matrix with unit
diagonal and eta_bar entries (:class:`DeltaMatrix`) controls martingale
differences in :mod:`hammix.martingale`.

Conditioning on a zero-probability prefix is undefined; eta_bar therefore
maximizes only over triples whose two conditioning prefixes both have
positive mass (and is 0 when no admissible triple exists).  Product
measures have eta_bar = 0 everywhere and an identity DeltaMatrix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from numbers import Rational
from typing import Sequence

from .rational import rat
from .words import WeightVector, Word, word_index, words

# Dense tables beyond this size are refused at the CLI boundary; library
# callers constructing larger Measures directly are on their own.
MAX_DENSE_TABLE = 10**6


class ZeroPrefixProbability(ValueError):
    """Conditioning event has probability zero."""


@dataclass(frozen=True)
class Measure:
    """Dense exact-rational probability measure on S^n."""

    alphabet_size: int
    arity: int
    probabilities: tuple[Rational, ...]
    _cum: tuple[Rational, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.alphabet_size < 1:
            raise ValueError(f"alphabet size must be >= 1, got {self.alphabet_size}")
        if self.arity < 0:
            raise ValueError(f"arity must be >= 0, got {self.arity}")
        probs = tuple(rat(p) for p in self.probabilities)
        object.__setattr__(self, "probabilities", probs)
        expected = self.alphabet_size**self.arity
        if len(probs) != expected:
            raise ValueError(
                f"measure on {self.alphabet_size}^{self.arity} words needs "
                f"{expected} entries, got {len(probs)}"
            )
        total = rat(0)
        cum = [total]
        for i, p in enumerate(probs):
            if p < 0:
                raise ValueError(f"negative probability {p} at index {i}")
            total += p
            cum.append(total)
        if total != 1:
            raise ValueError(f"probabilities must sum to exactly 1, got {total}")
        object.__setattr__(self, "_cum", tuple(cum))

    @classmethod
    def uniform(cls, alphabet_size: int, arity: int) -> "Measure":
        count = alphabet_size**arity
        return cls(alphabet_size, arity, (rat(1, count),) * count)

    @classmethod
    def point_mass(cls, alphabet_size: int, arity: int, word: Word) -> "Measure":
        idx = word_index(word, alphabet_size, arity)
        probs = [rat(0)] * alphabet_size**arity
        probs[idx] = rat(1)
        return cls(alphabet_size, arity, tuple(probs))

    def block_mass(self, lo: int, hi: int) -> Rational:
        """Total probability of the index range [lo, hi)."""
        return self._cum[hi] - self._cum[lo]

    def prefix_block(self, prefix: Sequence[int]) -> tuple[int, int]:
        """Index range [lo, hi) of all words starting with the prefix."""
        block = self.alphabet_size ** (self.arity - len(prefix))
        lo = word_index(prefix, self.alphabet_size) * block
        return lo, lo + block

    def prefix_mass(self, prefix: Sequence[int]) -> Rational:
        lo, hi = self.prefix_block(prefix)
        return self.block_mass(lo, hi)


@dataclass(frozen=True)
class MarkovSpec:
    """Time-inhomogeneous Markov chain generator for a Measure.

    ``initial`` is a distribution over S; ``transitions`` holds n-1
    row-stochastic m x m matrices (entry [a][b] = P(next=b | current=a)).
    """

    initial: tuple[Rational, ...]
    transitions: tuple[tuple[tuple[Rational, ...], ...], ...]

    def __post_init__(self) -> None:
        init = tuple(rat(p) for p in self.initial)
        object.__setattr__(self, "initial", init)
        m = len(init)
        if m < 1:
            raise ValueError("initial distribution must be nonempty")
        if any(p < 0 for p in init):
            raise ValueError("initial distribution has a negative entry")
        if sum(init, rat(0)) != 1:
            raise ValueError("initial distribution must sum to exactly 1")
        mats = []
        for t, matrix in enumerate(self.transitions):
            if len(matrix) != m:
                raise ValueError(f"transition matrix {t} must have {m} rows")
            rows = []
            for a, row in enumerate(matrix):
                if len(row) != m:
                    raise ValueError(f"transition matrix {t} row {a} must have {m} entries")
                entries = tuple(rat(p) for p in row)
                if any(p < 0 for p in entries):
                    raise ValueError(f"transition matrix {t} row {a} has a negative entry")
                if sum(entries, rat(0)) != 1:
                    raise ValueError(f"transition matrix {t} row {a} must sum to exactly 1")
                rows.append(entries)
            mats.append(tuple(rows))
        object.__setattr__(self, "transitions", tuple(mats))

    @property
    def alphabet_size(self) -> int:
        return len(self.initial)

    @property
    def arity(self) -> int:
        return len(self.transitions) + 1


def expand_markov(spec: MarkovSpec) -> Measure:
    """Dense measure of the chain: P(x) = init(x1) * prod_t T_t(x_t, x_{t+1})."""
    m = spec.alphabet_size
    vals = list(spec.initial)
    for matrix in spec.transitions:
        nxt = [rat(0)] * (len(vals) * m)
        for p, mass in enumerate(vals):
            if mass:
                row = matrix[p % m]
                base = p * m
                for b in range(m):
                    nxt[base + b] = mass * row[b]
        vals = nxt
    return Measure(m, spec.arity, tuple(vals))


def conditional_law(P: Measure, prefix: Sequence[int], j: int) -> tuple[Rational, ...]:
    """Law of the tail X_j..n (1-based j) given X_1..i = prefix, i < j <= n.

    Returns a dense table over S^(n-j+1) summing to exactly 1; raises
    ZeroPrefixProbability when the conditioning event is null.
    """
    i = len(prefix)
    n = P.arity
    if not i < j <= n:
        raise ValueError(f"need len(prefix) < j <= arity, got i={i}, j={j}, n={n}")
    lo, hi = P.prefix_block(prefix)
    mass = P.block_mass(lo, hi)
    if mass == 0:
        raise ZeroPrefixProbability(f"prefix {tuple(prefix)} has probability zero")
    m = P.alphabet_size
    tail = m ** (n - j + 1)
    law = [rat(0)] * tail
    for offset in range(hi - lo):
        p = P.probabilities[lo + offset]
        if p:
            law[offset % tail] += p
    return tuple(v / mass for v in law)


def tv_distance(t1: Sequence[Rational], t2: Sequence[Rational]) -> Rational:
    """Total variation distance: half the l1 distance between the tables."""
    if len(t1) != len(t2):
        raise ValueError(f"length mismatch: {len(t1)} vs {len(t2)}")
    return sum((abs(rat(a) - rat(b)) for a, b in zip(t1, t2)), rat(0)) / 2


def eta(P: Measure, i: int, j: int, y: Sequence[int], z: int, z_prime: int) -> Rational:
    """Mixing coefficient for a single (past, swap) choice.

    Total variation between the tail laws after pasts y z and y z', where y
    has length i-1.  Both conditioning prefixes must have positive mass.
    """
    if not 1 <= i < j <= P.arity:
        raise ValueError(f"need 1 <= i < j <= arity, got i={i}, j={j}, n={P.arity}")
    if len(y) != i - 1:
        raise ValueError(f"past y must have length {i - 1}, got {len(y)}")
    law_z = conditional_law(P, tuple(y) + (z,), j)
    law_zp = conditional_law(P, tuple(y) + (z_prime,), j)
    return tv_distance(law_z, law_zp)


def eta_bar(P: Measure, i: int, j: int) -> Rational:
    """Worst-case eta over all pasts y and symbol pairs z, z'.

    Triples whose conditioning prefix is null are excluded; returns 0 when
    no admissible pair of pasts exists.
    """
    if not 1 <= i < j <= P.arity:
        raise ValueError(f"need 1 <= i < j <= arity, got i={i}, j={j}, n={P.arity}")
    m = P.alphabet_size
    best = rat(0)
    for y in words(m, i - 1):
        laws = []
        for z in range(m):
            prefix = y + (z,)
            if P.prefix_mass(prefix) == 0:
                continue
            laws.append(conditional_law(P, prefix, j))
        for a in range(len(laws)):
            for b in range(a + 1, len(laws)):
                d = tv_distance(laws[a], laws[b])
                if d > best:
                    best = d
    return best


@dataclass(frozen=True)
class DeltaMatrix:
    """Upper-triangular mixing matrix: unit diagonal, eta_bar above it."""

    entries: tuple[tuple[Rational, ...], ...]

    def __post_init__(self) -> None:
        n = len(self.entries)
        converted = []
        for i, row in enumerate(self.entries):
            if len(row) != n:
                raise ValueError(f"row {i} has {len(row)} entries, expected {n}")
            row = tuple(rat(v) for v in row)
            for j, v in enumerate(row):
                if j < i and v != 0:
                    raise ValueError(f"entry ({i},{j}) below diagonal must be 0, got {v}")
                if j == i and v != 1:
                    raise ValueError(f"diagonal entry ({i},{i}) must be 1, got {v}")
                if j > i and not 0 <= v <= 1:
                    raise ValueError(f"entry ({i},{j}) must lie in [0,1], got {v}")
            converted.append(row)
        object.__setattr__(self, "entries", tuple(converted))

    @property
    def size(self) -> int:
        return len(self.entries)

    @classmethod
    def identity(cls, n: int) -> "DeltaMatrix":
        return cls(
            tuple(
                tuple(rat(1) if i == j else rat(0) for j in range(n)) for i in range(n)
            )
        )

    def apply(self, w: WeightVector) -> tuple[Rational, ...]:
        """Matrix-vector product (Delta w), exact."""
        if len(w) != self.size:
            raise ValueError(f"weight length {len(w)} != matrix size {self.size}")
        return tuple(
            sum((row[j] * w[j] for j in range(self.size)), rat(0))
            for row in self.entries
        )

    def weighted_norm_sq(self, w: WeightVector) -> Rational:
        """||Delta w||_2^2 as an exact rational."""
        return sum((x * x for x in self.apply(w)), rat(0))


def delta_matrix(P: Measure) -> DeltaMatrix:
    """Assemble the mixing matrix of a measure from its eta_bar coefficients."""
    n = P.arity
    rows = []
    for i in range(1, n + 1):
        row = [rat(0)] * (i - 1) + [rat(1)]
        row += [eta_bar(P, i, j) for j in range(i + 1, n + 1)]
        rows.append(tuple(row))
    return DeltaMatrix(tuple(rows))


def operator_norm_2(
    D: DeltaMatrix, rel_tol: float = 1e-12, max_iterations: int = 100_000
) -> float:
    """l2 operator norm (largest singular value), upper-biased.

    Power iteration on A = D^T D from the all-ones vector (never orthogonal
    to the dominant eigenvector: A is entrywise nonnegative).  Iterates
    until the residual ||A x - rho x|| drops below rel_tol * rho, where rho
    is the Rayleigh quotient of the unit iterate, then returns
    sqrt(rho + residual).  Since rho <= lambda_max for symmetric PSD A, the
    returned value brackets the norm from above at convergence, which keeps
    tail bounds computed from it valid.  This is the package's only
    floating-point computation before the exp() boundary.
    """
    n = D.size
    d = [[float(v) for v in row] for row in D.entries]
    # A = D^T D, symmetric PSD.
    a = [[sum(d[k][i] * d[k][j] for k in range(n)) for j in range(n)] for i in range(n)]

    x = [1.0 / math.sqrt(n)] * n
    rho = 0.0
    resid = 0.0
    for _ in range(max_iterations):
        ax = [sum(a[i][j] * x[j] for j in range(n)) for i in range(n)]
        rho = sum(ax[i] * x[i] for i in range(n))
        resid = math.sqrt(sum((ax[i] - rho * x[i]) ** 2 for i in range(n)))
        if resid <= rel_tol * rho:
            break
        norm = math.sqrt(sum(v * v for v in ax))
        x = [v / norm for v in ax]
    return math.sqrt(rho + resid)
