"""Finite-alphabet words and dense tables over them.

A word of length n over an alphabet of size m is a tuple of ints in
[0, m).  Dense tables (:class:`TableFunction`) hold one exact rational per
word of S^n, in lexicographic order with the *first* symbol most
significant: ``index((x1,...,xn)) = sum_i xi * m**(n-i)``.  That order makes
the two structural operators cheap:

* marginal projection  k'(y) = sum_{a in S} k(a y)   -- a strided sum over
  the most significant digit;
* y-section            k_y(x) = k(x y)               -- fixes the least
  significant digit.

Arity-0 tables are length-1 tables (the single value indexed by the empty
word), so recursions over arity bottom out without a special scalar case.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from numbers import Rational
from typing import Callable, Iterable, Iterator, Sequence

from .rational import RationalLike, rat

Word = tuple[int, ...]


@dataclass(frozen=True)
class Alphabet:
    """A finite symbol set {0, ..., size-1}, optionally labelled."""

    size: int
    labels: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        if not isinstance(self.size, int) or self.size < 1:
            raise ValueError(f"alphabet size must be an integer >= 1, got {self.size!r}")
        if self.labels is not None:
            labels = tuple(self.labels)
            object.__setattr__(self, "labels", labels)
            if len(labels) != self.size:
                raise ValueError(
                    f"expected {self.size} labels, got {len(labels)}"
                )
            if len(set(labels)) != len(labels):
                raise ValueError("alphabet labels must be distinct")

    def __iter__(self) -> Iterator[int]:
        return iter(range(self.size))


@dataclass(frozen=True)
class WeightVector:
    """Strictly positive rational weights, one per word coordinate."""

    entries: tuple[Rational, ...]

    def __init__(self, entries: Iterable[RationalLike]) -> None:
        converted = tuple(rat(e) for e in entries)
        for i, e in enumerate(converted):
            if e <= 0:
                raise ValueError(f"weight entries must be > 0, got {e} at index {i}")
        object.__setattr__(self, "entries", converted)

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, i: int) -> Rational:
        return self.entries[i]

    def __iter__(self) -> Iterator[Rational]:
        return iter(self.entries)

    def total(self) -> Rational:
        return sum(self.entries, rat(0))

    def suffix(self, start: int) -> "WeightVector":
        """Weights for coordinates start..n (0-based start index)."""
        return WeightVector(self.entries[start:])


@dataclass(frozen=True)
class TableFunction:
    """A dense real-valued (exact rational) function on S^n.

    ``values[i]`` is the value on the word with lexicographic index ``i``;
    ``len(values) == alphabet_size ** arity`` always holds.
    """

    alphabet_size: int
    arity: int
    values: tuple[Rational, ...]

    def __post_init__(self) -> None:
        if self.alphabet_size < 1:
            raise ValueError(f"alphabet size must be >= 1, got {self.alphabet_size}")
        if self.arity < 0:
            raise ValueError(f"arity must be >= 0, got {self.arity}")
        values = tuple(rat(v) for v in self.values)
        object.__setattr__(self, "values", values)
        expected = self.alphabet_size**self.arity
        if len(values) != expected:
            raise ValueError(
                f"table for arity {self.arity} over {self.alphabet_size} symbols "
                f"needs {expected} values, got {len(values)}"
            )

    @classmethod
    def from_callable(
        cls, alphabet_size: int, arity: int, fn: Callable[[Word], RationalLike]
    ) -> "TableFunction":
        vals = [fn(x) for x in words(alphabet_size, arity)]
        return cls(alphabet_size, arity, tuple(vals))

    @classmethod
    def constant(cls, alphabet_size: int, arity: int, value: RationalLike) -> "TableFunction":
        return cls(alphabet_size, arity, (rat(value),) * alphabet_size**arity)

    def __call__(self, x: Word) -> Rational:
        return self.values[word_index(x, self.alphabet_size, self.arity)]

    def __neg__(self) -> "TableFunction":
        return TableFunction(self.alphabet_size, self.arity, tuple(-v for v in self.values))

    def scale(self, a: RationalLike) -> "TableFunction":
        a = rat(a)
        return TableFunction(self.alphabet_size, self.arity, tuple(a * v for v in self.values))

    def shift(self, a: RationalLike) -> "TableFunction":
        a = rat(a)
        return TableFunction(self.alphabet_size, self.arity, tuple(v + a for v in self.values))

    def total(self) -> Rational:
        return sum(self.values, rat(0))


def words(m: int, n: int) -> Iterator[Word]:
    """All words of S^n in lexicographic (index) order."""
    return product(range(m), repeat=n)


def word_index(x: Sequence[int], m: int, n: int | None = None) -> int:
    """Lexicographic index of a word; first symbol most significant."""
    if n is not None and len(x) != n:
        raise ValueError(f"expected word of length {n}, got {len(x)}")
    idx = 0
    for s in x:
        if not 0 <= s < m:
            raise ValueError(f"symbol {s} out of range for alphabet of size {m}")
        idx = idx * m + s
    return idx


def word_unindex(idx: int, m: int, n: int) -> Word:
    """Inverse of :func:`word_index`."""
    if not 0 <= idx < m**n:
        raise ValueError(f"index {idx} out of range for {m}^{n} words")
    out = [0] * n
    for pos in range(n - 1, -1, -1):
        idx, out[pos] = divmod(idx, m)
    return tuple(out)


def hamming_distance(x: Sequence[int], y: Sequence[int], w: WeightVector) -> Rational:
    """Weighted Hamming distance: sum of w_i over coordinates where x, y differ."""
    if len(x) != len(y) or len(x) != len(w):
        raise ValueError(
            f"length mismatch: |x|={len(x)}, |y|={len(y)}, |w|={len(w)}"
        )
    return sum((w[i] for i in range(len(w)) if x[i] != y[i]), rat(0))


def marginal_projection(k: TableFunction) -> TableFunction:
    """Sum out the first coordinate: k'(y) = sum_{a in S} k(a y).

    Maps arity n to arity n-1; the arity-1 projection is the scalar table
    holding the total of k.
    """
    if k.arity < 1:
        raise ValueError("cannot project an arity-0 table")
    m = k.alphabet_size
    block = m ** (k.arity - 1)
    vals = k.values
    projected = [
        sum((vals[a * block + j] for a in range(m)), rat(0)) for j in range(block)
    ]
    return TableFunction(m, k.arity - 1, tuple(projected))


def y_section(k: TableFunction, y: int) -> TableFunction:
    """Fix the last coordinate to y: k_y(x) = k(x y)."""
    if k.arity < 1:
        raise ValueError("cannot take a section of an arity-0 table")
    m = k.alphabet_size
    if not 0 <= y < m:
        raise ValueError(f"section symbol {y} out of range for alphabet of size {m}")
    vals = k.values[y :: m]
    return TableFunction(m, k.arity - 1, tuple(vals))


def prefix_restrict(f: TableFunction, prefix: Sequence[int]) -> TableFunction:
    """Fix the first len(prefix) coordinates: returns x |-> f(prefix x)."""
    i = len(prefix)
    if i > f.arity:
        raise ValueError(f"prefix of length {i} too long for arity {f.arity}")
    m = f.alphabet_size
    block = m ** (f.arity - i)
    base = word_index(prefix, m) * block
    return TableFunction(m, f.arity - i, f.values[base : base + block])
