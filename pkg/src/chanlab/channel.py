"""Discrete channels as row-stochastic transition matrices.

Three kernels share one interface:

* ``DenseChannel``: an explicit ``|D| x |R|`` matrix ``W[x, y] = P_x(y)``.
* ``ProductChannel``: ``base^c``, the base (binary-input) channel applied
  independently to each bit of a length-``c`` input.  Never materialized
  unless asked.
* ``ConcatChannel``: ``left || right``, each half of the input goes through
  its own channel.

Bit-string labels index from the left: ``X[1]`` is ``x[0]``.  Product range
labels are the component labels joined with no separator when every base
output label is one character, otherwise joined with ``SEP``.
"""

from __future__ import annotations

import itertools
import math
from abc import ABC, abstractmethod
from fractions import Fraction
from typing import Iterator, Sequence

import numpy as np

from .errors import (
    DimensionMismatch,
    MaterializationTooLarge,
    MixedModeError,
    NonBinaryBase,
    ParameterOutOfRange,
    RowNotStochastic,
    UnknownLabel,
)
from .prob import EXACT, FLOAT, Distribution, JointDistribution, Prob, coerce_probs, to_exact_value

SEP = "‖"
BITS = ("0", "1")

# |D| * |R| above which exact computation is refused
MATERIALIZATION_CAP = 2**24


def is_bitstring(s: str) -> bool:
    return bool(s) and all(ch in "01" for ch in s)


class RandomSource:
    """Seeded, splittable pseudorandom stream (numpy ``SeedSequence`` based).

    A source is single-owner.  ``split`` derives independent child streams
    deterministically, so components sampled from children do not depend on
    the order in which they are evaluated.
    """

    def __init__(self, seed: int | np.random.SeedSequence):
        if isinstance(seed, np.random.SeedSequence):
            self._seq = seed
        else:
            if not 0 <= seed < 2**64:
                raise ValueError("seed must be a 64-bit unsigned integer")
            self._seq = np.random.SeedSequence(seed)
        self.generator = np.random.default_rng(self._seq)

    def split(self, n: int) -> list[RandomSource]:
        return [RandomSource(s) for s in self._seq.spawn(n)]

    def uniform(self, size) -> np.ndarray:
        return self.generator.random(size)


def _draw_indices(probs: Sequence[Prob], u: np.ndarray) -> np.ndarray:
    """Inverse-CDF lookup of uniforms ``u`` in a probability row."""
    p = np.array([float(v) for v in probs])
    cdf = np.cumsum(p)
    idx = np.searchsorted(cdf, u, side="right")
    # float round-off can leave cdf[-1] < 1; fall back to the last positive cell
    last = int(np.flatnonzero(p > 0)[-1])
    return np.minimum(idx, last)


class Channel(ABC):
    mode: str
    # length of input bit-strings, or None when the domain is not bit-strings
    input_bits: int | None
    # common length of range labels when they can be joined without SEP
    range_width: int | None
    # number of SEP-separated tokens in every range label
    range_parts: int

    @property
    @abstractmethod
    def domain_size(self) -> int: ...

    @property
    @abstractmethod
    def range_size(self) -> int: ...

    @abstractmethod
    def domain_labels(self) -> Iterator[str]: ...

    @abstractmethod
    def range_labels(self) -> Iterator[str]: ...

    @abstractmethod
    def entry(self, x: str, y: str) -> Prob:
        """Transition probability ``W[x, y]``."""

    @abstractmethod
    def sample_many(self, x: str, n: int, rng: RandomSource) -> np.ndarray:
        """``n`` independent outputs for input ``x``, as a numpy str array."""

    def row(self, x: str, cap: int = MATERIALIZATION_CAP) -> Distribution:
        if self.range_size > cap:
            raise MaterializationTooLarge(cap, self.range_size)
        return Distribution(self.range_labels(), [self.entry(x, y) for y in self.range_labels()])


class DenseChannel(Channel):
    def __init__(self, domain: Sequence[str], range_: Sequence[str], matrix: Sequence[Sequence]):
        domain, range_ = tuple(domain), tuple(range_)
        for labels, what in ((domain, "domain"), (range_, "range")):
            if not labels:
                raise DimensionMismatch(f"empty {what}")
            if len(set(labels)) != len(labels):
                raise DimensionMismatch(f"duplicate {what} labels")
        rows = [list(r) for r in matrix]
        if len(rows) != len(domain):
            raise DimensionMismatch(f"{len(rows)} rows for {len(domain)} domain labels")
        for i, r in enumerate(rows):
            if len(r) != len(range_):
                raise DimensionMismatch(f"row {i} has {len(r)} entries for {len(range_)} range labels")
        flat, mode = coerce_probs(v for r in rows for v in r)
        for v in flat:
            if not 0 <= v <= 1:
                raise ParameterOutOfRange(f"transition probability {v} outside [0, 1]")
        m = len(range_)
        self.matrix = tuple(tuple(flat[i * m:(i + 1) * m]) for i in range(len(domain)))
        for i, r in enumerate(self.matrix):
            total = sum(r, Fraction(0)) if mode == EXACT else math.fsum(r)
            if (total != 1) if mode == EXACT else abs(total - 1.0) > 1e-9:
                raise RowNotStochastic(i, total)
        self.mode = mode
        self.domain = domain
        self.range = range_
        self._dindex = {x: i for i, x in enumerate(domain)}
        self._rindex = {y: j for j, y in enumerate(range_)}
        lengths = {len(x) for x in domain}
        self.input_bits = lengths.pop() if len(lengths) == 1 and all(map(is_bitstring, domain)) else None
        parts = {y.count(SEP) + 1 for y in range_}
        self.range_parts = parts.pop() if len(parts) == 1 else 0
        widths = {len(y) for y in range_}
        self.range_width = widths.pop() if len(widths) == 1 and self.range_parts == 1 else None

    def __repr__(self):
        return f"DenseChannel(domain={self.domain}, range={self.range}, mode={self.mode})"

    def __eq__(self, other):
        if not isinstance(other, DenseChannel):
            return NotImplemented
        return (self.domain, self.range, self.matrix, self.mode) == (
            other.domain, other.range, other.matrix, other.mode)

    def __hash__(self):
        return hash((self.domain, self.range, self.matrix))

    @property
    def domain_size(self) -> int:
        return len(self.domain)

    @property
    def range_size(self) -> int:
        return len(self.range)

    def domain_labels(self):
        return iter(self.domain)

    def range_labels(self):
        return iter(self.range)

    def _xi(self, x: str) -> int:
        try:
            return self._dindex[x]
        except KeyError:
            raise UnknownLabel(x, "channel domain") from None

    def entry(self, x, y):
        i = self._xi(x)
        try:
            j = self._rindex[y]
        except KeyError:
            raise UnknownLabel(y, "channel range") from None
        return self.matrix[i][j]

    def row(self, x, cap=MATERIALIZATION_CAP):
        return Distribution(self.range, self.matrix[self._xi(x)])

    def sample_many(self, x, n, rng):
        idx = _draw_indices(self.matrix[self._xi(x)], rng.uniform(n))
        return np.array(self.range)[idx]

    def to_exact(self) -> DenseChannel:
        if self.mode == EXACT:
            return self
        return DenseChannel(self.domain, self.range,
                            [[to_exact_value(v) for v in r] for r in self.matrix])

    def to_float(self) -> DenseChannel:
        if self.mode == FLOAT:
            return self
        return DenseChannel(self.domain, self.range, [[float(v) for v in r] for r in self.matrix])


class ProductChannel(Channel):
    """``base^c``: each input bit goes through ``base`` independently."""

    def __init__(self, base: Channel, c: int):
        if set(base.domain_labels()) != set(BITS):
            raise NonBinaryBase("base channel domain must be {0, 1}")
        if not isinstance(c, int) or c < 1:
            raise ValueError("c must be a positive integer")
        if base.range_parts == 0:
            raise ValueError("base range labels have inconsistent separators")
        self.base = base
        self.c = c
        self.mode = base.mode
        self.input_bits = c
        self._base_range = tuple(base.range_labels())
        self._rset = set(self._base_range)
        self._joined = all(len(y) == 1 for y in self._base_range) and SEP not in self._rset
        self.range_width = c if self._joined else None
        self.range_parts = 1 if self._joined else c * base.range_parts
        self._table = {(a, b): base.entry(a, b) for a in BITS for b in self._base_range}
        self._pairs = tuple(self._table)
        self._pair_index = {pair: i for i, pair in enumerate(self._pairs)}
        self._memo: dict[tuple[int, ...], Prob] = {}

    def __repr__(self):
        return f"ProductChannel({self.base!r}, c={self.c})"

    @property
    def domain_size(self):
        return 2**self.c

    @property
    def range_size(self):
        return len(self._base_range) ** self.c

    def domain_labels(self):
        return ("".join(t) for t in itertools.product(BITS, repeat=self.c))

    def range_labels(self):
        sep = "" if self._joined else SEP
        return (sep.join(t) for t in itertools.product(self._base_range, repeat=self.c))

    def _check_input(self, x: str) -> None:
        if not isinstance(x, str) or len(x) != self.c or not is_bitstring(x):
            raise UnknownLabel(x, f"{self.c}-bit product domain")

    def split_output(self, y: str) -> list[str]:
        if self._joined:
            parts = list(y) if isinstance(y, str) and len(y) == self.c else None
        else:
            tokens = y.split(SEP)
            k = self.base.range_parts
            parts = [SEP.join(tokens[i:i + k]) for i in range(0, len(tokens), k)]
            if len(parts) != self.c:
                parts = None
        if parts is None or any(p not in self._rset for p in parts):
            raise UnknownLabel(y, "product range")
        return parts

    def entry(self, x, y):
        self._check_input(x)
        counts = [0] * len(self._pairs)
        index = self._pair_index
        for pair in zip(x, self.split_output(y)):
            counts[index[pair]] += 1
        return self._product(tuple(counts))

    def _product(self, counts: tuple[int, ...]) -> Prob:
        # entries depend only on how often each (bit, output) pair occurs
        out = self._memo.get(counts)
        if out is None:
            out = Fraction(1) if self.mode == EXACT else 1.0
            for pair, k in zip(self._pairs, counts):
                if k:
                    out *= self._table[pair] ** k
            if len(self._memo) < 1 << 16:
                self._memo[counts] = out
        return out

    def sample_many(self, x, n, rng):
        self._check_input(x)
        # one uniform per (sample, position): reproducible independent of order
        u = rng.uniform((n, self.c))
        bits = np.frombuffer(x.encode(), dtype=np.uint8) - ord("0")
        idx = np.empty((n, self.c), dtype=np.int64)
        for b in (0, 1):
            cols = np.flatnonzero(bits == b)
            if cols.size:
                row = [self._table[(BITS[b], y)] for y in self._base_range]
                idx[:, cols] = _draw_indices(row, u[:, cols])
        labels = np.array(self._base_range)
        if self._joined:
            chars = np.ascontiguousarray(labels[idx]).astype("<U1")
            return chars.view(f"<U{self.c}").ravel()
        return np.array([SEP.join(labels[r]) for r in idx])


class ConcatChannel(Channel):
    """``left || right`` on inputs ``x1 || x2`` with ``|x1| = left.input_bits``."""

    def __init__(self, left: Channel, right: Channel):
        if left.input_bits is None or right.input_bits is None:
            raise ValueError("concatenation needs bit-string domains on both sides")
        if left.mode != right.mode:
            raise MixedModeError("cannot concatenate exact and float channels")
        if left.range_parts == 0 or right.range_parts == 0:
            raise ValueError("range labels have inconsistent separators")
        self.left = left
        self.right = right
        self.mode = left.mode
        self.input_bits = left.input_bits + right.input_bits
        self._joined = left.range_width is not None and right.range_width is not None
        self.range_width = left.range_width + right.range_width if self._joined else None
        self.range_parts = 1 if self._joined else left.range_parts + right.range_parts

    def __repr__(self):
        return f"ConcatChannel({self.left!r}, {self.right!r})"

    @property
    def domain_size(self):
        return self.left.domain_size * self.right.domain_size

    @property
    def range_size(self):
        return self.left.range_size * self.right.range_size

    def domain_labels(self):
        return (a + b for a in self.left.domain_labels() for b in self.right.domain_labels())

    def range_labels(self):
        sep = "" if self._joined else SEP
        return (a + sep + b for a in self.left.range_labels() for b in self.right.range_labels())

    def split_input(self, x: str) -> tuple[str, str]:
        if not isinstance(x, str) or len(x) != self.input_bits:
            raise UnknownLabel(x, "concatenated domain")
        k = self.left.input_bits
        return x[:k], x[k:]

    def split_output(self, y: str) -> tuple[str, str]:
        if self._joined:
            if len(y) != self.range_width:
                raise UnknownLabel(y, "concatenated range")
            k = self.left.range_width
            return y[:k], y[k:]
        tokens = y.split(SEP)
        k = self.left.range_parts
        if len(tokens) != k + self.right.range_parts:
            raise UnknownLabel(y, "concatenated range")
        return SEP.join(tokens[:k]), SEP.join(tokens[k:])

    def entry(self, x, y):
        x1, x2 = self.split_input(x)
        y1, y2 = self.split_output(y)
        return self.left.entry(x1, y1) * self.right.entry(x2, y2)

    def sample_many(self, x, n, rng):
        x1, x2 = self.split_input(x)
        r1, r2 = rng.split(2)
        a = self.left.sample_many(x1, n, r1)
        b = self.right.sample_many(x2, n, r2)
        if not self._joined:
            a = np.char.add(a, SEP)
        return np.char.add(a, b)


def new_dense(domain: Sequence[str], range_: Sequence[str], matrix) -> DenseChannel:
    return DenseChannel(domain, range_, matrix)


def identity(labels: Sequence[str] = BITS) -> DenseChannel:
    n = len(labels)
    return DenseChannel(labels, labels, [[Fraction(int(i == j)) for j in range(n)] for i in range(n)])


def bsc(p: Prob) -> DenseChannel:
    """Binary symmetric channel with crossover probability ``0 <= p <= 1/2``."""
    if isinstance(p, int) and not isinstance(p, bool):
        p = Fraction(p)
    if not 0 <= p <= Fraction(1, 2):
        raise ParameterOutOfRange(f"crossover probability {p} outside [0, 1/2]")
    return DenseChannel(BITS, BITS, [[1 - p, p], [p, 1 - p]])


def power(base: Channel, c: int) -> ProductChannel:
    return ProductChannel(base, c)


def concat(ch1: Channel, ch2: Channel) -> ConcatChannel:
    return ConcatChannel(ch1, ch2)


def transition_entry(ch: Channel, x: str, y: str) -> Prob:
    return ch.entry(x, y)


def check_cap(ch: Channel, cap: int = MATERIALIZATION_CAP) -> None:
    size = ch.domain_size * ch.range_size
    if size > cap:
        raise MaterializationTooLarge(cap, size)


def materialize(ch: Channel, cap: int = MATERIALIZATION_CAP) -> DenseChannel:
    if isinstance(ch, DenseChannel):
        return ch
    check_cap(ch, cap)
    ys = list(ch.range_labels())
    xs = list(ch.domain_labels())
    return DenseChannel(xs, ys, [[ch.entry(x, y) for y in ys] for x in xs])


def apply_dist(ch: Channel, px: Distribution, cap: int = MATERIALIZATION_CAP) -> JointDistribution:
    """Joint table ``J[x][y] = px(x) W[x, y]`` over the full domain and range."""
    check_cap(ch, cap)
    for x in px.support():
        if isinstance(ch, DenseChannel):
            ch._xi(x)
        elif not isinstance(x, str) or len(x) != ch.input_bits or not is_bitstring(x):
            raise UnknownLabel(x, "channel domain")
    exact = px.mode == EXACT and ch.mode == EXACT
    conv = (lambda v: v) if exact else float
    ys = list(ch.range_labels())
    zero = Fraction(0) if exact else 0.0
    table = []
    for x in ch.domain_labels():
        w = conv(px.prob(x))
        if w == 0:
            table.append([zero] * len(ys))
        elif isinstance(ch, DenseChannel):
            table.append([w * conv(v) for v in ch.matrix[ch._dindex[x]]])
        else:
            table.append([w * conv(ch.entry(x, y)) for y in ys])
    return JointDistribution(ch.domain_labels(), ys, table)


def output_distribution(ch: Channel, px: Distribution, cap: int = MATERIALIZATION_CAP) -> Distribution:
    return apply_dist(ch, px, cap).marginal_y()


def sample(ch: Channel, x: str, rng: RandomSource) -> str:
    return str(ch.sample_many(x, 1, rng)[0])
