"""Finite probability distributions and the scalar information measures.

Probabilities are either exact (``fractions.Fraction``) or ``float``; one
distribution never mixes the two.  Python ints are accepted as exact values.
Entropies are always returned as floats in bits.  Min-entropy follows the
guessing-probability convention: ``min_entropy`` returns ``max_x P(x)``, not
its negative logarithm (see ``neg_log_min_entropy`` for that).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Union

from .errors import InvalidDistribution, MixedModeError

Prob = Union[Fraction, float]

EXACT = "exact"
FLOAT = "float"

# absolute tolerance on the total mass of a float-mode distribution
FLOAT_SUM_TOL = 1e-9


def coerce_probs(values: Iterable) -> tuple[tuple[Prob, ...], str]:
    """Normalize a sequence of numbers to one mode.

    Ints are neutral and take on the mode of the rest; a Fraction next to a
    float is an error.
    """
    values = list(values)
    has_float = any(isinstance(v, float) for v in values)
    has_frac = any(isinstance(v, Fraction) for v in values)
    if has_float and has_frac:
        raise MixedModeError("exact and float probabilities mixed")
    out = []
    for v in values:
        if isinstance(v, bool) or not isinstance(v, (int, Fraction, float)):
            raise TypeError(f"unsupported probability type {type(v).__name__}")
        out.append(float(v) if has_float else Fraction(v))
    return tuple(out), (FLOAT if has_float else EXACT)


def _check_unit(v: Prob, what: str) -> None:
    if not (0 <= v <= 1):
        raise InvalidDistribution(f"{what}: probability {v} outside [0, 1]")


def _check_total(total: Prob, mode: str, what: str) -> None:
    if mode == EXACT:
        if total != 1:
            raise InvalidDistribution(f"{what}: probabilities sum to {total}, not 1")
    elif abs(total - 1.0) > FLOAT_SUM_TOL:
        raise InvalidDistribution(f"{what}: probabilities sum to {total!r}, not 1")


def _sum(values: Iterable[Prob], mode: str) -> Prob:
    return sum(values, Fraction(0)) if mode == EXACT else math.fsum(values)


def to_exact_value(v: Prob) -> Fraction:
    """Exact rational for ``v``; floats go through their shortest decimal repr."""
    if isinstance(v, float):
        return Fraction(repr(v))
    return Fraction(v)


@dataclass(frozen=True)
class Distribution:
    outcomes: tuple[str, ...]
    probs: tuple[Prob, ...]
    mode: str = field(init=False)
    _index: dict = field(init=False, repr=False, compare=False)

    def __init__(self, outcomes: Iterable[str], probs: Iterable):
        outcomes = tuple(outcomes)
        probs, mode = coerce_probs(probs)
        if len(outcomes) != len(probs):
            raise InvalidDistribution(f"{len(outcomes)} outcomes but {len(probs)} probabilities")
        if not outcomes:
            raise InvalidDistribution("empty distribution")
        index = {}
        for i, o in enumerate(outcomes):
            if not isinstance(o, str):
                raise TypeError("outcome labels must be strings")
            if o in index:
                raise InvalidDistribution(f"duplicate outcome {o!r}")
            index[o] = i
        for o, p in zip(outcomes, probs):
            _check_unit(p, o)
        _check_total(_sum(probs, mode), mode, "distribution")
        object.__setattr__(self, "outcomes", outcomes)
        object.__setattr__(self, "probs", probs)
        object.__setattr__(self, "mode", mode)
        object.__setattr__(self, "_index", index)

    @classmethod
    def from_mapping(cls, mapping: Mapping[str, Prob]) -> Distribution:
        return cls(mapping.keys(), mapping.values())

    @classmethod
    def uniform(cls, outcomes: Iterable[str], exact: bool = True) -> Distribution:
        outcomes = tuple(outcomes)
        n = len(outcomes)
        return cls(outcomes, [Fraction(1, n) if exact else 1.0 / n] * n)

    @classmethod
    def point(cls, outcome: str) -> Distribution:
        return cls((outcome,), (Fraction(1),))

    def __len__(self) -> int:
        return len(self.outcomes)

    def __contains__(self, label: str) -> bool:
        return label in self._index

    def prob(self, label: str) -> Prob:
        """P(label); labels outside the outcome list have probability 0."""
        i = self._index.get(label)
        if i is None:
            return Fraction(0) if self.mode == EXACT else 0.0
        return self.probs[i]

    def items(self):
        return zip(self.outcomes, self.probs)

    def support(self) -> tuple[str, ...]:
        return tuple(o for o, p in self.items() if p > 0)

    def to_float(self) -> Distribution:
        if self.mode == FLOAT:
            return self
        return Distribution(self.outcomes, [float(p) for p in self.probs])

    def to_exact(self) -> Distribution:
        if self.mode == EXACT:
            return self
        return Distribution(self.outcomes, [to_exact_value(p) for p in self.probs])


@dataclass(frozen=True)
class JointDistribution:
    """Distribution over pairs ``(x, y)`` stored as a table ``table[x][y]``."""

    x_labels: tuple[str, ...]
    y_labels: tuple[str, ...]
    table: tuple[tuple[Prob, ...], ...]
    mode: str = field(init=False)

    def __init__(self, x_labels: Iterable[str], y_labels: Iterable[str], table: Iterable[Iterable]):
        x_labels, y_labels = tuple(x_labels), tuple(y_labels)
        rows = [list(r) for r in table]
        if len(rows) != len(x_labels) or any(len(r) != len(y_labels) for r in rows):
            raise InvalidDistribution("joint table shape does not match labels")
        if len(set(x_labels)) != len(x_labels) or len(set(y_labels)) != len(y_labels):
            raise InvalidDistribution("duplicate joint labels")
        flat, mode = coerce_probs(v for r in rows for v in r)
        for v in flat:
            _check_unit(v, "joint")
        _check_total(_sum(flat, mode), mode, "joint distribution")
        ny = len(y_labels)
        tab = tuple(tuple(flat[i * ny:(i + 1) * ny]) for i in range(len(x_labels)))
        object.__setattr__(self, "x_labels", x_labels)
        object.__setattr__(self, "y_labels", y_labels)
        object.__setattr__(self, "table", tab)
        object.__setattr__(self, "mode", mode)

    @classmethod
    def independent(cls, px: Distribution, py: Distribution) -> JointDistribution:
        return cls(px.outcomes, py.outcomes, [[a * b for b in py.probs] for a in px.probs])

    def cells(self):
        for row in self.table:
            yield from row

    def y_mass(self) -> list[Prob]:
        return [_sum((row[j] for row in self.table), self.mode) for j in range(len(self.y_labels))]

    def marginal_x(self) -> Distribution:
        return Distribution(self.x_labels, [_sum(row, self.mode) for row in self.table])

    def marginal_y(self) -> Distribution:
        return Distribution(self.y_labels, self.y_mass())

    def column(self, j: int) -> list[Prob]:
        return [row[j] for row in self.table]


def h(x: Prob) -> float:
    """-x lg x, with h(0) = 0."""
    if not (0 <= x <= 1):
        raise ValueError(f"h is defined on [0, 1], got {x}")
    if x == 0 or x == 1:
        return 0.0
    if isinstance(x, Fraction):
        # log2 on the integer parts keeps precision for tiny rationals
        lg = math.log2(x.numerator) - math.log2(x.denominator)
    else:
        lg = math.log2(x)
    return -float(x) * lg


def entropy(p: Distribution) -> float:
    return math.fsum(h(v) for v in p.probs)


def joint_entropy(j: JointDistribution) -> float:
    return math.fsum(h(v) for v in j.cells())


def cond_entropy(j: JointDistribution) -> float:
    """H(X|Y) = sum_y P_Y(y) H(X|Y=y); columns with P_Y(y) = 0 contribute 0."""
    terms = []
    for col, py in enumerate(j.y_mass()):
        if py == 0:
            continue
        h_given = math.fsum(h(row[col] / py) for row in j.table)
        terms.append(float(py) * h_given)
    return math.fsum(terms)


def statistical_distance(p: Distribution, q: Distribution) -> Prob:
    """Half the L1 distance; exact when both inputs are exact."""
    labels = list(p.outcomes) + [o for o in q.outcomes if o not in p]
    if p.mode == EXACT and q.mode == EXACT:
        return sum((abs(p.prob(o) - q.prob(o)) for o in labels), Fraction(0)) / 2
    return 0.5 * math.fsum(abs(float(p.prob(o)) - float(q.prob(o))) for o in labels)


def min_entropy(p: Distribution) -> Prob:
    """Largest point probability (a guessing probability)."""
    return max(p.probs)


def cond_min_entropy(j: JointDistribution) -> Prob:
    """sum_z Pr[Z=z] max_x Pr[X=x | Z=z] for a joint over (X, Z)."""
    total = []
    for col, pz in enumerate(j.y_mass()):
        if pz == 0:
            continue
        best = max(row[col] / pz for row in j.table)
        total.append(pz * best)
    return _sum(total, j.mode)


def _neg_lg(v: Prob) -> float:
    if isinstance(v, Fraction):
        return math.log2(v.denominator) - math.log2(v.numerator)
    return -math.log2(v)


def neg_log_min_entropy(p: Distribution) -> float:
    return _neg_lg(min_entropy(p))


def neg_log_cond_min_entropy(j: JointDistribution) -> float:
    return _neg_lg(cond_min_entropy(j))

