"""Measurements on a wiretap setting.

A sender emits a length-``c`` bit-string; a receiver channel and an adversary
channel each see it.  The harness reports how far apart the adversary's views
of two sender distributions are (statistical distance) and how well the
adversary can guess the input from its view (conditional min-entropy in the
guessing-probability convention).

Exact routines refuse settings above the materialization cap.  The Monte Carlo
estimator is a separate call and reports its own error bound:

    bound = 2 * sqrt((k ln 2 + ln(2 / delta)) / (2 n)),   delta = 0.01

where ``k`` is the adversary's output alphabet size.  Each of the two
empirical histograms is within ``sqrt((k ln 2 + ln(2/delta)) / (2n))`` of its
true distribution in statistical distance with probability at least
``1 - delta/2`` (Bretagnolle-Huber-Carol inequality); the triangle inequality
then bounds the plug-in estimate at 99% confidence.
"""

from __future__ import annotations

import math
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .channel import (
    MATERIALIZATION_CAP,
    Channel,
    RandomSource,
    _draw_indices,
    apply_dist,
    is_bitstring,
)
from .errors import HistogramTooLarge
from .formats import format_measure
from .prob import Distribution, Prob, cond_min_entropy, statistical_distance

CONFIDENCE = 0.99
MAX_HISTOGRAM = 2**20
# samples per independently seeded chunk; fixed so results do not depend on workers
CHUNK = 1 << 14


@dataclass(frozen=True)
class WiretapSetting:
    c: int
    receiver: Channel
    adversary: Channel

    def __post_init__(self):
        if not isinstance(self.c, int) or self.c < 1:
            raise ValueError("ciphertext length c must be a positive integer")
        for name in ("receiver", "adversary"):
            bits = getattr(self, name).input_bits
            if bits != self.c:
                raise ValueError(f"{name} channel takes {bits}-bit inputs, setting has c={self.c}")

    def check_input(self, px: Distribution) -> None:
        for x in px.support():
            if len(x) != self.c or not is_bitstring(x):
                raise ValueError(f"input {x!r} is not a {self.c}-bit string")


@dataclass(frozen=True)
class LeakageReport:
    c: int
    method: str
    sd_views: Prob | None = None
    cond_min_entropy_input: Prob | None = None
    error_bound: Prob = Fraction(0)
    n_samples: int | None = None
    seed: int | None = None
    confidence: float | None = None

    CSV_FIELDS = ("c", "method", "sd_views", "cme", "error_bound", "n", "seed")

    def _fields(self, exact: bool) -> list[tuple[str, str]]:
        return [
            ("c", str(self.c)),
            ("method", self.method),
            ("sd_views", format_measure(self.sd_views, exact)),
            ("cme", format_measure(self.cond_min_entropy_input, exact)),
            ("error_bound", format_measure(self.error_bound, exact)),
            ("n", "none" if self.n_samples is None else str(self.n_samples)),
            ("seed", "none" if self.seed is None else str(self.seed)),
        ]

    def to_text(self, exact: bool = False) -> str:
        pairs = self._fields(exact)
        if self.confidence is not None:
            pairs.append(("confidence", repr(self.confidence)))
        return "\n".join(f"{k}={v}" for k, v in pairs)

    def to_csv_row(self, exact: bool = False) -> str:
        return ",".join("" if v == "none" else v for _, v in self._fields(exact))


def adversary_view(s: WiretapSetting, px: Distribution, cap: int = MATERIALIZATION_CAP) -> Distribution:
    s.check_input(px)
    return apply_dist(s.adversary, px, cap).marginal_y()


def receiver_view(s: WiretapSetting, px: Distribution, cap: int = MATERIALIZATION_CAP) -> Distribution:
    s.check_input(px)
    return apply_dist(s.receiver, px, cap).marginal_y()


def leakage_sd(s: WiretapSetting, p0: Distribution, p1: Distribution,
               cap: int = MATERIALIZATION_CAP) -> LeakageReport:
    sd = statistical_distance(adversary_view(s, p0, cap), adversary_view(s, p1, cap))
    return LeakageReport(c=s.c, method="exact", sd_views=sd)


def input_guessing(s: WiretapSetting, px: Distribution, cap: int = MATERIALIZATION_CAP) -> LeakageReport:
    s.check_input(px)
    joint = apply_dist(s.adversary, px, cap)
    return LeakageReport(c=s.c, method="exact", cond_min_entropy_input=cond_min_entropy(joint))


def sd_error_bound(n: int, k: int, confidence: float = CONFIDENCE) -> float:
    """Two-histogram 99% bound on the plug-in SD error (see module docstring)."""
    delta = 1 - confidence
    half = math.sqrt((k * math.log(2) + math.log(2 / delta)) / (2 * n))
    return min(1.0, 2 * half)


def _sample_chunk(ch: Channel, px: Distribution, size: int, seq: np.random.SeedSequence) -> Counter:
    rng = RandomSource(seq)
    inputs = _draw_indices(px.probs, rng.uniform(size))
    hist = Counter()
    for i, m in zip(*np.unique(inputs, return_counts=True)):
        labels, counts = np.unique(ch.sample_many(px.outcomes[i], int(m), rng), return_counts=True)
        hist.update(dict(zip(labels.tolist(), counts.tolist())))
    return hist


def empirical_view(ch: Channel, px: Distribution, n: int, seq: np.random.SeedSequence,
                   workers: int = 1) -> Counter:
    """Histogram of ``n`` adversary outputs with inputs drawn from ``px``."""
    sizes = [CHUNK] * (n // CHUNK) + ([n % CHUNK] if n % CHUNK else [])
    jobs = list(zip(sizes, seq.spawn(len(sizes))))
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            parts = list(pool.map(lambda job: _sample_chunk(ch, px, *job), jobs))
    else:
        parts = [_sample_chunk(ch, px, *job) for job in jobs]
    total = Counter()
    for part in parts:
        total.update(part)
    return total


def estimate_leakage_sd(s: WiretapSetting, p0: Distribution, p1: Distribution, n: int, seed: int,
                        workers: int = 1) -> LeakageReport:
    if n < 1:
        raise ValueError("sample count must be positive")
    k = s.adversary.range_size
    if k > MAX_HISTOGRAM:
        raise HistogramTooLarge(f"adversary alphabet of size {k} exceeds {MAX_HISTOGRAM}")
    s.check_input(p0)
    s.check_input(p1)
    seq0, seq1 = np.random.SeedSequence(seed).spawn(2)
    h0 = empirical_view(s.adversary, p0, n, seq0, workers)
    h1 = empirical_view(s.adversary, p1, n, seq1, workers)
    diff = sum(abs(h0.get(y, 0) - h1.get(y, 0)) for y in h0.keys() | h1.keys())
    return LeakageReport(
        c=s.c,
        method="monte_carlo",
        sd_views=diff / (2 * n),
        error_bound=sd_error_bound(n, k),
        n_samples=n,
        seed=seed,
        confidence=CONFIDENCE,
    )
