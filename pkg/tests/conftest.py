import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from chanlab import Distribution, new_dense

QUARTERS = [Fraction(k, 4) for k in range(5)]


def quarter_rows(width):
    """Rows of length ``width`` with entries in {0, 1/4, ..., 1} summing to 1."""
    return [r for r in itertools.product(QUARTERS, repeat=width) if sum(r) == 1]


def grid_distributions(max_outcomes=4):
    labels = "abcd"
    out = []
    for n in range(1, max_outcomes + 1):
        for r in quarter_rows(n):
            out.append(Distribution(labels[:n], r))
    return out


def grid_channels(n_rows, n_cols):
    rows = quarter_rows(n_cols)
    domain = [str(i) for i in range(n_rows)]
    rng = [f"y{j}" for j in range(n_cols)]
    return [new_dense(domain, rng, m) for m in itertools.product(rows, repeat=n_rows)]


def random_stochastic_row(rnd: random.Random, width, denom=12):
    """Random exact row: integer weights normalized to sum 1."""
    weights = [rnd.randint(0, denom) for _ in range(width)]
    if sum(weights) == 0:
        weights[rnd.randrange(width)] = 1
    total = sum(weights)
    return [Fraction(w, total) for w in weights]


def random_channel(rnd: random.Random, n_rows, n_cols, denom=12):
    return new_dense([format(i, "03b") for i in range(n_rows)], [f"y{j}" for j in range(n_cols)],
                     [random_stochastic_row(rnd, n_cols, denom) for _ in range(n_rows)])


@st.composite
def exact_distributions(draw, min_size=1, max_size=6, labels=None):
    n = draw(st.integers(min_size, max_size))
    weights = draw(st.lists(st.integers(0, 20), min_size=n, max_size=n).filter(lambda w: sum(w) > 0))
    total = sum(weights)
    names = labels[:n] if labels else [f"o{i}" for i in range(n)]
    return Distribution(names, [Fraction(w, total) for w in weights])


@st.composite
def exact_joints(draw, max_x=4, max_y=4):
    from chanlab import JointDistribution
    nx = draw(st.integers(1, max_x))
    ny = draw(st.integers(1, max_y))
    w = draw(st.lists(st.integers(0, 9), min_size=nx * ny, max_size=nx * ny).filter(lambda w: sum(w) > 0))
    total = sum(w)
    table = [[Fraction(w[i * ny + j], total) for j in range(ny)] for i in range(nx)]
    return JointDistribution([f"x{i}" for i in range(nx)], [f"y{j}" for j in range(ny)], table)


@pytest.fixture
def rnd():
    return random.Random(20261016)
