import itertools
import math
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chanlab import (
    Distribution,
    LeakageReport,
    WiretapSetting,
    adversary_view,
    bsc,
    concat,
    estimate_leakage_sd,
    input_guessing,
    leakage_sd,
    new_dense,
    power,
    receiver_view,
    statistical_distance,
)
from chanlab.errors import HistogramTooLarge, MaterializationTooLarge
from chanlab.wiretap import sd_error_bound

from conftest import random_stochastic_row


def bits(c):
    return [format(i, f"0{c}b") for i in range(2**c)]


def setting(c, adversary, receiver=None):
    return WiretapSetting(c, receiver or power(bsc(0), c), adversary)


def random_input(rnd, c, support=3):
    xs = rnd.sample(bits(c), min(support, 2**c))
    return Distribution(xs, random_stochastic_row(rnd, len(xs)))


class TestSetting:
    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            WiretapSetting(2, power(bsc(0), 2), power(bsc(0), 3))

    def test_different_output_lengths(self):
        erasure = new_dense("01", ["0", "1", "e"], [[F(1, 2), 0, F(1, 2)], [0, F(1, 2), F(1, 2)]])
        adv = concat(power(erasure, 2), new_dense("01", "0", [[1], [1]]))
        s = WiretapSetting(3, power(bsc(F(1, 8)), 3), adv)
        assert receiver_view(s, Distribution.point("010")).prob("010") == F(7, 8) ** 3
        assert adversary_view(s, Distribution.point("010")).prob("0e0") == F(1, 4)

    def test_inputs_must_be_c_bits(self):
        with pytest.raises(ValueError):
            adversary_view(setting(2, power(bsc(0), 2)), Distribution.point("0"))


class TestAdversaryView:
    @pytest.mark.parametrize("c", [1, 2, 4])
    def test_coin_channel_gives_uniform(self, c):
        rnd = random.Random(c)
        s = setting(c, power(bsc(F(1, 2)), c))
        for _ in range(5):
            view = adversary_view(s, random_input(rnd, c))
            assert set(view.probs) == {F(1, 2**c)}

    @pytest.mark.parametrize("c", [1, 3])
    def test_noiseless_echoes_input(self, c):
        rnd = random.Random(c)
        s = setting(c, power(bsc(0), c))
        px = random_input(rnd, c)
        view = adversary_view(s, px)
        assert all(view.prob(x) == px.prob(x) for x in bits(c))

    def test_single_bit(self):
        s = setting(1, bsc(F(1, 4)))
        assert adversary_view(s, Distribution.uniform("01")).probs == (F(1, 2), F(1, 2))

    def test_cap(self):
        with pytest.raises(MaterializationTooLarge):
            adversary_view(setting(13, power(bsc(F(1, 4)), 13)), Distribution.point("0" * 13))


class TestLeakageSD:
    def test_equal_inputs(self):
        s = setting(2, power(bsc(F(1, 8)), 2))
        px = Distribution.uniform(["00", "11"])
        r = leakage_sd(s, px, px)
        assert r.sd_views == 0 and r.method == "exact" and r.error_bound == 0

    def test_coin_channel(self):
        s = setting(3, power(bsc(F(1, 2)), 3))
        assert leakage_sd(s, Distribution.point("000"), Distribution.point("111")).sd_views == 0

    def test_single_bit(self):
        s = setting(1, bsc(F(1, 4)))
        # |3/4 - 1/4| + |1/4 - 3/4| halved
        assert leakage_sd(s, Distribution.point("0"), Distribution.point("1")).sd_views == F(1, 2)

    @pytest.mark.parametrize("c", range(1, 7))
    def test_data_processing(self, c):
        rnd = random.Random(100 + c)
        for _ in range(4):
            p = F(rnd.randint(0, 8), 16)
            s = setting(c, power(bsc(p), c))
            p0, p1 = random_input(rnd, c), random_input(rnd, c)
            assert leakage_sd(s, p0, p1).sd_views <= statistical_distance(p0, p1)

    @pytest.mark.parametrize("c1, c2", [(1, 1), (1, 2), (2, 3), (3, 3)])
    def test_concatenated_setting_factors(self, c1, c2):
        rnd = random.Random(c1 * 10 + c2)
        ch1, ch2 = power(bsc(F(1, 4)), c1), power(bsc(F(1, 3)), c2)
        q1, q2 = random_input(rnd, c1), random_input(rnd, c2)
        px = Distribution([a + b for a in q1.outcomes for b in q2.outcomes],
                          [a * b for a in q1.probs for b in q2.probs])
        view = adversary_view(setting(c1 + c2, concat(ch1, ch2)), px)
        v1 = adversary_view(setting(c1, ch1), q1)
        v2 = adversary_view(setting(c2, ch2), q2)
        for y1, y2 in itertools.product(v1.outcomes, v2.outcomes):
            assert view.prob(y1 + y2) == v1.prob(y1) * v2.prob(y2)


class TestInputGuessing:
    @pytest.mark.parametrize("c", [1, 2, 3])
    def test_coin_channel(self, c):
        s = setting(c, power(bsc(F(1, 2)), c))
        assert input_guessing(s, Distribution.uniform(bits(c))).cond_min_entropy_input == F(1, 2**c)

    @pytest.mark.parametrize("c", [1, 2, 3])
    def test_noiseless(self, c):
        s = setting(c, power(bsc(0), c))
        assert input_guessing(s, Distribution.uniform(bits(c))).cond_min_entropy_input == 1

    def test_single_bit(self):
        r = input_guessing(setting(1, bsc(F(1, 4))), Distribution.uniform("01"))
        assert r.cond_min_entropy_input == F(3, 4)
        assert r.sd_views is None

    def test_monotone_in_noise(self):
        grid = [F(k, 40) for k in range(21)]
        values = [input_guessing(setting(1, bsc(p)), Distribution.uniform("01")).cond_min_entropy_input
                  for p in grid]
        assert values == [1 - p for p in grid]
        assert all(a > b for a, b in zip(values, values[1:]))


class TestEstimate:
    def test_equal_inputs(self):
        s = setting(2, power(bsc(F(1, 8)), 2))
        px = Distribution.uniform(bits(2))
        r = estimate_leakage_sd(s, px, px, 10**5, seed=1)
        assert r.sd_views <= r.error_bound

    def test_single_bit(self):
        s = setting(1, bsc(F(1, 4)))
        r = estimate_leakage_sd(s, Distribution.point("0"), Distribution.point("1"), 10**5, seed=3)
        assert abs(r.sd_views - 0.5) <= r.error_bound
        assert r.method == "monte_carlo" and r.n_samples == 10**5 and r.seed == 3

    def test_coin_channel_four_bits(self):
        s = setting(4, power(bsc(F(1, 2)), 4))
        r = estimate_leakage_sd(s, Distribution.point("0000"), Distribution.point("1010"), 10**5, seed=5)
        assert r.sd_views <= r.error_bound

    def test_deterministic_and_worker_independent(self):
        s = setting(3, power(bsc(F(1, 5)), 3))
        p0, p1 = Distribution.uniform(["000", "001"]), Distribution.point("111")
        a = estimate_leakage_sd(s, p0, p1, 50_000, seed=9)
        b = estimate_leakage_sd(s, p0, p1, 50_000, seed=9, workers=3)
        assert a == b
        assert estimate_leakage_sd(s, p0, p1, 50_000, seed=10) != a

    def test_histogram_guard(self):
        s = setting(21, power(bsc(F(1, 4)), 21))
        with pytest.raises(HistogramTooLarge):
            estimate_leakage_sd(s, Distribution.point("0" * 21), Distribution.point("1" * 21), 10, seed=0)

    def test_needs_samples(self):
        with pytest.raises(ValueError):
            estimate_leakage_sd(setting(1, bsc(0)), Distribution.point("0"), Distribution.point("1"), 0, seed=0)

    def test_bound_formula(self):
        # 2 * sqrt((2 ln 2 + ln 200) / 2e5)
        assert sd_error_bound(10**5, 2) == pytest.approx(2 * math.sqrt((2 * math.log(2) + math.log(200)) / 2e5))
        assert sd_error_bound(10**5, 2) <= 0.02
        assert sd_error_bound(1, 2**20) == 1.0

    SETTINGS = [
        (1, bsc(F(1, 4)), Distribution.point("0"), Distribution.point("1")),
        (3, power(bsc(F(1, 8)), 3), Distribution.point("000"), Distribution.point("011")),
        (4, concat(power(bsc(F(1, 4)), 2), power(bsc(F(1, 3)), 2)),
         Distribution.uniform(["0000", "0101"]), Distribution.point("1111")),
        (6, power(bsc(F(1, 4)), 6), Distribution.point("000000"), Distribution.point("111111")),
    ]

    @pytest.mark.parametrize("c, adv, p0, p1", SETTINGS)
    def test_within_bound_at_every_n(self, c, adv, p0, p1):
        s = setting(c, adv)
        exact = float(leakage_sd(s, p0, p1).sd_views)
        bounds = []
        for n in (10**3, 10**4, 10**5):
            r = estimate_leakage_sd(s, p0, p1, n, seed=2026)
            assert abs(r.sd_views - exact) <= r.error_bound
            bounds.append(r.error_bound)
        assert bounds == sorted(bounds, reverse=True)

    @pytest.mark.parametrize("c, adv, p0, p1", [SETTINGS[0], SETTINGS[2]])
    def test_mean_error_shrinks(self, c, adv, p0, p1):
        s = setting(c, adv)
        exact = float(leakage_sd(s, p0, p1).sd_views)
        means = []
        for n in (10**3, 10**4, 10**5):
            errs = [abs(estimate_leakage_sd(s, p0, p1, n, seed).sd_views - exact) for seed in range(8)]
            means.append(sum(errs) / len(errs))
        assert means[0] > means[1] > means[2]


class TestReportSerialization:
    def test_exact_text(self):
        r = LeakageReport(c=1, method="exact", sd_views=F(1, 2))
        assert r.to_text() == "c=1\nmethod=exact\nsd_views=0.5\ncme=none\nerror_bound=0\nn=none\nseed=none"
        assert r.to_csv_row() == "1,exact,0.5,,0,,"
        assert r.to_csv_row(exact=True) == "1,exact,1/2,,0,,"

    def test_monte_carlo_row(self):
        r = LeakageReport(c=2, method="monte_carlo", sd_views=0.25, error_bound=0.0125,
                          n_samples=1000, seed=4, confidence=0.99)
        assert r.to_csv_row() == "2,monte_carlo,0.250000000000,,0.0125000000000,1000,4"
        assert r.to_text().endswith("confidence=0.99")
        assert len(r.to_csv_row().split(",")) == len(LeakageReport.CSV_FIELDS)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.integers(0, 8), st.integers(0, 2**32))
def test_leakage_never_exceeds_input_distance(c, k, seed):
    rnd = random.Random(seed)
    s = setting(c, power(bsc(F(k, 16)), c))
    p0, p1 = random_input(rnd, c), random_input(rnd, c)
    r = leakage_sd(s, p0, p1)
    assert 0 <= r.sd_views <= statistical_distance(p0, p1)
