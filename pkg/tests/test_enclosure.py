import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shiftpress.enclosure import (
    PerronResult,
    RationalInterval,
    WeightedMatrix,
    exp_enclosure,
    log_enclosure,
    log_interval,
    perron_enclosure,
)
from shiftpress.errors import NotStronglyConnectedError, ZeroMatrixError

from _oracles import GOLDEN_HI, GOLDEN_LO, assert_contains, mp_exp, mp_log

F = Fraction


rationals = st.fractions(
    min_value=F(1, 1000), max_value=F(1000), max_denominator=10**6
)


class TestRationalInterval:
    def test_orientation_checked(self):
        with pytest.raises(ValueError):
            RationalInterval(F(1), F(0))

    @given(rationals, rationals)
    def test_add_contains_sums(self, a, b):
        ia = RationalInterval(a - F(1, 7), a + F(1, 9))
        ib = RationalInterval(b - F(1, 3), b)
        assert (ia + ib).contains(a + b)

    @given(rationals, rationals)
    def test_max_with(self, a, b):
        ia = RationalInterval.point(a)
        ib = RationalInterval.point(b)
        assert ia.max_with(ib).contains(max(a, b))

    def test_scale_negative_flips(self):
        iv = RationalInterval(F(1), F(2)).scale(F(-3))
        assert (iv.lo, iv.hi) == (F(-6), F(-3))


class TestLogEnclosure:
    def test_log_one_is_exact(self):
        iv = log_enclosure(F(1), 5)
        assert iv.lo == iv.hi == 0

    def test_log_two(self):
        iv = log_enclosure(F(2), 10)
        assert iv.width <= F(1, 1 << 10)
        assert_contains(iv, mp_log(F(2)))

    def test_log_half_negates(self):
        up = log_enclosure(F(2), 10)
        down = log_enclosure(F(1, 2), 10)
        assert down.lo == -up.hi and down.hi == -up.lo

    @pytest.mark.parametrize("p", [4, 16, 40, 60])
    @pytest.mark.parametrize("q", [F(3, 2), F(7), F(1, 97), F(1000001, 3)])
    def test_width_and_containment(self, q, p):
        iv = log_enclosure(q, p)
        assert iv.width <= F(1, 1 << p)
        assert_contains(iv, mp_log(q))

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            log_enclosure(F(0), 4)
        with pytest.raises(ValueError):
            log_enclosure(F(-3), 4)

    def test_long_rational_is_rounded_first(self):
        q = F(10**80 + 7, 3**50)
        iv = log_enclosure(q, 30)
        assert iv.width <= F(1, 1 << 30)
        assert_contains(iv, mp_log(q, dps=140))

    def test_product_rule_random(self):
        # log(ab) inside log(a)+log(b) after widening by the tolerances
        rng = random.Random(20240811)
        for _ in range(100):
            a = F(rng.randint(1, 500), rng.randint(1, 500))
            b = F(rng.randint(1, 500), rng.randint(1, 500))
            p = 24
            iab = log_enclosure(a * b, p)
            ia = log_enclosure(a, p)
            ib = log_enclosure(b, p)
            hull = ia + ib
            pad = F(3, 1 << p)
            assert hull.lo - pad <= iab.lo and iab.hi <= hull.hi + pad


class TestExpEnclosure:
    def test_exp_zero_exact(self):
        iv = exp_enclosure(F(0), 8)
        assert iv.lo == iv.hi == 1

    def test_exp_one(self):
        iv = exp_enclosure(F(1), 12)
        assert_contains(iv, mp_exp(F(1)))
        assert iv.width <= F(1, 1 << 12) * iv.lo

    def test_exp_minus_one_reciprocal(self):
        fwd = exp_enclosure(F(1), 12)
        back = exp_enclosure(F(-1), 12)
        assert back.lo <= 1 / fwd.lo and 1 / fwd.hi <= back.hi

    @pytest.mark.parametrize("q", [F(5, 3), F(-22, 7), F(13), F(-9), F(1, 1000)])
    @pytest.mark.parametrize("p", [6, 20, 48])
    def test_relative_width(self, q, p):
        iv = exp_enclosure(q, p)
        assert iv.lo > 0
        assert iv.width <= F(1, 1 << p) * iv.lo
        assert_contains(iv, mp_exp(q, dps=80))

    @given(
        st.fractions(min_value=F(-30), max_value=F(30), max_denominator=10**4),
        st.integers(min_value=4, max_value=30),
    )
    @settings(max_examples=60, deadline=None)
    def test_exp_log_roundtrip(self, q, p):
        ev = exp_enclosure(q, p + 6)
        back = log_interval(ev, p + 6)
        pad = F(4, 1 << p)
        assert back.lo - pad <= q <= back.hi + pad


def _dense(entries, **kw):
    return WeightedMatrix.from_dense(
        [[F(x) for x in row] for row in entries], **kw
    )


class TestPerron:
    def test_one_by_one_exact(self):
        res = perron_enclosure(_dense([[2]]), 10)
        assert res.interval.lo == res.interval.hi == 2
        assert res.converged

    def test_golden_matrix(self):
        res = perron_enclosure(_dense([[1, 1], [1, 0]]), 20)
        assert res.converged
        assert res.interval.width <= F(1, 1 << 20)
        # independent bracket by bisection of x^2 - x - 1
        assert res.interval.lo <= GOLDEN_HI and GOLDEN_LO <= res.interval.hi

    def test_permutation_matrix(self):
        res = perron_enclosure(_dense([[0, 1], [1, 0]]), 10)
        assert res.converged
        assert res.interval.contains(F(1))

    def test_zero_matrix_rejected(self):
        with pytest.raises(ZeroMatrixError):
            perron_enclosure(_dense([[0, 0], [0, 0]]), 4)

    def test_reducible_rejected(self):
        with pytest.raises(NotStronglyConnectedError):
            perron_enclosure(_dense([[1, 1], [0, 1]]), 4)

    def test_irreducible_flag_checked(self):
        with pytest.raises(NotStronglyConnectedError):
            _dense([[1, 1], [0, 1]], irreducible=True)

    def _random_connected(self, rng):
        while True:
            entries = [
                [
                    F(rng.randint(0, 6), rng.randint(1, 4))
                    if rng.random() < 0.7
                    else F(0)
                    for _ in range(3)
                ]
                for _ in range(3)
            ]
            try:
                return _dense(entries, irreducible=True)
            except (NotStronglyConnectedError, ZeroMatrixError):
                continue

    def test_random_matrices_against_exact_powering(self):
        # lambda is sandwiched between max_i (M^64)_ii^(1/64) and the 64th
        # root of the total mass 1^T M^64 1; the enclosure must overlap it
        rng = random.Random(7)
        for _ in range(50):
            m = self._random_connected(rng)
            rows = [[F(0)] * 3 for _ in range(3)]
            for i, row in enumerate(m.rows):
                for j, cell in row:
                    rows[i][j] = cell.lo
            power = [[F(1) if i == j else F(0) for j in range(3)] for i in range(3)]
            base = rows
            e = 64
            while e:
                if e & 1:
                    power = _matmul(power, base)
                e >>= 1
                if e:
                    base = _matmul(base, base)
            total = sum(sum(r) for r in power)
            diag = max(power[i][i] for i in range(3))
            res = perron_enclosure(m, 16)
            # diag^(1/64) <= lambda <= total^(1/64)
            assert res.interval.hi ** 64 >= diag
            assert res.interval.lo ** 64 <= total

    def test_width_shrinks_with_budget(self):
        m = _dense([[1, 1, 0], [0, 0, 1], [1, 0, 0]])
        widths = []
        for budget in (1, 2, 4, 64):
            res = perron_enclosure(m, 40, budget)
            widths.append(res.interval.width)
        assert all(a >= b for a, b in zip(widths, widths[1:]))

    def test_monotone_in_entries(self):
        a = _dense([[1, 1], [1, 0]])
        b = _dense([[1, 1], [1, F(1, 2)]])
        ra = perron_enclosure(a, 24)
        rb = perron_enclosure(b, 24)
        assert ra.interval.hi <= rb.interval.hi + 2 * F(1, 1 << 24)

    def test_interval_entries_bracket_both_ends(self):
        cell = RationalInterval(F(1), F(2))
        m = WeightedMatrix.from_dense([[cell]])
        res = perron_enclosure(m, 4)
        assert res.interval.lo == 1 and res.interval.hi == 2


def _matmul(a, b):
    n = len(a)
    return [
        [sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)]
        for i in range(n)
    ]
