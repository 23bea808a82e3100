from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from qmlde.exactq import (
    LatticeMismatch,
    QSeries,
    TruncationExceeded,
    dumps,
    from_json_obj,
    loads,
    to_json_obj,
    to_latex,
    to_text,
)
from qmlde.modforms import delta, e4, eta

import oracles
from strategies import lattice_fracs, series


def q(lead, coeffs, trunc=None):
    return QSeries.make(F(lead), coeffs, trunc)


class TestExamples:
    def test_add_cancels_leading_terms(self):
        a = q("1/12", [1, -464])
        b = q("1/12", [1, -2]).scale(-1)
        s = a + b
        assert s.lead_exp == F(13, 12)
        assert s.coeffs == (F(-462),)

    def test_add_identity_and_cancellation(self):
        f = q(0, [1, 1], 1)
        assert f + QSeries.zero() == f
        s = f + q(0, [-1, -1], 1)
        assert s.is_zero
        assert s.zero_to == 1

    def test_add_off_lattice_offsets_rejected(self):
        with pytest.raises(LatticeMismatch):
            q(0, [1]) + q("1/24", [1])

    def test_difference_of_squares(self):
        p = q("1/4", [1, 1], 2) * q("1/4", [1, -1], 2)
        assert p.lead_exp == F(1, 2)
        assert p.coeffs == (1, 0, -1)

    def test_mul_identity(self):
        f = q("5/24", [2, -3, 7], 2)
        assert f * QSeries.one(2) == f

    def test_mul_truncation_min_rule(self):
        p = q(0, [1, 1, 1, 1], 3) * q(1, [1, 2], 1)
        assert p.trunc == 1

    def test_eta_24_is_delta(self):
        d = eta(10) ** 24
        assert d.lead_exp == 1
        assert list(d.coeffs[:4]) == [1, -24, 252, -1472]

    def test_geometric_series(self):
        inv = q(0, [1, -1], 6).invert()
        assert inv.coeffs == (1,) * 7

    def test_eta_inverse_cubed(self):
        f = eta(5) ** -3
        assert f.lead_exp == F(-1, 8)
        assert list(f.coeffs) == oracles.colored_partitions(3, 5)
        assert list(f.coeffs[:4]) == [1, 3, 9, 22]

    def test_invert_involution(self):
        f = q("-7/24", [3, 1, F(1, 2), -4], 3)
        assert f.invert().invert() == f

    def test_invert_zero(self):
        with pytest.raises(ZeroDivisionError):
            QSeries.zero(3).invert()

    def test_powers(self):
        assert (eta(4) ** 24).lead_exp == 1
        assert (eta(4) ** 60).lead_exp == F(5, 2)
        assert eta(4) ** 0 == QSeries.one(4)
        with pytest.raises(ZeroDivisionError):
            QSeries.zero(2) ** -1

    def test_apply_d(self):
        m = QSeries.monomial(F(5, 12), 3)
        assert m.derivative() == QSeries.monomial(F(5, 12), 3, F(5, 12))
        de4 = e4(4).derivative().scale(F(1, 240))
        assert de4.lead_exp == 1
        assert list(de4.coeffs) == [n * oracles.brute_sigma(3, n) for n in range(1, 5)]
        assert list(de4.coeffs[:3]) == [1, 18, 84]
        z = QSeries.one(5).derivative()
        assert z.is_zero and z.zero_to == 5

    def test_rescale(self):
        assert eta(4).rescale(3).lead_exp == F(1, 8)
        f = q("1/3", [1, 2, 3])
        assert f.rescale(1) == f
        r = q(0, [1, -24], 1).rescale(2)
        assert r.coeffs == (1, 0, -24) and r.trunc == 2

    def test_coefficient_at(self):
        e = eta(5)
        assert e.coefficient_at(F(1, 24)) == 1
        assert e.coefficient_at(0) == 0
        assert delta(3).coefficient_at(2) == -24
        with pytest.raises(TruncationExceeded):
            e.coefficient_at(F(1, 24) + 6)

    def test_invariants_enforced(self):
        with pytest.raises(ValueError):
            QSeries(F(0), (F(0), F(1)))
        with pytest.raises(LatticeMismatch):
            q(F(1, 7), [1])
        s = q(0, [0, 0, 5, 1], 3)
        assert s.lead_exp == 2 and s.coeffs == (5, 1)


class TestSerialization:
    def test_schema(self):
        obj = to_json_obj(eta(3))
        assert obj == {"lattice_den": 24, "lead_exp": "1/24", "coeffs": ["1", "-1", "-1", "0"], "trunc": 3}

    def test_zero_round_trip(self):
        for z in (QSeries.zero(), QSeries.zero(F(7, 3))):
            assert loads(dumps(z)) == z

    @given(series(max_trunc=12))
    def test_round_trip(self, s):
        assert loads(dumps(s)) == s
        assert from_json_obj(to_json_obj(s)).coeffs == s.coeffs

    def test_bad_lattice_rejected(self):
        with pytest.raises(ValueError):
            from_json_obj({"lattice_den": 12, "lead_exp": "0", "coeffs": ["1"], "trunc": 0})

    def test_renderings(self):
        assert to_text(e4(2)) == "1 + 240*q + 2160*q^2 + O(q^(3))"
        assert to_latex(eta(2)) == "q^{1/24} - q^{25/24} - q^{49/24} + O(q^{73/24})"


class TestRingProperties:
    @given(lattice_fracs, st.data())
    def test_add_commutative_associative(self, frac, data):
        a, b, c = (data.draw(series(frac)) for _ in range(3))
        assert a + b == b + a
        assert (a + b) + c == a + (b + c)

    @given(st.data())
    def test_mul_commutative_associative(self, data):
        a, b, c = (data.draw(series()) for _ in range(3))
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)

    @given(lattice_fracs, st.data())
    def test_distributive(self, frac, data):
        a = data.draw(series())
        b, c = data.draw(series(frac)), data.draw(series(frac))
        lhs, rhs = a * (b + c), a * b + a * c
        # the two sides may carry different precision; compare on the shared window
        end = min(lhs.end, rhs.end)
        assert lhs.truncate_to(end) == rhs.truncate_to(end)

    @given(series(max_trunc=10))
    def test_inverse(self, a):
        assert a * a.invert() == QSeries.one(a.trunc)

    @given(lattice_fracs, st.data())
    def test_d_is_derivation(self, frac, data):
        a, b = data.draw(series(frac)), data.draw(series())
        lhs = (a * b).derivative()
        rhs = a.derivative() * b + a * b.derivative()
        if lhs.is_zero or rhs.is_zero:
            assert (lhs - rhs).is_zero
            return
        end = min(lhs.end, rhs.end)
        assert lhs.truncate_to(end) == rhs.truncate_to(end)

    @given(lattice_fracs, st.data(), st.integers(1, 4))
    def test_rescale_is_ring_hom(self, frac, data, m):
        a, b = data.draw(series(frac)), data.draw(series(frac))
        assert (a + b).rescale(m) == a.rescale(m) + b.rescale(m)
        assert (a * b).rescale(m) == a.rescale(m) * b.rescale(m)


class TestTruncationSoundness:
    """Every retained coefficient matches an untruncated computation."""

    @settings(max_examples=60)
    @given(st.data())
    def test_composite_expression(self, data):
        frac = data.draw(lattice_fracs)
        polys = [data.draw(series(frac, max_trunc=6)) for _ in range(3)]
        a, b, c = polys
        m = data.draw(st.integers(1, 3))
        got = ((a * b + a * c).derivative() * a.rescale(m)) ** 2
        # polynomial inputs, so the exact expression is a finite polynomial
        da, db, dc = (oracles.series_to_dict(p) for p in polys)
        inner = oracles.naive_d(oracles.naive_add(oracles.naive_mul(da, db), oracles.naive_mul(da, dc)))
        resc = {m * e: v for e, v in da.items()}
        prod = oracles.naive_mul(inner, resc)
        exact = oracles.naive_mul(prod, prod)
        if got.is_zero:
            assert not oracles.window(exact, -1000, got.zero_to)
            return
        assert oracles.series_to_dict(got) == oracles.window(exact, -1000, got.end)

    @settings(max_examples=60)
    @given(series(max_trunc=20))
    def test_inverse_against_long_division(self, a):
        da = oracles.series_to_dict(a)
        # a stands for its polynomial part; its inverse to the retained order
        exact = oracles.naive_inverse(da, a.lead_exp, a.trunc + 1)
        assert oracles.series_to_dict(a.invert()) == exact

    @pytest.mark.parametrize("n", [0, 5, 20])
    def test_eta_power_against_partition_counts(self, n):
        assert list((eta(n) ** -5).coeffs) == oracles.colored_partitions(5, n)
