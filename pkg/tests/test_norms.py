"""Witness lower bounds, certified upper bounds, and the bracket surface.

The decimal constants are pinned outputs of this implementation, each
cross-checked in-file against an independent route (hand enumeration,
closed form, or a dense SVD).
"""

import math

import numpy as np
import pytest
import scipy.sparse.linalg

from mtoeplitz import (
    NormBracket,
    PreconditionError,
    ScopeError,
    bracket,
    bracket_to_json_dict,
    build_matrix,
    conjugate_r,
    divisors,
    evaluate,
    lower_bound_ascent,
    power_on_naturals,
    product_power,
    upper_bound_theorem1,
    vector_norm,
    witness_delta,
    witness_divisor_uniform,
    witness_dual_exponent,
    zeta,
)
from mtoeplitz.symbols import PositiveRational

INF = math.inf
ZETA2 = 1.6449340668792651
ZETA4_SQRT = 1.0403476504088314


class TestConjugateExponent:
    def test_identities(self):
        assert conjugate_r(2.0, 2.0) == 1.0
        assert conjugate_r(1.0, 2.0) == 2.0
        assert conjugate_r(1.0, INF) == INF
        assert conjugate_r(2.0, INF) == 2.0
        assert conjugate_r(3.0, INF) == 1.5
        assert conjugate_r(INF, INF) == 1.0
        assert conjugate_r(1.5, 2.0) == pytest.approx(1.2, rel=1e-15)

    def test_r_between_one_and_q(self):
        for p, q in [(1.2, 3.0), (2.0, 5.0), (1.0, 4.0)]:
            r = conjugate_r(p, q)
            assert 1.0 <= r <= q

    def test_rejects_p_above_q(self):
        with pytest.raises(ScopeError):
            conjugate_r(3.0, 2.0)

    def test_rejects_exponents_below_one(self):
        with pytest.raises(PreconditionError):
            conjugate_r(0.5, 2.0)


class TestVectorNorm:
    def test_matches_numpy(self):
        rng = np.random.default_rng(0)
        x = np.concatenate(([0.0], rng.standard_normal(50)))
        for p in (1.0, 1.5, 2.0, 3.0):
            assert vector_norm(x, p) == pytest.approx(
                float(np.linalg.norm(x[1:], p)), rel=1e-13
            )
        assert vector_norm(x, INF) == float(np.max(np.abs(x[1:])))

    def test_rejects_p_below_one(self):
        with pytest.raises(PreconditionError):
            vector_norm([0.0, 1.0], 0.9)


class TestUpperBound:
    def test_p1_q2_is_the_l2_symbol_norm(self):
        got = upper_bound_theorem1(power_on_naturals(2.0), 1.0, 2.0)
        assert got == pytest.approx(ZETA4_SQRT, rel=1e-9)

    def test_diagonal_case_is_l1(self):
        got = upper_bound_theorem1(power_on_naturals(2.0), 2.0, 2.0)
        assert got == pytest.approx(zeta(2.0), rel=1e-9)

    def test_divergent_symbol_reports_infinity(self):
        assert upper_bound_theorem1(power_on_naturals(0.6), 1.5, 2.0) == INF


class TestDeltaWitness:
    def test_natural_symbol_at_origin(self):
        x, lower = witness_delta(power_on_naturals(2.0), 2.0, c=1)
        assert lower == pytest.approx(ZETA4_SQRT, rel=1e-12)
        assert x is not None and x.entry(1) == 1.0

    def test_closed_form_dominates_truncated_enumeration(self):
        f = product_power(1.0, 1.0)
        _, closed = witness_delta(f, 2.0, c=6)
        _, truncated = witness_delta(f, 2.0, c=6, m_len=120000)
        assert closed == pytest.approx(1.4650199897228988, rel=1e-12)
        assert truncated <= closed
        assert closed - truncated < 1e-4

    def test_hand_enumeration_for_small_table(self):
        # ||M_f e_2||_2 over a 4-entry window: f(n/2) at n = 1..4
        f = product_power(1.0, 1.0)
        vals = [evaluate(f, PositiveRational(n, 2)) for n in (1, 2, 3, 4)]
        want = math.sqrt(math.fsum(v * v for v in vals))
        _, got = witness_delta(f, 2.0, c=2, m_len=4)
        assert got == pytest.approx(want, rel=1e-14)


class TestDivisorUniformWitness:
    @pytest.mark.parametrize(
        "c,expected",
        [
            (2, 1.125),
            (6, 1.1875),
            (60, 1.2785416666666667),
            (420, 1.2915880102040818),
        ],
    )
    def test_frozen_values_for_reciprocal_square_symbol(self, c, expected):
        _, lower = witness_divisor_uniform(power_on_naturals(2.0), 2.0, c)
        assert lower == pytest.approx(expected, rel=1e-13)

    def test_matches_direct_double_sum(self):
        f = power_on_naturals(2.0)
        for c in (2, 6, 12, 30):
            ds = divisors(c)
            total = math.fsum(
                evaluate(f, PositiveRational(n, k)) for n in ds for k in ds
            )
            _, lower = witness_divisor_uniform(f, 2.0, c)
            assert lower == pytest.approx(total / len(ds), rel=1e-13)

    def test_witness_vector_is_uniform_on_divisors(self):
        x, _ = witness_divisor_uniform(power_on_naturals(2.0), 2.0, 6)
        nz = {n for n in range(1, x.n_max + 1) if x.entry(n) != 0.0}
        assert nz == {1, 2, 3, 6}
        assert x.entry(1) == pytest.approx(4 ** (-1 / 2))

    def test_lower_bound_never_exceeds_diagonal_upper(self):
        f = power_on_naturals(2.0)
        upper = upper_bound_theorem1(f, 2.0, 2.0)
        for c in (2, 6, 60, 420):
            _, lower = witness_divisor_uniform(f, 2.0, c)
            assert lower <= upper * (1 + 1e-12)


class TestDualExponentWitness:
    def test_small_modulus_closed_form(self):
        # F = 1 + 1/4 + 1/16 at r = 2, lower = sqrt(21)/4
        _, lower = witness_dual_exponent(power_on_naturals(1.0), 2.0, 4)
        assert lower == pytest.approx(math.sqrt(21.0) / 4.0, rel=1e-14)
        assert lower == pytest.approx(1.14564392373896, rel=1e-13)

    def test_primorial_sequence_values(self):
        f = power_on_naturals(1.0)
        _, at_k1 = witness_dual_exponent(f, 2.0, 30030)
        assert at_k1 == pytest.approx(1.2226600503793779, rel=1e-13)
        _, at_k4 = witness_dual_exponent(f, 2.0, 30030**4)
        assert at_k4 == pytest.approx(1.2713418578301836, rel=1e-13)
        assert at_k1 < at_k4 < math.sqrt(zeta(2.0))

    def test_p_infinity_uses_plain_divisor_sum(self):
        _, lower = witness_dual_exponent(power_on_naturals(1.0), INF, 6)
        assert lower == pytest.approx(1 + 0.5 + 1 / 3 + 1 / 6, rel=1e-14)

    def test_rejects_p_one(self):
        with pytest.raises(PreconditionError):
            witness_dual_exponent(power_on_naturals(1.0), 1.0, 6)


class TestAscent:
    def test_trivial_window_returns_symbol_at_one(self):
        res = lower_bound_ascent(power_on_naturals(2.0), 1, 2.0, 2.0)
        assert res.value == 1.0

    def test_frozen_small_window(self):
        res = lower_bound_ascent(power_on_naturals(2.0), 16, 2.0, 2.0)
        assert res.value == pytest.approx(1.3042256491893243, rel=1e-12)

    def test_trajectory_is_nondecreasing(self):
        res = lower_bound_ascent(power_on_naturals(2.0), 256, 2.0, 2.0)
        traj = res.trajectory
        assert len(traj) == res.iterations
        assert all(b >= a - 1e-12 for a, b in zip(traj, traj[1:]))

    @pytest.mark.parametrize("n", [256, 1024])
    def test_matches_dense_svd_at_p2_q2(self, n):
        res = lower_bound_ascent(power_on_naturals(2.0), n, 2.0, 2.0)
        dense = np.array(build_matrix(power_on_naturals(2.0), n).entries)
        top = scipy.sparse.linalg.svds(dense, k=1, return_singular_vectors=False)
        assert res.value == pytest.approx(float(top[0]), rel=1e-6)

    def test_reported_vector_reproduces_the_value(self):
        f = power_on_naturals(2.0)
        res = lower_bound_ascent(f, 128, 1.5, 2.0)
        from mtoeplitz import apply

        x = res.x
        ratio = vector_norm(apply(f, x).values, 2.0) / vector_norm(x.values, 1.5)
        assert ratio == pytest.approx(res.value, rel=1e-9)

    def test_stays_below_certified_upper(self):
        f = power_on_naturals(2.0)
        upper = upper_bound_theorem1(f, 1.5, 2.0)
        res = lower_bound_ascent(f, 512, 1.5, 2.0)
        assert res.value <= upper * (1 + 1e-9)

    def test_rejects_edge_exponents(self):
        with pytest.raises(PreconditionError):
            lower_bound_ascent(power_on_naturals(2.0), 16, 1.0, 2.0)
        with pytest.raises(PreconditionError):
            lower_bound_ascent(power_on_naturals(2.0), 16, 2.0, INF)


class TestBracket:
    def test_delta_route_closes_the_gap(self):
        b = bracket(power_on_naturals(2.0), 1.0, 2.0)
        assert b.witness_kind == "deltaAtC"
        assert b.lower == pytest.approx(ZETA4_SQRT, rel=1e-9)
        assert b.upper == pytest.approx(ZETA4_SQRT, rel=1e-9)

    def test_diagonal_route_on_the_p_equals_q_line(self):
        b = bracket(power_on_naturals(2.0), 2.0, 2.0)
        assert b.witness_kind == "divisorUniform"
        assert b.lower == pytest.approx(1.3679889399319773, rel=1e-12)
        assert b.upper == pytest.approx(ZETA2, rel=1e-12)

    def test_dual_route_at_q_infinity(self):
        b = bracket(power_on_naturals(1.0), 2.0, INF)
        assert b.witness_kind == "dualExponent"
        assert b.lower == pytest.approx(1.261085435534198, rel=1e-12)
        assert b.upper == pytest.approx(math.sqrt(zeta(2.0)), rel=1e-9)

    def test_ascent_route_in_the_interior(self):
        b = bracket(power_on_naturals(2.0), 1.5, 2.0, n=512)
        assert b.witness_kind == "ascent"
        assert b.iterations > 0
        assert b.lower <= b.upper

    def test_every_route_orders_lower_below_upper(self):
        cases = [
            bracket(power_on_naturals(2.0), 1.0, 2.0),
            bracket(power_on_naturals(2.0), 2.0, 2.0, T=5),
            bracket(power_on_naturals(1.0), 2.0, INF, k=1),
            bracket(power_on_naturals(2.0), 1.5, 2.0, n=256),
        ]
        for b in cases:
            assert b.lower <= b.upper * (1 + 1e-12)
            assert b.elapsed_ms >= 0.0

    def test_json_dict_spells_out_infinities(self):
        b = bracket(power_on_naturals(1.0), 2.0, INF, k=1)
        d = bracket_to_json_dict(b)
        assert d["q"] == "inf"
        assert isinstance(d["lower"], float)
        b2 = bracket(power_on_naturals(0.6), 1.5, 2.0, n=64)
        d2 = bracket_to_json_dict(b2)
        assert d2["upper"] == "diverges"

    def test_record_guard_rejects_inverted_bracket(self):
        with pytest.raises(PreconditionError):
            NormBracket(
                p=2.0,
                q=2.0,
                r=1.0,
                lower=2.0,
                upper=1.0,
                witness_kind="ascent",
                witness_params={},
                n=4,
                iterations=1,
                elapsed_ms=0.0,
            )
