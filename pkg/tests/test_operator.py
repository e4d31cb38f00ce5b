"""Truncated matrix builds and the fast divisor-structured apply."""

import math

import numpy as np
import pytest

from mtoeplitz import (
    MATRIX_BUDGET,
    PreconditionError,
    ResourceLimitError,
    TruncatedSequence,
    apply,
    apply_adjoint,
    build_matrix,
    completely_multiplicative,
    dirichlet_convolve,
    evaluate,
    matrix_to_csv,
    natural_values,
    power_on_naturals,
    product_power,
    tabulated_rationals,
    vector_to_csv,
)
from mtoeplitz.operator import infinity_norm_gap
from mtoeplitz.symbols import PositiveRational


def _random_symbol_family(rng, i):
    fam = i % 3
    if fam == 0:
        return power_on_naturals(1.1 + rng.random())
    if fam == 1:
        return product_power(1.2 + rng.random(), 1.2 + rng.random())
    return completely_multiplicative(
        {2: 0.5 * rng.random(), 3: 0.5 * rng.random(), 5: 0.5 * rng.random()}
    )


class TestBuildMatrix:
    def test_natural_symbol_is_lower_triangular(self):
        mat = build_matrix(power_on_naturals(2.0), 3)
        assert mat.lower_triangular
        assert matrix_to_csv(mat) == "1,0,0\n0.25,1,0\n0.1111111111111111,0,1\n"

    def test_rational_symbol_fills_both_triangles(self):
        mat = build_matrix(product_power(1.0, 1.0), 2)
        assert not mat.lower_triangular
        assert matrix_to_csv(mat) == "1,0.5\n0.5,1\n"

    def test_entries_match_symbol_evaluation(self):
        f = product_power(1.3, 1.7)
        mat = build_matrix(f, 12)
        for i in range(1, 13):
            for j in range(1, 13):
                want = evaluate(f, PositiveRational(i, j))
                assert mat.entries[i - 1][j - 1] == pytest.approx(
                    want, rel=1e-15, abs=0
                )

    def test_budget_guard(self):
        n = math.isqrt(MATRIX_BUDGET)
        with pytest.raises(ResourceLimitError):
            build_matrix(power_on_naturals(2.0), n + 1)


class TestApply:
    def test_image_of_first_basis_vector_is_the_symbol(self):
        f = power_on_naturals(2.0)
        x = TruncatedSequence.basis_vector(1, 16)
        y = apply(f, x)
        assert np.array_equal(y.values, natural_values(f, 16))

    def test_image_of_basis_vector_at_c_rescales_support(self):
        f = power_on_naturals(2.0)
        y = apply(f, TruncatedSequence.basis_vector(3, 12))
        for n in range(1, 13):
            want = evaluate(f, PositiveRational(n, 3))
            assert y.entry(n) == pytest.approx(want, rel=1e-15, abs=0)

    def test_shares_accumulation_order_with_convolution(self):
        rng = np.random.default_rng(3)
        f = power_on_naturals(1.4)
        x = np.concatenate(([0.0], rng.standard_normal(200)))
        conv = dirichlet_convolve(natural_values(f, 200), x)
        assert np.array_equal(apply(f, x).values, conv)

    def test_linearity(self):
        rng = np.random.default_rng(9)
        f = product_power(1.5, 1.5)
        x = np.concatenate(([0.0], rng.random(64)))
        y = np.concatenate(([0.0], rng.random(64)))
        combined = apply(f, x + 2.0 * y).values
        split = apply(f, x).values + 2.0 * apply(f, y).values
        assert combined == pytest.approx(split, rel=1e-13)

    def test_out_len_extends_the_window(self):
        f = power_on_naturals(2.0)
        y = apply(f, TruncatedSequence.basis_vector(1, 4), out_len=8)
        assert y.n_max == 8
        assert y.entry(8) == pytest.approx(1 / 64)

    def test_rejects_raw_zero_based_input(self):
        with pytest.raises(PreconditionError):
            apply(power_on_naturals(2.0), [1.0, 2.0, 3.0])


class TestDenseAgreement:
    def test_hundred_seeded_cases_at_n256(self):
        rng = np.random.default_rng(2026)
        worst = 0.0
        for i in range(100):
            f = _random_symbol_family(rng, i)
            mat = build_matrix(f, 256)
            x = np.concatenate(([0.0], rng.random(256)))
            fast = apply(f, x).values[1:]
            dense = mat.multiply(x)[1:]
            scale = np.maximum(np.abs(dense), 1e-300)
            worst = max(worst, float(np.max(np.abs(fast - dense) / scale)))
        assert worst <= 1e-12

    def test_adjoint_matches_transpose(self):
        rng = np.random.default_rng(4)
        for i in range(6):
            f = _random_symbol_family(rng, i)
            mat = build_matrix(f, 64)
            x = np.concatenate(([0.0], rng.random(64)))
            fast = apply_adjoint(f, x).values[1:]
            dense = mat.multiply_adjoint(x)[1:]
            assert fast == pytest.approx(dense, rel=1e-12, abs=1e-15)

    def test_tabulated_rational_symbol_agrees(self):
        f = tabulated_rationals(
            {
                PositiveRational(1, 1): 1.0,
                PositiveRational(2, 3): 0.5,
                PositiveRational(3, 2): 0.25,
            }
        )
        rng = np.random.default_rng(12)
        x = np.concatenate(([0.0], rng.random(30)))
        mat = build_matrix(f, 30)
        assert apply(f, x).values[1:] == pytest.approx(
            mat.multiply(x)[1:], rel=1e-13, abs=1e-16
        )


def test_truncation_gap_diagnostic_shrinks_with_window():
    f = power_on_naturals(2.0)
    wide = infinity_norm_gap(f, 8, 128)
    narrow = infinity_norm_gap(f, 8, 32)
    assert 0.0 < wide < narrow
    with pytest.raises(PreconditionError):
        infinity_norm_gap(product_power(1.0, 1.0), 4, 16)


def test_vector_csv_format():
    assert vector_to_csv([0.0, 1.0, 0.5]) == "1,0.5\n"
