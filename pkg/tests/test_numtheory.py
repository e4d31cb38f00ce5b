"""Oracle checks for the integer arithmetic layer.

Every closed-form constant asserted here is either exact in binary
floating point or re-derived by an independent brute-force routine in
this file.
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mtoeplitz import (
    PreconditionError,
    ResourceLimitError,
    diagonal_witness_modulus,
    dirichlet_convolve,
    divisor_count,
    divisor_count_sieve,
    divisors,
    euler_product_zeta,
    factorize,
    is_prime,
    iterate_divisors,
    mobius_sieve,
    primorial_power,
    sieve_primes,
    zeta,
)
from mtoeplitz import numtheory as nt


def _trial_division_primes(limit: int) -> list[int]:
    out = []
    for n in range(2, limit + 1):
        if all(n % p for p in out):
            out.append(n)
    return out


def _brute_divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


class TestSieve:
    def test_small_values(self):
        assert sieve_primes(10) == [2, 3, 5, 7]
        assert sieve_primes(1) == []
        assert sieve_primes(2) == [2]

    def test_against_trial_division(self):
        assert sieve_primes(500) == _trial_division_primes(500)

    def test_prime_count_to_100(self):
        assert len(sieve_primes(100)) == 25

    def test_is_prime_matches_sieve(self):
        table = set(sieve_primes(300))
        for n in range(1, 301):
            assert is_prime(n) == (n in table)


class TestFactorize:
    @pytest.mark.parametrize("n", [2, 12, 97, 900, 1024, 2310, 10**6])
    def test_multiplies_back(self, n):
        fac = factorize(n)
        prod = 1
        last = 0
        for t, e in fac.pairs:
            assert is_prime(t) and e >= 1
            assert t > last
            last = t
            prod *= t**e
        assert prod == n

    def test_one_has_empty_factorization(self):
        assert factorize(1).pairs == ()
        assert factorize(1).value == 1

    def test_rejects_nonpositive(self):
        with pytest.raises(PreconditionError):
            factorize(0)


class TestDivisors:
    def test_twelve(self):
        assert divisors(12) == [1, 2, 3, 4, 6, 12]

    def test_count_of_prime_power(self):
        assert divisor_count(2**10) == 11

    @pytest.mark.parametrize("n", [1, 6, 36, 97, 360, 1024])
    def test_matches_brute_force(self, n):
        assert divisors(n) == _brute_divisors(n)
        assert divisor_count(n) == len(_brute_divisors(n))
        assert sorted(iterate_divisors(n)) == _brute_divisors(n)

    def test_sieve_matches_pointwise(self):
        counts = divisor_count_sieve(500)
        for n in range(1, 501):
            assert counts[n] == divisor_count(n)

    def test_enumeration_cap(self):
        huge = primorial_power(97, 1)
        with pytest.raises(ResourceLimitError):
            divisors(huge)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 10**6), st.integers(1, 10**6))
def test_gcd_lcm_product(a, b):
    assert nt.gcd(a, b) * nt.lcm(a, b) == a * b


def test_mobius_sums_to_indicator():
    mu = mobius_sieve(200)
    for n in range(1, 201):
        total = sum(mu[d] for d in divisors(n))
        assert total == (1 if n == 1 else 0)


class TestConvolve:
    def test_identity_element(self):
        rng = np.random.default_rng(5)
        a = np.concatenate(([0.0], rng.random(64)))
        e1 = np.zeros(65)
        e1[1] = 1.0
        assert np.array_equal(dirichlet_convolve(e1, a), a)

    def test_ones_gives_divisor_count(self):
        ones = np.ones(129)
        ones[0] = 0.0
        conv = dirichlet_convolve(ones, ones)
        assert np.array_equal(conv[1:], divisor_count_sieve(128)[1:].astype(float))

    def test_against_brute_double_sum(self):
        rng = np.random.default_rng(11)
        a = np.concatenate(([0.0], rng.random(64)))
        b = np.concatenate(([0.0], rng.random(64)))
        conv = dirichlet_convolve(a, b)
        for n in range(1, 65):
            brute = math.fsum(a[n // d] * b[d] for d in divisors(n))
            assert conv[n] == pytest.approx(brute, rel=1e-13)

    def test_reciprocal_value_at_four(self):
        # (f*f)(4) = f(4)f(1)+f(2)f(2)+f(1)f(4) = 3/4 for f(n)=1/n
        f = np.array([0.0, 1.0, 0.5, 1 / 3, 0.25])
        assert dirichlet_convolve(f, f)[4] == pytest.approx(0.75, rel=1e-15)

    def test_multiplicative_inputs_give_multiplicative_output(self):
        f = np.concatenate(([0.0], 1.0 / np.arange(1, 145) ** 0.7))
        g = np.concatenate(([0.0], 1.0 / np.arange(1, 145) ** 1.3))
        conv = dirichlet_convolve(f, g)
        for m, n in [(2, 3), (4, 9), (8, 9), (9, 16), (16, 9)]:
            assert math.gcd(m, n) == 1
            assert conv[m * n] == pytest.approx(conv[m] * conv[n], rel=1e-12)


class TestZeta:
    def test_even_closed_forms(self):
        assert zeta(2.0) == pytest.approx(math.pi**2 / 6, abs=1e-9)
        assert zeta(4.0) == pytest.approx(math.pi**4 / 90, abs=1e-9)
        assert zeta(2.0, tol=1e-13) == pytest.approx(math.pi**2 / 6, abs=1e-11)

    def test_euler_product_agrees(self):
        assert euler_product_zeta(2.0, 10**5) == pytest.approx(
            math.pi**2 / 6, abs=1e-5
        )
        assert euler_product_zeta(3.0, 10**4) == pytest.approx(
            zeta(3.0), abs=1e-8
        )

    def test_monotone_decreasing_in_s(self):
        assert zeta(1.5) > zeta(2.0) > zeta(3.0) > zeta(8.0) > 1.0

    def test_rejects_pole_and_divergent_region(self):
        with pytest.raises(PreconditionError):
            zeta(1.0)
        with pytest.raises(PreconditionError):
            zeta(0.5)


class TestWitnessModuli:
    def test_primorial_power_values(self):
        assert primorial_power(13, 1).value == 30030
        assert primorial_power(2, 3).value == 8
        assert primorial_power(13, 4).value == 30030**4

    def test_diagonal_witness_moduli(self):
        assert diagonal_witness_modulus(2).value == 2
        assert diagonal_witness_modulus(3).value == 6
        assert diagonal_witness_modulus(5).value == 60
        assert diagonal_witness_modulus(7).value == 420

    def test_diagonal_modulus_divisor_counts_grow(self):
        counts = [divisor_count(diagonal_witness_modulus(T)) for T in (2, 3, 5, 7)]
        assert counts == sorted(counts)
        assert counts[0] == 2
