"""Integer and zeta utilities underpinning the operator truncations.

Sequences indexed by naturals are stored 1-based: an array of length N+1
whose slot 0 is unused and kept at zero, so a[n] is the value at n. All
summations follow the sequential compensated-summation contract
(math.fsum for scalar accumulation, numpy's deterministic slice kernels
for bulk work).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import PreconditionError, ResourceLimitError

# Materializing more divisors than this is refused; iterate lazily instead.
DIVISOR_CAP = 2 ** 24

_SPF_CACHE: np.ndarray | None = None
_SPF_LIMIT = 0


def sieve_primes(limit: int) -> list[int]:
    """All primes <= limit, ascending. limit < 2 gives an empty list."""
    if limit < 0:
        raise PreconditionError("sieve limit must be nonnegative")
    if limit < 2:
        return []
    mask = np.ones(limit + 1, dtype=bool)
    mask[:2] = False
    for i in range(2, math.isqrt(limit) + 1):
        if mask[i]:
            mask[i * i :: i] = False
    return [int(p) for p in np.nonzero(mask)[0]]


def smallest_prime_factor_sieve(limit: int) -> np.ndarray:
    """Array s with s[n] = smallest prime factor of n for 2 <= n <= limit.

    s[0] = 0 and s[1] = 1. The sieve is cached and grown on demand.
    """
    global _SPF_CACHE, _SPF_LIMIT
    if limit < 1:
        raise PreconditionError("sieve limit must be positive")
    if _SPF_CACHE is None or limit > _SPF_LIMIT:
        size = max(limit, 2, 2 * _SPF_LIMIT)
        spf = np.zeros(size + 1, dtype=np.int64)
        for i in range(2, math.isqrt(size) + 1):
            if spf[i] == 0:
                block = spf[i * i :: i]
                block[block == 0] = i
        untouched = spf == 0
        spf[untouched] = np.nonzero(untouched)[0]
        spf[0] = 0
        spf[1] = 1
        _SPF_CACHE = spf
        _SPF_LIMIT = size
    return _SPF_CACHE


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return factorize(n).pairs == ((n, 1),)


@dataclass(frozen=True)
class Factorization:
    """Canonical prime factorization: ((prime, exponent), ...) ascending."""

    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        last = 1
        for prime, exp in self.pairs:
            if prime <= last or exp < 1:
                raise PreconditionError(
                    "factorization pairs must have strictly increasing primes "
                    "and positive exponents"
                )
            last = prime

    @classmethod
    def from_int(cls, n: int) -> "Factorization":
        return factorize(n)

    @property
    def value(self) -> int:
        out = 1
        for prime, exp in self.pairs:
            out *= prime ** exp
        return out

    @property
    def divisor_count(self) -> int:
        out = 1
        for _, exp in self.pairs:
            out *= exp + 1
        return out

    def __int__(self) -> int:
        return self.value


def _as_factorization(n) -> Factorization:
    if isinstance(n, Factorization):
        return n
    return factorize(int(n))


def factorize(n: int) -> Factorization:
    """Canonical factorization of n >= 1; n = 1 yields the empty product.

    Smooth and moderate inputs only: trial division with sieved primes
    covers n up to ~10^12.
    """
    n = int(n)
    if n < 1:
        raise PreconditionError(f"factorize requires n >= 1, got {n}")
    if n == 1:
        return Factorization(())
    pairs: list[tuple[int, int]] = []
    if n <= 10 ** 6:
        spf = smallest_prime_factor_sieve(n)
        m = n
        while m > 1:
            p = int(spf[m])
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            pairs.append((p, e))
        return Factorization(tuple(pairs))
    m = n
    for p in sieve_primes(math.isqrt(n)):
        if p * p > m:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            pairs.append((p, e))
    if m > 1:
        # cofactor above the sieve bound has no factor <= sqrt(n): prime
        pairs.append((m, 1))
        pairs.sort()
    return Factorization(tuple(pairs))


def divisor_count(n) -> int:
    return _as_factorization(n).divisor_count


def iterate_divisors(n):
    """Lazily yield every divisor of n by walking the exponent lattice.

    Order follows the lattice (itertools.product), not numeric order; use
    divisors() when a sorted list of tolerable size is needed.
    """
    fact = _as_factorization(n)
    primes = [p for p, _ in fact.pairs]
    ranges = [range(e + 1) for _, e in fact.pairs]
    for exps in itertools.product(*ranges):
        d = 1
        for p, e in zip(primes, exps):
            d *= p ** e
        yield d


def divisors(n) -> list[int]:
    """All divisors of n, ascending. Refuses counts above DIVISOR_CAP."""
    fact = _as_factorization(n)
    if fact.divisor_count > DIVISOR_CAP:
        raise ResourceLimitError(
            f"divisor count {fact.divisor_count} exceeds cap {DIVISOR_CAP}; "
            "consume iterate_divisors lazily instead"
        )
    return sorted(iterate_divisors(fact))


def gcd(a: int, b: int) -> int:
    if a < 1 or b < 1:
        raise PreconditionError("gcd requires positive inputs")
    return math.gcd(a, b)


def lcm(a: int, b: int) -> int:
    if a < 1 or b < 1:
        raise PreconditionError("lcm requires positive inputs")
    return a * b // math.gcd(a, b)


def primorial_power(T: int, k: int) -> Factorization:
    """c = (product of primes <= T)^k as a factorization; T must be prime."""
    if not is_prime(T):
        raise PreconditionError(f"T must be prime, got {T}")
    if k < 1:
        raise PreconditionError(f"k must be >= 1, got {k}")
    return Factorization(tuple((p, k) for p in sieve_primes(T)))


def diagonal_witness_modulus(T: int) -> Factorization:
    """c = prod_{t <= T} t^{e_t} with e_t the largest exponent keeping t^e <= T.

    Integer exponent search, so boundary cases like t^e == T are exact.
    """
    if not is_prime(T):
        raise PreconditionError(f"T must be prime, got {T}")
    pairs = []
    for t in sieve_primes(T):
        e = 1
        while t ** (e + 1) <= T:
            e += 1
        pairs.append((t, e))
    return Factorization(tuple(pairs))


def dirichlet_convolve(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """c[n] = sum_{d | n} a[d] * b[n/d] on 1-based arrays of equal length.

    Exact for the truncation: c[n] for n <= N only ever reads a, b below N.
    Accumulation order is the fixed ascending-d loop, so results are
    bit-reproducible.
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape or a.ndim != 1 or a.shape[0] < 2:
        raise PreconditionError("convolution inputs must be equal-length 1-based arrays")
    n_max = a.shape[0] - 1
    out = np.zeros_like(a)
    for d in range(1, n_max + 1):
        coeff = a[d]
        if coeff != 0.0:
            m = n_max // d
            out[d::d] += coeff * b[1 : m + 1]
    return out


def divisor_count_sieve(n_max: int) -> np.ndarray:
    """1-based int64 array with t[n] = d(n)."""
    if n_max < 1:
        raise PreconditionError("sieve bound must be positive")
    counts = np.zeros(n_max + 1, dtype=np.int64)
    for d in range(1, n_max + 1):
        counts[d::d] += 1
    return counts


def mobius_sieve(n_max: int) -> np.ndarray:
    """1-based int8 array of Moebius values."""
    if n_max < 1:
        raise PreconditionError("sieve bound must be positive")
    spf = smallest_prime_factor_sieve(max(n_max, 2))
    mu = np.zeros(n_max + 1, dtype=np.int8)
    mu[1] = 1
    for n in range(2, n_max + 1):
        p = int(spf[n])
        m = n // p
        mu[n] = 0 if m % p == 0 else -mu[m]
    return mu


def zeta_tail_integral_bound(s: float, m: int) -> float:
    """Upper bound for sum_{n > m} n^{-s}: the integral tail m^{1-s}/(s-1)."""
    if s <= 1:
        raise PreconditionError("tail bound requires s > 1")
    return m ** (1.0 - s) / (s - 1.0)


def zeta(s: float, tol: float = 1e-10) -> float:
    """zeta(s) for s > 1 within relative tolerance tol.

    Partial sum to M plus the integral tail refined by Euler-Maclaurin
    correction terms; the first omitted term bounds the error, and M is
    doubled until that bound meets tol. A bare integral tail cannot reach
    the default 1e-10 near s = 1 at sane M, hence the corrections.
    """
    if s <= 1:
        raise PreconditionError(f"zeta requires s > 1, got {s}")
    if tol <= 0:
        raise PreconditionError("tolerance must be positive")
    m = 64
    while True:
        terms = np.arange(1, m + 1, dtype=np.float64) ** (-s)
        partial = math.fsum(terms)
        est = (
            partial
            + m ** (1.0 - s) / (s - 1.0)
            - 0.5 * m ** (-s)
            + s * m ** (-s - 1.0) / 12.0
        )
        err = s * (s + 1.0) * (s + 2.0) * m ** (-s - 3.0) / 720.0
        if err <= tol * est or m >= DIVISOR_CAP:
            return est
        m *= 2


def euler_product_zeta(s: float, prime_limit: int) -> float:
    """Truncated Euler product prod_{t <= prime_limit} (1 - t^{-s})^{-1}."""
    if s <= 1:
        raise PreconditionError("Euler product requires s > 1")
    log_sum = math.fsum(
        -math.log1p(-(t ** (-s))) for t in sieve_primes(prime_limit)
    )
    return math.exp(log_sum)
