"""Sparse support sets for the square-summability harnesses.

A support set is a subset of the naturals on which a damped sequence is
allowed to live. Membership and ascending enumeration up to a bound are
the only operations the harnesses need; counting has closed forms for
the structured variants and falls back to enumeration otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import PreconditionError
from . import numtheory as nt

VARIANT_DYADIC = "DyadicPowers"
VARIANT_PRIMORIAL = "PrimorialMultiples"
VARIANT_SMOOTH = "SmoothNumbers"
VARIANT_DIVISOR_RICH = "DivisorRich"
VARIANT_EXPLICIT = "ExplicitList"
VARIANT_NATURALS = "Naturals"
VARIANT_PRIMES = "PrimeNumbers"

_VARIANTS = (
    VARIANT_DYADIC,
    VARIANT_PRIMORIAL,
    VARIANT_SMOOTH,
    VARIANT_DIVISOR_RICH,
    VARIANT_EXPLICIT,
    VARIANT_NATURALS,
    VARIANT_PRIMES,
)


@dataclass(frozen=True)
class SupportSetSpec:
    variant: str
    param: int = 0
    members: tuple[int, ...] = ()

    def __post_init__(self):
        if self.variant not in _VARIANTS:
            raise PreconditionError(f"unknown support variant {self.variant!r}")


def dyadic_powers() -> SupportSetSpec:
    """{2^k : k >= 1}; 1 is excluded."""
    return SupportSetSpec(VARIANT_DYADIC)


def primorial_multiples(T: int = 5) -> SupportSetSpec:
    """Multiples of the product of the primes up to T."""
    base = nt.primorial_power(T, 1).value
    return SupportSetSpec(VARIANT_PRIMORIAL, param=base)


def smooth_numbers(bound: int) -> SupportSetSpec:
    """Naturals whose prime factors are all <= bound."""
    if bound < 2:
        raise PreconditionError("smoothness bound must be at least 2")
    return SupportSetSpec(VARIANT_SMOOTH, param=bound)


def divisor_rich(threshold: int = 8) -> SupportSetSpec:
    """Naturals with at least `threshold` divisors."""
    if threshold < 1:
        raise PreconditionError("divisor threshold must be positive")
    return SupportSetSpec(VARIANT_DIVISOR_RICH, param=threshold)


def explicit_list(values) -> SupportSetSpec:
    members = tuple(sorted(set(int(v) for v in values)))
    if not members or members[0] < 1:
        raise PreconditionError("explicit support needs positive members")
    return SupportSetSpec(VARIANT_EXPLICIT, members=members)


def naturals() -> SupportSetSpec:
    return SupportSetSpec(VARIANT_NATURALS)


def prime_numbers() -> SupportSetSpec:
    return SupportSetSpec(VARIANT_PRIMES)


def contains(spec: SupportSetSpec, n: int) -> bool:
    if n < 1:
        return False
    if spec.variant == VARIANT_NATURALS:
        return True
    if spec.variant == VARIANT_DYADIC:
        return n >= 2 and (n & (n - 1)) == 0
    if spec.variant == VARIANT_PRIMORIAL:
        return n % spec.param == 0
    if spec.variant == VARIANT_SMOOTH:
        if n == 1:
            return True
        return all(t <= spec.param for t, _ in nt.factorize(n).pairs)
    if spec.variant == VARIANT_DIVISOR_RICH:
        return nt.divisor_count(n) >= spec.param
    if spec.variant == VARIANT_PRIMES:
        return nt.is_prime(n)
    return n in spec.members


def enumerate_up_to(spec: SupportSetSpec, x_max: int) -> list[int]:
    """Members <= x_max, ascending."""
    if x_max < 1:
        return []
    if spec.variant == VARIANT_NATURALS:
        return list(range(1, x_max + 1))
    if spec.variant == VARIANT_DYADIC:
        out = []
        m = 2
        while m <= x_max:
            out.append(m)
            m *= 2
        return out
    if spec.variant == VARIANT_PRIMORIAL:
        base = spec.param
        return list(range(base, x_max + 1, base))
    if spec.variant == VARIANT_SMOOTH:
        # breadth via sorted heap-free generation: multiply out prime powers
        primes = nt.sieve_primes(spec.param)
        out = [1]
        for t in primes:
            extended = []
            for m in out:
                v = m * t
                while v <= x_max:
                    extended.append(v)
                    v *= t
            out.extend(extended)
        return sorted(out)
    if spec.variant == VARIANT_DIVISOR_RICH:
        counts = nt.divisor_count_sieve(x_max)
        return [int(n) for n in range(1, x_max + 1) if counts[n] >= spec.param]
    if spec.variant == VARIANT_PRIMES:
        return nt.sieve_primes(x_max)
    return [m for m in spec.members if m <= x_max]


def count_up_to(spec: SupportSetSpec, x_max: int) -> int:
    if x_max < 1:
        return 0
    if spec.variant == VARIANT_NATURALS:
        return x_max
    if spec.variant == VARIANT_DYADIC:
        # exact floor(log2): members are 2..2^k <= x_max
        return int(x_max).bit_length() - 1 if x_max >= 2 else 0
    if spec.variant == VARIANT_PRIMORIAL:
        return x_max // spec.param
    return len(enumerate_up_to(spec, x_max))


def support_from_name(name: str, param: int | None = None) -> SupportSetSpec:
    """CLI-facing constructor: dyadic|primorial|smooth|divisor_rich|naturals|primes."""
    key = name.strip().lower()
    if key in ("dyadic", "dyadicpowers"):
        return dyadic_powers()
    if key in ("primorial", "primorialmultiples"):
        return primorial_multiples(param if param is not None else 5)
    if key in ("smooth", "smoothnumbers"):
        return smooth_numbers(param if param is not None else 5)
    if key in ("divisor_rich", "divisorrich"):
        return divisor_rich(param if param is not None else 8)
    if key == "naturals":
        return naturals()
    if key in ("primes", "primenumbers"):
        return prime_numbers()
    raise PreconditionError(f"unknown support set {name!r}")
