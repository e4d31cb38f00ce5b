"""Symbols f on the positive rationals and their l^r norms.

A symbol is immutable and hashable. Six variants cover the families used
throughout: pure powers on the naturals, the two-exponent power on reduced
fractions, finite tables on naturals or rationals, and (completely)
multiplicative functions given by prime(-power) tables. Values are real.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, NamedTuple

import numpy as np

from .errors import (
    DispatchError,
    MissingPrimePowerError,
    PreconditionError,
)
from . import numtheory as nt

KIND_POWER = "PowerOnNaturals"
KIND_PRODUCT_POWER = "ProductPower"
KIND_TAB_NATURALS = "TabulatedNaturals"
KIND_TAB_RATIONALS = "TabulatedRationals"
KIND_COMPLETELY_MULTIPLICATIVE = "CompletelyMultiplicative"
KIND_MULTIPLICATIVE = "Multiplicative"


class PositiveRational:
    """Reduced fraction u/v with u, v >= 1."""

    __slots__ = ("num", "den")

    def __init__(self, num: int, den: int = 1):
        num = int(num)
        den = int(den)
        if num < 1 or den < 1:
            raise PreconditionError(
                f"positive rational needs positive parts, got {num}/{den}"
            )
        g = math.gcd(num, den)
        object.__setattr__(self, "num", num // g)
        object.__setattr__(self, "den", den // g)

    def __setattr__(self, name, value):
        raise AttributeError("PositiveRational is immutable")

    @classmethod
    def parse(cls, text: str) -> "PositiveRational":
        parts = str(text).split("/")
        if len(parts) == 1:
            return cls(int(parts[0]))
        if len(parts) == 2:
            return cls(int(parts[0]), int(parts[1]))
        raise PreconditionError(f"cannot parse rational {text!r}")

    def as_fraction(self) -> Fraction:
        return Fraction(self.num, self.den)

    def __eq__(self, other):
        return (
            isinstance(other, PositiveRational)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        return hash((self.num, self.den))

    def __str__(self):
        return f"{self.num}/{self.den}"

    def __repr__(self):
        return f"PositiveRational({self.num}, {self.den})"


def _as_pair(q) -> tuple[int, int]:
    """Normalize q to a reduced (num, den) pair."""
    if isinstance(q, PositiveRational):
        return q.num, q.den
    if isinstance(q, Fraction):
        if q <= 0:
            raise PreconditionError("symbol arguments must be positive")
        return q.numerator, q.denominator
    if isinstance(q, (int, np.integer)):
        if q < 1:
            raise PreconditionError("symbol arguments must be positive")
        return int(q), 1
    if isinstance(q, tuple) and len(q) == 2:
        r = PositiveRational(q[0], q[1])
        return r.num, r.den
    if isinstance(q, str):
        r = PositiveRational.parse(q)
        return r.num, r.den
    raise PreconditionError(f"cannot interpret {q!r} as a positive rational")


@dataclass(frozen=True)
class SymbolSpec:
    """One of the six symbol variants; build via the module constructors."""

    kind: str
    alpha: float | None = None
    beta: float | None = None
    table: tuple = field(default=())

    def table_dict(self) -> dict:
        return dict(self.table)


def power_on_naturals(alpha: float) -> SymbolSpec:
    """f(n) = n^-alpha on naturals, zero off the integers."""
    return SymbolSpec(KIND_POWER, alpha=float(alpha))


def product_power(alpha: float, beta: float) -> SymbolSpec:
    """f(u/v) = u^-alpha * v^-beta on reduced fractions."""
    return SymbolSpec(KIND_PRODUCT_POWER, alpha=float(alpha), beta=float(beta))


def tabulated_naturals(values: dict) -> SymbolSpec:
    items = []
    for n, v in values.items():
        n = int(n)
        if n < 1:
            raise PreconditionError("table keys must be positive integers")
        items.append((n, float(v)))
    return SymbolSpec(KIND_TAB_NATURALS, table=tuple(sorted(items)))


def tabulated_rationals(values: dict) -> SymbolSpec:
    items = {}
    for q, v in values.items():
        num, den = _as_pair(q)
        items[(num, den)] = float(v)
    return SymbolSpec(KIND_TAB_RATIONALS, table=tuple(sorted(items.items())))


def completely_multiplicative(prime_values: dict) -> SymbolSpec:
    """Completely multiplicative symbol from prime values in [0, 1).

    Primes missing from the table carry value 0, so the support is the set
    of naturals composed of the listed primes only.
    """
    items = []
    for t, v in prime_values.items():
        t = int(t)
        v = float(v)
        if not nt.is_prime(t):
            raise PreconditionError(f"table key {t} is not prime")
        if not (0.0 <= v < 1.0):
            raise PreconditionError(
                f"prime value at {t} must lie in [0, 1), got {v}"
            )
        items.append((t, v))
    return SymbolSpec(KIND_COMPLETELY_MULTIPLICATIVE, table=tuple(sorted(items)))


def multiplicative(prime_power_values: dict) -> SymbolSpec:
    """Multiplicative symbol from a finite (prime, exponent) -> value table."""
    items = []
    for key, v in prime_power_values.items():
        t, e = int(key[0]), int(key[1])
        if not nt.is_prime(t) or e < 1:
            raise PreconditionError(f"bad prime-power key ({t}, {e})")
        items.append(((t, e), float(v)))
    return SymbolSpec(KIND_MULTIPLICATIVE, table=tuple(sorted(items)))


def identity_symbol() -> SymbolSpec:
    """The convolution identity: the atom at 1."""
    return tabulated_naturals({1: 1.0})


@lru_cache(maxsize=1 << 16)
def _evaluate_reduced(f: SymbolSpec, num: int, den: int) -> float:
    if f.kind == KIND_PRODUCT_POWER:
        return num ** (-f.alpha) * den ** (-f.beta)
    if f.kind == KIND_TAB_RATIONALS:
        for (u, v), value in f.table:
            if u == num and v == den:
                return value
        return 0.0
    # remaining variants live on the naturals
    if den != 1:
        return 0.0
    if f.kind == KIND_POWER:
        return num ** (-f.alpha)
    if f.kind == KIND_TAB_NATURALS:
        for n, value in f.table:
            if n == num:
                return value
        return 0.0
    if f.kind == KIND_COMPLETELY_MULTIPLICATIVE:
        values = f.table_dict()
        out = 1.0
        for t, e in nt.factorize(num).pairs:
            v = values.get(t)
            if v is None:
                return 0.0
            out *= v ** e
        return out
    if f.kind == KIND_MULTIPLICATIVE:
        values = f.table_dict()
        out = 1.0
        for t, e in nt.factorize(num).pairs:
            v = values.get((t, e))
            if v is None:
                raise MissingPrimePowerError(
                    f"no value tabulated at prime power {t}^{e}"
                )
            out *= v
        return out
    raise DispatchError(f"unknown symbol kind {f.kind!r}")


def evaluate(f: SymbolSpec, q) -> float:
    """The symbol value at a positive rational (reduced before lookup)."""
    num, den = _as_pair(q)
    return _evaluate_reduced(f, num, den)


def is_natural_supported(f: SymbolSpec) -> bool:
    if f.kind == KIND_PRODUCT_POWER:
        return False
    if f.kind == KIND_TAB_RATIONALS:
        return all(v == 1 or value == 0.0 for (_, v), value in f.table)
    return True


def is_nonnegative(f: SymbolSpec) -> bool:
    if f.kind in (KIND_POWER, KIND_PRODUCT_POWER, KIND_COMPLETELY_MULTIPLICATIVE):
        return True
    return all(value >= 0.0 for _, value in f.table)


def natural_values(f: SymbolSpec, n_max: int) -> np.ndarray:
    """1-based array of f(n) for n <= n_max (slot 0 stays zero)."""
    if n_max < 1:
        raise PreconditionError("length must be positive")
    out = np.zeros(n_max + 1, dtype=np.float64)
    n = np.arange(1, n_max + 1, dtype=np.float64)
    if f.kind == KIND_POWER:
        out[1:] = n ** (-f.alpha)
    elif f.kind == KIND_PRODUCT_POWER:
        out[1:] = n ** (-f.alpha)
    elif f.kind == KIND_TAB_NATURALS:
        for key, value in f.table:
            if key <= n_max:
                out[key] = value
    elif f.kind == KIND_TAB_RATIONALS:
        for (u, v), value in f.table:
            if v == 1 and u <= n_max:
                out[u] = value
    elif f.kind == KIND_COMPLETELY_MULTIPLICATIVE:
        values = f.table_dict()
        spf = nt.smallest_prime_factor_sieve(max(n_max, 2))
        out[1] = 1.0
        for m in range(2, n_max + 1):
            p = int(spf[m])
            out[m] = out[m // p] * values.get(p, 0.0)
    elif f.kind == KIND_MULTIPLICATIVE:
        values = f.table_dict()
        spf = nt.smallest_prime_factor_sieve(max(n_max, 2))
        out[1] = 1.0
        for m in range(2, n_max + 1):
            p = int(spf[m])
            rest = m
            e = 0
            while rest % p == 0:
                rest //= p
                e += 1
            v = values.get((p, e))
            if v is None:
                raise MissingPrimePowerError(
                    f"no value tabulated at prime power {p}^{e}"
                )
            out[m] = out[rest] * v
    else:
        raise DispatchError(f"unknown symbol kind {f.kind!r}")
    return out


@dataclass(frozen=True)
class TruncatedSequence:
    """Finitely many entries x_1..x_N stored 1-based; slot 0 is zero.

    tag is a free-form label ("exponent space" in reports), never used in
    arithmetic.
    """

    values: np.ndarray
    tag: str | None = None

    def __post_init__(self):
        arr = np.asarray(self.values, dtype=np.float64)
        if arr.ndim != 1 or arr.shape[0] < 2:
            raise PreconditionError("sequence needs at least one entry")
        if arr[0] != 0.0:
            raise PreconditionError("1-based storage requires slot 0 == 0")
        if not np.all(np.isfinite(arr)):
            raise PreconditionError("sequence entries must be finite")
        object.__setattr__(self, "values", arr)

    @classmethod
    def from_entries(cls, entries: Iterable[float], tag: str | None = None):
        arr = np.concatenate(([0.0], np.asarray(list(entries), dtype=np.float64)))
        return cls(arr, tag)

    @classmethod
    def basis_vector(cls, index: int, n_max: int, tag: str | None = None):
        if not 1 <= index <= n_max:
            raise PreconditionError("basis index out of range")
        arr = np.zeros(n_max + 1)
        arr[index] = 1.0
        return cls(arr, tag)

    @property
    def n_max(self) -> int:
        return self.values.shape[0] - 1

    def entry(self, n: int) -> float:
        return float(self.values[n])

    def __len__(self) -> int:
        return self.n_max


def as_one_based(x) -> np.ndarray:
    """Accept a TruncatedSequence or a raw 1-based array."""
    if isinstance(x, TruncatedSequence):
        return x.values
    arr = np.asarray(x, dtype=np.float64)
    if arr.ndim != 1 or arr.shape[0] < 2 or arr[0] != 0.0:
        raise PreconditionError(
            "raw sequences must be 1-based arrays with slot 0 == 0"
        )
    return arr


class NormEstimate(NamedTuple):
    """A norm value together with a one-sided error bar."""

    value: float
    error: float


def lr_norm_naturals(f: SymbolSpec, r, tol: float = 1e-10) -> float:
    """l^r norm of f over the naturals; math.inf signals divergence.

    Closed forms are used where the variant admits them (zeta for powers,
    Euler products for multiplicative tables); finite tables are summed
    exactly. r = inf returns the supremum over the support.
    """
    _validate_r(r)
    if not is_natural_supported(f):
        raise PreconditionError("symbol is not supported on the naturals")
    if r == math.inf:
        return _sup_norm_naturals(f)
    if f.kind == KIND_POWER:
        if f.alpha * r <= 1.0:
            return math.inf
        return nt.zeta(f.alpha * r, tol) ** (1.0 / r)
    if f.kind in (KIND_TAB_NATURALS, KIND_TAB_RATIONALS):
        total = math.fsum(abs(v) ** r for _, v in f.table)
        return total ** (1.0 / r)
    if f.kind == KIND_COMPLETELY_MULTIPLICATIVE:
        # sum over the support factors into a finite Euler product
        log_sum = math.fsum(
            -math.log1p(-(v ** r)) for _, v in f.table if v > 0.0
        )
        return math.exp(log_sum) ** (1.0 / r)
    if f.kind == KIND_MULTIPLICATIVE:
        per_prime: dict[int, float] = {}
        for (t, _), v in f.table:
            per_prime[t] = per_prime.get(t, 0.0) + abs(v) ** r
        log_sum = math.fsum(math.log1p(s) for s in per_prime.values())
        return math.exp(log_sum) ** (1.0 / r)
    raise DispatchError(f"unknown symbol kind {f.kind!r}")


def _sup_norm_naturals(f: SymbolSpec) -> float:
    if f.kind == KIND_POWER:
        return 1.0 if f.alpha >= 0 else math.inf
    if f.kind in (KIND_TAB_NATURALS, KIND_TAB_RATIONALS):
        return max((abs(v) for _, v in f.table), default=0.0)
    if f.kind == KIND_COMPLETELY_MULTIPLICATIVE:
        return 1.0
    if f.kind == KIND_MULTIPLICATIVE:
        # per-prime exponent choices are independent, including e = 0
        out = 1.0
        per_prime: dict[int, float] = {}
        for (t, _), v in f.table:
            per_prime[t] = max(per_prime.get(t, 1.0), abs(v))
        for best in per_prime.values():
            out *= best
        return out
    raise DispatchError(f"unknown symbol kind {f.kind!r}")


def coprime_power_sum(a: float, b: float, t_bound: int) -> float:
    """sum over coprime pairs u, v <= t_bound of u^-a v^-b.

    Moebius rectangle identity: sum_d mu(d) d^-(a+b) H_a(T/d) H_b(T/d)
    with H_s the prefix sums, O(T) after sieving.
    """
    if t_bound < 1:
        raise PreconditionError("enumeration bound must be positive")
    mu = nt.mobius_sieve(t_bound).astype(np.float64)
    n = np.arange(0, t_bound + 1, dtype=np.float64)
    n[0] = 1.0  # avoid 0^negative; index 0 never read through T//d >= 1
    cums_a = np.cumsum(n ** (-a))
    cums_b = cums_a if b == a else np.cumsum(n ** (-b))
    h0_a = cums_a[0]
    h0_b = cums_b[0]
    d = np.arange(1, t_bound + 1, dtype=np.int64)
    quots = t_bound // d
    terms = (
        mu[1:]
        * d.astype(np.float64) ** (-(a + b))
        * (cums_a[quots] - h0_a)
        * (cums_b[quots] - h0_b)
    )
    return math.fsum(terms)


def coprime_tail_bound(a: float, b: float, t_bound: int) -> float:
    """Upper bound on the power sum over pairs with max(u, v) > t_bound."""
    if min(a, b) <= 1.0:
        return math.inf
    return nt.zeta(b) * nt.zeta_tail_integral_bound(a, t_bound) + nt.zeta(
        a
    ) * nt.zeta_tail_integral_bound(b, t_bound)


def lr_norm_rationals(
    f: SymbolSpec, r, t_bound: int = 10 ** 4, tol: float = 1e-10
) -> NormEstimate:
    """l^r norm of f over the positive rationals, with an error bar.

    ProductPower symbols combine the coprime-pair rectangle sum (u, v <=
    t_bound) with an analytic tail bracket; naturally supported symbols
    collapse to lr_norm_naturals. math.inf signals divergence.
    """
    _validate_r(r)
    if is_natural_supported(f):
        value = lr_norm_naturals(f, r, tol)
        return NormEstimate(value, 0.0 if math.isinf(value) else tol * value)
    if f.kind == KIND_TAB_RATIONALS:
        if r == math.inf:
            return NormEstimate(
                max((abs(v) for _, v in f.table), default=0.0), 0.0
            )
        total = math.fsum(abs(v) ** r for _, v in f.table)
        return NormEstimate(total ** (1.0 / r), 0.0)
    if f.kind != KIND_PRODUCT_POWER:
        raise DispatchError(f"no rational-norm rule for kind {f.kind!r}")
    if r == math.inf:
        if f.alpha >= 0 and f.beta >= 0:
            return NormEstimate(1.0, 0.0)
        return NormEstimate(math.inf, 0.0)
    a = f.alpha * r
    b = f.beta * r
    if min(a, b) <= 1.0:
        return NormEstimate(math.inf, 0.0)
    partial = coprime_power_sum(a, b, t_bound)
    tail_hi = coprime_tail_bound(a, b, t_bound)
    lo = partial ** (1.0 / r)
    hi = (partial + tail_hi) ** (1.0 / r)
    return NormEstimate(0.5 * (lo + hi), 0.5 * (hi - lo))


def product_power_rational_norm_closed_form(
    f: SymbolSpec, r: float
) -> float:
    """Exact closed form zeta(ar) zeta(br) / zeta((a+b)r), r-th root.

    Kept separate from lr_norm_rationals so the enumeration path stays an
    independent check of this identity.
    """
    if f.kind != KIND_PRODUCT_POWER:
        raise PreconditionError("closed form applies to ProductPower only")
    a = f.alpha * r
    b = f.beta * r
    if min(a, b) <= 1.0:
        return math.inf
    total = nt.zeta(a) * nt.zeta(b) / nt.zeta(a + b)
    return total ** (1.0 / r)


def _validate_r(r) -> None:
    if r == math.inf:
        return
    if not (isinstance(r, (int, float)) and r >= 1.0):
        raise PreconditionError(f"r must be >= 1 or inf, got {r}")


def _uniform_from_hash(seed: int, index: int) -> float:
    """Pure uniform draw in [0, 1) keyed by (seed, index)."""
    digest = hashlib.blake2b(
        f"{seed}:{index}".encode(), digest_size=8
    ).digest()
    return (int.from_bytes(digest, "big") >> 11) / float(1 << 53)


def random_completely_multiplicative(
    p: float, sigma: float, seed: int, n_max: int
) -> tuple[SymbolSpec, TruncatedSequence]:
    """Seeded random member of the completely multiplicative l^p family.

    Prime values x_t = u_t * t^-sigma with u_t uniform in [0, 1) and pure
    per (seed, t), so any evaluation order reproduces the same symbol.
    sigma > 1/p makes sum_t x_t^p converge by comparison with sum t^-(sigma p).
    """
    if not 1.0 < p < 2.0:
        raise PreconditionError(f"p must lie in (1, 2), got {p}")
    if sigma <= 1.0 / p:
        raise PreconditionError(
            f"decay sigma must exceed 1/p = {1.0 / p:.6g}, got {sigma}"
        )
    prime_values = {
        t: _uniform_from_hash(seed, t) * t ** (-sigma)
        for t in nt.sieve_primes(n_max)
    }
    spec = completely_multiplicative(prime_values)
    seq = TruncatedSequence(natural_values(spec, n_max), tag="multiplicative sample")
    return spec, seq


def enumerate_rational_support(
    f: SymbolSpec, component_bound: int
) -> list[tuple[int, int, float]]:
    """Nonzero support points (u, v, value) with components <= bound.

    Ordered by max(u, v) ascending, ties by u, so rectangle truncations
    grow monotonically.
    """
    if component_bound < 1:
        raise PreconditionError("support bound must be positive")
    points: list[tuple[int, int, float]] = []
    if is_natural_supported(f):
        vals = natural_values(f, component_bound)
        for u in range(1, component_bound + 1):
            if vals[u] != 0.0:
                points.append((u, 1, float(vals[u])))
    elif f.kind == KIND_TAB_RATIONALS:
        for (u, v), value in f.table:
            if value != 0.0 and u <= component_bound and v <= component_bound:
                points.append((u, v, value))
    elif f.kind == KIND_PRODUCT_POWER:
        for u in range(1, component_bound + 1):
            for v in range(1, component_bound + 1):
                if math.gcd(u, v) == 1:
                    points.append((u, v, u ** (-f.alpha) * v ** (-f.beta)))
    else:
        raise DispatchError(f"unknown symbol kind {f.kind!r}")
    points.sort(key=lambda t: (max(t[0], t[1]), t[0], t[1]))
    return points


class ScanResult(NamedTuple):
    t_star: float
    magnitude: float


def symbol_transform_scan(
    f: SymbolSpec, t_grid, support_bound: int = 512
) -> ScanResult:
    """Grid maximum of |sum_q f(q) q^{it}| over the enumerated support.

    Heuristic lower estimate of the supremum: the support is truncated at
    support_bound and only grid points are inspected. For f >= 0 the
    maximizer is t = 0 whenever the grid contains it.
    """
    if isinstance(t_grid, tuple) and len(t_grid) == 3:
        lo, hi, step = t_grid
        grid = np.arange(lo, hi + 0.5 * step, step, dtype=np.float64)
    else:
        grid = np.asarray(t_grid, dtype=np.float64)
    if grid.size == 0:
        raise PreconditionError("empty scan grid")
    points = enumerate_rational_support(f, support_bound)
    if not points:
        raise PreconditionError("symbol has empty support at this bound")
    vals = np.array([value for _, _, value in points])
    logs = np.array([math.log(u) - math.log(v) for u, v, _ in points])
    best_t = float(grid[0])
    best_mag = -1.0
    for t in grid:
        mag = abs(np.dot(vals, np.exp(1j * float(t) * logs)))
        if mag > best_mag + 1e-15:
            best_mag = float(mag)
            best_t = float(t)
    return ScanResult(best_t, best_mag)


def symbol_to_json(f: SymbolSpec) -> dict:
    """JSON object with a "kind" discriminator; rationals as "u/v" strings."""
    if f.kind == KIND_POWER:
        return {"kind": f.kind, "alpha": f.alpha}
    if f.kind == KIND_PRODUCT_POWER:
        return {"kind": f.kind, "alpha": f.alpha, "beta": f.beta}
    if f.kind == KIND_TAB_NATURALS:
        return {"kind": f.kind, "values": {str(n): v for n, v in f.table}}
    if f.kind == KIND_TAB_RATIONALS:
        return {
            "kind": f.kind,
            "values": {f"{u}/{v}": value for (u, v), value in f.table},
        }
    if f.kind == KIND_COMPLETELY_MULTIPLICATIVE:
        return {"kind": f.kind, "primeValues": {str(t): v for t, v in f.table}}
    if f.kind == KIND_MULTIPLICATIVE:
        return {
            "kind": f.kind,
            "primePowerValues": {f"{t}^{e}": v for (t, e), v in f.table},
        }
    raise DispatchError(f"unknown symbol kind {f.kind!r}")


def symbol_from_json(obj: dict) -> SymbolSpec:
    kind = obj.get("kind")
    if kind == KIND_POWER:
        return power_on_naturals(obj["alpha"])
    if kind == KIND_PRODUCT_POWER:
        return product_power(obj["alpha"], obj["beta"])
    if kind == KIND_TAB_NATURALS:
        return tabulated_naturals({int(k): v for k, v in obj["values"].items()})
    if kind == KIND_TAB_RATIONALS:
        return tabulated_rationals(
            {PositiveRational.parse(k): v for k, v in obj["values"].items()}
        )
    if kind == KIND_COMPLETELY_MULTIPLICATIVE:
        return completely_multiplicative(
            {int(k): v for k, v in obj["primeValues"].items()}
        )
    if kind == KIND_MULTIPLICATIVE:
        table = {}
        for key, v in obj["primePowerValues"].items():
            t_str, e_str = str(key).split("^")
            table[(int(t_str), int(e_str))] = v
        return multiplicative(table)
    raise DispatchError(f"unknown symbol kind {kind!r}")
