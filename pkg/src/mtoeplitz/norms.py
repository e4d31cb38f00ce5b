"""Mixed-norm brackets: analytic upper bounds and constructive lower bounds.

The upper bound is the l^r symbol norm with 1/r = 1 - 1/p + 1/q. Lower
bounds come from three explicit extremal families (a delta sequence, the
uniform profile on the divisors of a modulus, and a dual-exponent profile)
plus an iterative mixed-norm power ascent on the truncation. Witnesses
require a nonnegative symbol; the ascent additionally needs f(1) > 0.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from .errors import PreconditionError, ResourceLimitError, ScopeError
from . import numtheory as nt
from . import symbols as sym
from . import operator as op

# Largest modulus whose witness vector is materialized as a sequence.
_WITNESS_VECTOR_LIMIT = 2 ** 20
# Divisor-pair enumeration cap for the uniform witness (d(c)^2 pairs).
_PAIR_CAP = 2 ** 24


def vector_norm(x, p) -> float:
    """(sum |x_n|^p)^{1/p}, or max |x_n| at p = inf."""
    arr = sym.as_one_based(x)
    if p == math.inf:
        return float(np.max(np.abs(arr[1:]))) if arr.shape[0] > 1 else 0.0
    if not p >= 1.0:
        raise PreconditionError(f"p must be >= 1 or inf, got {p}")
    return math.fsum(np.abs(arr[1:]) ** p) ** (1.0 / p)


def conjugate_r(p, q):
    """r with 1/r = 1 - 1/p + 1/q (1/inf = 0); requires 1 <= p <= q <= inf.

    Edge identities are returned exactly: r(p, p) = 1, r(1, q) = q,
    r(p, inf) = p/(p-1).
    """
    for name, value in (("p", p), ("q", q)):
        if value != math.inf and not (isinstance(value, (int, float)) and value >= 1.0):
            raise PreconditionError(f"{name} must be >= 1 or inf, got {value}")
    if p > q:
        raise ScopeError(
            f"exponent pair p={p}, q={q} is outside the supported range p <= q"
        )
    if p == q:
        return 1.0
    if q == math.inf:
        return math.inf if p == 1.0 else p / (p - 1.0)
    if p == 1.0:
        return float(q)
    return 1.0 / (1.0 - 1.0 / p + 1.0 / q)


def upper_bound_theorem1(
    f: sym.SymbolSpec, p, q, t_bound: int = 10 ** 4, tol: float = 1e-10
) -> float:
    """The l^r norm of the symbol over the rationals; math.inf = diverges."""
    r = conjugate_r(p, q)
    return sym.lr_norm_rationals(f, r, t_bound, tol).value


def _require_nonnegative(f: sym.SymbolSpec) -> None:
    if not sym.is_nonnegative(f):
        raise PreconditionError(
            "witness constructions require a nonnegative symbol"
        )


def _materialize_basis(c: int):
    if c <= _WITNESS_VECTOR_LIMIT:
        return sym.TruncatedSequence.basis_vector(c, c, tag="delta witness")
    return None


def witness_delta(
    f: sym.SymbolSpec, q, c=1, m_len: int | None = None
) -> tuple[sym.TruncatedSequence | None, float]:
    """Image norm of the basis vector at c: lower bound for the (p=1, q) norm.

    For naturally supported f the value is the l^q norm of f itself,
    independent of c; with m_len set it is the partial sum over
    1..floor(m_len/c) instead (0 when m_len < c). For ProductPower symbols
    the full image sum has the closed form
    zeta(alpha q) * prod_{t^e || c} (1 + (1 - t^{-alpha q}) sum_{j<=e} t^{-beta q j}),
    used when m_len is None; otherwise the image is enumerated to m_len.
    """
    _require_nonnegative(f)
    if q != math.inf and not q >= 1.0:
        raise PreconditionError(f"q must be >= 1 or inf, got {q}")
    fact = c if isinstance(c, nt.Factorization) else nt.factorize(int(c))
    c_val = fact.value
    x = _materialize_basis(c_val)
    if sym.is_natural_supported(f):
        if m_len is None:
            return x, sym.lr_norm_naturals(f, q)
        reach = m_len // c_val
        if reach < 1:
            return x, 0.0
        values = sym.natural_values(f, reach)
        if q == math.inf:
            return x, float(np.max(np.abs(values[1:])))
        return x, math.fsum(np.abs(values[1:]) ** q) ** (1.0 / q)
    if f.kind == sym.KIND_PRODUCT_POWER and m_len is None:
        aq = f.alpha * q if q != math.inf else None
        if q == math.inf:
            return x, 1.0 if (f.alpha >= 0 and f.beta >= 0) else math.inf
        if aq <= 1.0:
            return x, math.inf
        total = nt.zeta(aq)
        for t, e in fact.pairs:
            geom = math.fsum(t ** (-f.beta * q * j) for j in range(1, e + 1))
            total *= 1.0 + (1.0 - t ** (-aq)) * geom
        return x, total ** (1.0 / q)
    # general route: enumerate the image directly
    reach = m_len if m_len is not None else _WITNESS_VECTOR_LIMIT
    if q == math.inf:
        best = 0.0
        for n in range(1, reach + 1):
            best = max(best, abs(sym.evaluate(f, (n, c_val))))
        return x, best
    total = math.fsum(
        abs(sym.evaluate(f, (n, c_val))) ** q for n in range(1, reach + 1)
    )
    return x, total ** (1.0 / q)


def witness_divisor_uniform(
    f: sym.SymbolSpec, q, c
) -> tuple[sym.TruncatedSequence | None, float]:
    """Uniform profile on the divisors of c: lower bound for the (q, q) norm.

    The value is (1/d(c)) * sum over divisor pairs (n, k) of c of f(n/k),
    the Hoelder step of the diagonal edge case.
    """
    _require_nonnegative(f)
    if not (q != math.inf and 1.0 < q):
        raise PreconditionError(f"diagonal witness needs finite q > 1, got {q}")
    fact = c if isinstance(c, nt.Factorization) else nt.factorize(int(c))
    count = fact.divisor_count
    if count * count > _PAIR_CAP:
        raise ResourceLimitError(
            f"divisor-pair enumeration needs {count}^2 pairs, beyond the cap"
        )
    divs = nt.divisors(fact)
    total = math.fsum(
        sym.evaluate(f, (n, k)) for n in divs for k in divs
    )
    lower = total / count
    x = None
    c_val = fact.value
    if c_val <= _WITNESS_VECTOR_LIMIT:
        arr = np.zeros(c_val + 1)
        weight = count ** (-1.0 / q)
        for d in divs:
            arr[d] = weight
        x = sym.TruncatedSequence(arr, tag="divisor-uniform witness")
    return x, lower


def witness_dual_exponent(
    f: sym.SymbolSpec, p, c, m_len: int | None = None
) -> tuple[sym.TruncatedSequence | None, float]:
    """Dual-exponent profile x_n = f(c/n)^{r/p} / F_c^{1/p}: the q = inf case.

    F_c = sum_n f(c/n)^r with r the conjugate of p (1/r = 1 - 1/p); the
    image entry at c equals F_c^{1/r}, the reported lower bound. p = inf
    degrades to the all-ones profile with r = 1. The sum runs over n <= m_len
    when given (one-sided truncation); naturally supported symbols default
    to the full divisor sum of c.
    """
    _require_nonnegative(f)
    if p == math.inf:
        r = 1.0
    elif 1.0 < p:
        r = p / (p - 1.0)
    else:
        raise PreconditionError(f"dual witness needs p in (1, inf], got {p}")
    fact = c if isinstance(c, nt.Factorization) else nt.factorize(int(c))
    c_val = fact.value
    if sym.is_natural_supported(f):
        terms = []
        for d in nt.iterate_divisors(fact):
            if m_len is not None and c_val // d > m_len:
                continue
            terms.append(abs(sym.evaluate(f, d)) ** r)
        big_f = math.fsum(terms)
    elif f.kind == sym.KIND_PRODUCT_POWER and m_len is None:
        br = f.beta * r
        if br <= 1.0:
            return None, math.inf
        big_f = nt.zeta(br)
        for t, e in fact.pairs:
            geom = math.fsum(t ** (-f.alpha * r * j) for j in range(1, e + 1))
            big_f *= 1.0 + (1.0 - t ** (-br)) * geom
    else:
        reach = m_len if m_len is not None else _WITNESS_VECTOR_LIMIT
        big_f = math.fsum(
            abs(sym.evaluate(f, (c_val, n))) ** r for n in range(1, reach + 1)
        )
    if big_f == 0.0:
        raise PreconditionError("symbol vanishes on c/N; dual witness undefined")
    lower = big_f ** (1.0 / r)
    x = None
    if c_val <= _WITNESS_VECTOR_LIMIT and sym.is_natural_supported(f):
        arr = np.zeros(c_val + 1)
        for d in nt.iterate_divisors(fact):
            value = abs(sym.evaluate(f, d))
            n = c_val // d
            if p == math.inf:
                arr[n] = 1.0
            else:
                arr[n] = value ** (r / p) * big_f ** (-1.0 / p)
        x = sym.TruncatedSequence(arr, tag="dual-exponent witness")
    return x, lower


@dataclass(frozen=True)
class AscentResult:
    value: float
    iterations: int
    trajectory: tuple[float, ...]
    x: sym.TruncatedSequence


def _sparse_truncation(f: sym.SymbolSpec, n: int):
    if sym.is_natural_supported(f):
        values = sym.natural_values(f, n)
        rows = []
        cols = []
        data = []
        for k in range(1, n + 1):
            mult = np.arange(k, n + 1, k)
            rows.append(mult - 1)
            cols.append(np.full(mult.shape, k - 1))
            data.append(values[mult // k])
        mat = sp.csr_matrix(
            (np.concatenate(data), (np.concatenate(rows), np.concatenate(cols))),
            shape=(n, n),
        )
        return mat
    return sp.csr_matrix(op.build_matrix(f, n).entries)


def lower_bound_ascent(
    f: sym.SymbolSpec,
    n: int,
    p: float,
    q: float,
    max_iter: int = 500,
    tol: float = 1e-12,
) -> AscentResult:
    """Mixed-norm power ascent on the N x N truncation.

    Iterates x <- normalize_p((A^T (Ax)^{q-1})^{1/(p-1)}) from the uniform
    positive vector; the recorded values ||Ax||_q over unit-p x are
    nondecreasing for an entrywise-nonnegative truncation, so the final
    value certifies a lower bound for the truncation norm and hence for
    the full operator norm. It is not claimed to be the global truncation
    norm. p = 1 and q = inf are rejected; those edges have exact witnesses.
    """
    _require_nonnegative(f)
    if not (1.0 < p <= q < math.inf):
        raise PreconditionError(
            "ascent needs 1 < p <= q < inf; use the witnesses at the edges"
        )
    if sym.evaluate(f, 1) <= 0.0:
        raise PreconditionError("ascent requires f(1) > 0")
    if n < 1:
        raise PreconditionError("truncation size must be positive")
    mat = _sparse_truncation(f, n)
    x = np.full(n, 1.0, dtype=np.float64)
    x /= np.linalg.norm(x, p)
    trajectory: list[float] = []
    prev = -math.inf
    for _ in range(max_iter):
        y = mat @ x
        value = float(np.linalg.norm(y, q))
        trajectory.append(value)
        if value - prev <= tol * max(value, 1.0):
            break
        prev = value
        z = y ** (q - 1.0)
        w = mat.T @ z
        peak = w.max()
        if peak <= 0.0:
            break
        w = (w / peak) ** (1.0 / (p - 1.0))
        x = w / np.linalg.norm(w, p)
    seq = sym.TruncatedSequence(np.concatenate(([0.0], x)), tag="ascent vector")
    return AscentResult(
        value=trajectory[-1],
        iterations=len(trajectory),
        trajectory=tuple(trajectory),
        x=seq,
    )


@dataclass(frozen=True)
class NormBracket:
    """The pair lower <= ||M_f||_{p,q} <= upper with provenance metadata."""

    p: float
    q: float
    r: float
    lower: float
    upper: float
    witness_kind: str
    witness_params: dict = field(default_factory=dict)
    n: int | None = None
    iterations: int | None = None
    elapsed_ms: float = 0.0

    def __post_init__(self):
        if math.isfinite(self.upper) and self.lower > self.upper * (1.0 + 1e-12):
            raise PreconditionError(
                f"bracket violated: lower {self.lower} exceeds upper {self.upper}"
            )


def _extended_to_json(value):
    if value == math.inf:
        return "inf"
    return value


def bracket_to_json_dict(b: NormBracket) -> dict:
    return {
        "p": _extended_to_json(b.p),
        "q": _extended_to_json(b.q),
        "r": _extended_to_json(b.r),
        "lower": "diverges" if math.isinf(b.lower) else b.lower,
        "upper": "diverges" if math.isinf(b.upper) else b.upper,
        "witnessKind": b.witness_kind,
        "witnessParams": b.witness_params,
        "N": b.n,
        "iterations": b.iterations,
        "elapsed_ms": b.elapsed_ms,
    }


def bracket(
    f: sym.SymbolSpec,
    p,
    q,
    strategy: str = "auto",
    T: int = 13,
    k: int = 2,
    c=None,
    n: int = 4096,
    max_iter: int = 500,
    tol: float = 1e-10,
    t_bound: int = 10 ** 4,
) -> NormBracket:
    """Best available bracket for the (p, q) operator norm.

    strategy "auto" picks the proof construction matching the edge case
    (delta at p = 1, divisor-uniform at p = q, dual-exponent at q = inf)
    and falls back to the iterative ascent for interior pairs. T, k size
    the primorial moduli; their defaults keep divisor enumeration cheap.
    """
    start = time.perf_counter()
    r = conjugate_r(p, q)
    upper = upper_bound_theorem1(f, p, q, t_bound, tol)
    chosen = strategy
    if strategy == "auto":
        if p == 1.0:
            chosen = "delta"
        elif p == q:
            chosen = "diagonal"
        elif q == math.inf:
            chosen = "dual"
        else:
            chosen = "ascent"
    iterations = None
    n_meta: int | None = None
    if chosen == "delta":
        modulus = c if c is not None else (
            1 if sym.is_natural_supported(f) else nt.primorial_power(T, k)
        )
        _, lower = witness_delta(f, q, modulus)
        fact = modulus if isinstance(modulus, nt.Factorization) else nt.factorize(int(modulus))
        params = {"c": str(fact.value)}
        kind = "deltaAtC"
    elif chosen == "diagonal":
        if p != q:
            raise PreconditionError("diagonal witness applies to p = q only")
        modulus = c if c is not None else nt.diagonal_witness_modulus(T)
        _, lower = witness_divisor_uniform(f, q, modulus)
        fact = modulus if isinstance(modulus, nt.Factorization) else nt.factorize(int(modulus))
        params = {"c": str(fact.value), "T": T}
        kind = "divisorUniform"
    elif chosen == "dual":
        if q != math.inf:
            raise PreconditionError("dual witness applies to q = inf only")
        modulus = c if c is not None else nt.primorial_power(T, k)
        _, lower = witness_dual_exponent(f, p, modulus)
        fact = modulus if isinstance(modulus, nt.Factorization) else nt.factorize(int(modulus))
        params = {"c": str(fact.value), "T": T, "k": k}
        kind = "dualExponent"
    elif chosen == "ascent":
        result = lower_bound_ascent(f, n, p, q, max_iter, tol)
        lower = result.value
        iterations = result.iterations
        n_meta = n
        params = {"maxIter": max_iter, "tol": tol}
        kind = "ascent"
    else:
        raise PreconditionError(f"unknown bracket strategy {strategy!r}")
    elapsed = (time.perf_counter() - start) * 1000.0
    return NormBracket(
        p=float(p),
        q=float(q),
        r=float(r),
        lower=lower,
        upper=upper,
        witness_kind=kind,
        witness_params=params,
        n=n_meta,
        iterations=iterations,
        elapsed_ms=elapsed,
    )
