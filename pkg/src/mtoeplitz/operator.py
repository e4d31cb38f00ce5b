"""Truncations of the operator with entries f(i/j), and fast applies.

Two routes everywhere: a dense matrix oracle for small truncations, and
matrix-free accumulation along the divisor structure. Naturally supported
symbols act by Dirichlet convolution (lower-triangular matrices); general
symbols act through their enumerated rational support.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import PreconditionError, ResourceLimitError
from . import numtheory as nt
from . import symbols as sym

# Dense truncations above this entry count are refused; use apply().
MATRIX_BUDGET = 2 ** 24


@dataclass(frozen=True)
class TruncatedMatrix:
    """Row-major N x N truncation with entries f(i/j)."""

    entries: np.ndarray
    nonnegative: bool
    lower_triangular: bool

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def multiply(self, x) -> np.ndarray:
        """Dense oracle: returns the 1-based image of a 1-based vector."""
        arr = sym.as_one_based(x)
        if arr.shape[0] - 1 != self.n:
            raise PreconditionError("vector length does not match matrix")
        out = np.zeros_like(arr)
        out[1:] = self.entries @ arr[1:]
        return out

    def multiply_adjoint(self, x) -> np.ndarray:
        arr = sym.as_one_based(x)
        if arr.shape[0] - 1 != self.n:
            raise PreconditionError("vector length does not match matrix")
        out = np.zeros_like(arr)
        out[1:] = self.entries.T @ arr[1:]
        return out


def build_matrix(f: sym.SymbolSpec, n: int) -> TruncatedMatrix:
    """Exact N x N truncation a_{ij} = f(i/j).

    Refuses truncations beyond MATRIX_BUDGET entries; callers that large
    should use the matrix-free apply/apply_adjoint instead.
    """
    if n < 1:
        raise PreconditionError("matrix dimension must be positive")
    if n * n > MATRIX_BUDGET:
        raise ResourceLimitError(
            f"dense {n}x{n} truncation exceeds the {MATRIX_BUDGET}-entry "
            "budget; use the matrix-free apply"
        )
    a = np.zeros((n, n), dtype=np.float64)
    if sym.is_natural_supported(f):
        values = sym.natural_values(f, n)
        for j in range(1, n + 1):
            multiples = np.arange(j, n + 1, j)
            a[multiples - 1, j - 1] = values[multiples // j]
        lower = True
    elif f.kind == sym.KIND_PRODUCT_POWER:
        idx = np.arange(1, n + 1, dtype=np.int64)
        g = np.gcd.outer(idx, idx).astype(np.float64)
        rows = idx.astype(np.float64)[:, None]
        cols = idx.astype(np.float64)[None, :]
        a = (rows / g) ** (-f.alpha) * (cols / g) ** (-f.beta)
        lower = False
    else:
        for u, v, value in sym.enumerate_rational_support(f, n):
            g_max = min(n // u, n // v)
            for g in range(1, g_max + 1):
                a[u * g - 1, v * g - 1] = value
        lower = all(u >= v for u, v, _ in sym.enumerate_rational_support(f, n))
    return TruncatedMatrix(
        entries=a,
        nonnegative=bool(np.all(a >= 0.0)),
        lower_triangular=lower,
    )


def apply(f: sym.SymbolSpec, x, out_len: int | None = None) -> sym.TruncatedSequence:
    """y_n = sum_{k <= N} f(n/k) x_k for n <= out_len (default N).

    Naturally supported symbols take the Dirichlet-convolution fast path,
    which shares its accumulation order with numtheory.dirichlet_convolve
    so the two agree bit for bit. General symbols accumulate over the
    enumerated rational support (cost grows with out_len * N).
    Entries above the truncation are never invented: for nonnegative data
    the output undercounts the infinite image, one-sidedly.
    """
    arr = sym.as_one_based(x)
    n_in = arr.shape[0] - 1
    m = n_in if out_len is None else int(out_len)
    if m < 1:
        raise PreconditionError("output length must be positive")
    if sym.is_natural_supported(f):
        values = sym.natural_values(f, m)
        padded = np.zeros(m + 1)
        upto = min(n_in, m)
        padded[1 : upto + 1] = arr[1 : upto + 1]
        out = nt.dirichlet_convolve(values, padded)
        return sym.TruncatedSequence(out)
    out = np.zeros(m + 1)
    for u, v, value in sym.enumerate_rational_support(f, max(m, n_in)):
        g_max = min(m // u, n_in // v)
        if g_max >= 1:
            out[u::u][:g_max] += value * arr[v::v][:g_max]
    return sym.TruncatedSequence(out)


def apply_adjoint(
    f: sym.SymbolSpec, x, out_len: int | None = None
) -> sym.TruncatedSequence:
    """y_n = sum_{k <= N} f(k/n) x_k: the transpose action."""
    arr = sym.as_one_based(x)
    n_in = arr.shape[0] - 1
    m = n_in if out_len is None else int(out_len)
    if m < 1:
        raise PreconditionError("output length must be positive")
    out = np.zeros(m + 1)
    if sym.is_natural_supported(f):
        values = sym.natural_values(f, n_in)
        for j in range(1, n_in + 1):
            coeff = values[j]
            if coeff != 0.0:
                g_max = min(m, n_in // j)
                out[1 : g_max + 1] += coeff * arr[j::j][:g_max]
        return sym.TruncatedSequence(out)
    for u, v, value in sym.enumerate_rational_support(f, max(m, n_in)):
        g_max = min(m // v, n_in // u)
        if g_max >= 1:
            out[v::v][:g_max] += value * arr[u::u][:g_max]
    return sym.TruncatedSequence(out)


def matrix_to_csv(mat: TruncatedMatrix) -> str:
    """One row per line, 17-significant-digit decimals."""
    lines = []
    for row in mat.entries:
        lines.append(",".join(f"{v:.17g}" for v in row))
    return "\n".join(lines) + "\n"


def vector_to_csv(x) -> str:
    arr = sym.as_one_based(x)
    return ",".join(f"{v:.17g}" for v in arr[1:]) + "\n"


def infinity_norm_gap(f: sym.SymbolSpec, n_in: int, m: int) -> float:
    """Documented one-sided truncation bias: the undercount is monotone.

    Returns the largest column sum beyond the output window for a
    nonnegative naturally supported symbol, zero when m covers every
    multiple. Diagnostic only.
    """
    if not sym.is_natural_supported(f) or not sym.is_nonnegative(f):
        raise PreconditionError("gap diagnostic needs nonnegative natural support")
    values = sym.natural_values(f, max(2 * m, 2))
    worst = 0.0
    for k in range(1, n_in + 1):
        tail = math.fsum(values[j] for j in range(m // k + 1, 2 * m // k + 1))
        worst = max(worst, tail)
    return worst
