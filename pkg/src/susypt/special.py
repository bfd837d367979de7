"""Jacobi and Laguerre polynomials with complex parameters and argument."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateRecurrence

_DEGENERATE_TOL = 1e-13


@dataclass(frozen=True)
class JacobiParams:
    n: int
    a: complex
    b: complex

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("degree must be non-negative")


def _pochhammer(x, k: int):
    out = np.ones_like(x, dtype=complex) if isinstance(x, np.ndarray) else 1 + 0j
    for j in range(k):
        out = out * (x + j)
    return out


def jacobi_series(n: int, a: complex, b: complex, z):
    """P_n^(a,b)(z) = sum_s (n+a+b+1)_s (a+s+1)_{n-s} / (s! (n-s)!) ((z-1)/2)^s.

    Free of divisions by parameter-dependent quantities, so it is valid for
    every complex (a, b).
    """
    z = np.asarray(z, dtype=complex)
    t = (z - 1) / 2
    total = np.zeros_like(z)
    fact_s = 1.0
    for s in range(n + 1):
        if s:
            fact_s *= s
        fact_ns = float(np.prod(np.arange(1, n - s + 1))) if n - s > 0 else 1.0
        coef = _pochhammer(n + a + b + 1, s) * _pochhammer(a + s + 1, n - s) / (fact_s * fact_ns)
        total = total + coef * t**s
    return total


def jacobi_recurrence(n: int, a: complex, b: complex, z):
    """Three-term recurrence; raises DegenerateRecurrence on a vanishing leading coefficient."""
    z = np.asarray(z, dtype=complex)
    p_prev = np.ones_like(z)
    if n == 0:
        return p_prev
    p = (a + 1) + (a + b + 2) * (z - 1) / 2
    for k in range(2, n + 1):
        s = 2 * k + a + b
        lead = 2 * k * (k + a + b) * (s - 2)
        if abs(lead) < _DEGENERATE_TOL * max(1.0, abs(s) ** 3):
            raise DegenerateRecurrence(f"leading coefficient vanishes at k={k}")
        c1 = (s - 1) * (s * (s - 2) * z + a * a - b * b)
        c2 = 2 * (k + a - 1) * (k + b - 1) * s
        p_prev, p = p, (c1 * p - c2 * p_prev) / lead
    return p


def jacobi(n: int, a: complex, b: complex, z):
    """P_n^(a,b)(z): recurrence first, series when the recurrence degenerates."""
    scalar = np.ndim(z) == 0
    try:
        out = jacobi_recurrence(n, a, b, z)
    except DegenerateRecurrence:
        out = jacobi_series(n, a, b, z)
    return complex(out) if scalar else out


def jacobi_polynomial(p: JacobiParams, z):
    return jacobi(p.n, p.a, p.b, z)


def laguerre_polynomial(n: int, lam: complex, z):
    """Generalised Laguerre L_n^(lam)(z) = sum_k (lam+k+1)_{n-k}/(n-k)! (-z)^k / k!."""
    z = np.asarray(z, dtype=complex)
    total = np.zeros_like(z)
    for k in range(n + 1):
        coef = _pochhammer(lam + k + 1, n - k) / float(np.prod(np.arange(1, n - k + 1)))
        total = total + coef * (-z) ** k / float(np.prod(np.arange(1, k + 1)))
    return total
