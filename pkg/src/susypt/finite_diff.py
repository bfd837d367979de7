"""Fourth-order finite-difference stencils on uniform grids."""

from __future__ import annotations

import numpy as np

from .errors import GridTooCoarse

_LEFT1 = (
    np.array([-25.0, 48.0, -36.0, 16.0, -3.0]),
    np.array([-3.0, -10.0, 18.0, -6.0, 1.0]),
)


def uniform_spacing(x: np.ndarray, rtol: float = 1e-9) -> float:
    x = np.asarray(x, dtype=float)
    if x.ndim != 1 or x.size < 5:
        raise GridTooCoarse("need a 1-D grid with at least 5 points")
    d = np.diff(x)
    h = float(d.mean())
    if h <= 0 or np.max(np.abs(d - h)) > rtol * max(1.0, np.max(np.abs(x))):
        raise GridTooCoarse("grid must be strictly increasing and uniform")
    return h


def derivative(f: np.ndarray, h: float) -> np.ndarray:
    """First derivative, central in the interior, one-sided at the two end pairs."""
    f = np.asarray(f)
    out = np.empty_like(f, dtype=np.result_type(f, float))
    out[2:-2] = (f[:-4] - 8 * f[1:-3] + 8 * f[3:-1] - f[4:]) / (12 * h)
    for i, w in enumerate(_LEFT1):
        out[i] = w @ f[:5] / (12 * h)
        out[-1 - i] = -(w @ f[:-6:-1]) / (12 * h)
    return out


def second_derivative_interior(f: np.ndarray, h: float) -> np.ndarray:
    """Second derivative on points 2..N-3 (two points dropped at each end)."""
    f = np.asarray(f)
    return (-f[:-4] + 16 * f[1:-3] - 30 * f[2:-2] + 16 * f[3:-1] - f[4:]) / (12 * h * h)


def require_resolution(h: float, scale: float, factor: float = 1e-2) -> None:
    """Raise GridTooCoarse when h exceeds factor * scale."""
    if h > factor * scale:
        raise GridTooCoarse(f"spacing {h:.3g} exceeds {factor:g} x oscillation scale {scale:.3g}")
