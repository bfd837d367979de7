"""Finite-difference Hamiltonians, dense eigensolves and spectrum checks.

H = -d^2/dx^2 + V(x) is discretized with the 3-point stencil on the interior
points of a uniform grid with Dirichlet walls at both ends.  The dense
eigenproblem is handed to LAPACK (zgeev through scipy), which balances,
reduces to Hessenberg form and runs shifted QR.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Sequence

import numpy as np
import scipy.linalg

from .catalog import (
    Domain,
    PotentialForm,
    SuperpotentialSpec,
    build_partner_potentials,
    check_domain,
    eval_potential,
    singular_points,
)
from .errors import DimensionCap, NoConvergence, SingularityTooClose
from .finite_diff import require_resolution, second_derivative_interior, uniform_spacing
from .shape_invariance import AlgebraicSpectrum, algebraic_spectrum

DEFAULT_CAP = 4000
RESIDUAL_GATE = 1e-8


@dataclass(frozen=True)
class Grid:
    x_min: float
    x_max: float
    n_points: int

    def __post_init__(self):
        if not (math.isfinite(self.x_min) and math.isfinite(self.x_max)):
            raise ValueError("grid bounds must be finite")
        if not self.x_min < self.x_max:
            raise ValueError("x_min must be below x_max")
        if int(self.n_points) != self.n_points or self.n_points < 3:
            raise ValueError("n_points must be an integer >= 3")

    @property
    def h(self) -> float:
        return (self.x_max - self.x_min) / (self.n_points - 1)

    @property
    def points(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.n_points)

    @property
    def interior(self) -> np.ndarray:
        return self.points[1:-1]

    def refined(self) -> "Grid":
        """Same box, half the spacing."""
        return replace(self, n_points=2 * (self.n_points - 1) + 1)


def default_grid(domain: Domain, alpha: float = 1.0, n_points: int = 2001) -> Grid:
    """Box used when none is given; singular ends are kept 10h from the pole."""
    domain = Domain(domain)
    if domain is Domain.FULL_LINE:
        return Grid(-20.0 / alpha, 20.0 / alpha, n_points)
    if domain is Domain.HALF_LINE:
        h = (30.0 / alpha) / (n_points - 1 + 10)
        return Grid(10 * h, 30.0 / alpha, n_points)
    width = math.pi / alpha
    h = width / (n_points - 1 + 20)
    lo = -width / 2 if domain is Domain.SYM_INTERVAL else 0.0
    return Grid(lo + 10 * h, lo + width - 10 * h, n_points)


@dataclass(frozen=True, eq=False)
class HamiltonianMatrix:
    """Dense tridiagonal(-1/h^2, 2/h^2 + V, -1/h^2) on the interior points."""

    matrix: np.ndarray
    grid: Grid
    potential: np.ndarray
    description: str = ""

    @property
    def dimension(self) -> int:
        return self.matrix.shape[0]

    @property
    def x(self) -> np.ndarray:
        return self.grid.interior

    def matvec(self, v: np.ndarray) -> np.ndarray:
        """H @ v using the band structure; v may hold vectors as columns."""
        h2 = self.grid.h ** 2
        d = (2.0 / h2 + self.potential).reshape((-1,) + (1,) * (v.ndim - 1))
        out = d * v
        out[1:] -= v[:-1] / h2
        out[:-1] -= v[1:] / h2
        return out

    def banded(self, shift: complex = 0.0) -> np.ndarray:
        """(H - shift) in the (1, 1) layout of scipy.linalg.solve_banded."""
        n = self.dimension
        h2 = self.grid.h ** 2
        ab = np.zeros((3, n), dtype=complex)
        ab[0, 1:] = -1.0 / h2
        ab[1] = 2.0 / h2 + self.potential - shift
        ab[2, :-1] = -1.0 / h2
        return ab


def discretize_hamiltonian(form: PotentialForm, grid: Grid) -> HamiltonianMatrix:
    x = grid.points
    check_domain(form.domain, form.alpha, x)
    h = grid.h
    for pole in singular_points(form.domain, form.alpha):
        if form.coefficients and np.min(np.abs(x - pole)) < 10 * h * (1 - 1e-9):
            raise SingularityTooClose(f"grid comes within 10h of the pole at x={pole:.6g}")
    xi = grid.interior
    v = np.asarray(eval_potential(form, xi), dtype=complex)
    n = xi.size
    m = np.zeros((n, n), dtype=complex)
    idx = np.arange(n)
    m[idx, idx] = 2.0 / h**2 + v
    m[idx[:-1], idx[1:]] = -1.0 / h**2
    m[idx[1:], idx[:-1]] = -1.0 / h**2
    desc = ", ".join(f"{c:.6g}*{t}" for t, c in form.coefficients.items()) or "0"
    if form.constant:
        desc += f" + {form.constant:.6g}"
    return HamiltonianMatrix(m, grid, v, desc)


@dataclass(frozen=True, eq=False)
class EigenDecomposition:
    """Eigenvalues sorted by (Re, Im); vectors are unit-norm columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray | None = None
    localization: np.ndarray | None = None
    residuals: np.ndarray | None = None
    x: np.ndarray | None = None
    complete: bool = True

    def __len__(self):
        return len(self.eigenvalues)

    def subset(self, mask) -> "EigenDecomposition":
        mask = np.asarray(mask)
        pick = lambda a, cols=False: None if a is None else (a[:, mask] if cols else a[mask])
        return EigenDecomposition(
            self.eigenvalues[mask],
            pick(self.eigenvectors, cols=True),
            pick(self.localization),
            pick(self.residuals),
            self.x,
            complete=False,
        )


def _as_matrix(H) -> np.ndarray:
    m = H.matrix if isinstance(H, HamiltonianMatrix) else np.asarray(H)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("matrix must be square")
    return m.astype(complex, copy=False)


def _residuals(H, values: np.ndarray, vectors: np.ndarray) -> np.ndarray:
    hv = H.matvec(vectors) if isinstance(H, HamiltonianMatrix) else _as_matrix(H) @ vectors
    r = np.linalg.norm(hv - vectors * values[None, :], axis=0)
    return r / np.linalg.norm(vectors, axis=0)


def _check_gate(residuals: np.ndarray, values: np.ndarray, gate: float) -> None:
    bad = np.flatnonzero(~(residuals < gate))
    if bad.size:
        i = int(bad[0])
        raise NoConvergence(f"eigenpair {i} (lambda={values[i]:.6g}) has residual {residuals[i]:.3g}")


def eigen_all(H, want_vectors: bool = False, cap: int = DEFAULT_CAP) -> EigenDecomposition:
    """All eigenvalues (and optionally right eigenvectors) of a dense complex matrix."""
    m = _as_matrix(H)
    n = m.shape[0]
    if n > cap:
        raise DimensionCap(f"dimension {n} exceeds cap {cap}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    try:
        if want_vectors:
            w, v = scipy.linalg.eig(m, right=True, check_finite=False)
        else:
            w, v = scipy.linalg.eigvals(m, check_finite=False), None
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(f"dense eigensolver failed: {exc}") from exc
    order = np.lexsort((w.imag, w.real))
    w = w[order]
    x = H.x if isinstance(H, HamiltonianMatrix) else None
    if v is None:
        return EigenDecomposition(w, x=x)
    v = v[:, order]
    v = v / np.linalg.norm(v, axis=0)
    res = _residuals(H, w, v)
    _check_gate(res, w, RESIDUAL_GATE)
    return EigenDecomposition(w, v, residuals=res, x=x)


def _inverse_iteration(H: HamiltonianMatrix, lam: complex, max_iter: int = 8) -> tuple[np.ndarray, float]:
    n = H.dimension
    scale = 4.0 / H.grid.h**2
    shift = lam + 1e-13 * scale * (1 + 1j)
    ab = H.banded(shift)
    v = np.exp(1j * np.linspace(0.0, 1.0, n)) * (1.0 + np.linspace(0.0, 1.0, n))
    v /= np.linalg.norm(v)
    res = np.inf
    for _ in range(max_iter):
        v = scipy.linalg.solve_banded((1, 1), ab, v, check_finite=False)
        v /= np.linalg.norm(v)
        res = float(np.linalg.norm(H.matvec(v) - lam * v))
        if res < 0.1 * RESIDUAL_GATE:
            break
    return v, res


def eigen_window(H: HamiltonianMatrix, e_max: float, want_vectors: bool = True,
                 cap: int = DEFAULT_CAP) -> EigenDecomposition:
    """Eigenpairs with Re(lambda) < e_max.

    All eigenvalues come from the dense solver; vectors for the selected
    ones come from banded inverse iteration, which costs O(n) per state.
    """
    full = eigen_all(H, want_vectors=False, cap=cap)
    w = full.eigenvalues[full.eigenvalues.real < e_max]
    if not want_vectors:
        return EigenDecomposition(w, x=H.x, complete=False)
    vecs = np.empty((H.dimension, w.size), dtype=complex)
    res = np.empty(w.size)
    for j, lam in enumerate(w):
        vecs[:, j], res[j] = _inverse_iteration(H, lam)
    _check_gate(res, w, RESIDUAL_GATE)
    return EigenDecomposition(w, vecs, residuals=res, x=H.x, complete=False)


def _edge_mask(x: np.ndarray, edge_fraction: float, open_ends: Sequence[str]) -> np.ndarray:
    lo, hi = x[0], x[-1]
    width = edge_fraction * (hi - lo) / 2
    mask = np.zeros(x.shape, dtype=bool)
    if "left" in open_ends:
        mask |= x < lo + width
    if "right" in open_ends:
        mask |= x > hi - width
    return mask


def localization_scores(decomp: EigenDecomposition, x=None, edge_fraction: float = 0.1,
                        open_ends: Sequence[str] = ("left", "right")) -> np.ndarray:
    if decomp.eigenvectors is None:
        raise ValueError("localization needs eigenvectors")
    if isinstance(x, Grid):
        x = x.interior
    x = decomp.x if x is None else np.asarray(x, dtype=float)
    prob = np.abs(decomp.eigenvectors) ** 2
    edge = prob[_edge_mask(x, edge_fraction, open_ends)].sum(axis=0)
    return 1.0 - edge / prob.sum(axis=0)


def localization_filter(decomp: EigenDecomposition, grid=None, edge_fraction: float = 0.1,
                        mass_tol: float = 1e-6,
                        open_ends: Sequence[str] = ("left", "right")) -> EigenDecomposition:
    """Keep states whose probability in the outer edge_fraction of the box is below mass_tol.

    The edge region is split evenly between the open ends; a wall sitting on
    a pole of the potential is not an open end.
    """
    x = grid.interior if isinstance(grid, Grid) else grid
    scores = localization_scores(decomp, x, edge_fraction, open_ends)
    kept = decomp.subset(1.0 - scores < mass_tol)
    return replace(kept, localization=scores[1.0 - scores < mass_tol])


def _sample_arrays(psi):
    if hasattr(psi, "grid") and hasattr(psi, "values"):
        return np.asarray(psi.grid, dtype=float), np.asarray(psi.values, dtype=complex)
    x, v = psi
    return np.asarray(x, dtype=float), np.asarray(v, dtype=complex)


def schrodinger_residual(form: PotentialForm, psi, E: complex) -> float:
    """||-psi'' + V psi - E psi|| / (||psi|| max(1, |E|)) on interior points."""
    x, v = _sample_arrays(psi)
    h = uniform_spacing(x)
    xi = x[2:-2]
    pot = np.asarray(eval_potential(form, xi), dtype=complex)
    require_resolution(h, 1.0 / math.sqrt(max(float(np.max(np.abs(pot - E))), 1e-300)))
    r = -second_derivative_interior(v, h) + (pot - E) * v[2:-2]
    norm = np.linalg.norm(v[2:-2])
    if norm == 0:
        raise ValueError("zero wavefunction")
    return float(np.linalg.norm(r) / (norm * max(1.0, abs(E))))


@dataclass(frozen=True)
class LevelMatch:
    n: int
    target: complex
    matched: complex | None
    error: float


@dataclass(frozen=True)
class MatchReport:
    matches: tuple[LevelMatch, ...]
    unmatched_analytic: tuple[int, ...]
    unmatched_numeric: tuple[complex, ...]
    duplicates: tuple[int, ...]
    tol: float

    @property
    def passed(self) -> bool:
        return not self.unmatched_analytic and not self.duplicates

    @property
    def max_error(self) -> float:
        return max((m.error for m in self.matches), default=0.0)


def _levels(analytic) -> list[tuple[int, complex]]:
    if isinstance(analytic, AlgebraicSpectrum):
        return list(analytic.levels)
    return [(i, complex(e)) for i, e in enumerate(analytic)]


def match_spectra(numeric, analytic, offset: complex = 0j, tol: float = 5e-3) -> MatchReport:
    """Greedy nearest-neighbour matching of analytic E_n + offset to numeric eigenvalues."""
    vals = np.asarray(numeric.eigenvalues if isinstance(numeric, EigenDecomposition) else numeric,
                      dtype=complex)
    used: dict[int, int] = {}
    matches, missing, dup = [], [], []
    for n, e in _levels(analytic):
        target = e + offset
        if vals.size == 0:
            matches.append(LevelMatch(n, target, None, math.inf))
            missing.append(n)
            continue
        j = int(np.argmin(np.abs(vals - target)))
        err = float(abs(vals[j] - target))
        matches.append(LevelMatch(n, target, complex(vals[j]), err))
        if err > tol:
            missing.append(n)
        elif j in used:
            dup.append(n)
        else:
            used[j] = n
    spare = tuple(complex(v) for j, v in enumerate(vals) if j not in used)
    return MatchReport(tuple(matches), tuple(missing), spare, tuple(dup), tol)


@dataclass(frozen=True)
class ConvergenceTable:
    h: np.ndarray
    values: np.ndarray
    targets: np.ndarray
    errors: np.ndarray = field(repr=False)

    @property
    def ratios(self) -> np.ndarray:
        """errors[i] / errors[i+1]; about 4 for a second-order scheme."""
        return self.errors[:-1] / self.errors[1:]


def convergence_study(target, base_grid: Grid, refinements: int = 3, levels=None,
                      energies=None) -> ConvergenceTable:
    """Halve h `refinements - 1` times and track the error of selected levels.

    ``target`` is a SuperpotentialSpec (V- is diagonalized and compared with
    its algebraic levels) or a PotentialForm with explicit ``energies``.
    """
    if refinements < 2:
        raise ValueError("refinements must be >= 2")
    if isinstance(target, SuperpotentialSpec):
        form = build_partner_potentials(target)[0]
        if energies is None:
            n_max = max(levels) if levels is not None else 1
            energies = algebraic_spectrum(target, n_max, truncate=False).energies
    else:
        form = target
        if energies is None:
            raise ValueError("energies required when target is a PotentialForm")
    energies = np.asarray(energies, dtype=complex)
    if levels is not None:
        energies = energies[list(levels)]
    grid = base_grid
    hs, vals = [], []
    for _ in range(refinements):
        w = eigen_all(discretize_hamiltonian(form, grid)).eigenvalues
        vals.append([w[np.argmin(np.abs(w - e))] for e in energies])
        hs.append(grid.h)
        grid = grid.refined()
    vals = np.array(vals, dtype=complex)
    return ConvergenceTable(np.array(hs), vals, energies, np.abs(vals - energies[None, :]))


__all__ = [
    "Grid",
    "default_grid",
    "HamiltonianMatrix",
    "discretize_hamiltonian",
    "EigenDecomposition",
    "eigen_all",
    "eigen_window",
    "localization_scores",
    "localization_filter",
    "schrodinger_residual",
    "LevelMatch",
    "MatchReport",
    "match_spectra",
    "ConvergenceTable",
    "convergence_study",
]
