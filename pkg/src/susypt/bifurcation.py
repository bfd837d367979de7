"""Reality classification of spectra and the PT-breaking threshold in (V1, V2).

The scanned potential is V(x) = -V1 sech^2(alpha x) - i V2 sech(alpha x) tanh(alpha x),
whose continuum starts at zero.  Classification looks at the eigenvalues
with Re(E) below ``e_window * alpha^2``: the bound states together with the
lowest box states.  Near threshold the coalescing pair is only weakly bound
and leaks into the box edges, so a strict localization cut would hide it;
``localized_count`` still reports the strictly localized states.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .catalog import Domain, Family, PtClass, SuperpotentialSpec, ahmed_coefficients, ahmed_form, pt_condition
from .errors import NoSignChange, NotPTError, SusyPTError
from .numerics import Grid, default_grid, discretize_hamiltonian, eigen_window, localization_filter

TOL_IM = 1e-2
PAIR_TOL = 2e-2
E_WINDOW = 1.0


class SpectrumKind(str, Enum):
    Real = "Real"
    ComplexPaired = "ComplexPaired"
    Unpaired = "Unpaired"


@dataclass(frozen=True)
class SpectrumClass:
    kind: SpectrumKind
    max_im: float
    pairs: int = 0
    details: str = ""

    @property
    def is_real(self) -> bool:
        return self.kind is SpectrumKind.Real


def classify_spectrum(eigs, tol_im: float = TOL_IM, pair_tol: float = PAIR_TOL) -> SpectrumClass:
    """Real if every |Im| < tol_im; ComplexPaired if the complex ones pair up under conjugation."""
    w = np.asarray(list(eigs), dtype=complex)
    max_im = float(np.max(np.abs(w.imag))) if w.size else 0.0
    upper = [z for z in w if z.imag >= tol_im]
    lower = [z for z in w if z.imag <= -tol_im]
    if not upper and not lower:
        return SpectrumClass(SpectrumKind.Real, max_im)
    pairs = 0
    left = list(lower)
    orphans = []
    for z in sorted(upper, key=lambda c: (c.real, c.imag)):
        if left:
            gaps = [abs(z - np.conj(m)) for m in left]
            j = int(np.argmin(gaps))
            if gaps[j] < pair_tol:
                left.pop(j)
                pairs += 1
                continue
        orphans.append(z)
    orphans.extend(left)
    if orphans:
        listed = ", ".join(f"{z.real:.6g}{z.imag:+.6g}j" for z in orphans)
        return SpectrumClass(SpectrumKind.Unpaired, max_im, pairs, f"no conjugate partner: {listed}")
    return SpectrumClass(SpectrumKind.ComplexPaired, max_im, pairs)


@dataclass(frozen=True)
class ScanRecord:
    V1: float
    V2: float
    cls: SpectrumClass | None
    localized_count: int
    max_im: float
    near_critical: bool = False
    error: str | None = None

    @property
    def failed(self) -> bool:
        return self.error is not None


def _grid_or_default(grid, alpha):
    return default_grid(Domain.FULL_LINE, alpha) if grid is None else grid


def scan_sample(V1: float, V2: float, grid: Grid | None = None, tol_im: float = TOL_IM,
                pair_tol: float = PAIR_TOL, alpha: float = 1.0, e_window: float = E_WINDOW) -> ScanRecord:
    """Classify the low-lying spectrum of the (V1, V2) form; library errors are recorded, not raised."""
    grid = _grid_or_default(grid, alpha)
    try:
        H = discretize_hamiltonian(ahmed_form(V1, V2, alpha), grid)
        window = eigen_window(H, e_window * alpha**2)
        localized = localization_filter(window, grid)
    except SusyPTError as exc:
        return ScanRecord(V1, V2, None, 0, float("nan"), False, f"{type(exc).__name__}: {exc}")
    cls = classify_spectrum(window.eigenvalues, tol_im, pair_tol)
    near = tol_im / 2 <= cls.max_im <= 2 * tol_im
    return ScanRecord(V1, V2, cls, len(localized), cls.max_im, near)


def _thread_count() -> int:
    env = os.environ.get("SUSYPT_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def sweep_values(v2_min: float, v2_max: float, step: float) -> np.ndarray:
    if not step > 0:
        raise ValueError("step must be positive")
    if not (np.isfinite(v2_min) and np.isfinite(v2_max)) or v2_max < v2_min:
        raise ValueError("V2 range must be finite with v2_min <= v2_max")
    count = int(np.floor((v2_max - v2_min) / step + 1e-9)) + 1
    return v2_min + step * np.arange(count)


def parameter_sweep(V1: float, v2_min: float, v2_max: float, step: float, grid: Grid | None = None,
                    tol_im: float = TOL_IM, pair_tol: float = PAIR_TOL, alpha: float = 1.0,
                    e_window: float = E_WINDOW, threads: int | None = None) -> list[ScanRecord]:
    """One record per V2 sample, sorted by V2 whatever the completion order."""
    values = sweep_values(v2_min, v2_max, step)
    grid = _grid_or_default(grid, alpha)
    work = lambda v2: scan_sample(V1, float(v2), grid, tol_im, pair_tol, alpha, e_window)
    n_threads = threads or _thread_count()
    if n_threads == 1 or len(values) == 1:
        records = [work(v) for v in values]
    else:
        with ThreadPoolExecutor(max_workers=n_threads) as pool:
            records = list(pool.map(work, values))
    return sorted(records, key=lambda r: r.V2)


def classification_flips(records) -> int:
    """Number of Real <-> non-Real changes along a sorted sweep (failed samples skipped)."""
    states = [r.cls.is_real for r in records if r.cls is not None]
    return sum(a != b for a, b in zip(states, states[1:]))


def critical_point(V1: float, lo: float, hi: float, tol_param: float = 0.05, grid: Grid | None = None,
                   tol_im: float = TOL_IM, pair_tol: float = PAIR_TOL, alpha: float = 1.0,
                   e_window: float = E_WINDOW) -> float:
    """Bisect on V2 for the switch between a real and a complex spectrum; returns the bracket midpoint."""
    if not lo < hi:
        raise ValueError("bracket must satisfy lo < hi")
    if not tol_param > 0:
        raise ValueError("tol_param must be positive")
    grid = _grid_or_default(grid, alpha)

    def is_real(v2):
        rec = scan_sample(V1, v2, grid, tol_im, pair_tol, alpha, e_window)
        if rec.failed:
            raise SusyPTError(f"sample V2={v2} failed: {rec.error}")
        return rec.max_im < tol_im

    real_lo, real_hi = is_real(lo), is_real(hi)
    if real_lo == real_hi:
        raise NoSignChange(f"V2={lo} and V2={hi} both classify as {'Real' if real_lo else 'complex'}")
    while hi - lo >= tol_param:
        mid = 0.5 * (lo + hi)
        if is_real(mid) == real_lo:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def susy_phase_prediction(spec: SuperpotentialSpec) -> SpectrumKind:
    """Real for C = 0, ComplexPaired in the broken phase."""
    if spec.family is not Family.AhmedScarf:
        raise ValueError("phase prediction is defined for the Ahmed family")
    pt = pt_condition(spec)
    if pt is PtClass.NonPT:
        raise NotPTError("parameters violate the PT condition")
    return SpectrumKind.Real if pt is PtClass.UnbrokenPT else SpectrumKind.ComplexPaired


def spec_scan_record(spec: SuperpotentialSpec, grid: Grid | None = None, **kw) -> ScanRecord:
    """Scan record of the PT form built from an Ahmed spec."""
    V1, V2 = ahmed_coefficients(spec)
    return scan_sample(V1, V2, grid, alpha=spec.alpha, **kw)
