"""Ground states, closed-form eigenfunctions and SUSY ladder operators.

Every sample is defined up to one complex constant; samples are scaled to
unit maximum modulus.  Exponents are assembled in log space so that weights
such as sech(x)^a stay finite on wide grids.

Two closed-form variants are provided.  ``"verified"`` uses Jacobi parameters
that make psi_n an exact eigenfunction of V- at the chain energy.
``"printed"`` reproduces the literature expressions verbatim and is always
passed through the Schrodinger residual gate, raising FormMismatch when it
fails.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .catalog import (
    Domain,
    Family,
    as_superpotential,
    build_partner_potentials,
    check_domain,
    eval_superpotential,
)
from .errors import DomainError, FormMismatch, TruncationError
from .finite_diff import derivative, require_resolution, uniform_spacing
from .numerics import schrodinger_residual
from .shape_invariance import chain, chain_energies, level_is_bound
from .special import jacobi, laguerre_polynomial

RESIDUAL_GATE = 1e-6
_LOG2 = math.log(2.0)


@dataclass(frozen=True, eq=False)
class WaveFunctionSample:
    grid: np.ndarray
    values: np.ndarray
    level: int = 0
    branch: int = 1
    label: str = ""

    def __post_init__(self):
        x = np.asarray(self.grid, dtype=float)
        v = np.asarray(self.values, dtype=complex)
        if x.ndim != 1 or x.shape != v.shape:
            raise ValueError("grid and values must be 1-D arrays of equal length")
        if x.size > 1 and not np.all(np.diff(x) > 0):
            raise ValueError("grid must be strictly increasing")
        if not np.all(np.isfinite(v)):
            raise ValueError("wavefunction values must be finite")
        object.__setattr__(self, "grid", x)
        object.__setattr__(self, "values", v)

    def normalized(self) -> "WaveFunctionSample":
        """Scaled to unit maximum modulus."""
        return _with_values(self, _unit_max(self.values))


def _with_values(psi: WaveFunctionSample, values, **kw) -> WaveFunctionSample:
    fields = dict(level=psi.level, branch=psi.branch, label=psi.label)
    fields.update(kw)
    return WaveFunctionSample(psi.grid, values, **fields)


def _unit_max(v: np.ndarray) -> np.ndarray:
    m = np.max(np.abs(v))
    if m == 0 or not np.isfinite(m):
        raise ValueError("cannot normalize a vanishing or non-finite sample")
    return v / m


def _from_log(logw: np.ndarray, poly=1.0) -> np.ndarray:
    """exp(logw) * poly with the largest weight scaled to one."""
    logw = np.asarray(logw, dtype=complex)
    with np.errstate(under="ignore"):
        v = np.exp(logw - np.max(logw.real)) * poly
    return _unit_max(v)


# ------------------------------------------------------------- log building blocks


def _log_cosh(u):
    a = np.abs(u)
    return a + np.log1p(np.exp(-2 * a)) - _LOG2


def _log_sinh(u):
    """log sinh u for u > 0."""
    return u + np.log(-np.expm1(-2 * u)) - _LOG2


def _gd(u):
    """Gudermannian arctan(sinh u), overflow-free."""
    return 2 * np.arctan(np.tanh(u / 2))


# antiderivatives of the shape functions with respect to x
_PRIMITIVES = {
    "tanh": lambda u, al: _log_cosh(u) / al,
    "sech": lambda u, al: _gd(u) / al,
    "coth": lambda u, al: _log_sinh(u) / al,
    "tan": lambda u, al: -np.log(np.cos(u)) / al,
    "cot": lambda u, al: np.log(np.sin(u)) / al,
}


def _log_ground_state(sp, x: np.ndarray) -> np.ndarray:
    out = np.zeros(x.shape, dtype=complex)
    for tag, c in sp.terms().items():
        if tag == "const":
            out -= c * x
        elif tag == "inv_r":
            out -= c * np.log(x)
        else:
            out -= c * _PRIMITIVES[tag](sp.alpha * x, sp.alpha)
    return out


def ground_state_from_W(spec, grid, branch: int | None = None) -> WaveFunctionSample:
    """psi_0 = exp(-int W dx), the zero mode of A = d/dx + W."""
    sp = as_superpotential(spec)
    x = check_domain(sp.domain, sp.alpha, grid)
    return WaveFunctionSample(x, _from_log(_log_ground_state(sp, x)), 0, _branch_of(spec, branch),
                              f"{sp.family.value} psi_0")


def _branch_of(spec, branch):
    if branch is not None:
        return branch
    return getattr(spec, "branch", 1)


def residual_grid(domain, alpha: float = 1.0) -> np.ndarray:
    """Fine uniform grid (h about 1e-3 / alpha) kept clear of poles, for residual checks."""
    domain = Domain(domain)
    if domain is Domain.FULL_LINE:
        return np.linspace(-8.0, 8.0, 16001) / alpha
    if domain is Domain.HALF_LINE:
        return np.linspace(0.3, 8.0, 7701) / alpha
    if domain is Domain.SYM_INTERVAL:
        return np.linspace(-1.4, 1.4, 5601) / alpha
    return np.linspace(0.17, math.pi - 0.17, 5951) / alpha


# ------------------------------------------------------------- closed forms


def _verified_form(sp, n: int, x: np.ndarray):
    """(log weight, polynomial) of psi_n for H-(sp)."""
    a, b, al = sp.a, sp.b, sp.alpha
    f = sp.family
    u = al * x
    if f is Family.AhmedScarf:
        logw = -(a / al) * _log_cosh(u) - (b / al) * _gd(u)
        return logw, jacobi(n, -1j * b / al - a / al - 0.5, 1j * b / al - a / al - 0.5, 1j * np.sinh(u))
    an = chain(sp, n)[n].a
    if f in (Family.TanhRosenMorse, Family.CothEckart, Family.TanTrig, Family.CotTrig):
        k = 1j * b / an
    if f is Family.TanhRosenMorse:
        s1, s2 = (an + k) / al, (an - k) / al
        log_m = _LOG2 - np.logaddexp(0, 2 * u)   # log(1 - tanh u)
        log_p = _LOG2 - np.logaddexp(0, -2 * u)  # log(1 + tanh u)
        return s1 / 2 * log_m + s2 / 2 * log_p, jacobi(n, s1, s2, np.tanh(u))
    if f is Family.CothEckart:
        s1, s2 = (k - an) / al, -(k + an) / al
        lq = np.log(np.expm1(2 * u))
        return s1 / 2 * (_LOG2 - lq) + s2 / 2 * (_LOG2 + 2 * u - lq), jacobi(n, s1, s2, 1 / np.tanh(u))
    if f is Family.TanTrig:
        s1, s2 = -(an + 1j * k) / al, -(an - 1j * k) / al
        lc = np.log(np.cos(u))
        return s1 / 2 * (-lc - 1j * u) + s2 / 2 * (-lc + 1j * u), jacobi(n, s1, s2, 1j * np.tan(u))
    if f is Family.CotTrig:
        s1, s2 = (an + 1j * k) / al, (an - 1j * k) / al
        ls = np.log(np.sin(u))
        ph = 1j * (u - math.pi / 2)
        return s1 / 2 * (-ls + ph) + s2 / 2 * (-ls - ph), jacobi(n, s1, s2, 1j / np.tan(u))
    if f is Family.PoschlTellerC1:
        logw = -1j * b / al * _log_sinh(u) - a / al * _log_cosh(u)
        return logw, jacobi(n, -1j * b / al - 0.5, -a / al - 0.5, np.cosh(2 * u))
    if f is Family.PoschlTellerC2:
        logw = -b / al * _log_sinh(u) - 1j * a / al * _log_cosh(u)
        return logw, jacobi(n, -b / al - 0.5, -1j * a / al - 0.5, np.cosh(2 * u))
    bn = a * b / (a + 1j * n)
    return -1j * a * np.log(x) - bn * x, laguerre_polynomial(n, -2j * a - 1, 2 * bn * x)


def _printed_form(spec, n: int, x: np.ndarray):
    """Literature expressions, parameters (A, B, C) as given."""
    sp = as_superpotential(spec)
    f, al = sp.family, sp.alpha
    A, B, C = float(spec.A), float(spec.B), float(spec.C)
    s = getattr(spec, "branch", 1)
    u = al * x
    if f is Family.AhmedScarf:
        if C == 0:
            logw = -(A / al) * _log_cosh(u) - 1j * (B / al) * _gd(u)
            p = jacobi(n, -A / al - B / al - 0.5, -A / al + B / al - 0.5, 1j * np.sinh(u))
        else:
            logw = -((A + s * 1j * C) / al) * _log_cosh(u) + (-1j / al * (A + al / 2) - s * C / al) * _gd(u)
            p = jacobi(n, -s * 2j * C / al, 2 * A / al + 0.5, 1j * np.sinh(u))
        return logw, p
    if f is Family.PoschlTellerC1:
        logw = -(A / al) * _log_cosh(u) - 1j * (B / al) * np.log(np.sinh(u))
        return logw, jacobi(n, -1j * B / al - 0.5, -A / al - 0.5, np.sinh(u))
    if f is Family.PoschlTellerC2:
        logw = -1j * (A / al) * _log_cosh(u) - (B / al) * np.log(np.sinh(u))
        return logw, jacobi(n, -B / al - 0.5, -1j * A / al - 0.5, np.sinh(u))
    if n != 0:
        raise ValueError(f"no printed closed form for {f.value} beyond the ground state")
    if f is Family.CoulombC:
        return 1j * A * np.log(x) - spec.beta * x, 1.0
    at = A + s * 1j * C
    lin = -1j * B / at * x
    if f is Family.TanhRosenMorse:
        return -(at / al) * _log_cosh(u) + lin, 1.0
    if f is Family.CothEckart:
        return (at / al) * _log_sinh(u) + lin, 1.0
    if f is Family.TanTrig:
        return (at / al) * np.log(np.cos(u)) + lin, 1.0
    return -(at / al) * np.log(np.sin(u)) + lin, 1.0


def closed_form_residual(spec, psi: WaveFunctionSample) -> float:
    """Schrodinger residual of psi against V- at the chain energy of its level."""
    form = build_partner_potentials(spec)[0]
    energy = chain_energies(spec, psi.level)[psi.level]
    return schrodinger_residual(form, psi, energy)


def eigenfunction_closed_form(spec, n: int, grid, variant: str = "verified", check: bool = False,
                              allow_unbound: bool = False) -> WaveFunctionSample:
    """psi_n of H- as weight x Jacobi (Laguerre for the Coulomb family).

    ``variant="printed"`` always runs the residual gate and raises
    FormMismatch when it fails; ladder_construct is the fallback then.
    ``allow_unbound`` admits levels past the normalizability bound (formal
    solutions, for example at a threshold).
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    sp = as_superpotential(spec)
    x = check_domain(sp.domain, sp.alpha, grid)
    if not allow_unbound and not level_is_bound(sp, n):
        raise TruncationError(f"level {n} of {sp.family.value} lies beyond the normalizability bound")
    if variant == "verified":
        logw, poly = _verified_form(sp, n, x)
    elif variant == "printed":
        if not hasattr(spec, "A"):
            raise TypeError("the printed variant needs a SuperpotentialSpec")
        logw, poly = _printed_form(spec, n, x)
        check = True
    else:
        raise ValueError(f"unknown variant {variant!r}")
    psi = WaveFunctionSample(x, _from_log(logw, poly), n, _branch_of(spec, None),
                             f"{sp.family.value} psi_{n} ({variant})")
    if check:
        r = closed_form_residual(sp, psi)
        if not r < RESIDUAL_GATE:
            raise FormMismatch(f"{variant} form for n={n} has residual {r:.3g}")
    return psi


# ------------------------------------------------------------- ladder operators


def _operator_inputs(spec, psi: WaveFunctionSample):
    sp = as_superpotential(spec)
    h = uniform_spacing(psi.grid)
    w = np.asarray(eval_superpotential(sp, psi.grid), dtype=complex)
    require_resolution(h, 1.0 / max(float(np.max(np.abs(w))), sp.alpha))
    return w, derivative(psi.values, h)


def apply_annihilation(spec, psi: WaveFunctionSample) -> WaveFunctionSample:
    """A psi = psi' + W psi."""
    w, d = _operator_inputs(spec, psi)
    return _with_values(psi, d + w * psi.values, label=f"A {psi.label}".strip())


def apply_creation(spec, psi: WaveFunctionSample) -> WaveFunctionSample:
    """A^dagger psi = -psi' + W psi."""
    w, d = _operator_inputs(spec, psi)
    return _with_values(psi, -d + w * psi.values, label=f"A+ {psi.label}".strip())


def annihilation_residual(spec, psi: WaveFunctionSample) -> float:
    """||A psi|| / ||psi||."""
    return float(np.linalg.norm(apply_annihilation(spec, psi).values) / np.linalg.norm(psi.values))


def ladder_construct(spec, n: int, grid, allow_unbound: bool = False) -> WaveFunctionSample:
    """psi_n = A+(a_0) A+(a_1) ... A+(a_{n-1}) psi_0(a_n)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    sp = as_superpotential(spec)
    if not allow_unbound and not level_is_bound(sp, n):
        raise TruncationError(f"level {n} of {sp.family.value} lies beyond the normalizability bound")
    params = chain(sp, n)
    psi = ground_state_from_W(params[n], grid, _branch_of(spec, None))
    for k in reversed(range(n)):
        psi = apply_creation(params[k], psi).normalized()
    return _with_values(psi, psi.values, level=n, label=f"{sp.family.value} psi_{n} (ladder)")


# ------------------------------------------------------------- comparisons


def optimal_scale(psi, ref) -> tuple[complex, float]:
    """Least-squares lambda with psi ~ lambda * ref, and the max deviation relative to max|psi|."""
    p = np.asarray(getattr(psi, "values", psi), dtype=complex)
    r = np.asarray(getattr(ref, "values", ref), dtype=complex)
    if p.shape != r.shape:
        raise ValueError("samples must share a grid")
    lam = complex(np.vdot(r, p) / np.vdot(r, r).real)
    return lam, float(np.max(np.abs(p - lam * r)) / np.max(np.abs(p)))


def scaled_deviation(psi, ref) -> float:
    return optimal_scale(psi, ref)[1]


def pt_partner_residual(psi_plus: WaveFunctionSample, psi_minus: WaveFunctionSample,
                        centre: float = 0.0) -> float:
    """min over lambda of max |psi+(x) - lambda conj(psi-(2c - x))| / max |psi+|."""
    x = psi_plus.grid
    if psi_minus.grid.shape != x.shape or not np.allclose(psi_minus.grid, x, rtol=0, atol=1e-12):
        raise DomainError("samples must share a grid")
    span = max(1.0, float(np.max(np.abs(x - centre))))
    if not np.allclose(x - centre, -(x[::-1] - centre), rtol=0, atol=1e-9 * span):
        raise DomainError("grid must be symmetric about the reflection centre")
    return scaled_deviation(psi_plus.values, np.conj(psi_minus.values[::-1]))


def normalizability_check(psi: WaveFunctionSample, open_ends=("left", "right"), edge_fraction: float = 0.05,
                          nested_fraction: float = 0.2, edge_tol: float = 1e-6,
                          nested_tol: float = 1e-2) -> bool:
    """Decay test for |psi|^2 on the sampled box.

    True when the outer ``edge_fraction`` of the box at each open end holds
    less than ``edge_tol`` of the total mass and dropping ``nested_fraction``
    at each open end changes the integral by less than ``nested_tol``.
    """
    x = psi.grid
    p = np.abs(psi.values) ** 2
    total = np.trapezoid(p, x)
    if not total > 0 or not np.isfinite(total):
        return False
    lo, hi = x[0], x[-1]
    length = hi - lo
    edge = np.zeros(x.shape, dtype=bool)
    inner = np.ones(x.shape, dtype=bool)
    if "left" in open_ends:
        edge |= x <= lo + edge_fraction * length
        inner &= x >= lo + nested_fraction * length
    if "right" in open_ends:
        edge |= x >= hi - edge_fraction * length
        inner &= x <= hi - nested_fraction * length
    edge_mass = float(np.sum(p[edge]) * (length / (x.size - 1))) if edge.any() else 0.0
    if edge_mass >= edge_tol * total:
        return False
    if inner.sum() < 2:
        return False
    inner_total = np.trapezoid(p[inner], x[inner])
    return bool(abs(total - inner_total) < nested_tol * total)
