"""Shape-invariance chains and algebraic spectra.

A step maps the superpotential parameters a0 -> a1 such that
V+(x; a0) = V-(x; a1) + R(a1).  The remainder is read off the constant terms
of the two partner forms (their x-dependent parts agree identically), so it
never relies on a transcribed energy formula.  Energies use the convention
E_0 = 0 for H- = -d^2/dx^2 + W^2 - W' with the full asymptotic constant kept.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, replace

import numpy as np

from .catalog import (
    Family,
    PtClass,
    Superpotential,
    SuperpotentialSpec,
    as_superpotential,
    build_partner_potentials,
    eval_potential,
    probe_grid,
    pt_condition,
)
from .errors import NotBrokenError, TruncationNotice


@dataclass(frozen=True)
class ParameterStep:
    params: Superpotential
    remainder: complex


@dataclass(frozen=True)
class AlgebraicSpectrum:
    """Levels (n, E_n) of H-, E_0 = 0.

    ``constant`` is the constant term of V-; subtract it to compare with the
    x-dependent (PT) form of the potential.
    """

    levels: tuple[tuple[int, complex], ...]
    constant: complex
    truncated: bool = False
    family: Family | None = None

    @property
    def energies(self) -> np.ndarray:
        return np.array([e for _, e in self.levels], dtype=complex)

    def __len__(self):
        return len(self.levels)


def shift_parameters(spec) -> Superpotential:
    """a1 = f(a0) for one rung of the chain."""
    sp = as_superpotential(spec)
    a, b, al = sp.a, sp.b, sp.alpha
    f = sp.family
    if f in (Family.AhmedScarf, Family.TanhRosenMorse, Family.CotTrig):
        return replace(sp, a=a - al)
    if f in (Family.CothEckart, Family.TanTrig):
        return replace(sp, a=a + al)
    if f is Family.PoschlTellerC1:
        return replace(sp, a=a - al, b=b + 1j * al)
    if f is Family.PoschlTellerC2:
        return replace(sp, a=a + 1j * al, b=b - al)
    # Coulomb: strength a -> a + i with the 1/r coupling gamma = a*b held fixed
    return replace(sp, a=a + 1j, b=a * b / (a + 1j))


def parameter_step(spec) -> ParameterStep:
    sp = as_superpotential(spec)
    nxt = shift_parameters(sp)
    c0 = build_partner_potentials(sp)[0].constant
    c1 = build_partner_potentials(nxt)[0].constant
    return ParameterStep(nxt, c0 - c1)


def verify_shape_invariance(spec, grid=None, tol: float | None = None) -> float:
    """max |V+(x; a0) - V-(x; a1) - R(a1)| over the grid.

    With ``tol`` given the residual is still returned; callers compare.
    """
    sp = as_superpotential(spec)
    if grid is None:
        grid = probe_grid(sp.domain, sp.alpha)
    step = parameter_step(sp)
    plus = build_partner_potentials(sp)[1]
    minus_next = build_partner_potentials(step.params)[0]
    resid = np.abs(eval_potential(plus, grid) - eval_potential(minus_next, grid) - step.remainder)
    return float(np.max(resid))


def chain(spec, n_max: int) -> list[Superpotential]:
    """Parameters a_0 .. a_{n_max}."""
    sp = as_superpotential(spec)
    out = [sp]
    for _ in range(n_max):
        out.append(shift_parameters(out[-1]))
    return out


def chain_energies(spec, n_max: int) -> np.ndarray:
    """Formal E_n = sum_{k<=n} R(a_k), n = 0..n_max, no normalizability cut."""
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    sp = as_superpotential(spec)
    energies = [0j]
    for _ in range(n_max):
        step = parameter_step(sp)
        energies.append(energies[-1] + step.remainder)
        sp = step.params
    return np.array(energies, dtype=complex)


def closed_form_energy(spec, n: int) -> complex:
    """Closed-form level energies, one formula per family (E_0 = 0)."""
    sp = as_superpotential(spec)
    a, b, al = sp.a, sp.b, sp.alpha
    f = sp.family
    if f is Family.AhmedScarf:
        return a**2 - (a - n * al) ** 2
    if f is Family.TanhRosenMorse:
        an = a - n * al
        return a**2 - an**2 - b**2 / a**2 + b**2 / an**2
    if f is Family.CothEckart:
        an = a + n * al
        return a**2 - an**2 - b**2 / a**2 + b**2 / an**2
    if f is Family.TanTrig:
        an = a + n * al
        return an**2 - a**2 - b**2 / a**2 + b**2 / an**2
    if f is Family.CotTrig:
        an = a - n * al
        return an**2 - a**2 - b**2 / a**2 + b**2 / an**2
    if f is Family.PoschlTellerC1:
        return 4 * n * al * (a - n * al) + 4j * b * n * al
    if f is Family.PoschlTellerC2:
        return 4 * n * al * (b - n * al) + 4j * a * n * al
    if n == 0:
        return 0j
    # gamma^2 [1/a^2 - 1/(a+in)^2] with gamma = a b, written to survive a = 0
    return b**2 - (a * b) ** 2 / (a + 1j * n) ** 2


def ground_state_normalizable(spec) -> bool:
    """Whether exp(-int W) is square integrable and decays at open ends.

    Exponential ends need a strictly positive decay rate; power-law ends
    (poles of W) need the exponent of |x - x0| above -1/2.
    """
    sp = as_superpotential(spec)
    a, b, al = sp.a, sp.b, sp.alpha
    f = sp.family
    if f is Family.AhmedScarf:
        return a.real > 0
    if f is Family.TanhRosenMorse:
        k = 1j * b / a
        return a.real - abs(k.real) > 0
    if f is Family.CothEckart:
        k = 1j * b / a
        return (k - a).real > 0 and a.real / al > -0.5
    if f is Family.TanTrig:
        return a.real / al > -0.5
    if f is Family.CotTrig:
        return a.real / al < 0.5
    if f is Family.PoschlTellerC1:
        return (a + 1j * b).real > 0 and b.imag / al > -0.5
    if f is Family.PoschlTellerC2:
        return (b + 1j * a).real > 0 and b.real / al < 0.5
    return b.real > 0 and a.imag > -0.5


def level_is_bound(spec, n: int) -> bool:
    return ground_state_normalizable(chain(spec, n)[-1])


def algebraic_spectrum(spec, n_max: int, truncate: bool = True) -> AlgebraicSpectrum:
    """Levels 0..n_max from the chain, cut at the first non-normalizable level.

    A TruncationNotice warning is issued when the cut removes requested levels.
    """
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    sp = as_superpotential(spec)
    energies = chain_energies(sp, n_max)
    params = chain(sp, n_max)
    levels = []
    truncated = False
    for n in range(n_max + 1):
        if truncate and not ground_state_normalizable(params[n]):
            truncated = True
            break
        levels.append((n, complex(energies[n])))
    if truncated:
        warnings.warn(
            f"{sp.family.name}: spectrum truncated at n={len(levels)} (normalizability bound)",
            TruncationNotice,
            stacklevel=2,
        )
    const = build_partner_potentials(sp)[0].constant
    return AlgebraicSpectrum(tuple(levels), const, truncated, sp.family)


def level_spacings(spectrum) -> np.ndarray:
    """E_n - E_{n-1} for consecutive levels."""
    e = spectrum.energies if isinstance(spectrum, AlgebraicSpectrum) else np.asarray(spectrum, dtype=complex)
    if len(e) < 2:
        raise ValueError("need at least two levels")
    return np.diff(e)


def conjugate_pairing_check(spec: SuperpotentialSpec, n_max: int, tol: float = 1e-12) -> bool:
    """E_n(branch +) == conj(E_n(branch -)) for n <= n_max."""
    if pt_condition(spec) is not PtClass.BrokenPT:
        raise NotBrokenError("conjugate pairing needs a BrokenPT spec")
    plus = chain_energies(spec.with_branch(1), n_max)
    minus = chain_energies(spec.with_branch(-1), n_max)
    scale = np.maximum(1.0, np.abs(plus))
    return bool(np.all(np.abs(plus - np.conj(minus)) <= tol * scale))
