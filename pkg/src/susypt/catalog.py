"""Superpotential catalog, partner potentials and PT classification.

Every family is written as a short expansion

    W(x) = sum_f w_f * f(alpha x) + k

over the shape functions tanh, sech, coth, tan, cot (and 1/r for the
Coulomb family), so that W**2 +- W' expands exactly over a fixed basis.
Partner potentials are therefore coefficient tables, and identities such as
V+ - V- = 2W' or shape invariance can be checked coefficient by coefficient.

Units: hbar = 2m = 1, alpha has units of inverse length.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Mapping

import numpy as np

from .errors import (
    DegenerateConditionError,
    DomainError,
    NotPTError,
    UnboundedError,
)

POLE_TOL = 1e-8


class Family(str, Enum):
    """Superpotential families.  Values double as CLI names."""

    AhmedScarf = "ahmed"
    TanhRosenMorse = "tanh"
    CothEckart = "coth"
    TanTrig = "tan"
    CotTrig = "cot"
    PoschlTellerC1 = "pt1"
    PoschlTellerC2 = "pt2"
    CoulombC = "coulomb"

    @classmethod
    def parse(cls, name: str) -> "Family":
        key = name.strip().lower().replace("_", "").replace("-", "")
        for fam in cls:
            if key in (fam.value.replace("-", ""), fam.name.lower()):
                return fam
        raise ValueError(f"unknown family {name!r}")


ROSEN_MORSE_TYPE = (Family.TanhRosenMorse, Family.CothEckart, Family.TanTrig, Family.CotTrig)
PT_FAMILIES = (Family.AhmedScarf,) + ROSEN_MORSE_TYPE


class Domain(str, Enum):
    FULL_LINE = "full line"
    HALF_LINE = "half line r>0"
    SYM_INTERVAL = "interval (-pi/2a, pi/2a)"
    POS_INTERVAL = "interval (0, pi/a)"


FAMILY_DOMAIN = {
    Family.AhmedScarf: Domain.FULL_LINE,
    Family.TanhRosenMorse: Domain.FULL_LINE,
    Family.CothEckart: Domain.HALF_LINE,
    Family.TanTrig: Domain.SYM_INTERVAL,
    Family.CotTrig: Domain.POS_INTERVAL,
    Family.PoschlTellerC1: Domain.HALF_LINE,
    Family.PoschlTellerC2: Domain.HALF_LINE,
    Family.CoulombC: Domain.HALF_LINE,
}

BASIS = (
    "sech2", "sech_tanh", "tanh", "csch2", "coth",
    "sec2", "tan", "csc2", "cot", "inv_r2", "inv_r",
)

LEGAL_BASIS = {
    Domain.FULL_LINE: {"sech2", "sech_tanh", "tanh"},
    Domain.HALF_LINE: {"sech2", "sech_tanh", "tanh", "csch2", "coth", "inv_r2", "inv_r"},
    Domain.SYM_INTERVAL: {"sec2", "tan"},
    Domain.POS_INTERVAL: {"csc2", "cot"},
}


class PtClass(str, Enum):
    UnbrokenPT = "UnbrokenPT"
    BrokenPT = "BrokenPT"
    NonPT = "NonPT"


class Phase(str, Enum):
    Real = "Real"
    ComplexConjugate = "ComplexConjugate"


# ---------------------------------------------------------------- domains


def check_domain(domain: Domain, alpha: float, x, pole_tol: float = POLE_TOL) -> np.ndarray:
    """Return ``x`` as a float array, raising DomainError for illegal points."""
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)):
        raise DomainError("non-finite coordinate")
    if domain is Domain.FULL_LINE:
        return x
    if domain is Domain.HALF_LINE:
        bad = x <= pole_tol
    elif domain is Domain.SYM_INTERVAL:
        edge = math.pi / (2 * alpha)
        bad = np.abs(x) >= edge - pole_tol
    else:
        edge = math.pi / alpha
        bad = (x <= pole_tol) | (x >= edge - pole_tol)
    if np.any(bad):
        first = float(np.atleast_1d(x)[np.atleast_1d(bad)][0])
        raise DomainError(f"x={first!r} outside {domain.value} or within {pole_tol} of a pole")
    return x


def singular_points(domain: Domain, alpha: float) -> tuple[float, ...]:
    if domain is Domain.FULL_LINE:
        return ()
    if domain is Domain.HALF_LINE:
        return (0.0,)
    if domain is Domain.SYM_INTERVAL:
        return (-math.pi / (2 * alpha), math.pi / (2 * alpha))
    return (0.0, math.pi / alpha)


def _basis_values(tag: str, alpha: float, x: np.ndarray) -> np.ndarray:
    u = alpha * x
    with np.errstate(over="ignore"):
        if tag == "sech2":
            return 1.0 / np.cosh(u) ** 2
        if tag == "sech_tanh":
            return np.tanh(u) / np.cosh(u)
        if tag == "tanh":
            return np.tanh(u)
        if tag == "csch2":
            return 1.0 / np.sinh(u) ** 2
        if tag == "coth":
            return 1.0 / np.tanh(u)
    if tag == "sec2":
        return 1.0 / np.cos(u) ** 2
    if tag == "tan":
        return np.tan(u)
    if tag == "csc2":
        return 1.0 / np.sin(u) ** 2
    if tag == "cot":
        return 1.0 / np.tan(u)
    if tag == "inv_r2":
        return 1.0 / x**2
    if tag == "inv_r":
        return 1.0 / x
    raise KeyError(tag)


# ---------------------------------------------------------------- potential forms


@dataclass(frozen=True)
class PotentialForm:
    """V(x) = sum_b c_b * b(alpha x) + constant over the fixed basis."""

    coefficients: Mapping[str, complex] = field(default_factory=dict)
    constant: complex = 0j
    domain: Domain = Domain.FULL_LINE
    alpha: float = 1.0

    def __post_init__(self):
        coeffs = {}
        for tag, c in dict(self.coefficients).items():
            if tag not in BASIS:
                raise KeyError(f"unknown basis function {tag!r}")
            c = complex(c)
            if not cmath.isfinite(c):
                raise ValueError(f"non-finite coefficient for {tag}")
            if c != 0:
                if tag not in LEGAL_BASIS[self.domain]:
                    raise DomainError(f"{tag} is not legal on the {self.domain.value}")
                coeffs[tag] = c
        object.__setattr__(self, "coefficients", coeffs)
        object.__setattr__(self, "constant", complex(self.constant))
        if not cmath.isfinite(self.constant):
            raise ValueError("non-finite constant")
        if not self.alpha > 0:
            raise ValueError("alpha must be positive")

    def coefficient(self, tag: str) -> complex:
        return self.coefficients.get(tag, 0j)

    def __call__(self, x):
        return eval_potential(self, x)

    def without_constant(self) -> "PotentialForm":
        return replace(self, constant=0j)

    def shifted(self, c: complex) -> "PotentialForm":
        return replace(self, constant=self.constant + c)

    def __sub__(self, other: "PotentialForm") -> "PotentialForm":
        tags = set(self.coefficients) | set(other.coefficients)
        return PotentialForm(
            {t: self.coefficient(t) - other.coefficient(t) for t in tags},
            self.constant - other.constant,
            self.domain,
            self.alpha,
        )

    def max_coefficient_gap(self, other: "PotentialForm") -> float:
        """Largest |delta| over x-dependent coefficients (constant ignored)."""
        tags = set(self.coefficients) | set(other.coefficients)
        return max((abs(self.coefficient(t) - other.coefficient(t)) for t in tags), default=0.0)


def eval_potential(form: PotentialForm, x):
    """Evaluate the form pointwise; scalar in, complex out, arrays broadcast."""
    scalar = np.ndim(x) == 0
    xs = check_domain(form.domain, form.alpha, x)
    out = np.full(xs.shape, form.constant, dtype=complex)
    for tag, c in form.coefficients.items():
        out = out + c * _basis_values(tag, form.alpha, xs)
    return complex(out) if scalar else out


def ahmed_form(V1: float, V2: float, alpha: float = 1.0) -> PotentialForm:
    """V(x) = -V1 sech^2(alpha x) - i V2 sech(alpha x) tanh(alpha x)."""
    return PotentialForm({"sech2": -V1, "sech_tanh": -1j * V2}, 0j, Domain.FULL_LINE, alpha)


# ---------------------------------------------------------------- superpotentials


@dataclass(frozen=True)
class SuperpotentialSpec:
    """User-facing, real-parameter description of one catalog superpotential.

    For CoulombC ``A`` is the strength of the imaginary 1/r term and ``beta``
    the constant; B, C and branch are ignored.
    """

    family: Family
    A: float = 0.0
    B: float = 0.0
    C: float = 0.0
    alpha: float = 1.0
    branch: int = 1
    beta: float = 0.0

    def __post_init__(self):
        if not isinstance(self.family, Family):
            object.__setattr__(self, "family", Family.parse(str(self.family)))
        if not (self.alpha > 0 and math.isfinite(self.alpha)):
            raise ValueError("alpha must be a positive finite number")
        if self.branch not in (1, -1):
            raise ValueError("branch must be +1 or -1")
        for name in ("A", "B", "C", "beta"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")

    @property
    def domain(self) -> Domain:
        return FAMILY_DOMAIN[self.family]

    def superpotential(self) -> "Superpotential":
        f, s = self.family, self.branch
        if f is Family.AhmedScarf:
            return Superpotential(f, self.alpha, complex(self.A, s * self.C), complex(s * self.C, self.B))
        if f in ROSEN_MORSE_TYPE:
            return Superpotential(f, self.alpha, complex(self.A, s * self.C), complex(self.B))
        if f is Family.CoulombC:
            return Superpotential(f, self.alpha, complex(self.A), complex(self.beta))
        return Superpotential(f, self.alpha, complex(self.A), complex(self.B))

    def with_branch(self, branch: int) -> "SuperpotentialSpec":
        return replace(self, branch=branch)


@dataclass(frozen=True)
class Superpotential:
    """Complex-parameter superpotential; shape-invariance steps act on (a, b).

    Parameter meaning per family (a~ = A +- iC):

    ========== ================================ ==================
    family     W(x)                              (a, b)
    ========== ================================ ==================
    ahmed      a tanh + b sech                   (a~, +-C + iB)
    tanh       a tanh + i b / a                  (a~, B)
    coth       -a coth + i b / a                 (a~, B)
    tan        a tan + i b / a                   (a~, B)
    cot        a cot + i b / a                   (a~, B)
    pt1        a tanh + i b coth                 (A, B)
    pt2        i a tanh + b coth                 (A, B)
    coulomb    i a / r + b                       (A, beta)
    ========== ================================ ==================
    """

    family: Family
    alpha: float
    a: complex
    b: complex

    @property
    def domain(self) -> Domain:
        return FAMILY_DOMAIN[self.family]

    def terms(self) -> dict[str, complex]:
        f, a, b = self.family, self.a, self.b
        if f in ROSEN_MORSE_TYPE and a == 0:
            raise DomainError("A +- iC must be non-zero for the Rosen-Morse-type families")
        if f is Family.AhmedScarf:
            return {"tanh": a, "sech": b}
        if f is Family.TanhRosenMorse:
            return {"tanh": a, "const": 1j * b / a}
        if f is Family.CothEckart:
            return {"coth": -a, "const": 1j * b / a}
        if f is Family.TanTrig:
            return {"tan": a, "const": 1j * b / a}
        if f is Family.CotTrig:
            return {"cot": a, "const": 1j * b / a}
        if f is Family.PoschlTellerC1:
            return {"tanh": a, "coth": 1j * b}
        if f is Family.PoschlTellerC2:
            return {"tanh": 1j * a, "coth": b}
        return {"inv_r": 1j * a, "const": b}


def as_superpotential(obj) -> Superpotential:
    if isinstance(obj, Superpotential):
        return obj
    if isinstance(obj, SuperpotentialSpec):
        return obj.superpotential()
    raise TypeError(f"expected SuperpotentialSpec or Superpotential, got {type(obj).__name__}")


_W_FUNCS = {
    "tanh": np.tanh,
    "sech": lambda u: 1.0 / np.cosh(u),
    "coth": lambda u: 1.0 / np.tanh(u),
    "tan": np.tan,
    "cot": lambda u: 1.0 / np.tan(u),
}

# d/du of the shape functions, expressed over the potential basis
_W_DERIV = {
    "tanh": {"sech2": 1.0},
    "sech": {"sech_tanh": -1.0},
    "coth": {"csch2": -1.0},
    "tan": {"sec2": 1.0},
    "cot": {"csc2": -1.0},
}

# products of shape functions over the potential basis; "1" is the constant
_PRODUCTS = {
    ("tanh", "tanh"): {"1": 1.0, "sech2": -1.0},
    ("sech", "sech"): {"sech2": 1.0},
    ("sech", "tanh"): {"sech_tanh": 1.0},
    ("coth", "coth"): {"1": 1.0, "csch2": 1.0},
    ("coth", "tanh"): {"1": 1.0},
    ("tan", "tan"): {"1": -1.0, "sec2": 1.0},
    ("cot", "cot"): {"1": -1.0, "csc2": 1.0},
    ("inv_r", "inv_r"): {"inv_r2": 1.0},
}


def _as_points(sp: Superpotential, x):
    return check_domain(sp.domain, sp.alpha, x)


def eval_superpotential(spec, x):
    """W(x) in closed form with the branch applied."""
    sp = as_superpotential(spec)
    scalar = np.ndim(x) == 0
    xs = _as_points(sp, x)
    out = np.zeros(xs.shape, dtype=complex)
    with np.errstate(over="ignore"):
        for tag, c in sp.terms().items():
            if tag == "const":
                out = out + c
            elif tag == "inv_r":
                out = out + c / xs
            else:
                out = out + c * _W_FUNCS[tag](sp.alpha * xs)
    return complex(out) if scalar else out


def superpotential_derivative(spec, x):
    """Analytic dW/dx."""
    sp = as_superpotential(spec)
    scalar = np.ndim(x) == 0
    xs = _as_points(sp, x)
    out = np.zeros(xs.shape, dtype=complex)
    for tag, c in sp.terms().items():
        if tag == "const":
            continue
        if tag == "inv_r":
            out = out - c / xs**2
            continue
        for btag, v in _W_DERIV[tag].items():
            out = out + c * v * sp.alpha * _basis_values(btag, sp.alpha, xs)
    return complex(out) if scalar else out


def _derivative_form(sp: Superpotential) -> dict[str, complex]:
    coeffs: dict[str, complex] = {}
    for tag, c in sp.terms().items():
        if tag == "const":
            continue
        if tag == "inv_r":
            coeffs["inv_r2"] = coeffs.get("inv_r2", 0) - c
            continue
        for btag, v in _W_DERIV[tag].items():
            coeffs[btag] = coeffs.get(btag, 0) + c * v * sp.alpha
    return coeffs


def _square_form(sp: Superpotential) -> tuple[dict[str, complex], complex]:
    items = list(sp.terms().items())
    coeffs: dict[str, complex] = {}
    const = 0j
    for i, (t1, c1) in enumerate(items):
        for t2, c2 in items[i:]:
            w = c1 * c2 * (1 if t1 == t2 else 2)
            if t1 == "const" and t2 == "const":
                const += w
            elif t1 == "const" or t2 == "const":
                tag = t2 if t1 == "const" else t1
                coeffs[tag] = coeffs.get(tag, 0) + w
            else:
                for btag, v in _PRODUCTS[tuple(sorted((t1, t2)))].items():
                    if btag == "1":
                        const += w * v
                    else:
                        coeffs[btag] = coeffs.get(btag, 0) + w * v
    return coeffs, const


def build_partner_potentials(spec) -> tuple[PotentialForm, PotentialForm]:
    """(V-, V+) = W^2 -+ W' as basis expansions, asymptotic constant retained."""
    sp = as_superpotential(spec)
    sq, const = _square_form(sp)
    dw = _derivative_form(sp)
    tags = set(sq) | set(dw)
    minus = {t: sq.get(t, 0) - dw.get(t, 0) for t in tags}
    plus = {t: sq.get(t, 0) + dw.get(t, 0) for t in tags}
    return (
        PotentialForm(minus, const, sp.domain, sp.alpha),
        PotentialForm(plus, const, sp.domain, sp.alpha),
    )


def asymptotic_energy_offset(spec) -> complex:
    """lim W(x)^2 at the open end of the domain (x -> +inf)."""
    sp = as_superpotential(spec)
    if sp.family in (Family.TanTrig, Family.CotTrig):
        raise UnboundedError(f"{sp.family.name} has no finite asymptotic limit")
    limits = {"tanh": 1.0, "coth": 1.0, "sech": 0.0, "inv_r": 0.0, "const": 1.0}
    w_inf = sum(c * limits[t] for t, c in sp.terms().items())
    return complex(w_inf) ** 2


# ---------------------------------------------------------------- PT symmetry


def pt_symmetry_check(form: PotentialForm, probe) -> float:
    """max |V(-x)* - V(x)| over the probe points, reflection about the domain centre.

    A non-real constant is left out of the comparison (it is the only part of
    the broken-phase forms that differs between branches); inspect
    ``form.constant`` for it.
    """
    if form.domain is Domain.HALF_LINE:
        raise DomainError("PT reflection is undefined on the half line")
    probe = np.asarray(probe, dtype=float)
    centre = math.pi / (2 * form.alpha) if form.domain is Domain.POS_INTERVAL else 0.0
    reflected = 2 * centre - probe
    body = form.without_constant() if form.constant.imag != 0 else form
    dev = np.abs(np.conj(eval_potential(body, reflected)) - eval_potential(body, probe))
    return float(np.max(dev)) if dev.size else 0.0


def _close(x: float, scale: float = 1.0) -> bool:
    return abs(x) <= 1e-12 * max(1.0, scale)


def pt_condition(spec: SuperpotentialSpec) -> PtClass:
    f, A, B, C, al = spec.family, spec.A, spec.B, spec.C, spec.alpha
    if f not in PT_FAMILIES:
        return PtClass.NonPT
    if C == 0:
        return PtClass.UnbrokenPT
    scale = abs(A) + abs(B) + al
    if f is Family.AhmedScarf:
        ok = _close(2 * (A - B) + al, scale)
    elif f in (Family.TanhRosenMorse, Family.CotTrig):
        ok = _close(2 * A + al, scale)
    else:
        ok = _close(2 * A - al, scale)
    return PtClass.BrokenPT if ok else PtClass.NonPT


def general_pt_condition(A: float, B: float, C: float, alpha: float, D: float | None = None):
    """Two-parameter (C, D) superpotential (A + iC) tanh + (D + iB) sech.

    Returns ``(PtClass, C, D)`` with D resolved from D = 2BC / (2A + alpha).
    A supplied D that disagrees with the resolved value gives NonPT.
    """
    scale = abs(A) + abs(B) + abs(alpha)
    if C == 0:
        if D is not None and not _close(D, scale):
            return PtClass.NonPT, 0.0, D
        return PtClass.UnbrokenPT, 0.0, 0.0
    if 2 * A + alpha == 0:
        raise DegenerateConditionError("2A + alpha = 0 with C != 0")
    d_req = 2 * B * C / (2 * A + alpha)
    if not _close((2 * A + alpha) ** 2 - (2 * B) ** 2, scale**2):
        return PtClass.NonPT, C, d_req if D is None else D
    if D is not None and not _close(D - d_req, scale):
        return PtClass.NonPT, C, D
    return PtClass.BrokenPT, C, d_req


def ahmed_coefficients(spec: SuperpotentialSpec) -> tuple[float, float]:
    """(V1, V2) of -V1 sech^2 - i V2 sech tanh realised by a PT AhmedScarf spec."""
    if spec.family is not Family.AhmedScarf:
        raise NotPTError("ahmed_coefficients needs the AhmedScarf family")
    cls = pt_condition(spec)
    A, B, C, al = spec.A, spec.B, spec.C, spec.alpha
    if cls is PtClass.UnbrokenPT:
        return A * (A + al) + B**2, -B * (2 * A + al)
    if cls is PtClass.BrokenPT:
        return (
            2 * A * (A + al) - 2 * C**2 + al**2 / 4,
            -(2 * A * (A + al) + 2 * C**2 + al**2 / 2),
        )
    raise NotPTError(f"parameters A={A}, B={B}, C={C} violate C(2(A-B)+alpha) = 0")


def phase_from_coefficients(V1: float, V2: float, alpha: float = 1.0) -> Phase:
    """Real iff |V2| <= V1 + alpha^2/4 (the 1/4 of the alpha = 1 statement, rescaled)."""
    return Phase.Real if abs(V2) <= V1 + alpha**2 / 4 else Phase.ComplexConjugate


def family_digest() -> list[dict[str, str]]:
    """One line per family: superpotential, domain and PT-breaking condition."""
    rows = [
        (Family.AhmedScarf, "(A+-iC) tanh + (+-C+iB) sech", "C(2(A-B)+alpha)=0; broken: B = A + alpha/2"),
        (Family.TanhRosenMorse, "(A+-iC) tanh + iB/(A+-iC)", "C(2A+alpha)=0; broken: A = -alpha/2"),
        (Family.CothEckart, "-(A+-iC) coth + iB/(A+-iC)", "C(2A-alpha)=0; broken: A = alpha/2"),
        (Family.TanTrig, "(A+-iC) tan + iB/(A+-iC)", "C(2A-alpha)=0; broken: A = alpha/2"),
        (Family.CotTrig, "(A+-iC) cot + iB/(A+-iC)", "C(2A+alpha)=0; broken: A = -alpha/2"),
        (Family.PoschlTellerC1, "A tanh + iB coth", "not PT-symmetric"),
        (Family.PoschlTellerC2, "iA tanh + B coth", "not PT-symmetric"),
        (Family.CoulombC, "iA/r + beta", "not PT-symmetric"),
    ]
    return [
        {"family": f.value, "name": f.name, "W": w, "domain": FAMILY_DOMAIN[f].value, "condition": cond}
        for f, w, cond in rows
    ]


def random_points(domain: Domain, alpha: float, n: int, rng: np.random.Generator, margin: float = 0.05) -> np.ndarray:
    """Random probe points well inside the domain (test and verify helper)."""
    if domain is Domain.FULL_LINE:
        return rng.uniform(-8, 8, n) / alpha
    if domain is Domain.HALF_LINE:
        return rng.uniform(margin + 0.05, 8, n) / alpha
    if domain is Domain.SYM_INTERVAL:
        return rng.uniform(-math.pi / 2 + margin, math.pi / 2 - margin, n) / alpha
    return rng.uniform(margin, math.pi - margin, n) / alpha


def probe_grid(domain: Domain, alpha: float, n: int = 200) -> np.ndarray:
    """Uniform probe grid inside the domain, off singular points."""
    if domain is Domain.FULL_LINE:
        return np.linspace(-10, 10, n) / alpha
    if domain is Domain.HALF_LINE:
        return np.linspace(0.1, 10, n) / alpha
    if domain is Domain.SYM_INTERVAL:
        return np.linspace(-math.pi / 2 + 0.05, math.pi / 2 - 0.05, n) / alpha
    return np.linspace(0.05, math.pi - 0.05, n) / alpha


__all__ = [
    "Family", "Domain", "PtClass", "Phase", "PotentialForm", "SuperpotentialSpec",
    "Superpotential", "as_superpotential", "eval_superpotential", "superpotential_derivative",
    "build_partner_potentials", "eval_potential", "pt_symmetry_check", "pt_condition",
    "general_pt_condition", "ahmed_coefficients", "phase_from_coefficients",
    "asymptotic_energy_offset", "ahmed_form", "check_domain", "singular_points",
    "family_digest", "probe_grid", "random_points",
]
