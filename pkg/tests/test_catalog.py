import cmath

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import specs
from susypt.catalog import (
    Domain,
    Family,
    Phase,
    PotentialForm,
    PtClass,
    SuperpotentialSpec,
    ahmed_coefficients,
    ahmed_form,
    asymptotic_energy_offset,
    build_partner_potentials,
    eval_potential,
    eval_superpotential,
    general_pt_condition,
    phase_from_coefficients,
    probe_grid,
    pt_condition,
    pt_symmetry_check,
    random_points,
    superpotential_derivative,
)
from susypt.errors import DegenerateConditionError, DomainError, NotPTError, UnboundedError

S = SuperpotentialSpec
UNBROKEN = S("ahmed", A=2, B=1, C=0)
BROKEN = S("ahmed", A=1, B=1.5, C=1)


# ---------------------------------------------------------------- W and W'


def test_superpotential_examples():
    assert eval_superpotential(UNBROKEN, 0.0) == pytest.approx(1j)
    assert eval_superpotential(BROKEN, 0.0) == pytest.approx(1 + 1.5j)
    assert eval_superpotential(S("coulomb", A=1, beta=2), 1.0) == pytest.approx(2 + 1j)


def test_derivative_examples():
    assert superpotential_derivative(UNBROKEN, 0.0) == pytest.approx(2)
    assert superpotential_derivative(BROKEN, 0.0) == pytest.approx(1 + 1j)
    # only the constant term survives: A = 0 Coulomb
    assert superpotential_derivative(S("coulomb", A=0, beta=3), 2.0) == 0


@pytest.mark.parametrize("family", list(Family))
def test_derivative_matches_finite_difference(family):
    rng = np.random.default_rng(1)
    spec = {
        Family.AhmedScarf: BROKEN,
        Family.TanhRosenMorse: S("tanh", A=1.3, B=0.4, C=0.2),
        Family.CothEckart: S("coth", A=-0.4, B=1.1),
        Family.TanTrig: S("tan", A=0.7, B=-0.5, C=0.3),
        Family.CotTrig: S("cot", A=-0.6, B=0.8),
        Family.PoschlTellerC1: S("pt1", A=2, B=1),
        Family.PoschlTellerC2: S("pt2", A=1, B=2),
        Family.CoulombC: S("coulomb", A=1.5, beta=2),
    }[family]
    x = random_points(spec.domain, spec.alpha, 20, rng, margin=0.2)
    h = 1e-5
    fd = (eval_superpotential(spec, x + h) - eval_superpotential(spec, x - h)) / (2 * h)
    exact = superpotential_derivative(spec, x)
    assert np.max(np.abs(fd - exact) / np.maximum(1, np.abs(exact))) < 1e-6


def test_domain_errors():
    with pytest.raises(DomainError):
        eval_superpotential(S("coth", A=-0.5, B=1), 0.0)
    with pytest.raises(DomainError):
        eval_superpotential(S("coulomb", A=1, beta=1), -1.0)
    with pytest.raises(DomainError):
        eval_superpotential(S("tan", A=1, B=1), np.pi / 2)
    with pytest.raises(DomainError):
        eval_superpotential(S("cot", A=1, B=1), 1e-10)


# ---------------------------------------------------------------- partner potentials


def test_partner_potential_examples():
    vm, vp = build_partner_potentials(UNBROKEN)
    assert eval_potential(vm, 0.0) == pytest.approx(-3)
    vm_b, _ = build_partner_potentials(BROKEN)
    assert eval_potential(vm_b, 0.0) == pytest.approx(-2.25 + 2j)
    zero = build_partner_potentials(S("pt1", A=0, B=0))
    assert all(not f.coefficients and f.constant == 0 for f in zero)


def test_asymptotic_offsets():
    assert asymptotic_energy_offset(UNBROKEN) == pytest.approx(4)
    assert asymptotic_energy_offset(BROKEN) == pytest.approx(2j)
    assert asymptotic_energy_offset(S("coulomb", A=1, beta=2)) == pytest.approx(4)
    assert asymptotic_energy_offset(S("pt1", A=2, B=1)) == pytest.approx((2 + 1j) ** 2)
    with pytest.raises(UnboundedError):
        asymptotic_energy_offset(S("tan", A=1, B=1))


def test_eval_potential_examples():
    assert eval_potential(PotentialForm({}, 2 - 1j), 3.0) == 2 - 1j
    form = ahmed_form(7, -5)
    assert eval_potential(form, 0.0) == pytest.approx(-7)
    assert abs(eval_potential(form, 60.0)) < 1e-20


@settings(max_examples=60, deadline=None)
@given(specs())
def test_partner_difference_is_twice_derivative(spec):
    rng = np.random.default_rng(0)
    x = random_points(spec.domain, spec.alpha, 100, rng)
    vm, vp = build_partner_potentials(spec)
    w = eval_superpotential(spec, x)
    dw = superpotential_derivative(spec, x)
    scale = np.maximum(1.0, np.abs(w) ** 2 + np.abs(dw))
    assert np.max(np.abs(eval_potential(vp, x) - eval_potential(vm, x) - 2 * dw) / scale) < 1e-12
    assert np.max(np.abs(eval_potential(vm, x) - (w**2 - dw)) / scale) < 1e-12
    assert np.max(np.abs(eval_potential(vp, x) - (w**2 + dw)) / scale) < 1e-12


def test_illegal_basis_rejected():
    with pytest.raises(DomainError):
        PotentialForm({"inv_r": 1.0}, 0, Domain.FULL_LINE)
    with pytest.raises(ValueError):
        PotentialForm({"sech2": float("nan")})


# ---------------------------------------------------------------- PT classification


def test_pt_symmetry_examples():
    grid = probe_grid(Domain.FULL_LINE, 1.0)
    assert pt_symmetry_check(PotentialForm({"sech2": -3.0}), grid) == 0
    ahmed = build_partner_potentials(UNBROKEN)[0].without_constant()
    assert pt_symmetry_check(ahmed, grid) <= 1e-12
    bad = build_partner_potentials(S("tanh", A=1, B=1, C=0.5))[0]
    assert pt_symmetry_check(bad, grid) > 1e-3
    with pytest.raises(DomainError):
        pt_symmetry_check(build_partner_potentials(S("pt1", A=2, B=1))[0], probe_grid(Domain.HALF_LINE, 1.0))


def test_pt_condition_examples():
    assert pt_condition(S("ahmed", A=1, B=1.5, C=0.5)) is PtClass.BrokenPT
    assert pt_condition(S("ahmed", A=3.7, B=-2.2, C=0)) is PtClass.UnbrokenPT
    assert pt_condition(S("ahmed", A=1, B=1, C=0.5)) is PtClass.NonPT
    assert pt_condition(S("tanh", A=-0.5, B=1, C=1)) is PtClass.BrokenPT
    assert pt_condition(S("coth", A=0.5, B=1, C=1)) is PtClass.BrokenPT
    assert pt_condition(S("tan", A=0.5, B=1, C=1)) is PtClass.BrokenPT
    assert pt_condition(S("cot", A=-0.5, B=1, C=1)) is PtClass.BrokenPT
    assert pt_condition(S("cot", A=0.5, B=1, C=1)) is PtClass.NonPT
    for fam in ("pt1", "pt2", "coulomb"):
        assert pt_condition(S(fam, A=1, B=1)) is PtClass.NonPT


def test_general_pt_condition_examples():
    assert general_pt_condition(2.0, 0.3, 0.0, 1.0, D=0.0)[0] is PtClass.UnbrokenPT
    cls, C, D = general_pt_condition(1.0, 1.5, 0.7, 1.0)
    assert cls is PtClass.BrokenPT and D == pytest.approx(0.7)
    assert general_pt_condition(1.0, 2.0, 0.7, 1.0)[0] is PtClass.NonPT
    with pytest.raises(DegenerateConditionError):
        general_pt_condition(-0.5, 1.0, 0.7, 1.0)


def test_ahmed_coefficient_examples():
    assert ahmed_coefficients(UNBROKEN) == pytest.approx((7, -5))
    assert ahmed_coefficients(BROKEN) == pytest.approx((2.25, -6.5))
    assert ahmed_coefficients(S("ahmed")) == pytest.approx((0, 0))
    with pytest.raises(NotPTError):
        ahmed_coefficients(S("ahmed", A=1, B=1, C=1))


def test_phase_examples():
    assert phase_from_coefficients(7, -5) is Phase.Real
    assert phase_from_coefficients(2.25, -6.5) is Phase.ComplexConjugate
    assert phase_from_coefficients(0, 0.25) is Phase.Real


ahmed_pt_specs = st.one_of(
    st.builds(lambda A, B, al: S("ahmed", A=A, B=B, alpha=al), st.floats(0.1, 4), st.floats(-4, 4), st.floats(0.5, 2)),
    st.builds(lambda A, C, al, s: S("ahmed", A=A, B=A + al / 2, C=C, alpha=al, branch=s),
              st.floats(0.1, 4), st.floats(0.05, 3), st.floats(0.5, 2), st.sampled_from([1, -1])),
)


@settings(max_examples=80, deadline=None)
@given(ahmed_pt_specs)
def test_pt_forms_match_ahmed_coefficients(spec):
    form = build_partner_potentials(spec)[0]
    grid = probe_grid(Domain.FULL_LINE, spec.alpha)
    assert pt_symmetry_check(form.without_constant(), grid) <= 1e-12 * max(1, abs(form.coefficient("sech2")))
    V1, V2 = ahmed_coefficients(spec)
    target = ahmed_form(V1, V2, spec.alpha)
    assert form.max_coefficient_gap(target) <= 1e-12 * max(1.0, abs(V1), abs(V2))
    expected = Phase.Real if spec.C == 0 else Phase.ComplexConjugate
    assert phase_from_coefficients(V1, V2, spec.alpha) is expected


@settings(max_examples=50, deadline=None)
@given(st.floats(0.1, 4), st.floats(0.05, 3), st.floats(0.5, 2))
def test_broken_branches_share_the_x_dependent_form(A, C, alpha):
    plus = S("ahmed", A=A, B=A + alpha / 2, C=C, alpha=alpha)
    minus = plus.with_branch(-1)
    fp, fm = build_partner_potentials(plus)[0], build_partner_potentials(minus)[0]
    assert fp.max_coefficient_gap(fm) <= 1e-12 * max(1.0, A * A)
    assert cmath.isclose(fp.constant - fm.constant, 4j * A * C, rel_tol=1e-12, abs_tol=1e-12)
