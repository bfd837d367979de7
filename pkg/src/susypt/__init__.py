"""Supersymmetric construction of complex shape-invariant potentials.

Modules
-------
catalog
    Superpotential families, partner potentials and PT classification.
shape_invariance
    Parameter chains and algebraic spectra.
wavefunctions
    Ground states, closed-form eigenfunctions and ladder operators.
numerics
    Finite-difference Hamiltonians and dense eigensolves.
bifurcation
    Spectrum classification and PT-breaking threshold scans.
"""

from .catalog import (
    Domain,
    Family,
    Phase,
    PotentialForm,
    PtClass,
    Superpotential,
    SuperpotentialSpec,
    ahmed_coefficients,
    ahmed_form,
    build_partner_potentials,
    eval_potential,
    eval_superpotential,
    general_pt_condition,
    phase_from_coefficients,
    pt_condition,
    superpotential_derivative,
)
from .shape_invariance import (
    AlgebraicSpectrum,
    algebraic_spectrum,
    chain_energies,
    closed_form_energy,
    level_spacings,
    parameter_step,
    verify_shape_invariance,
)
from .special import JacobiParams, jacobi, jacobi_polynomial
from .wavefunctions import (
    WaveFunctionSample,
    apply_annihilation,
    apply_creation,
    eigenfunction_closed_form,
    ground_state_from_W,
    ladder_construct,
    normalizability_check,
    pt_partner_residual,
)
from .numerics import (
    EigenDecomposition,
    Grid,
    HamiltonianMatrix,
    convergence_study,
    discretize_hamiltonian,
    eigen_all,
    localization_filter,
    match_spectra,
    schrodinger_residual,
)
from .bifurcation import (
    ScanRecord,
    SpectrumClass,
    SpectrumKind,
    classify_spectrum,
    critical_point,
    parameter_sweep,
    susy_phase_prediction,
)

__version__ = "0.1.0"
