"""Shared hypothesis strategies and grids for the test suite."""

import numpy as np
from hypothesis import strategies as st

from susypt.catalog import Family, SuperpotentialSpec, ROSEN_MORSE_TYPE
from susypt.shape_invariance import chain

ALL_FAMILIES = list(Family)

ACCEPTANCE_LINES: list[str] = []

finite = lambda lo, hi: st.floats(lo, hi, allow_nan=False, allow_infinity=False)


@st.composite
def specs(draw, family=None):
    """Random spec of a family; Rosen-Morse-type strengths stay away from zero."""
    fam = draw(st.sampled_from(ALL_FAMILIES)) if family is None else family
    alpha = draw(finite(0.5, 2.0))
    branch = draw(st.sampled_from([1, -1]))
    if fam is Family.CoulombC:
        return SuperpotentialSpec(fam, A=draw(finite(-3, 3)), beta=draw(finite(0.2, 3)), alpha=alpha)
    A = draw(finite(0.2, 3.0)) * draw(st.sampled_from([1, -1]))
    B = draw(finite(-3, 3))
    C = draw(st.one_of(st.just(0.0), finite(0.1, 2.0)))
    if fam in (Family.PoschlTellerC1, Family.PoschlTellerC2):
        C = 0.0
    return SuperpotentialSpec(fam, A=A, B=B, C=C, alpha=alpha, branch=branch)


def chain_is_regular(spec, n_max, margin=0.05):
    """False when some Rosen-Morse-type strength a_n comes close to zero along the chain."""
    if spec.family not in ROSEN_MORSE_TYPE:
        return True
    return all(abs(p.a) > margin for p in chain(spec, n_max))


def seeded_specs(family, count, seed):
    """Deterministic draws for the acceptance suite."""
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        alpha = rng.uniform(0.5, 2.0)
        if family is Family.CoulombC:
            out.append(SuperpotentialSpec(family, A=rng.uniform(-3, 3), beta=rng.uniform(0.2, 3), alpha=alpha))
            continue
        A = rng.uniform(0.2, 3.0) * rng.choice([1, -1])
        B = rng.uniform(-3, 3)
        C = 0.0 if family in (Family.PoschlTellerC1, Family.PoschlTellerC2) or rng.random() < 0.3 else rng.uniform(0.1, 2)
        spec = SuperpotentialSpec(family, A=A, B=B, C=C, alpha=alpha, branch=int(rng.choice([1, -1])))
        if chain_is_regular(spec, 6):
            out.append(spec)
    return out


def report(number, title, ok, detail):
    """Print and keep one PASS/FAIL line per acceptance criterion."""
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title}  ({detail})"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok
