"""Command-line front end: ``susypt <subcommand> [flags]``.

Exit codes: 0 success, 1 library error / failed verification / unpaired
spectrum, 2 invalid arguments.  Data goes to stdout or --out; diagnostics go
to stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
import warnings

from . import bifurcation as bif
from .catalog import (
    PT_FAMILIES,
    Domain,
    Family,
    PtClass,
    SuperpotentialSpec,
    build_partner_potentials,
    family_digest,
    probe_grid,
    pt_condition,
    pt_symmetry_check,
)
from .errors import NotPTError, SusyPTError, TruncationNotice
from .numerics import Grid, default_grid
from .shape_invariance import (
    algebraic_spectrum,
    chain_energies,
    closed_form_energy,
    level_is_bound,
    verify_shape_invariance,
)
from .wavefunctions import (
    annihilation_residual,
    closed_form_residual,
    eigenfunction_closed_form,
    ground_state_from_W,
    ladder_construct,
    residual_grid,
    scaled_deviation,
)

SUBCOMMANDS = ("families", "spectrum", "wavefunction", "verify", "scan", "critical")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="susypt", description="Complex shape-invariant potentials: spectra, "
                                "eigenfunctions and PT-breaking scans.")
    p.add_argument("subcommand", choices=SUBCOMMANDS)
    p.add_argument("--family", choices=[f.value for f in Family], default=None)
    p.add_argument("--A", type=float, default=0.0)
    p.add_argument("--B", type=float, default=0.0)
    p.add_argument("--C", type=float, default=0.0)
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--beta", type=float, default=0.0)
    p.add_argument("--branch", type=int, choices=(1, -1), default=1)
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--nmax", type=int, default=5)
    p.add_argument("--grid-min", type=float, default=None)
    p.add_argument("--grid-max", type=float, default=None)
    p.add_argument("--points", type=int, default=2001)
    p.add_argument("--tol-im", type=float, default=bif.TOL_IM)
    p.add_argument("--pair-tol", type=float, default=bif.PAIR_TOL)
    p.add_argument("--V1", type=float, default=None)
    p.add_argument("--v2-min", type=float, default=None)
    p.add_argument("--v2-max", type=float, default=None)
    p.add_argument("--steps", type=int, default=8, help="number of V2 intervals in a scan")
    p.add_argument("--tol", type=float, default=0.05, help="bracket width at which bisection stops")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", default=None)
    return p


def _validate(p: argparse.ArgumentParser, a: argparse.Namespace) -> None:
    if not a.alpha > 0:
        p.error("--alpha must be positive")
    if a.points < 3:
        p.error("--points must be at least 3")
    if a.n < 0 or a.nmax < 0:
        p.error("--n and --nmax must be non-negative")
    if a.tol_im <= 0 or a.pair_tol <= 0 or a.tol <= 0:
        p.error("tolerances must be positive")
    if (a.grid_min is None) != (a.grid_max is None):
        p.error("--grid-min and --grid-max go together")
    if a.grid_min is not None and not a.grid_min < a.grid_max:
        p.error("--grid-min must be below --grid-max")
    if a.subcommand in ("spectrum", "wavefunction", "verify") and a.family is None:
        p.error(f"{a.subcommand} needs --family")
    if a.subcommand in ("scan", "critical"):
        if a.V1 is None or a.v2_min is None or a.v2_max is None:
            p.error(f"{a.subcommand} needs --V1, --v2-min and --v2-max")
        if not a.v2_min < a.v2_max:
            p.error("--v2-min must be below --v2-max")
        if a.steps < 1:
            p.error("--steps must be at least 1")


def _spec(a) -> SuperpotentialSpec:
    return SuperpotentialSpec(Family(a.family), a.A, a.B, a.C, a.alpha, a.branch, a.beta)


def _grid(a, domain) -> Grid:
    if a.grid_min is None:
        return default_grid(domain, a.alpha, a.points)
    return Grid(a.grid_min, a.grid_max, a.points)


def _params(spec: SuperpotentialSpec) -> dict:
    return {"A": spec.A, "B": spec.B, "C": spec.C, "alpha": spec.alpha, "beta": spec.beta}


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\r\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


# ------------------------------------------------------------- subcommands


def cmd_families(a) -> tuple[str, int]:
    rows = family_digest()
    if a.format == "csv":
        keys = list(rows[0])
        return _csv_text(keys, [[r[k] for k in keys] for r in rows]), 0
    return _json_text(rows), 0


def _require_pt(spec: SuperpotentialSpec) -> None:
    if spec.family in PT_FAMILIES and pt_condition(spec) is PtClass.NonPT:
        raise NotPTError(f"A={spec.A}, B={spec.B}, C={spec.C} violate the PT condition of {spec.family.value}")


def cmd_spectrum(a) -> tuple[str, int]:
    spec = _spec(a)
    _require_pt(spec)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", TruncationNotice)
        spectrum = algebraic_spectrum(spec, a.nmax)
    for w in caught:
        print(f"note: {w.message}", file=sys.stderr)
    offset = build_partner_potentials(spec)[0].constant
    levels = [{"n": n, "re": e.real, "im": e.imag} for n, e in spectrum.levels]
    if a.format == "csv":
        rows = [[spec.family.value, spec.branch, lv["n"], repr(lv["re"]), repr(lv["im"])] for lv in levels]
        return _csv_text(["family", "branch", "n", "re", "im"], rows), 0
    doc = {
        "family": spec.family.value,
        "params": _params(spec),
        "branch": spec.branch,
        "convention": "E0=0",
        "offset": {"re": offset.real, "im": offset.imag},
        "levels": levels,
        "truncated": spectrum.truncated,
    }
    return _json_text(doc), 0


def cmd_wavefunction(a) -> tuple[str, int]:
    spec = _spec(a)
    psi = eigenfunction_closed_form(spec, a.n, _grid(a, spec.domain).points)
    if a.format == "json":
        doc = {"family": spec.family.value, "params": _params(spec), "branch": spec.branch, "n": a.n,
               "x": psi.grid.tolist(), "re": psi.values.real.tolist(), "im": psi.values.imag.tolist()}
        return _json_text(doc), 0
    rows = [[repr(float(x)), repr(float(v.real)), repr(float(v.imag))] for x, v in zip(psi.grid, psi.values)]
    return _csv_text(["x", "re", "im"], rows), 0


def verification_suite(spec: SuperpotentialSpec, nmax: int = 3, grid: Grid | None = None,
                       numeric: bool = True) -> list[tuple[str, float, float, bool]]:
    """(check, value, threshold, passed) rows for one spec."""
    rows = []

    def add(name, value, threshold, passed=None):
        ok = value < threshold if passed is None else passed
        rows.append((name, float(value), float(threshold), bool(ok)))

    add("shape invariance residual", verify_shape_invariance(spec), 1e-10)
    gaps = [abs(chain_energies(spec, n)[n] - closed_form_energy(spec, n)) for n in range(nmax + 1)]
    add("chain vs closed form", max(gaps), 1e-10)
    x = residual_grid(spec.domain, spec.alpha)
    add("annihilation of psi_0", annihilation_residual(spec, ground_state_from_W(spec, x)), 1e-8)
    for n in range(2):
        if not level_is_bound(spec, n):
            continue
        cf = eigenfunction_closed_form(spec, n, x)
        add(f"closed-form residual n={n}", closed_form_residual(spec, cf), 1e-6)
        add(f"ladder vs closed form n={n}", scaled_deviation(ladder_construct(spec, n, x), cf), 1e-5)
    if spec.family in PT_FAMILIES:
        cls = pt_condition(spec)
        if cls is not PtClass.NonPT:
            form = build_partner_potentials(spec)[0].without_constant()
            add("PT symmetry of V-", pt_symmetry_check(form, probe_grid(spec.domain, spec.alpha)), 1e-10)
        if numeric and spec.family is Family.AhmedScarf and cls is not PtClass.NonPT:
            rec = bif.spec_scan_record(spec, grid)
            predicted = bif.susy_phase_prediction(spec)
            agree = rec.cls is not None and rec.cls.kind is predicted
            add(f"numeric phase = {predicted.value}", rec.max_im, bif.TOL_IM, agree)
    return rows


def cmd_verify(a) -> tuple[str, int]:
    spec = _spec(a)
    grid = _grid(a, spec.domain) if a.grid_min is not None else None
    rows = verification_suite(spec, a.nmax, grid)
    status = 0 if all(r[3] for r in rows) else 1
    width = max(len(r[0]) for r in rows)
    for n, v, t, ok in rows:
        print(f"{n:<{width}}  {v:10.3e}  < {t:8.1e}  {'PASS' if ok else 'FAIL'}", file=sys.stderr)
    if a.format == "csv":
        return _csv_text(["check", "value", "threshold", "result"],
                         [[n, repr(v), repr(t), "PASS" if ok else "FAIL"] for n, v, t, ok in rows]), status
    return _json_text([{"check": n, "value": v, "threshold": t, "passed": ok}
                       for n, v, t, ok in rows]), status


def _record_row(r: bif.ScanRecord):
    kind = r.cls.kind.value if r.cls is not None else "Failed"
    pairs = r.cls.pairs if r.cls is not None else 0
    return r.V1, r.V2, kind, pairs, r.max_im, r.localized_count


def cmd_scan(a) -> tuple[str, int]:
    step = (a.v2_max - a.v2_min) / a.steps
    grid = _grid(a, Domain.FULL_LINE)
    records = bif.parameter_sweep(a.V1, a.v2_min, a.v2_max, step, grid, a.tol_im, a.pair_tol, a.alpha)
    for r in records:
        if r.failed:
            print(f"sample V2={r.V2}: {r.error}", file=sys.stderr)
        elif r.near_critical:
            print(f"sample V2={r.V2}: near-critical (max |Im| = {r.max_im:.3g})", file=sys.stderr)
    bad = any(r.failed or r.cls.kind is bif.SpectrumKind.Unpaired for r in records)
    rows = [_record_row(r) for r in records]
    if a.format == "csv":
        out = [[repr(v1), repr(v2), k, p, repr(m), c] for v1, v2, k, p, m, c in rows]
        return _csv_text(["V1", "V2", "class", "pairs", "max_im", "localized"], out), int(bad)
    keys = ("V1", "V2", "class", "pairs", "max_im", "localized")
    docs = [dict(zip(keys, row)) | {"near_critical": r.near_critical} for row, r in zip(rows, records)]
    return _json_text(docs), int(bad)


def cmd_critical(a) -> tuple[str, int]:
    grid = _grid(a, Domain.FULL_LINE)
    v2 = bif.critical_point(a.V1, a.v2_min, a.v2_max, a.tol, grid, a.tol_im, a.pair_tol, a.alpha)
    if a.format == "csv":
        return _csv_text(["V1", "V2_critical"], [[repr(a.V1), repr(v2)]]), 0
    return _json_text({"V1": a.V1, "V2_critical": v2, "bracket": [a.v2_min, a.v2_max], "tol": a.tol}), 0


_COMMANDS = {
    "families": cmd_families,
    "spectrum": cmd_spectrum,
    "wavefunction": cmd_wavefunction,
    "verify": cmd_verify,
    "scan": cmd_scan,
    "critical": cmd_critical,
}


def run(args: argparse.Namespace) -> int:
    start = time.perf_counter()
    try:
        text, status = _COMMANDS[args.subcommand](args)
    except (SusyPTError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    print(f"{args.subcommand}: {time.perf_counter() - start:.2f} s", file=sys.stderr)
    return status


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _validate(parser, args)
    return run(args)


if __name__ == "__main__":
    sys.exit(main())
