"""Command-line driver.

Exit codes: 0 success, 2 configuration or input error, 3 numerical
non-convergence.
"""

import argparse
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace
import math
import os
import sys

import numpy as np

from . import io
from .angular import SectorGeometry, lambda_kappa, mode_function, sigma3_coupling
from .bessel import bessel_k
from .errors import SectorDiracError
from .extensions import audit_extension, scaled_gamma
from .fiber import (
    Classification,
    ExtensionParameter,
    FiberOperator,
    RadialGrid,
    RadialPair,
    classify_self_adjoint,
    deficiency_element,
    interior_residual,
)
from .geometry import classify_polygon, corner_half_apertures, load_polygon
from .spectra import (
    sector_spectrum,
    virial_audit,
    weyl_quotient_negative_mass,
    weyl_quotient_positive_mass,
)

EXIT_OK, EXIT_INPUT, EXIT_NONCONVERGED = 0, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _add_omega(p):
    g = p.add_mutually_exclusive_group()
    g.add_argument("--omega", type=float, help="half-aperture in radians")
    g.add_argument("--omega-frac", type=float, nargs=2, metavar=("P", "Q"),
                   help="half-aperture P*pi/Q")


def _add_spectral(p):
    p.add_argument("--mass", type=float, default=0.0)
    p.add_argument("--gamma-phase", type=float, default=0.0)
    p.add_argument("--n-modes", type=int, default=8)
    p.add_argument("--r-min", type=float, default=1e-6)
    p.add_argument("--r-max", type=float, default=20.0)
    p.add_argument("--n-r", type=int, default=600)
    p.add_argument("--spacing", choices=("uniform", "log"), default="uniform")
    p.add_argument("--coupling", choices=("polar", "galerkin"), default="polar")
    p.add_argument("--n-eigs", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)


def _add_output(p):
    p.add_argument("--output", help="report path")
    p.add_argument("--format", choices=("json", "csv"), default="json")


def build_parser():
    parser = _Parser(prog="sector-dirac", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("classify", help="self-adjointness of the sector operator")
    _add_omega(p)
    p.add_argument("--kappa", type=int)
    _add_output(p)

    p = sub.add_parser("modes", help="angular eigenvalues and couplings")
    _add_omega(p)
    p.add_argument("--kappa-max", type=int, default=4)
    _add_output(p)

    p = sub.add_parser("bessel", help="evaluate K_nu")
    p.add_argument("--nu", type=float, required=True)
    p.add_argument("--r", type=float, action="append", required=True)
    _add_output(p)

    p = sub.add_parser("fiber", help="fiber classification and deficiency residual")
    _add_omega(p)
    p.add_argument("--kappa", type=int, default=0)
    p.add_argument("--r-min", type=float, default=1e-3)
    p.add_argument("--r-max", type=float, default=25.0)
    p.add_argument("--n-r", type=int, default=4000)
    p.add_argument("--spacing", choices=("uniform", "log"), default="log")
    _add_output(p)

    for name, text in (("spectrum", "eigenvalues of the truncated sector"),
                       ("virial", "virial audit of the truncated sector")):
        p = sub.add_parser(name, help=text)
        _add_omega(p)
        _add_spectral(p)
        _add_output(p)
        if name == "spectrum":
            p.add_argument("--sweep", metavar="NAME=V1,V2,...",
                           help="run once per value of a numeric parameter")

    p = sub.add_parser("weyl", help="Weyl quotient of the plane-wave or edge probe")
    p.add_argument("--mass", type=float, required=True)
    p.add_argument("--lam", type=float, required=True)
    p.add_argument("--n", type=float, default=1.0, dest="weyl_n")
    _add_output(p)

    p = sub.add_parser("extension", help="criteria for an extension parameter")
    _add_omega(p)
    p.add_argument("--gamma-phase", type=float, default=0.0)
    p.add_argument("--alpha", type=float)
    _add_output(p)

    p = sub.add_parser("polygon", help="classify a polygon read from JSON")
    p.add_argument("path")
    _add_output(p)
    return parser


def config_from_args(args):
    values = {"command": args.command}
    for key in ("mass", "gamma_phase", "n_modes", "r_min", "r_max", "n_r", "spacing",
                "coupling", "n_eigs", "seed", "kappa", "kappa_max", "alpha", "nu",
                "weyl_n", "lam", "format"):
        if hasattr(args, key) and getattr(args, key) is not None:
            values[key] = getattr(args, key)
    if getattr(args, "omega_frac", None):
        p, q = args.omega_frac
        if q == 0:
            raise SectorDiracError("--omega-frac denominator must be nonzero")
        values["omega"] = math.pi * p / q
    elif getattr(args, "omega", None) is not None:
        values["omega"] = args.omega
    if getattr(args, "r", None):
        values["radii"] = list(args.r)
    if getattr(args, "path", None):
        values["polygon_path"] = args.path
    values["output_path"] = getattr(args, "output", None)
    return io.RunConfig(**values).validate()


# ----------------------------------------------------------------------------
# Commands. Each returns (results dict, text lines, exit code).


def run_classify(cfg):
    geom = SectorGeometry(cfg.omega)
    kappas = [cfg.kappa] if cfg.kappa is not None else [0, 1, 2]
    fibers = {str(k): classify_self_adjoint(geom, k).value for k in kappas}
    if geom.convex:
        head = f"convex; self-adjoint; λ₀ = {geom.lambda0!r}"
        family = None
    else:
        head = f"non-convex; one-parameter family; ν₀ = {geom.nu0!r}"
        family = "extensions D^γ, |γ| = 1, one parameter carried by the κ = 0 fiber"
    lines = [head] + [f"κ = {k}: {v}" for k, v in fibers.items()]
    res = {"convex": geom.convex, "nu0": geom.nu0, "lambda0": geom.lambda0,
           "fibers": fibers, "family": family}
    return res, lines, EXIT_OK


def run_modes(cfg):
    geom = SectorGeometry(cfg.omega)
    ks = list(range(-cfg.kappa_max - 1, cfg.kappa_max + 1))
    lams = [lambda_kappa(k, geom) for k in ks]
    coupling = [[sigma3_coupling(j, k, geom) for k in ks] for j in ks]
    edge = mode_function(0, geom, np.array([geom.omega]))
    lines = [f"κ = {k:3d}   λ = {lam!r}" for k, lam in zip(ks, lams)]
    res = {"kappa": ks, "lambda": lams, "sigma3_coupling": coupling,
           "u0_at_upper_edge": [[float(z.real), float(z.imag)] for z in edge[0]]}
    return res, lines, EXIT_OK


def run_bessel(cfg):
    vals = [bessel_k(cfg.nu, r) for r in cfg.radii]
    lines = [f"K_{cfg.nu!r}({r!r}) = {v!r}" for r, v in zip(cfg.radii, vals)]
    return {"nu": cfg.nu, "r": cfg.radii, "K": vals}, lines, EXIT_OK


def run_fiber(cfg):
    geom = SectorGeometry(cfg.omega)
    kappa = cfg.kappa or 0
    cls = classify_self_adjoint(geom, kappa)
    res = {"kappa": kappa, "lambda": lambda_kappa(kappa, geom), "classification": cls.value}
    lines = [f"κ = {kappa}: {cls.value}"]
    if cls is Classification.DEFICIENCY_ONE:
        grid = RadialGrid(cfg.r_min, cfg.r_max, cfg.n_r, cfg.spacing)
        pair = deficiency_element(geom, grid)
        op = FiberOperator(0, geom)
        plus = interior_residual(op, pair, RadialPair(pair.r, 1j * pair.a, 1j * pair.b))
        res["deficiency_residual"] = plus
        lines.append(f"‖(d⁰ - i)a₊‖/‖a₊‖ = {plus:.3e}")
    return res, lines, EXIT_OK


def _spectral_run(cfg):
    geom = SectorGeometry(cfg.omega)
    grid = RadialGrid(cfg.r_min, cfg.r_max, cfg.n_r, cfg.spacing)
    gamma = ExtensionParameter(cfg.gamma_phase) if not geom.convex else None
    m = cfg.mass
    windows = [(-abs(m), abs(m)), (abs(m), abs(m) + 1)] if m != 0 else [(-0.5, 0.5)]
    report, asm = sector_spectrum(geom, m, gamma, cfg.n_modes, grid, k=cfg.n_eigs,
                                  seed=cfg.seed, windows=windows, coupling=cfg.coupling)
    return report, asm


def run_spectrum(cfg):
    report, _ = _spectral_run(cfg)
    res = report.to_dict()
    code = EXIT_OK if report.convergence_tag == "converged" else EXIT_NONCONVERGED
    if cfg.mass < 0:
        res["gap_candidates_note"] = "unresolved: eigenvalues inside the gap for m < 0"
    lines = [f"min |eig| = {report.min_abs_eig!r}   tag = {report.convergence_tag}"]
    lines += [f"{k}: {v}" for k, v in report.window_counts.items()]
    return res, lines, code, report.eigenvalues


def run_virial(cfg):
    report, asm = _spectral_run(cfg)
    diags = virial_audit(report, asm)
    rows = [{"eigenvalue": d.eigenvalue, "defect": d.defect,
             "relative_defect": d.relative_defect, "within_gap": d.within_gap,
             "continuum": d.continuum} for d in diags]
    unaccounted = sum(not d.accounted for d in diags)
    res = {"pairs": rows, "unaccounted": unaccounted,
           "convergence_tag": report.convergence_tag}
    lines = [f"{d.eigenvalue:+.10f}  defect {d.relative_defect:.4f}  "
             f"{'gap' if d.within_gap else ('continuum' if d.continuum else 'UNFLAGGED')}"
             for d in diags]
    lines.append(f"unaccounted pairs: {unaccounted}")
    code = EXIT_OK if report.convergence_tag == "converged" else EXIT_NONCONVERGED
    return res, lines, code


def run_weyl(cfg):
    if cfg.mass >= 0:
        q = weyl_quotient_positive_mass(cfg.weyl_n, cfg.mass, cfg.lam)
        family = "plane-wave"
    else:
        q = weyl_quotient_negative_mass(cfg.weyl_n, cfg.mass, cfg.lam)
        family = "edge"
    return ({"family": family, "n": cfg.weyl_n, "quotient": q},
            [f"{family} probe, n = {cfg.weyl_n!r}: quotient = {q!r}"], EXIT_OK)


def run_extension(cfg):
    geom = SectorGeometry(cfg.omega)
    if geom.convex:
        raise SectorDiracError("already self-adjoint: extensions need omega > pi/2")
    gamma = ExtensionParameter(cfg.gamma_phase)
    audit = audit_extension(geom, gamma)

    def verdict(ok):
        return "pass" if ok else "fail"

    res = {"gamma_phase": gamma.s, "charge_conjugation": audit.charge_conjugation,
           "scaling": audit.scaling, "h_half": audit.h_half,
           "distinguished": audit.distinguished}
    lines = [f"C: {verdict(audit.charge_conjugation)}", f"scaling: {verdict(audit.scaling)}",
             f"H^1/2: {verdict(audit.h_half)}"]
    if cfg.alpha is not None:
        out = scaled_gamma(gamma, cfg.alpha, geom)
        phase = out.s if out.s <= math.pi else out.s - 2 * math.pi
        res["scaled_gamma_phase"] = phase
        lines.append(f"scaled γ phase (α = {cfg.alpha!r}) = {phase!r}")
    return res, lines, EXIT_OK


def run_polygon(cfg):
    poly = load_polygon(cfg.polygon_path)
    cls = classify_polygon(poly)
    half = corner_half_apertures(poly)
    rows = [{"vertex": [float(x), float(y)], "interior_angle": float(2 * h),
             "half_aperture": float(h), "reflex": bool(h > math.pi / 2)}
            for (x, y), h in zip(poly.vertices, half)]
    res = {"classification": str(cls), "corners": rows,
           "count_rule": "one parameter per reflex corner (localisation heuristic)"
           if cls.heuristic else None}
    lines = [str(cls)] + [f"({r['vertex'][0]:g}, {r['vertex'][1]:g})  interior "
                          f"{r['interior_angle']:.12g}  half {r['half_aperture']:.12g}"
                          for r in rows]
    return res, lines, EXIT_OK


RUNNERS = {
    "classify": run_classify, "modes": run_modes, "bessel": run_bessel,
    "fiber": run_fiber, "spectrum": run_spectrum, "virial": run_virial,
    "weyl": run_weyl, "extension": run_extension, "polygon": run_polygon,
}


def execute(cfg, out=None):
    """Run one configuration, write its outputs and return the exit code."""
    out = sys.stdout if out is None else out
    outcome = RUNNERS[cfg.command](cfg)
    eigenvalues = None
    if len(outcome) == 4:
        res, lines, code, eigenvalues = outcome
    else:
        res, lines, code = outcome
    doc = io.dumps(io.report_document(cfg, res))
    if cfg.output_path:
        stem, ext = os.path.splitext(cfg.output_path)
        if cfg.format == "csv" and eigenvalues is not None:
            io.write_atomic(cfg.output_path, io.eigenvalue_csv(eigenvalues))
            io.write_atomic(stem + ".json", doc)
        else:
            io.write_atomic(cfg.output_path, doc)
            if eigenvalues is not None:
                io.write_atomic(stem + ".csv", io.eigenvalue_csv(eigenvalues))
    for line in lines:
        print(line, file=out)
    return code


def _pool_size():
    raw = os.environ.get("SECTOR_DIRAC_THREADS", "")
    try:
        cap = int(raw) if raw else os.cpu_count() or 1
    except ValueError:
        raise SectorDiracError(f"SECTOR_DIRAC_THREADS={raw!r} is not an integer") from None
    return max(1, cap)


_SWEEPABLE = {"mass": float, "gamma_phase": float, "n_modes": int, "r_max": float,
              "n_r": int, "omega": float, "r_min": float, "n_eigs": int}


def sweep_configs(cfg, request):
    name, _, values = request.partition("=")
    name = name.strip().replace("-", "_")
    if name not in _SWEEPABLE or not values:
        raise SectorDiracError(f"cannot sweep {request!r}; sweepable: {sorted(_SWEEPABLE)}")
    try:
        vals = [_SWEEPABLE[name](v) for v in values.split(",")]
    except ValueError:
        raise SectorDiracError(f"bad sweep values in {request!r}") from None
    stem, ext = os.path.splitext(cfg.output_path or "sweep.json")
    return [replace(cfg, **{name: v}, output_path=f"{stem}_{i:03d}{ext or '.json'}").validate()
            for i, v in enumerate(vals)]


def _execute_quiet(cfg):
    with open(os.devnull, "w") as sink:
        return execute(cfg, sink)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = config_from_args(args)
        sweep = getattr(args, "sweep", None)
        if sweep:
            runs = sweep_configs(cfg, sweep)
            with ProcessPoolExecutor(max_workers=min(_pool_size(), len(runs))) as pool:
                codes = list(pool.map(_execute_quiet, runs))
            for run, code in zip(runs, codes):
                print(f"{run.output_path}: exit {code}")
            return max(codes)
        return execute(cfg)
    except (SectorDiracError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
