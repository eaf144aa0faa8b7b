"""``ringfloquet`` command line.

Exit codes: 0 success, 1 verification failure, 2 usage or input error,
3 resource cap exceeded.
"""
from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .constants import ELECTRON_MASS, ELEMENTARY_CHARGE
from .errors import (
    DegenerateError,
    DomainError,
    InconsistencyError,
    IntegrationError,
    RegimeError,
    ResourceError,
    TruncationError,
    VerificationError,
)
from .export import RunManifest, read_config, write_csv, write_json
from .fields import approx_error, field_exact
from .lab import (
    PAPER_OMEGA_RANGE,
    PAPER_RADIUS_RANGE,
    build_grid,
    feasibility_bounds,
    feasibility_scan,
    loop_current,
    persistent_current,
)
from .model import DriveConfig, ModeParams, RingConfig, dimensionless, validity
from .spectrum import coefficients_full, level_diagram, sidebands
from .svgplot import heatmap, level_plot, line_plot, stem_plot
from .verify import run_suite

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3
DEFAULT_FLOOR = 1e-6

FIGURES = {
    "fig1": {"n": 0, "beta": 1e3},
    "fig2": {"n": 0, "beta": 1e6},
    "fig3": {"n": 1, "alpha": 1e3, "flux_ratio": 1.1},
    "fig4": {"n": 1, "alpha": 1e6, "beta": 1.375e5},
}


class UsageError(Exception):
    pass


def _ring_drive(cfg: dict, omega: float | None = None) -> tuple[RingConfig, DriveConfig]:
    ring = RingConfig(
        mass=cfg.get("mass_kg", ELECTRON_MASS),
        charge=cfg.get("charge_C", ELEMENTARY_CHARGE),
        radius=cfg.get("radius_m", 1e-6),
        n=cfg.get("n", 0),
    )
    drive = DriveConfig(
        flux_amplitude=cfg.get("flux_Wb", 0.0),
        omega=cfg.get("omega_rad_s", 1.0) if omega is None else omega,
        solenoid_radius=cfg.get("solenoid_radius_m", ring.radius / 2),
        turns_density=cfg.get("turns_per_m", 0.0),
        current_amplitude=cfg.get("current_A", 0.0),
    )
    return ring, drive


def _load(args) -> dict:
    return read_config(args.config) if args.config else {}


def _out(args, explicit: str | None, default_name: str) -> Path:
    return Path(explicit) if explicit else Path(args.outdir) / default_name


def _finish(args, manifest: RunManifest) -> None:
    path = Path(args.manifest) if args.manifest else Path(args.outdir) / f"manifest_{manifest.command}.json"
    manifest.write(path)
    print(f"manifest: {path}")


def _manifest(args, command: str, **params) -> RunManifest:
    return RunManifest(command, args.config or "", params, [], __version__)


def _spectrum_outputs(params: ModeParams, stem: Path, floor: float, title: str, manifest: RunManifest,
                      relative: bool = False):
    table = coefficients_full(params)
    if relative:
        floor *= float(np.max(np.abs(table.weights[table.r > 0]), initial=0.0)) or 1.0
    spec = sidebands(table, floor)
    csv_path = write_csv(stem.with_suffix(".csv"), ("r", "C_r"), zip(table.r.tolist(), table.weights.tolist()))
    json_path = write_json(stem.with_suffix(".json"), spec.to_dict())
    peak = (spec.r_peak, spec.peak_weight) if spec.r_peak else None
    svg_path = stem_plot(stem.with_suffix(".svg"), table.r, table.weights, title, peak)
    for p in (csv_path, json_path, svg_path):
        manifest.add(p)
    return table, spec


def cmd_spectrum(args) -> int:
    dimless = any(v is not None for v in (args.alpha, args.beta, args.flux_ratio))
    if args.physical and dimless:
        raise UsageError("use either --physical (config file) or --alpha/--beta/--flux-ratio, not both")
    if args.physical:
        if not args.config:
            raise UsageError("--physical needs --config")
        ring, drive = _ring_drive(_load(args))
        params = dimensionless(ring, drive)
        if args.n is not None and args.n != ring.n:
            raise UsageError("--n conflicts with n in the config file")
    else:
        if args.config:
            raise UsageError("--config is only read with --physical")
        n = 0 if args.n is None else args.n
        params = ModeParams.from_dimensionless(n, alpha=args.alpha, beta=args.beta, flux_ratio=args.flux_ratio)
    manifest = _manifest(
        args, "spectrum", n=params.n, alpha=params.alpha, beta=params.beta,
        flux_ratio=params.flux_ratio, omega_rad_s=params.omega, floor=args.floor,
    )
    stem = Path(args.outdir) / "spectrum"
    table, spec = _spectrum_outputs(
        params, stem, args.floor, f"C_r for n={params.n}, alpha={params.alpha:.4g}, beta={params.beta:.4g}", manifest
    )
    for explicit, suffix in ((args.out_csv, ".csv"), (args.out_json, ".json"), (args.out_svg, ".svg")):
        if explicit:
            target = Path(explicit)
            target.parent.mkdir(parents=True, exist_ok=True)
            target.write_bytes(stem.with_suffix(suffix).read_bytes())
            manifest.add(target)
    print(f"n={params.n} alpha={params.alpha!r} beta={params.beta!r} window=[{table.r_min}, {table.r_max}] "
          f"method={table.method}")
    if spec.r_peak:
        print(f"r_peak={spec.r_peak} C_r_peak={spec.peak_weight:.6g}")
    else:
        print(f"single line C_0={table.weight(0):.6g}")
    _finish(args, manifest)
    return EXIT_OK


def cmd_verify(args) -> int:
    reports = run_suite(args.suite, inject_fault=args.inject_fault)
    path = _out(args, args.out_json, f"verify_{args.suite}.json")
    write_json(path, [r.to_dict() for r in reports])
    width = max(len(r.check) for r in reports)
    for r in reports:
        status = "PASS" if r.passed else "FAIL"
        print(f"{r.check:<{width}}  {status}  error={r.max_abs_error:.3e}  tol={r.tolerance:.1e}")
    manifest = _manifest(args, "verify", suite=args.suite, inject_fault=args.inject_fault)
    manifest.add(path)
    _finish(args, manifest)
    if all(r.passed for r in reports):
        return EXIT_OK
    print(f"verification failed; reports in {path}", file=sys.stderr)
    return EXIT_VERIFY


def cmd_fields(args) -> int:
    ring, drive = _ring_drive(_load(args), args.omega)
    if drive.omega == 0:
        raise UsageError("fields need omega_rad_s > 0")
    a = drive.solenoid_radius
    rho_min = args.rho_min if args.rho_min is not None else 2.0 * a
    rho_max = args.rho_max if args.rho_max is not None else max(ring.radius, 4.0 * a)
    if not (a < rho_min <= rho_max):
        raise UsageError("need solenoid_radius < rho_min <= rho_max")
    rhos = np.geomspace(rho_min, rho_max, args.rho_count) if args.rho_count > 1 else np.array([rho_min])
    period = 2.0 * math.pi / drive.omega
    times = np.arange(args.time_count) * (period / args.time_count)
    header = ["rho_m", "t_s", "A_phi", "E_phi", "B_z"] + (["approx_error"] if args.approx_error else [])
    rows = []
    amp = []
    for rho in rhos.tolist():
        err = approx_error(drive, rho) if args.approx_error else None
        peak = 0.0
        for t in times.tolist():
            fv = field_exact(drive, rho, t)
            peak = max(peak, abs(fv.a_phi))
            rows.append([rho, t, fv.a_phi, fv.e_phi, fv.b_z] + ([err] if args.approx_error else []))
        amp.append(peak)
    manifest = _manifest(
        args, "fields", omega_rad_s=drive.omega, flux_Wb=drive.flux_amplitude, solenoid_radius_m=a,
        rho_min_m=rho_min, rho_max_m=rho_max, rho_count=args.rho_count, time_count=args.time_count,
        k_rho_max=drive.wavenumber * rho_max,
    )
    manifest.add(write_csv(_out(args, args.out_csv, "fields.csv"), header, rows))
    manifest.add(line_plot(_out(args, args.out_svg, "fields.svg"), rhos, [("max_t |A_phi|", amp)],
                           "Vector potential amplitude outside the solenoid", "rho (m)", "T m", logx=True))
    if args.approx_error:
        print(f"approx error at rho={rhos[-1]:.4g} m (k rho={drive.wavenumber * rhos[-1]:.3g}): {rows[-1][-1]:.6g}")
    _finish(args, manifest)
    return EXIT_OK


def cmd_current(args) -> int:
    ring, drive = _ring_drive(_load(args))
    period = 2.0 * math.pi / drive.omega if drive.omega > 0 else 1.0
    times = np.arange(args.samples) * (args.periods * period / args.samples)
    current = np.atleast_1d(loop_current(ring, drive, times))
    steady = persistent_current(ring)
    manifest = _manifest(args, "current", n=ring.n, radius_m=ring.radius, flux_Wb=drive.flux_amplitude,
                         omega_rad_s=drive.omega, samples=args.samples, periods=args.periods)
    rows = ([t, i, steady] for t, i in zip(times.tolist(), current.tolist()))
    manifest.add(write_csv(_out(args, args.out_csv, "current.csv"), ("t_s", "current_A", "persistent_A"), rows))
    manifest.add(line_plot(_out(args, args.out_svg, "current.svg"), times,
                           [("loop current", current), ("persistent", np.full(times.shape, steady))],
                           "Loop current", "t (s)", "A"))
    rep = validity(ring, drive)
    print(f"persistent current {steady:.6g} A; kR={rep.kR:.3g} ({rep.status})")
    _finish(args, manifest)
    return EXIT_OK


def cmd_feasibility(args) -> int:
    mass = ELECTRON_MASS
    charge = ELEMENTARY_CHARGE
    if args.config:
        cfg = _load(args)
        mass, charge = cfg.get("mass_kg", mass), cfg.get("charge_C", charge)
    radius_range = (args.r_min, args.r_max)
    omega_range = (args.omega_min, args.omega_max)
    a_min, a_max, b_min, b_max = feasibility_bounds(args.flux_ratio, args.n, radius_range, omega_range, mass, charge)
    print(f"{a_min:.3g} <= alpha <= {a_max:.3g}")
    print(f"{b_min:.3g} <= beta <= {b_max:.3g}")
    grid = build_grid(args.flux_ratio, args.n, radius_range, omega_range, args.samples, mass, charge)
    scan = feasibility_scan(grid, tuple(args.alpha_window), tuple(args.beta_window))
    ranks = {(h.radius, h.omega): h.rank for h in scan.hits}
    rows = []
    for i, r in enumerate(grid.radii.tolist()):
        for j, w in enumerate(grid.omegas.tolist()):
            rows.append([r, w, float(grid.alpha[i, j]), float(grid.beta[i, j]), float(grid.kR[i, j]),
                         bool(grid.valid[i, j]), ranks.get((r, w))])
    manifest = _manifest(
        args, "feasibility", flux_ratio=args.flux_ratio, n=args.n, radius_range_m=list(radius_range),
        omega_range_rad_s=list(omega_range), samples=args.samples, alpha_window=list(args.alpha_window),
        beta_window=list(args.beta_window), bounds=[a_min, a_max, b_min, b_max],
    )
    header = ("R_m", "omega_rad_s", "alpha", "beta", "kR", "valid", "rank")
    manifest.add(write_csv(_out(args, args.out_csv, "feasibility.csv"), header, rows))
    in_window = np.zeros(grid.alpha.shape, dtype=bool)
    for h in scan.hits:
        in_window[np.searchsorted(grid.radii, h.radius), np.searchsorted(grid.omegas, h.omega)] = True
    manifest.add(heatmap(_out(args, args.out_svg, "feasibility.svg"), grid.omegas, grid.radii,
                         [("|alpha|", grid.alpha), ("beta", grid.beta)],
                         "Drive strengths over the (R, omega) grid (outlined: inside windows)",
                         "omega (rad/s)", "R (m)", mask=in_window))
    if scan.hits:
        best = scan.hits[0]
        print(f"{len(scan.hits)} grid points inside the windows; best R={best.radius:.3g} m, "
              f"omega={best.omega:.3g} rad/s")
    else:
        print(scan.advisory)
    _finish(args, manifest)
    return EXIT_OK


def cmd_figures(args) -> int:
    out = Path(args.outdir)
    manifest = _manifest(args, "figures", figures={k: dict(v) for k, v in FIGURES.items()},
                         floor_fraction=args.floor_fraction)
    specs = {}
    for name, spec in FIGURES.items():
        params = ModeParams.from_dimensionless(spec["n"], **{k: v for k, v in spec.items() if k != "n"})
        title = f"{name}: n={params.n}, alpha={params.alpha:.4g}, beta={params.beta:.4g}"
        _, specs[name] = _spectrum_outputs(params, out / name, args.floor_fraction, title, manifest,
                                            relative=True)
        print(f"{name}: r_peak={specs[name].r_peak} C_r_peak={specs[name].peak_weight:.4g}")
    diagram = level_diagram(specs["fig1"], specs["fig3"])
    manifest.add(write_json(out / "fig5.json", diagram.to_dict()))
    manifest.add(level_plot(out / "fig5.svg", diagram, specs["fig1"].hbar_omega,
                            "Dominant sidebands of n = 0 and n = 1"))
    print(f"fig5: lower sideband gap = {diagram.lower_gap / specs['fig1'].hbar_omega:.4g} hbar omega, "
          f"crossing={diagram.crossing}")
    _finish(args, manifest)
    return EXIT_OK


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="flat key = value file (mass_kg, charge_C, radius_m, n, flux_Wb, ...)")
    common.add_argument("--outdir", default=".", help="directory for default output names")
    common.add_argument("--manifest", help="manifest path (default OUTDIR/manifest_<command>.json)")

    parser = argparse.ArgumentParser(prog="ringfloquet", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", parents=[common], help="weights C_r and the sideband spectrum")
    p.add_argument("--n", type=int)
    p.add_argument("--alpha", type=float)
    p.add_argument("--beta", type=float)
    p.add_argument("--flux-ratio", type=float)
    p.add_argument("--physical", action="store_true", help="take parameters from --config")
    p.add_argument("--floor", type=float, default=DEFAULT_FLOOR, help="smallest |C_r| kept in the JSON lines")
    p.add_argument("--out-csv")
    p.add_argument("--out-json")
    p.add_argument("--out-svg")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("verify", parents=[common], help="run the oracle cross-checks")
    p.add_argument("--suite", choices=("quick", "full"), default="quick")
    p.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    p.add_argument("--out-json")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("fields", parents=[common], help="solenoid A, E, B profile")
    p.add_argument("--omega", type=float, help="override omega_rad_s")
    p.add_argument("--rho-min", type=float)
    p.add_argument("--rho-max", type=float)
    p.add_argument("--rho-count", type=_positive_int, default=16)
    p.add_argument("--time-count", type=_positive_int, default=8)
    p.add_argument("--approx-error", action="store_true", help="add the low-frequency approximation error column")
    p.add_argument("--out-csv")
    p.add_argument("--out-svg")
    p.set_defaults(func=cmd_fields)

    p = sub.add_parser("current", parents=[common], help="loop current over time")
    p.add_argument("--periods", type=float, default=2.0)
    p.add_argument("--samples", type=_positive_int, default=200)
    p.add_argument("--out-csv")
    p.add_argument("--out-svg")
    p.set_defaults(func=cmd_current)

    p = sub.add_parser("feasibility", parents=[common], help="alpha, beta bounds and (R, omega) scan")
    p.add_argument("--flux-ratio", type=float, default=1.0)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--r-min", type=float, default=PAPER_RADIUS_RANGE[0])
    p.add_argument("--r-max", type=float, default=PAPER_RADIUS_RANGE[1])
    p.add_argument("--omega-min", type=float, default=PAPER_OMEGA_RANGE[0])
    p.add_argument("--omega-max", type=float, default=PAPER_OMEGA_RANGE[1])
    p.add_argument("--samples", type=_positive_int, default=25)
    p.add_argument("--alpha-window", type=float, nargs=2, default=(1e3, 1e6), metavar=("LO", "HI"))
    p.add_argument("--beta-window", type=float, nargs=2, default=(1e2, 1e5), metavar=("LO", "HI"))
    p.add_argument("--out-csv")
    p.add_argument("--out-svg")
    p.set_defaults(func=cmd_feasibility)

    p = sub.add_parser("figures", parents=[common], help="regenerate all figure datasets")
    p.add_argument("--floor-fraction", type=float, default=0.25,
                   help="JSON lines keep |C_r| >= this fraction of the peak weight")
    p.set_defaults(func=cmd_figures)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (VerificationError, IntegrationError, TruncationError) as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except (DomainError, RegimeError, DegenerateError, InconsistencyError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
