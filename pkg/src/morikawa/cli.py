"""Command-line front end: ``morikawa <command> ...``.

Exit status is 0 on success, 2 for usage and domain errors, 1 for internal
convergence failures (and failed ``verify`` checks).
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import math
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from . import algebra, galois, geometry, minimize, verification
from .errors import ConvergenceError, MorikawaError

log = logging.getLogger("morikawa")

TOL_ENV = "MORIKAWA_TOL"
DEFAULT_TOL = 1e-12
FORMATS = ("csv", "json", "svg")


def fmt(v: float) -> str:
    return format(float(v), ".15g")


class UsageError(MorikawaError):
    pass


@dataclass
class RunConfig:
    command: str
    r: Optional[float] = None
    theta: Optional[float] = None
    t: Optional[Fraction] = None
    k: Optional[Fraction] = None
    tol: Optional[float] = None
    n: int = 400
    primes: int = 500
    seed: int = 0
    workers: int = 1
    r_list: tuple = ()
    grid_n: int = 2000
    out: Optional[Path] = None
    fmt: str = "csv"

    def validate(self):
        if self.tol is not None and not self.tol > 0.0:
            raise UsageError(f"--tol must be positive, got {self.tol}")
        for r in ((self.r,) if self.r is not None else ()) + tuple(self.r_list):
            if not r >= 1.0:
                raise UsageError(f"--r must be >= 1, got {r}")
        if self.fmt not in FORMATS:
            raise UsageError(f"--format must be one of {FORMATS}")
        if self.out is not None:
            parent = self.out.resolve().parent
            if not parent.is_dir() or not os.access(parent, os.W_OK):
                raise UsageError(f"--out directory is not writable: {parent}")


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _real(text: str) -> float:
    try:
        v = float(Fraction(text.strip())) if "/" in text else float(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a real number: {text!r}") from None
    if not math.isfinite(v):
        raise argparse.ArgumentTypeError(f"not a finite number: {text!r}")
    return v


def _real_list(text: str) -> tuple:
    return tuple(_real(part) for part in text.split(",") if part.strip())


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="morikawa", description=__doc__.splitlines()[0])
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mu", help="minimal inscribed side length mu(r)")
    p.add_argument("--r", type=_real, required=True)
    p.add_argument("--tol", type=_real)
    p.add_argument("--format", dest="fmt", choices=("csv", "json"), default="csv")

    p = sub.add_parser("curve", help="write s(theta) and z(x) samples")
    p.add_argument("--r", type=_real, required=True)
    p.add_argument("--n", type=int, default=400)
    p.add_argument("--out", type=Path, required=True)
    p.add_argument("--format", dest="fmt", choices=("csv", "svg"), default="csv")

    p = sub.add_parser("classify", help="contact profile of the square at a tilt")
    p.add_argument("--r", type=_real, required=True)
    p.add_argument("--theta", type=_real, required=True)
    p.add_argument("--tol", type=_real)

    p = sub.add_parser("poly", help="coefficients of p(t, x) and its building blocks at rational t")
    p.add_argument("--t", type=_rational, required=True)
    p.add_argument("--out", type=Path, required=True)

    p = sub.add_parser("hpoly", help="the trivariate polynomial h(k, x, y)")
    p.add_argument("--out", type=Path, required=True)

    p = sub.add_parser("galois", help="cycle-type evidence for the Galois group of p(k0, x)")
    p.add_argument("--k", type=_rational, required=True)
    p.add_argument("--primes", type=int, default=500)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", type=Path, required=True)

    p = sub.add_parser("verify", help="run the residual suite")
    p.add_argument("--r-list", dest="r_list", type=_real_list, required=True)
    p.add_argument("--grid-n", dest="grid_n", type=int, default=2000)
    return ap


def _config(args) -> RunConfig:
    fields = {k: v for k, v in vars(args).items() if k in RunConfig.__dataclass_fields__}
    cfg = RunConfig(**fields)
    if cfg.tol is None and TOL_ENV in os.environ:
        try:
            cfg.tol = float(os.environ[TOL_ENV])
        except ValueError:
            raise UsageError(f"{TOL_ENV} is not a number: {os.environ[TOL_ENV]!r}") from None
    cfg.validate()
    return cfg


# -- commands ---------------------------------------------------------------------


def cmd_mu(cfg: RunConfig, stdout) -> int:
    res = minimize.minimize_mu(cfg.r, cfg.tol if cfg.tol is not None else DEFAULT_TOL)
    if cfg.fmt == "json":
        stdout.write(json.dumps({"r": fmt(res.r), "x_m": fmt(res.x_m), "mu": fmt(res.mu),
                                 "iterations": res.iterations,
                                 "residual_zprime": fmt(res.residual_zprime)}, sort_keys=True) + "\n")
    else:
        stdout.write(f"r,{fmt(res.r)}\nx_m,{fmt(res.x_m)}\nmu,{fmt(res.mu)}\n")
    return 0


def curve_data(r: float, n: int):
    scene = geometry.Scene(r)
    thetas = geometry.sweep_thetas(n)
    s = geometry.side_lengths(scene, thetas)
    lo = minimize.X_LO + minimize.EDGE_EPS
    hi = minimize.X_HI - minimize.EDGE_EPS
    xs = [lo + (hi - lo) * i / (n - 1) for i in range(n)]
    zs = [minimize.z(r, x) for x in xs]
    return list(map(float, thetas)), list(map(float, s)), xs, zs


def z_path(out: Path) -> Path:
    return out.with_name(f"{out.stem}_z{out.suffix or '.csv'}")


def _write_csv(path: Path, header, rows):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([fmt(v) for v in row])


def svg_plot(panels, width=900, height=360) -> str:
    """Static SVG with one polyline panel per ``(title, xs, ys, xlabel, ylabel)``."""
    pad = 48
    pw = (width - pad * (len(panels) + 1)) / len(panels)
    ph = height - 2 * pad
    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
             f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="12">',
             f'<rect width="{width}" height="{height}" fill="white"/>']
    for i, (title, xs, ys, xlabel, ylabel) in enumerate(panels):
        x0 = pad + i * (pw + pad)
        y0 = pad
        xmin, xmax = min(xs), max(xs)
        ymin, ymax = min(ys), max(ys)
        xr = (xmax - xmin) or 1.0
        yr = (ymax - ymin) or 1.0
        pts = " ".join(f"{x0 + (x - xmin) / xr * pw:.2f},{y0 + ph - (y - ymin) / yr * ph:.2f}"
                       for x, y in zip(xs, ys))
        parts += [
            f'<rect x="{x0:.2f}" y="{y0:.2f}" width="{pw:.2f}" height="{ph:.2f}" fill="none" stroke="#888"/>',
            f'<polyline points="{pts}" fill="none" stroke="#1f4e9c" stroke-width="1.5"/>',
            f'<text x="{x0 + pw / 2:.2f}" y="{y0 - 12:.2f}" text-anchor="middle">{title}</text>',
            f'<text x="{x0 + pw / 2:.2f}" y="{y0 + ph + 32:.2f}" text-anchor="middle">{xlabel}</text>',
            f'<text x="{x0 - 8:.2f}" y="{y0 + ph / 2:.2f}" text-anchor="end">{ylabel}</text>',
            f'<text x="{x0:.2f}" y="{y0 + ph + 16:.2f}">{xmin:.4g}</text>',
            f'<text x="{x0 + pw:.2f}" y="{y0 + ph + 16:.2f}" text-anchor="end">{xmax:.4g}</text>',
            f'<text x="{x0 + 4:.2f}" y="{y0 + 14:.2f}">{ymax:.6g}</text>',
            f'<text x="{x0 + 4:.2f}" y="{y0 + ph - 4:.2f}">{ymin:.6g}</text>',
        ]
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def cmd_curve(cfg: RunConfig, stdout) -> int:
    if cfg.n < 2:
        raise UsageError("--n must be >= 2")
    thetas, s, xs, zs = curve_data(cfg.r, cfg.n)
    if cfg.fmt == "svg":
        svg = svg_plot([(f"s(theta), r = {fmt(cfg.r)}", thetas, s, "theta", "s"),
                        (f"z(x), r = {fmt(cfg.r)}", xs, zs, "x", "z")])
        cfg.out.write_text(svg)
        stdout.write(f"wrote {cfg.out}\n")
        return 0
    _write_csv(cfg.out, ["theta", "s"], zip(thetas, s))
    zp = z_path(cfg.out)
    _write_csv(zp, ["x", "z"], zip(xs, zs))
    stdout.write(f"wrote {cfg.out}\nwrote {zp}\n")
    return 0


def cmd_classify(cfg: RunConfig, stdout) -> int:
    scene = geometry.Scene(cfg.r)
    pose = geometry.inscribed_square(scene, cfg.theta)
    prof = geometry.classify(scene, pose, cfg.tol)
    stdout.write(f"theta,{fmt(pose.theta)}\ns,{fmt(pose.s)}\n")
    for name in ("v_dn", "v_B", "v_up", "v_A"):
        x, y = getattr(pose, name)
        stdout.write(f"{name},{fmt(x)},{fmt(y)}\n")
    stdout.write(f"line_contact,{prof.line_contact.value}\n"
                 f"c1_contact,{prof.c1_contact.value},{prof.c1_feature}\n"
                 f"cr_contact,{prof.cr_contact.value},{prof.cr_feature}\n"
                 f"named_hint,{prof.named_hint or ''}\n")
    return 0


def poly_document(t0: Fraction) -> dict:
    comps = algebra.coeff_polys()
    p = algebra.specialize(algebra.build_p(), t0)
    return {
        "t": str(t0),
        "p": p.to_dict(),
        "components": {name: algebra.specialize(comps[name], t0).to_dict() for name in "EFCBDGH"},
    }


def _write_json(path: Path, doc) -> None:
    path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")


def cmd_poly(cfg: RunConfig, stdout) -> int:
    _write_json(cfg.out, poly_document(cfg.t))
    stdout.write(f"wrote {cfg.out}\n")
    return 0


def cmd_hpoly(cfg: RunConfig, stdout) -> int:
    _write_json(cfg.out, algebra.build_h().to_dict())
    stdout.write(f"wrote {cfg.out}\n")
    return 0


def cmd_galois(cfg: RunConfig, stdout) -> int:
    if cfg.primes < 1:
        raise UsageError("--primes must be >= 1")
    hist = galois.sample_cycle_types(cfg.k, cfg.primes, cfg.seed, workers=cfg.workers)
    report = galois.s10_evidence(hist)
    cfg.out.write_text(report.to_json() + "\n")
    stdout.write(f"primes,{report.primes}\nskipped,{report.skipped}\n"
                 f"verdict,{'consistent with S10' if report.verdict else 'inconclusive'}\n"
                 f"wrote {cfg.out}\n")
    return 0


def cmd_verify(cfg: RunConfig, stdout) -> int:
    checks = []
    for r in cfg.r_list:
        checks.extend(verification.run_checks(r, cfg.grid_n))
    stdout.write(f"{'check':<24}{'r':>8}{'value':>24}{'tol':>10}  result\n")
    for c in checks:
        stdout.write(f"{c.name:<24}{fmt(c.r):>8}{fmt(c.value):>24}{c.tol:>10.0e}  "
                     f"{'PASS' if c.passed else 'FAIL'}\n")
    return 0 if all(c.passed for c in checks) else 1


COMMANDS = {
    "mu": cmd_mu,
    "curve": cmd_curve,
    "classify": cmd_classify,
    "poly": cmd_poly,
    "hpoly": cmd_hpoly,
    "galois": cmd_galois,
    "verify": cmd_verify,
}


def run(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = _config(args)
        return COMMANDS[cfg.command](cfg, stdout)
    except ConvergenceError as exc:
        stderr.write(f"morikawa: convergence failure: {exc}\n")
        return 1
    except (MorikawaError, OSError) as exc:
        stderr.write(f"morikawa: error: {exc}\n")
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
