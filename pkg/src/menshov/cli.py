"""Command-line driver: JSON-configured runs emitting CSV/JSON/SVG reports.

Subcommands: wiener-scan, mset-limit, corrector, claim, demo.
Exit codes: 0 ok, 2 config error, 3 precondition violation,
4 certification failure, 5 numeric failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import assembly, corrector, fourier, msets
from .errors import (AtomicMeasureError, CertificationError, DomainError,
                     MeasureSpecError, QuadratureError)
from .measures import MeasureSpec, build_measure
from .piecewise import StepFunction

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_PRECONDITION = 3
EXIT_UNCERTIFIED = 4
EXIT_NUMERIC = 5


def _fmt(x) -> str:
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return format(float(x), ".17g")


def _write_csv(path: Path, header, rows, config: dict):
    lines = ["# config: " + json.dumps(config, sort_keys=True)]
    lines.append(",".join(header))
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    path.write_text("\n".join(lines) + "\n")


def _write_json(path: Path, payload: dict, config: dict):
    doc = {"config": config}
    doc.update(payload)
    path.write_text(json.dumps(doc, indent=2, sort_keys=True,
                               default=_json_default) + "\n")


def _json_default(o):
    if isinstance(o, np.bool_):
        return bool(o)
    if isinstance(o, (np.integer,)):
        return int(o)
    if isinstance(o, (np.floating,)):
        return float(o)
    if isinstance(o, np.ndarray):
        return o.tolist()
    raise TypeError(f"not JSON serializable: {type(o)}")


def _write_svg(path: Path, xs, ys, title: str):
    """Minimal deterministic SVG line plot."""
    xs = np.asarray(xs, float)
    ys = np.asarray(ys, float)
    w, h, pad = 640.0, 400.0, 40.0
    x0, x1 = float(xs.min()), float(xs.max())
    y0, y1 = float(ys.min()), float(ys.max())
    if x1 == x0:
        x1 = x0 + 1.0
    if y1 == y0:
        y1 = y0 + 1.0
    px = pad + (xs - x0) / (x1 - x0) * (w - 2 * pad)
    py = h - pad - (ys - y0) / (y1 - y0) * (h - 2 * pad)
    pts = " ".join(f"{a:.2f},{b:.2f}" for a, b in zip(px, py))
    svg = (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w:.0f}" '
        f'height="{h:.0f}">\n'
        f'<rect width="100%" height="100%" fill="white"/>\n'
        f'<text x="{w / 2:.0f}" y="20" text-anchor="middle" '
        f'font-family="monospace">{title}</text>\n'
        f'<polyline points="{pts}" fill="none" stroke="steelblue" '
        f'stroke-width="1"/>\n</svg>\n'
    )
    path.write_text(svg)


def _load_config(args) -> dict:
    cfg = {}
    if args.config:
        with open(args.config) as fh:
            cfg = json.load(fh)
    for item in args.set or []:
        key, _, raw = item.partition("=")
        if not _:
            raise ValueError(f"--set expects key=value, got {item!r}")
        try:
            cfg[key] = json.loads(raw)
        except json.JSONDecodeError:
            cfg[key] = raw
    return cfg


def _measure_from_config(cfg: dict):
    if "measure" in cfg and isinstance(cfg["measure"], dict):
        spec = MeasureSpec.from_dict(cfg["measure"])
    elif "measure" in cfg:
        with open(cfg["measure"]) as fh:
            spec = MeasureSpec.from_dict(json.load(fh))
    else:
        raise KeyError("config needs a 'measure' entry (path or inline spec)")
    return build_measure(spec)


# ---------------------------------------------------------------------------
# Subcommands

def _cmd_wiener_scan(cfg, out: Path, plot: bool):
    mu = _measure_from_config(cfg)
    from .measures import normalize
    nrm = normalize(mu, mu.domain)
    k = int(cfg.get("k", 1))
    N = int(cfg.get("N", 1000))
    refinement = int(cfg.get("refinement", 512))
    vals, errs = fourier.coefficients_batch(nrm, abs(k) * np.arange(N + 1),
                                            refinement)
    absv = np.abs(vals)
    running = np.cumsum(absv**2) / np.arange(1, N + 2)
    rows = [(n, k, absv[n], errs[n], running[n]) for n in range(N + 1)]
    _write_csv(out / "wiener_scan.csv",
               ["n", "k", "abs_coeff", "error", "running_average"], rows, cfg)
    if plot:
        _write_svg(out / "wiener_scan.svg", np.arange(N + 1), running,
                   "running Cesaro average of |coeff|^2")
    return EXIT_OK


def _cmd_mset_limit(cfg, out: Path, plot: bool):
    mu = _measure_from_config(cfg)
    from .measures import normalize
    interval = tuple(cfg.get("I", list(mu.domain)))
    sigma, tau = float(cfg["sigma"]), float(cfg["tau"])
    J, K = int(cfg.get("J", 3)), int(cfg.get("K", 3))
    m, N_max = int(cfg.get("m", 1)), int(cfg.get("N_max", 1000))
    refinement = int(cfg.get("refinement", 512))
    nrm = normalize(mu, interval)
    lam = fourier.build_lambda(nrm, K=K, J=J, N_max=N_max, m=m,
                               refinement=refinement)
    scan = msets.proposition_scan(mu, interval, sigma, tau, lam)
    _write_csv(out / "mset_limit.csv", ["n", "mass", "error"],
               scan.rows(), cfg)
    _write_json(out / "mset_limit_summary.json", {
        "target": scan.target,
        "tail_sup": scan.tail_sup,
        "members": int(scan.ns.size),
        "density": lam.density,
    }, cfg)
    if plot:
        _write_svg(out / "mset_limit.svg", scan.ns, scan.errors,
                   "|mass(A_n) - tau mu(I)| vs n")
    return EXIT_OK


def _cmd_corrector(cfg, out: Path, plot: bool):
    c, d = float(cfg.get("c", 0.0)), float(cfg.get("d", 2.0 * np.pi))
    gamma = float(cfg.get("gamma", 1.0))
    eps = float(cfg.get("eps", 0.1))
    nu = int(cfg.get("nu", 16))
    r = int(cfg.get("r", 0)) or corrector.choose_r(c, d, gamma, eps, nu)
    params = corrector.CorrectorParams(c, d, gamma, eps, nu, r)
    lay = corrector.layout(params)
    psi = corrector.build_psi(lay, gamma, nu)
    run_sup = corrector.running_integral_sup(psi)
    checks = {
        "sup_bound": bool(np.max(np.abs(psi.ys)) <= 2 * nu * abs(gamma)),
        "running_integral_lt_eps": bool(run_sup < eps),
        "running_integral_sup": run_sup,
        "removed_count_ok": int(lay.removed.shape[0]) == (nu - 4) * r,
        "lebesgue_E": lay.lebesgue_e(),
        "lebesgue_E_bound_ok":
            bool(lay.lebesgue_e() >= (d - c) * (1 - 5.0 / nu) - 1e-12),
    }
    if cfg.get("kernel", False):
        j_max = int(cfg.get("j_max", 16))
        x_grid = int(cfg.get("x_grid", 64))
        sup, b_hat = corrector.kernel_sup(psi, j_max, x_grid, nu, gamma)
        checks["kernel_sup"] = sup
        checks["kernel_b_hat"] = b_hat
    _write_json(out / "corrector_layout.json", {
        "q": lay.q, "delta": lay.delta, "a_prime": lay.a_prime,
        "b_prime": lay.b_prime, "r": r, "nu": nu,
        "removed": lay.removed, "e_intervals": lay.e_intervals,
    }, cfg)
    _write_csv(out / "corrector_psi.csv", ["breakpoint", "value"],
               list(zip(psi.xs, psi.ys)), cfg)
    _write_json(out / "corrector_checks.json", checks, cfg)
    if plot:
        _write_svg(out / "corrector_psi.svg", psi.xs, psi.ys, "corrector")
    return EXIT_OK


def _step_from_config(cfg, domain) -> StepFunction:
    values = cfg.get("phi", [1.0, -1.0])
    return StepFunction.equal_cells(domain, values)


def _cmd_claim(cfg, out: Path, plot: bool):
    mu = _measure_from_config(cfg)
    nu = int(cfg.get("nu", 16))
    phi = _step_from_config(cfg, mu.domain)
    eps_seq = cfg.get("eps_seq")
    result = assembly.claim_run(
        phi, mu, nu, eps_seq,
        kappa_cap=int(cfg.get("kappa_cap", 512)),
        r_cap=int(cfg.get("r_cap", 512)),
        refinement=int(cfg.get("refinement", 512)))
    _write_json(out / "claim_result.json", result.to_json_dict(), cfg)
    _write_csv(out / "claim_e_intervals.csv", ["left", "right"],
               result.e_intervals.tolist(), cfg)
    return EXIT_OK if result.certified else EXIT_UNCERTIFIED


_DEMO_FUNCTIONS = {
    "identity": lambda x: x,
    "zero": lambda x: 0.0,
    "sin": np.sin,
}


def _cmd_demo(cfg, out: Path, plot: bool):
    mu = _measure_from_config(cfg)
    fname = cfg.get("f", "identity")
    if isinstance(fname, list):
        step = StepFunction.equal_cells(mu.domain, fname)
        f = step
    elif fname in _DEMO_FUNCTIONS:
        f = _DEMO_FUNCTIONS[fname]
    else:
        raise KeyError(f"unknown demo function {fname!r}")
    mu_total = float(mu.interval_mass(*mu.domain))
    eps = float(cfg.get("eps", 0.05)) * (mu_total if cfg.get(
        "eps_relative", True) else 1.0)
    gap = float(cfg.get("uniform_gap", 0.5))
    result = assembly.theorem_demo(f, mu, eps, gap,
                                   kappa_cap=int(cfg.get("kappa_cap", 512)),
                                   r_cap=int(cfg.get("r_cap", 512)))
    _write_csv(out / "demo_g.csv", ["breakpoint", "value"],
               list(zip(result.g.xs, result.g.ys)), cfg)
    report = result.report()
    if cfg.get("partial_sums"):
        report["partial_sums"] = assembly.partial_sum_diagnostics(
            result.g, [int(n) for n in cfg["partial_sums"]])
    _write_json(out / "demo_report.json", report, cfg)
    if plot:
        _write_svg(out / "demo_g.svg", result.g.xs, result.g.ys, "corrected g")
    return EXIT_OK if result.claim.certified and result.below_eps \
        else EXIT_UNCERTIFIED


_COMMANDS = {
    "wiener-scan": _cmd_wiener_scan,
    "mset-limit": _cmd_mset_limit,
    "corrector": _cmd_corrector,
    "claim": _cmd_claim,
    "demo": _cmd_demo,
}


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="menshov",
        description="measure-correction scans, constructions, and reports")
    parser.add_argument("subcommand", choices=sorted(_COMMANDS))
    parser.add_argument("--config", help="JSON config file")
    parser.add_argument("--set", action="append", metavar="KEY=VALUE",
                        help="override a config field (JSON-parsed value)")
    parser.add_argument("--out", default=".", help="output directory")
    parser.add_argument("--plot", action="store_true", help="emit SVG plots")
    parser.add_argument("--workers", type=int, default=1,
                        help="worker hint for parallelizable scans (advisory)")
    args = parser.parse_args(argv)

    try:
        cfg = _load_config(args)
    except (OSError, ValueError, KeyError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    try:
        return _COMMANDS[args.subcommand](cfg, out, args.plot)
    except (KeyError, json.JSONDecodeError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (MeasureSpecError, DomainError, AtomicMeasureError,
            ValueError) as exc:
        print(f"precondition violation: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except CertificationError as exc:
        print(f"certification failure: {exc}", file=sys.stderr)
        return EXIT_UNCERTIFIED
    except QuadratureError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
