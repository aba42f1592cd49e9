"""Command line entry points: sweep, dtcheck, selftest."""

from __future__ import annotations

import argparse
import sys

import numpy as np


def _cmd_sweep(args) -> int:
    from .flow import emit, load_config, theorem1_sweep

    cfg = load_config(args.config)
    if args.output:
        cfg.output = args.output
    report = theorem1_sweep(cfg)
    code = emit(report, cfg.output)
    with open(str(cfg.output) + ".summary.txt") as fh:
        sys.stdout.write(fh.read())
    return code


def _cmd_dtcheck(args) -> int:
    from .flow import dt_logdet_check, load_config

    cfg = load_config(args.config)
    re_t, im_t = (float(v) for v in args.t0.split(","))
    report = dt_logdet_check(cfg, complex(re_t, im_t), h=args.h, x=args.x)
    print(f"d/dt ln det (finite difference): {report.d_fd}")
    print(f"d/dt ln det (loop trace):        {report.d_contour}")
    print(f"d/dt ln det (reduced densities): {report.d_reduced}")
    print(f"|fd - trace| = {report.fd_vs_contour:.3e}  (tolerance 1e-06)")
    print(f"|fd - reduced| = {report.fd_vs_reduced:.3e}  "
          f"(O(x^(eps-1)) budget ~ {report.reduced_budget:.3e})")
    ok = report.fd_vs_contour < 1e-6
    print("PASS" if ok else "FAIL")
    return 0 if ok else 1


def _selftest_battery():
    """Condensed invariant battery over the default configuration."""
    from . import (ScalarRH, assemble, constant_symbol, determinant,
                   gauss_interval, identity_phase, laguerre_halfline,
                   make_problem, stadium_contour)
    from .kernels import k_kt, u_kt, u_pm
    from .parametrix import build_parametrix
    from .quadgrid import graded_interval
    from .rhp import (OperatorFactory, factorization_residual, g_chi,
                      solve_beta, solve_chi)

    checks = []
    pd = make_problem(a=-1.0, b=1.0, c=1.0, t=1.0, x=10.0,
                      F=constant_symbol(0.2), p=identity_phase())
    grid = laguerre_halfline(48, pd.c)
    loop = stadium_contour(pd.a, pd.b, 0.25)

    resid = abs(loop.integrate(1.0 / loop.samples) - 2j * np.pi)
    checks.append(("loop residue 2*pi*i", resid, 1e-10))

    srh = ScalarRH(pd)
    chi = solve_chi(pd, grid=grid)
    worst = {}
    for row in chi.verify():
        worst[row.obj] = max(worst.get(row.obj, 0.0), row.residual)
    checks.append(("det(chi) = 1", worst["det(chi)-1"], 1e-7))
    checks.append(("chi jump", worst["chi jump"], 1e-6))
    checks.append(("det(G_chi) = 1", abs(g_chi(pd, grid, 0.3).det() - 1), 1e-9))

    rule = gauss_interval(192, pd.a, pd.b)
    betas = {k: solve_beta(pd, rule, grid, k, srh, loop) for k in (1, 2)}
    for k in (1, 2):
        w = max(r.residual for r in betas[k].verify()
                if r.obj.startswith(f"beta_{k} jump"))
        checks.append((f"beta_{k} jump", w, 1e-6))
    fac = OperatorFactory(pd, grid, srh, betas[1], betas[2])
    checks.append(("jump factorization", factorization_residual(
        pd, grid, fac, 0.0), 1e-6))

    grule = graded_interval(pd.a, pd.b)
    for k in (1, 2):
        dK = determinant(assemble(k_kt(pd, k, srh), grule))
        dU = determinant(assemble(u_kt(pd, k, srh), loop))
        checks.append((f"det identity k={k}", abs(dK - dU) / abs(dU), 1e-7))

    pdx = pd.with_(x=100.0)
    srhx = ScalarRH(pdx)
    bx = {k: solve_beta(pdx, rule, grid, k, srhx, loop) for k in (1, 2)}
    facx = OperatorFactory(pdx, grid, srhx, bx[1], bx[2])
    for ep in ("a", "b"):
        px = build_parametrix(ep, pdx, facx, x=100.0)
        w = max(r for _, _, r in px.jump_residuals())
        checks.append((f"parametrix {ep} jump", w, 1e-5))
    return checks


def _cmd_selftest(_args) -> int:
    ok = True
    for name, resid, tol in _selftest_battery():
        passed = resid < tol
        ok = ok and passed
        print(f"{'PASS' if passed else 'FAIL'}  {name:28s} "
              f"residual {resid:.3e}  tol {tol:.0e}")
    print("PASS" if ok else "FAIL")
    return 0 if ok else 1


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="cshiftlab",
        description="determinant-ratio sweeps and diagnostics for "
                    "c-shifted integrable kernels")
    sub = parser.add_subparsers(dest="cmd", required=True)

    p_sweep = sub.add_parser("sweep", help="run the determinant-ratio sweep")
    p_sweep.add_argument("--config", required=True)
    p_sweep.add_argument("--output", default=None)
    p_sweep.set_defaults(func=_cmd_sweep)

    p_dt = sub.add_parser("dtcheck", help="t-derivative identity check")
    p_dt.add_argument("--config", required=True)
    p_dt.add_argument("--t0", default="0.5,0.0", help="re,im of t0")
    p_dt.add_argument("--h", type=float, default=1e-4)
    p_dt.add_argument("--x", type=float, default=None)
    p_dt.set_defaults(func=_cmd_dtcheck)

    p_self = sub.add_parser("selftest", help="run the invariant battery")
    p_self.set_defaults(func=_cmd_selftest)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
