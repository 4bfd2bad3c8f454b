"""Benchmark harness: solve single instances, sweep grids, dump traces.

Subcommands
    solve        one (beta, N) cell, one or more seeds, CSV rows
    bench        Cartesian beta x N sweep, raw and aggregated CSV
    trace        per-iteration objective trace TSV for convergence plots
    sweep-alpha  shift-sensitivity grid (alpha x N), mean/std CSV
    profile      ground-state profile TSV on the full grid

All randomness flows through integer seeds: run i of a cell uses
seed_base + i, so cells of equal dimension share initial points and
alpha sweeps are paired by construction.  Condensate runs draw the usual
normalized Gaussian vector and take its componentwise absolute value
(norm preserving), which starts both solvers in the nonnegative sector
where the physical ground state lives.
"""

import argparse
import csv
import statistics
import sys
import time

import numpy as np

from .admm_solver import AdmmConfig, admm_solve
from .bec_model import BecGrid, build_problem, write_profile_tsv
from .pam_solver import PamConfig, bim_refine, pam_solve, random_unit_init

CSV_COLUMNS = [
    "method", "beta", "N", "alpha", "rho", "seed", "iters", "outer_iters",
    "wall_time_s", "obj_val", "termination", "concavity_certified",
    "kinetic_variant", "gamma", "projection",
]

AGG_COLUMNS = [
    "method", "beta", "N", "alpha", "rho", "mean_iters", "mean_outer_iters",
    "best_obj", "mean_obj", "std_obj", "mean_wall_time_s", "kinetic_variant",
]

METHODS = ("pam", "pam+bim", "admm", "both")


def _fmt(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return f"{v:.17g}"
    if v is None:
        return ""
    return str(v)


def _parse_list(text, kind=float):
    return [kind(tok) for tok in str(text).split(",") if tok != ""]


def _resolve_per_beta(values, betas, name):
    """Broadcast a 1-element list or zip a len(betas)-element list."""
    if len(values) == 1:
        return {b: values[0] for b in betas}
    if len(values) == len(betas):
        return dict(zip(betas, values))
    raise ValueError(f"--{name} must have 1 value or one per beta ({len(betas)})")


def _alpha_for(problem, alpha_spec):
    if alpha_spec == "auto":
        return problem.tensor_norm()
    return float(alpha_spec)


def _make_init(n, seed, projection):
    init = random_unit_init(n, seed)
    if projection == "nonneg":
        init = np.abs(init)
    return init


def run_instance(grid, alpha_spec, method, rho, gamma, seeds, seed_base, tol,
                 max_iter, projection, carry):
    """Run every (method, seed) pair on one cell; returns (rows, reports)."""
    problem = build_problem(grid)
    alpha = _alpha_for(problem, alpha_spec)
    problem = problem.with_alpha(alpha)
    certified = alpha >= problem.tensor_norm()
    methods = ["pam", "admm"] if method == "both" else [method]

    rows, reports = [], []
    for m in methods:
        for i in range(seeds):
            seed = seed_base + i
            init = _make_init(problem.n, seed, projection)
            t0 = time.perf_counter()
            if m == "admm":
                cfg = AdmmConfig(rho=rho, outer_tol=tol, max_outer=max_iter, seed=seed)
                rep = admm_solve(problem, cfg, init)
            else:
                cfg = PamConfig(gamma=gamma, alpha=alpha, tol=tol, max_iter=max_iter,
                                seed=seed, projection=projection, carry=carry)
                rep = pam_solve(problem, cfg, init)
                if m == "pam+bim":
                    ref = bim_refine(problem, cfg, rep.best_point)
                    ref.iters += rep.iters
                    ref.wall_time += rep.wall_time
                    rep = ref
            wall = time.perf_counter() - t0
            rows.append({
                "method": m,
                "beta": grid.beta,
                "N": grid.N,
                "alpha": alpha,
                "rho": rho if m == "admm" else None,
                "seed": seed,
                "iters": rep.iters,
                "outer_iters": rep.outer_iters,
                "wall_time_s": wall,
                "obj_val": rep.best_value,
                "termination": rep.termination,
                "concavity_certified": certified,
                "kinetic_variant": grid.kinetic_variant,
                "gamma": gamma if m != "admm" else None,
                "projection": projection,
            })
            reports.append((m, seed, rep))
    return rows, reports


def _write_csv(path, columns, rows):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_fmt(row.get(c)) for c in columns])


def _print_rows(rows):
    for row in rows:
        print(", ".join(f"{c}={_fmt(row.get(c))}" for c in CSV_COLUMNS))


def _sorted_rows(rows):
    return sorted(rows, key=lambda r: (r["method"], r["beta"], r["N"],
                                       r.get("alpha") or 0.0, r["seed"]))


def _exit_status(rows):
    bad = [r for r in rows if r["termination"] not in ("tolerance", "max-iter", "stalled")]
    return 1 if bad else 0


def cmd_solve(args):
    grid = BecGrid(dim=args.dim, N=args.N[0], beta=args.beta[0],
                   kinetic_variant=args.kinetic_variant)
    rows, reports = run_instance(
        grid, args.alpha[0], args.method, args.rho[0], args.gamma, args.seeds,
        args.seed, args.tol, args.max_iter, args.projection, args.carry)
    rows = _sorted_rows(rows)
    if args.out:
        _write_csv(args.out, CSV_COLUMNS, rows)
    else:
        _print_rows(rows)
    if args.profile_out:
        best = min(((r["obj_val"], i) for i, r in enumerate(rows)))[1]
        method, seed = rows[best]["method"], rows[best]["seed"]
        rep = next(r for m, s, r in reports if m == method and s == seed)
        write_profile_tsv(args.profile_out, rep.best_point, grid)
    return _exit_status(rows)


def cmd_bench(args):
    alphas = {}
    rhos = _resolve_per_beta(args.rho, args.beta, "rho")
    if args.alpha == ["auto"]:
        alphas = {b: "auto" for b in args.beta}
    else:
        alphas = _resolve_per_beta([float(a) for a in args.alpha], args.beta, "alpha")
    all_rows = []
    for beta in args.beta:
        for N in args.N:
            grid = BecGrid(dim=args.dim, N=N, beta=beta,
                           kinetic_variant=args.kinetic_variant)
            rows, _ = run_instance(
                grid, alphas[beta], args.method, rhos[beta], args.gamma,
                args.seeds, args.seed, args.tol, args.max_iter,
                args.projection, args.carry)
            all_rows.extend(rows)
    all_rows = _sorted_rows(all_rows)
    _write_csv(args.out, CSV_COLUMNS, all_rows)

    agg = []
    keys = sorted({(r["method"], r["beta"], r["N"]) for r in all_rows})
    for method, beta, N in keys:
        cell = [r for r in all_rows if (r["method"], r["beta"], r["N"]) == (method, beta, N)]
        objs = [r["obj_val"] for r in cell]
        outers = [r["outer_iters"] for r in cell if r["outer_iters"] is not None]
        agg.append({
            "method": method, "beta": beta, "N": N,
            "alpha": cell[0]["alpha"], "rho": cell[0]["rho"],
            "mean_iters": statistics.fmean(r["iters"] for r in cell),
            "mean_outer_iters": statistics.fmean(outers) if outers else None,
            "best_obj": min(objs),
            "mean_obj": statistics.fmean(objs),
            "std_obj": statistics.pstdev(objs) if len(objs) > 1 else 0.0,
            "mean_wall_time_s": statistics.fmean(r["wall_time_s"] for r in cell),
            "kinetic_variant": cell[0]["kinetic_variant"],
        })
    agg_path = args.agg_out or (args.out + ".agg.csv")
    _write_csv(agg_path, AGG_COLUMNS, agg)
    print(f"wrote {len(all_rows)} rows to {args.out}, {len(agg)} aggregates to {agg_path}")
    return _exit_status(all_rows)


def cmd_trace(args):
    grid = BecGrid(dim=args.dim, N=args.N[0], beta=args.beta[0],
                   kinetic_variant=args.kinetic_variant)
    problem = build_problem(grid)
    alpha = _alpha_for(problem, args.alpha[0])
    problem = problem.with_alpha(alpha)
    methods = ["pam", "admm"] if args.method == "both" else [args.method]

    lines = ["method\titer\tf_alpha\tf\touter_iter\touter_boundary"]
    status_rows = []
    for m in methods:
        init = _make_init(problem.n, args.seed, args.projection)
        if m == "admm":
            cfg = AdmmConfig(rho=args.rho[0], outer_tol=args.tol, max_outer=args.max_iter)
            rep = admm_solve(problem, cfg, init)
            for total_idx, f_val, outer_idx, boundary in rep.inner_trace:
                lines.append(f"admm\t{total_idx}\t\t{f_val:.17g}\t{outer_idx}\t{int(boundary)}")
        else:
            cfg = PamConfig(gamma=args.gamma, alpha=alpha, tol=args.tol,
                            max_iter=args.max_iter, projection=args.projection,
                            carry=args.carry)
            rep = pam_solve(problem, cfg, init)
            for k, fa in enumerate(rep.f_alpha_trace, start=1):
                lines.append(f"pam\t{k}\t{fa:.17g}\t{fa + 4 * alpha:.17g}\t\t")
        status_rows.append({"termination": rep.termination})
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")
    print(f"wrote trace for {', '.join(methods)} to {args.out}")
    return _exit_status(status_rows)


def cmd_sweep_alpha(args):
    if len(args.alpha) < 2:
        print("error: sweep-alpha needs at least two --alpha values", file=sys.stderr)
        return 2
    rows = []
    status_rows = []
    for alpha in [float(a) for a in args.alpha]:
        for N in args.N:
            grid = BecGrid(dim=args.dim, N=N, beta=args.beta[0],
                           kinetic_variant=args.kinetic_variant)
            cell_rows, _ = run_instance(
                grid, alpha, "pam", args.rho[0], args.gamma, args.seeds,
                args.seed, args.tol, args.max_iter, args.projection, args.carry)
            status_rows.extend(cell_rows)
            objs = [r["obj_val"] for r in cell_rows]
            times = [r["wall_time_s"] for r in cell_rows]
            std = statistics.pstdev(objs) if len(objs) > 1 else 0.0
            rows.append({
                "alpha": alpha, "N": N,
                "mean_obj": statistics.fmean(objs),
                "std_obj": std,
                "mean_time_s": statistics.fmean(times),
                "high_variance": std > 1e-2,
            })
    _write_csv(args.out, ["alpha", "N", "mean_obj", "std_obj", "mean_time_s", "high_variance"], rows)
    print(f"wrote {len(rows)} sweep cells to {args.out}")
    return _exit_status(status_rows)


def cmd_profile(args):
    grid = BecGrid(dim=args.dim, N=args.N[0], beta=args.beta[0],
                   kinetic_variant=args.kinetic_variant)
    rows, reports = run_instance(
        grid, args.alpha[0], args.method if args.method != "both" else "pam",
        args.rho[0], args.gamma, args.seeds, args.seed, args.tol,
        args.max_iter, args.projection, args.carry)
    best_row = min(rows, key=lambda r: r["obj_val"])
    rep = next(r for m, s, r in reports
               if m == best_row["method"] and s == best_row["seed"])
    write_profile_tsv(args.out, rep.best_point, grid)
    print(f"wrote profile ({best_row['method']}, f={best_row['obj_val']:.6f}) to {args.out}")
    return _exit_status(rows)


def _add_common(p, need_out):
    p.add_argument("--dim", type=int, choices=(1, 2), default=1)
    p.add_argument("--beta", type=_parse_list, default=[250.0],
                   help="interaction coefficient(s), comma separated")
    p.add_argument("--N", type=lambda s: _parse_list(s, int), default=[50],
                   help="partition point count(s), comma separated")
    p.add_argument("--alpha", type=lambda s: ["auto"] if s.strip() == "auto" else _parse_list(s),
                   default=["auto"], help="shift value(s) or 'auto' (Frobenius norm)")
    p.add_argument("--rho", type=_parse_list, default=[80.0],
                   help="ADMM penalty value(s), comma separated")
    p.add_argument("--gamma", type=float, default=0.5, help="PAM proximal weight")
    p.add_argument("--method", choices=METHODS, default="pam")
    p.add_argument("--seeds", type=int, default=5, help="number of runs per cell")
    p.add_argument("--seed", type=int, default=0, help="base seed; run i uses seed+i")
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--max-iter", dest="max_iter", type=int, default=2000)
    p.add_argument("--kinetic-variant", dest="kinetic_variant",
                   choices=("half", "verbatim"), default="half")
    p.add_argument("--projection", choices=("sphere", "nonneg"), default="nonneg",
                   help="PAM block feasible set and init sector (BEC default: nonneg)")
    p.add_argument("--carry", choices=("restart", "persist"), default="restart",
                   help="PAM block carry policy between sweeps")
    p.add_argument("--out", required=need_out, default=None, help="output file path")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="quartic-sphere",
        description="Spherically constrained quartic optimization benchmark harness",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="run one instance")
    _add_common(p, need_out=False)
    p.add_argument("--profile-out", dest="profile_out", default=None,
                   help="also write the best run's profile TSV here")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("bench", help="Cartesian beta x N sweep")
    _add_common(p, need_out=True)
    p.add_argument("--agg-out", dest="agg_out", default=None,
                   help="aggregate CSV path (default: <out>.agg.csv)")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("trace", help="per-iteration objective trace")
    _add_common(p, need_out=True)
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("sweep-alpha", help="shift sensitivity grid")
    _add_common(p, need_out=True)
    p.set_defaults(func=cmd_sweep_alpha)

    p = sub.add_parser("profile", help="ground-state profile export")
    _add_common(p, need_out=True)
    p.set_defaults(func=cmd_profile)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else 2
    for single in ("solve", "trace", "profile"):
        if args.command == single:
            if len(args.beta) != 1 or len(args.N) != 1 or len(args.alpha) != 1:
                print(f"error: {single} takes exactly one --beta, --N and --alpha",
                      file=sys.stderr)
                return 2
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
