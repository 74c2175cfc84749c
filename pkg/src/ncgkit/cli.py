"""Command-line entry point: solve, compare, profile and regression workflows.

Exit codes: 0 success/converged, 2 iteration cap reached (run), 3 solver or
I/O failure, 64 usage error.  ``NCG_SEED`` overrides the default seed 42.
All output is CSV, UTF-8, LF line endings.
"""
from __future__ import annotations

import argparse
import os
import sys
from collections import defaultdict
from dataclasses import replace

import numpy as np

from . import bench, problems
from .core import check_gradient, kernel_backend
from .directions import DirectionParams, canonical_method
from .errors import NCGError
from .linesearch import WolfeParams, canonical_linesearch
from .solver import CONVERGED, MAX_ITERS, SolverConfig, minimize

EXIT_OK = 0
EXIT_MAXITERS = 2
EXIT_FAILURE = 3
EXIT_USAGE = 64

GRADIENT_TOL = 1e-6


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _default_seed() -> int:
    return int(os.environ.get("NCG_SEED", "42"))


def _open_out(path: str):
    return open(path, "w", encoding="utf-8", newline="\n")


def _add_solver_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--tol", type=float, default=1e-5, help="gradient inf-norm tolerance (default 1e-5)")
    p.add_argument("--max-iters", type=int, default=20000, help="iteration cap (default 20000)")
    p.add_argument("--rho", type=float, default=0.1, help="Armijo slope (default 0.1)")
    p.add_argument("--sigma", type=float, default=0.4, help="curvature fraction (default 0.4)")
    p.add_argument("--nu", type=float, default=0.8, help="curvature weight of MPRP/PRP-Y (default 0.8)")
    p.add_argument("--kappa", type=float, default=10.0, help="MPRP cap constant (default 10)")
    p.add_argument("--eta-hz", type=float, default=0.01, help="Hager-Zhang clamp constant (default 0.01)")


def _solver_config(args, method: str, linesearch: str) -> SolverConfig:
    return SolverConfig(method=method, linesearch=linesearch,
                        epsilon=args.tol, max_iters=args.max_iters,
                        wolfe=WolfeParams(rho=args.rho, sigma=args.sigma),
                        dirparams=DirectionParams(nu=args.nu, kappa=args.kappa, eta_hz=args.eta_hz))


def _split_csv_list(text: str) -> list[str]:
    return [item for item in (s.strip() for s in text.split(",")) if item]


def _resolve_problem(name: str, dim: int, seed: int) -> problems.ProblemSpec:
    if name == "regression":
        prob = problems.make_regression(seed=seed)
        if dim not in (0, prob.n):
            raise NCGError(f"the default regression instance has dim {prob.n}, got --dim {dim}")
        return prob.spec()
    return problems.get_problem(name, dim)


def cmd_run(args) -> int:
    spec = _resolve_problem(args.problem, args.dim, args.seed)
    cfg = _solver_config(args, args.method, args.linesearch)
    trace = minimize(spec.objective(), spec.x0, cfg)
    with _open_out(args.out) as out:
        trace.write_csv(out)
    print(f"problem={spec.key} method={cfg.method} linesearch={cfg.linesearch} status={trace.status}")
    print(f"f={trace.f_final:.10g} gnorm_inf={trace.gnorm_final:.10g} iterations={trace.iterations} "
          f"f_evals={trace.f_evals} g_evals={trace.g_evals}")
    print(f"trace written to {args.out}")
    if trace.status == CONVERGED:
        return EXIT_OK
    if trace.status == MAX_ITERS:
        return EXIT_MAXITERS
    print(f"failure: {trace.failure}", file=sys.stderr)
    return EXIT_FAILURE


def _select_suite(args) -> list[problems.ProblemSpec]:
    selection = problems.suite()
    if args.problems:
        wanted = set(_split_csv_list(args.problems))
        known = set(problems.suite_names())
        unknown = wanted - known
        if unknown:
            raise NCGError(f"unknown problems: {', '.join(sorted(unknown))}")
        selection = [s for s in selection if s.name in wanted]
    if args.dims:
        dims = {int(d) for d in _split_csv_list(args.dims)}
        selection = [s for s in selection if s.dim in dims]
    return selection


def _grid_linesearches(args) -> list[str]:
    if args.linesearch == "both":
        return ["interp", "bisect"]
    return [canonical_linesearch(args.linesearch)]


def cmd_compare(args) -> int:
    methods = [canonical_method(m) for m in _split_csv_list(args.methods)]
    selection = _select_suite(args)
    if not methods or not selection:
        raise NCGError("empty selection: need at least one method and one problem")
    cfg = _solver_config(args, methods[0], "interp")
    records = bench.run_grid(methods, _grid_linesearches(args), selection, cfg, workers=args.workers)
    with _open_out(args.out) as out:
        bench.write_records_csv(records, out)
    solved = sum(r.solved for r in records)
    print(f"{len(records)} cells ({solved} converged) written to {args.out}")
    return EXIT_OK


def cmd_profile(args) -> int:
    with open(args.records, encoding="utf-8") as src:
        records = bench.read_records_csv(src)
    table = bench.profile(records, metric=args.metric)
    with _open_out(args.out) as out:
        bench.emit_profile_csv(table, out)
    print(f"profile over {len(table.problems)} problems x {len(table.solvers)} solvers "
          f"(metric={args.metric}, M={table.sentinel:g}) written to {args.out}")
    if args.plot_data:
        with _open_out(args.plot_data) as out:
            bench.emit_profile_plot_data(table, out)
        print(f"plot data written to {args.plot_data}")
    return EXIT_OK


def cmd_regress(args) -> int:
    methods = [canonical_method(m) for m in _split_csv_list(args.methods)]
    if not methods or args.seeds < 1:
        raise NCGError("need at least one method and one seed")
    instances = [problems.make_regression(m=args.m, n=args.n, p=args.p, lam=args.lam,
                                          sparsity=args.sparsity, seed=args.seed + i)
                 for i in range(args.seeds)]
    if args.export_dir:
        os.makedirs(args.export_dir, exist_ok=True)
        for prob in instances:
            path = os.path.join(args.export_dir, f"{prob.name}.csv")
            with _open_out(path) as out:
                problems.export_regression(prob, out)
    specs = [prob.spec() for prob in instances]
    cfg = _solver_config(args, methods[0], args.linesearch)
    records = bench.run_grid(methods, [canonical_linesearch(args.linesearch)], specs, cfg,
                             workers=args.workers)
    with _open_out(args.out) as out:
        bench.write_records_csv(records, out)

    by_method: dict[str, list[bench.RunRecord]] = defaultdict(list)
    for r in records:
        by_method[r.method].append(r)
    summary = []
    for method, recs in by_method.items():
        iters = [r.iterations for r in recs if r.solved]
        failed = sum(1 for r in recs if not r.solved)
        mean_it = float(np.mean(iters)) if iters else float("nan")
        summary.append((method, mean_it, len(recs), failed))
    summary.sort(key=lambda row: (row[1] != row[1], row[1]))  # NaN last

    lines = ["method,mean_iterations,runs,failed"]
    lines += [f"{m},{mean_it:.1f},{n},{failed}" for m, mean_it, n, failed in summary]
    print("\n".join(lines))
    if args.summary:
        with _open_out(args.summary) as out:
            out.write("\n".join(lines) + "\n")
    print(f"{len(records)} records written to {args.out}")
    return EXIT_OK


def cmd_list_problems(args) -> int:
    dims: dict[str, list[int]] = defaultdict(list)
    info: dict[str, tuple[str, str]] = {}
    for spec in problems.registry():
        dims[spec.name].append(spec.dim)
        info[spec.name] = (spec.family, spec.reference)
    for name in sorted(dims):
        family, reference = info[name]
        dim_list = ",".join(str(d) for d in sorted(dims[name]))
        print(f"{name:22s} {family:10s} dims={dim_list:12s} {reference}")
    return EXIT_OK


def cmd_check_gradients(args) -> int:
    rng = np.random.Generator(np.random.PCG64(args.seed))
    failures = 0
    for spec in problems.registry():
        obj = spec.objective()
        if spec.family == "regression":
            # keep clear of the |x|^p kinks at coordinate zeros
            points = [rng.choice([-1.0, 1.0], size=spec.dim) * (0.1 + rng.random(spec.dim))
                      for _ in range(6)]
        else:
            points = [spec.x0] + [spec.x0 + 0.1 * rng.standard_normal(spec.dim) for _ in range(5)]
        worst = max(check_gradient(obj, p, h=args.h) for p in points)
        ok = worst <= GRADIENT_TOL
        failures += 0 if ok else 1
        print(f"{spec.key:28s} max_rel_error={worst:.3e} {'PASS' if ok else 'FAIL'}")
    print(f"{'all gradients consistent' if failures == 0 else f'{failures} instances FAILED'} "
          f"(tolerance {GRADIENT_TOL:g}, h={args.h:g}, backend={kernel_backend()})")
    return EXIT_OK if failures == 0 else 1


def build_parser() -> _Parser:
    parser = _Parser(prog="ncg", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p_run = sub.add_parser("run", help="solve one problem and write the iteration trace")
    p_run.add_argument("--problem", required=True, help="problem name (see list-problems), or 'regression'")
    p_run.add_argument("--dim", type=int, default=10, help="problem dimension (default 10)")
    p_run.add_argument("--method", default="MPRP", help="beta rule (default MPRP)")
    p_run.add_argument("--linesearch", default="interp", choices=["interp", "bisect"])
    p_run.add_argument("--out", default="trace.csv", help="trace CSV path (default trace.csv)")
    p_run.add_argument("--seed", type=int, default=_default_seed())
    _add_solver_flags(p_run)
    p_run.set_defaults(func=cmd_run)

    p_cmp = sub.add_parser("compare", help="run a method x problem grid over the suite")
    p_cmp.add_argument("--methods", default="PRP,PRP+,PRP-Y,MPRP",
                       help="comma-separated beta rules (default PRP,PRP+,PRP-Y,MPRP)")
    p_cmp.add_argument("--problems", default="", help="comma-separated problem names (default: whole suite)")
    p_cmp.add_argument("--dims", default="", help="comma-separated dims filter (default: all standard dims)")
    p_cmp.add_argument("--linesearch", default="interp", choices=["interp", "bisect", "both"])
    p_cmp.add_argument("--out", default="records.csv")
    p_cmp.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    _add_solver_flags(p_cmp)
    p_cmp.set_defaults(func=cmd_compare)

    p_prof = sub.add_parser("profile", help="compute Dolan-More profiles from a records CSV")
    p_prof.add_argument("--records", required=True, help="records CSV produced by compare/regress")
    p_prof.add_argument("--metric", default="iterations", choices=list(bench.METRICS))
    p_prof.add_argument("--out", default="profile.csv")
    p_prof.add_argument("--plot-data", default="", help="optional long-format (solver,tau,rho) CSV")
    p_prof.set_defaults(func=cmd_profile)

    p_reg = sub.add_parser("regress", help="the Lp-regularized regression experiment")
    p_reg.add_argument("--m", type=int, default=10)
    p_reg.add_argument("--n", type=int, default=50)
    p_reg.add_argument("--p", type=float, default=1.5)
    p_reg.add_argument("--lambda", dest="lam", type=float, default=0.01)
    p_reg.add_argument("--sparsity", type=float, default=0.1)
    p_reg.add_argument("--seeds", type=int, default=10, help="number of instances (default 10)")
    p_reg.add_argument("--seed", type=int, default=_default_seed(), help="base seed (default 42 or NCG_SEED)")
    p_reg.add_argument("--methods", default="PRP,PRP+,PRP-Y,MPRP")
    p_reg.add_argument("--linesearch", default="interp", choices=["interp", "bisect"])
    p_reg.add_argument("--out", default="regression_records.csv")
    p_reg.add_argument("--summary", default="", help="optional summary CSV path")
    p_reg.add_argument("--export-dir", default="", help="export each instance (A, b, u rows) to this directory")
    p_reg.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    _add_solver_flags(p_reg)
    p_reg.set_defaults(func=cmd_regress)

    p_list = sub.add_parser("list-problems", help="list registered problems")
    p_list.set_defaults(func=cmd_list_problems)

    p_chk = sub.add_parser("check-gradients", help="finite-difference check of every analytic gradient")
    p_chk.add_argument("--h", type=float, default=1e-6)
    p_chk.add_argument("--seed", type=int, default=_default_seed())
    p_chk.set_defaults(func=cmd_check_gradients)

    return parser


def _apply_config_file(argv: list[str]) -> list[str]:
    """Splice `key = value` presets from --config in right after the
    subcommand, so explicit flags still win."""
    if "--config" not in argv:
        return argv
    idx = argv.index("--config")
    if idx + 1 >= len(argv):
        raise NCGError("--config requires a file path")
    path = argv[idx + 1]
    rest = argv[:idx] + argv[idx + 2:]
    presets: list[str] = []
    with open(path, encoding="utf-8") as src:
        for line in src:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise NCGError(f"bad config line (expected key = value): {line!r}")
            key, value = line.split("=", 1)
            presets += [f"--{key.strip().replace('_', '-')}", value.strip()]
    if not rest:
        raise NCGError("--config given without a subcommand")
    return [rest[0], *presets, *rest[1:]]


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        argv = _apply_config_file(argv)
        args = parser.parse_args(argv)
        return args.func(args)
    except NCGError as e:
        print(f"ncg: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"ncg: i/o error: {e}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
