"""Method x problem grids and Dolan-More performance profiles.

A grid run produces one RunRecord per (problem, method, linesearch) cell;
records are keyed and canonically sorted, so reruns with the same seeds are
byte-identical apart from wall time.  Profiles follow the usual definition:
per problem, the cost ratio to the best solver; failures get a sentinel M =
2x the largest finite ratio; rho_s(tau) is the fraction of problems solver s
solves within ratio tau.
"""
from __future__ import annotations

import csv
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from typing import IO, Iterable, Optional, Sequence

from .errors import ConfigurationError, IncompleteGridError
from .problems import ProblemSpec
from .solver import CONVERGED, SolverConfig, minimize

METRICS = ("iterations", "f_evals", "g_evals", "wall_time")

RECORD_COLUMNS = ("problem", "method", "linesearch", "status",
                  "iterations", "f_evals", "g_evals", "wall_time")


@dataclass(frozen=True)
class RunRecord:
    problem: str
    method: str
    linesearch: str
    status: str
    iterations: int
    f_evals: int
    g_evals: int
    wall_time: float
    descent_restarts: int = 0

    @property
    def solved(self) -> bool:
        return self.status == CONVERGED


def _run_cell(args: tuple[ProblemSpec, str, str, SolverConfig]) -> RunRecord:
    spec, method, ls, cfg = args
    cell_cfg = replace(cfg, method=method, linesearch=ls)
    t0 = time.perf_counter()
    trace = minimize(spec.objective(), spec.x0, cell_cfg)
    elapsed = time.perf_counter() - t0
    return RunRecord(problem=spec.key, method=cell_cfg.method, linesearch=cell_cfg.linesearch,
                     status=trace.status, iterations=trace.iterations,
                     f_evals=trace.f_evals, g_evals=trace.g_evals, wall_time=elapsed,
                     descent_restarts=trace.descent_restarts)


def run_grid(methods: Sequence[str], linesearches: Sequence[str], problems: Sequence[ProblemSpec],
             cfg: Optional[SolverConfig] = None, workers: int = 1) -> list[RunRecord]:
    """Solve every cell of the grid; failures are recorded, never raised.

    Cells are independent and may run in parallel (``workers`` > 1); the
    result is canonically sorted so the output does not depend on scheduling.
    """
    if not methods or not linesearches or not problems:
        raise ConfigurationError("methods, linesearches and problems must all be non-empty")
    cfg = cfg or SolverConfig()
    cells = [(spec, method, ls, cfg)
             for spec in problems for method in methods for ls in linesearches]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_run_cell, cells, chunksize=4))
    else:
        records = [_run_cell(c) for c in cells]
    records.sort(key=lambda r: (r.problem, r.method, r.linesearch))
    return records


def write_records_csv(records: Iterable[RunRecord], out: IO[str]) -> None:
    out.write(",".join(RECORD_COLUMNS) + "\n")
    for r in records:
        out.write(f"{r.problem},{r.method},{r.linesearch},{r.status},"
                  f"{r.iterations},{r.f_evals},{r.g_evals},{format(r.wall_time, '.17g')}\n")


def read_records_csv(src: IO[str]) -> list[RunRecord]:
    reader = csv.DictReader(src)
    records = []
    for row in reader:
        records.append(RunRecord(problem=row["problem"], method=row["method"],
                                 linesearch=row["linesearch"], status=row["status"],
                                 iterations=int(row["iterations"]), f_evals=int(row["f_evals"]),
                                 g_evals=int(row["g_evals"]), wall_time=float(row["wall_time"])))
    return records


@dataclass
class ProfileTable:
    """Cost ratios r[p][s] plus the failure sentinel M.

    ``ratios[i][j]`` is problem i, solver j; problems unsolved by every
    solver are excluded before ratios are formed.
    """

    solvers: list[str]
    problems: list[str]
    costs: list[list[Optional[float]]]   # None = failed cell
    ratios: list[list[float]]
    sentinel: float

    def rho(self, solver: str, tau: float) -> float:
        j = self.solvers.index(solver)
        n_p = len(self.problems)
        return sum(1 for i in range(n_p) if self.ratios[i][j] <= tau) / n_p

    def breakpoints(self) -> list[float]:
        taus = {1.0, self.sentinel}
        for row in self.ratios:
            taus.update(row)
        return sorted(taus)

    def curves(self) -> list[tuple[float, list[float]]]:
        """(tau, [rho per solver]) at every breakpoint, tau = 1 first."""
        return [(tau, [self.rho(s, tau) for s in self.solvers]) for tau in self.breakpoints()]


def _solver_id(record: RunRecord, single_linesearch: bool) -> str:
    return record.method if single_linesearch else f"{record.method}+{record.linesearch}"


def profile(records: Sequence[RunRecord], metric: str = "iterations") -> ProfileTable:
    """Build the performance-profile table for one cost metric."""
    if metric not in METRICS:
        raise ConfigurationError(f"unknown metric {metric!r}; valid: {', '.join(METRICS)}")
    single_ls = len({r.linesearch for r in records}) <= 1
    cells: dict[tuple[str, str], RunRecord] = {}
    for r in records:
        key = (r.problem, _solver_id(r, single_ls))
        if key in cells:
            raise IncompleteGridError(f"duplicate cell {key}")
        cells[key] = r
    solvers = sorted({s for _, s in cells})
    problems = sorted({p for p, _ in cells})
    for p in problems:
        for s in solvers:
            if (p, s) not in cells:
                raise IncompleteGridError(f"missing cell ({p}, {s})")

    costs: list[list[Optional[float]]] = []
    kept: list[str] = []
    for p in problems:
        row = [float(getattr(cells[p, s], metric)) if cells[p, s].solved else None
               for s in solvers]
        if any(c is not None for c in row):
            kept.append(p)
            costs.append(row)
    if not kept:
        raise IncompleteGridError("no problem was solved by any solver")

    raw_ratios: list[list[Optional[float]]] = []
    max_ratio = 1.0
    for row in costs:
        best = min(c for c in row if c is not None)
        rrow: list[Optional[float]] = []
        for c in row:
            if c is None:
                rrow.append(None)
            else:
                r = c / best if best > 0 else (1.0 if c == 0 else None)
                rrow.append(r)
                if r is not None:
                    max_ratio = max(max_ratio, r)
        raw_ratios.append(rrow)
    sentinel = 2.0 * max_ratio
    ratios = [[sentinel if r is None else r for r in row] for row in raw_ratios]
    return ProfileTable(solvers=solvers, problems=kept, costs=costs, ratios=ratios, sentinel=sentinel)


def emit_profile_csv(table: ProfileTable, out: IO[str]) -> None:
    """Wide CSV: tau, then one rho column per solver, one row per breakpoint."""
    out.write("tau," + ",".join(table.solvers) + "\n")
    for tau, rhos in table.curves():
        out.write(format(tau, ".17g") + "," + ",".join(format(r, ".17g") for r in rhos) + "\n")


def emit_profile_plot_data(table: ProfileTable, out: IO[str]) -> None:
    """Long-format CSV (solver, tau, rho), one step-function point per row."""
    out.write("solver,tau,rho\n")
    for tau, rhos in table.curves():
        for s, r in zip(table.solvers, rhos):
            out.write(f"{s},{format(tau, '.17g')},{format(r, '.17g')}\n")
