"""Command-line sweeps emitting CSV or JSON tables.

Exit codes: 0 success, 2 argument validation, 3 domain violation,
4 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import asdict, dataclass, field

import numpy as np

from . import geodesics as geo
from . import grover
from . import paths
from . import quantum_metrics as qm
from .exceptions import ConvergenceError, DomainError

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_NUMERIC = 0, 2, 3, 4
COMMANDS = ("grover", "fisher", "actuality", "geodesic", "gap", "elliptic", "metrics")
MODELS = ("grover", "model2", "model3", "model4")
CONSTANCY_TOL = 1e-9
STATEVECTOR_MAX_N = 4096


class UsageError(Exception):
    pass


@dataclass
class SweepConfig:
    command: str
    N: int = 4
    theta_lo: float | None = None
    theta_hi: float | None = None
    points: int = 11
    model: str = "grover"
    lam: float = 1.0
    epsilon: list[float] = field(default_factory=lambda: [0.3, 0.1, 0.03, 0.01])
    c_n: float = 0.0
    output_format: str = "csv"
    output_path: str | None = None


@dataclass
class Table:
    columns: list[str]
    rows: list[list] = field(default_factory=list)


def _num(x):
    """Round floats to 12 significant digits; pass ints, bools and None through."""
    if x is None or isinstance(x, (bool, np.bool_)):
        return None if x is None else bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    x = float(x)
    if not math.isfinite(x):
        return None
    return float(f"{x:.12g}")


def _csv_cell(x) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    return f"{x:.12g}"


def render(config: SweepConfig, table: Table) -> str:
    rows = [[_num(v) for v in row] for row in table.rows]
    if config.output_format == "json":
        payload = {
            "command": config.command,
            "config": asdict(config),
            "columns": table.columns,
            "rows": rows,
        }
        return json.dumps(payload, indent=2) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(table.columns)
    for row in rows:
        writer.writerow([_csv_cell(v) for v in row])
    return buf.getvalue()


def _model_path(config: SweepConfig) -> paths.SymmetricProbabilityPath:
    if config.model == "grover":
        return paths.grover_path(config.N)
    if config.model == "model2":
        return paths.model_ii_path(config.N)
    if config.model == "model3":
        return paths.model_iii_path(config.N)
    return geo.model_iv_path(config.N, config.c_n)


def _theta_grid(config: SweepConfig, path: paths.SymmetricProbabilityPath) -> np.ndarray:
    lo, hi = path.domain
    t_lo = lo + paths.EDGE_MARGIN if config.theta_lo is None else config.theta_lo
    t_hi = hi - paths.EDGE_MARGIN if config.theta_hi is None else config.theta_hi
    if not t_lo < t_hi:
        raise UsageError("theta-lo must be smaller than theta-hi")
    if t_lo <= lo or t_hi >= hi:
        raise DomainError(f"grid [{t_lo}, {t_hi}] touches the boundary of the model domain ({lo:.6g}, {hi:.6g})")
    return np.linspace(t_lo, t_hi, config.points)


def run_grover(config: SweepConfig) -> Table:
    N = config.N
    m_bar = grover.optimal_steps(N)
    n_qubits = int(round(math.log2(N)))
    use_sv = N <= STATEVECTOR_MAX_N and 2**n_qubits == N
    table = Table(["m", "success_probability", "rotation_vs_statevector_delta", "is_optimal"])
    for m in range(0, math.ceil(1.5 * m_bar) + 1):
        p = grover.success_probability(N, m)
        delta = abs(grover.statevector_oracle(n_qubits, 0, m) - p) if use_sv else None
        table.rows.append([m, p, delta, m == m_bar])
    return table


def run_fisher(config: SweepConfig) -> Table:
    path = _model_path(config)
    grid = _theta_grid(config, path)
    family = path.to_pure_state_family()
    F = [paths.fisher_info_function(path, t) for t in grid]
    K = [paths.kinetic_energy(family, t) for t in grid]
    flag = bool(max(F) - min(F) < CONSTANCY_TOL)
    return Table(["theta", "F", "K", "constancy_flag"],
                 [[t, f, k, flag] for t, f, k in zip(grid, F, K)])


def run_actuality(config: SweepConfig) -> Table:
    path = _model_path(config)
    report = paths.el_residual(path, config.lam, _theta_grid(config, path))
    return Table(
        ["theta", "residual_q0", "residual_qbar", "sup_norm"],
        [[t, a, b, report.sup_norm]
         for t, a, b in zip(report.theta_grid, report.residual_q0, report.residual_qbar)],
    )


def run_geodesic(config: SweepConfig) -> Table:
    metrics = {
        "grover": (geo.grover_metric, geo.grover_metric_prime, geo.grover_geodesic),
        "model2": (geo.model_ii_metric, geo.model_ii_metric_prime, geo.model_ii_geodesic),
    }
    if config.model not in metrics:
        raise UsageError("geodesic supports --model grover or model2")
    F, dF, closed = metrics[config.model]
    lo = 0.1 if config.theta_lo is None else config.theta_lo
    hi = 0.6 if config.theta_hi is None else config.theta_hi
    if config.model == "model2" and hi > 1 - 1e-9:
        raise DomainError("Model-II geodesics need theta_hi <= 1 - 1e-9")
    sol = geo.solve_geodesic(F, dF, lo, hi, samples=config.points)
    ref = closed(lo, hi, samples=config.points)
    return Table(
        ["tau", "theta", "theta_closed_form", "length", "duration"],
        [[t, th, c, sol.length, sol.duration] for t, th, c in zip(sol.tau, sol.theta, ref.theta)],
    )


def run_gap(config: SweepConfig) -> Table:
    table = Table(["epsilon", "delta_tau_grover", "delta_tau_model2", "gap", "gap_over_eps3_thirds"])
    for eps in config.epsilon:
        if not 0.0 < eps < 1.0:
            raise DomainError(f"epsilon must lie in (0, 1), got {eps}")
        gap = geo.duration_gap(eps)
        table.rows.append([
            eps,
            geo.geodesic_length(geo.grover_metric, 0.0, eps),
            geo.geodesic_length(geo.model_ii_metric, 0.0, eps),
            gap,
            gap / (eps**3 / 3),
        ])
    return table


def run_elliptic(config: SweepConfig) -> Table:
    N = config.N
    upper = geo.elliptic_range(N) * math.sqrt(N - 1)
    lo = -config.c_n * math.sqrt(N - 1)
    t_lo = lo + paths.EDGE_MARGIN if config.theta_lo is None else config.theta_lo
    t_hi = min(upper - config.c_n * math.sqrt(N - 1) - paths.EDGE_MARGIN, math.pi / 2) \
        if config.theta_hi is None else config.theta_hi
    if not t_lo < t_hi:
        raise UsageError("theta-lo must be smaller than theta-hi")
    sol = geo.solve_model_iv(N, config.c_n, np.linspace(t_lo, t_hi, config.points))
    rows = []
    for t, q, r, a, b in zip(sol.theta, sol.q0, sol.residual, sol.el_residual_q0, sol.el_residual_qbar):
        value = geo.elliptic_I_N(q, N).value
        closed = geo.elliptic_I_N_closed_form(q, N) - value if q > 0 else 0.0
        rows.append([t, q, value, r, closed, a, b])
    return Table(["theta", "q0", "I_N", "residual", "closed_form_delta",
                  "el_residual_q0", "el_residual_qbar"], rows)


def run_metrics(config: SweepConfig) -> Table:
    path = _model_path(config)
    family = path.to_pure_state_family()
    rows = []
    for t in _theta_grid(config, path):
        wy = qm.wy_line_element(family, t)
        fs = qm.fubini_study_speed(family, t)
        rows.append([t, wy, fs, wy / fs, qm.overlap_line_element(family, t)])
    return Table(["theta", "wy_line_element", "fubini_study", "wy_over_fs", "overlap_estimate"], rows)


RUNNERS = {
    "grover": run_grover, "fisher": run_fisher, "actuality": run_actuality,
    "geodesic": run_geodesic, "gap": run_gap, "elliptic": run_elliptic, "metrics": run_metrics,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="grover-infogeo", description=__doc__.splitlines()[0])
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--n", dest="N", type=int, default=4, help="database size N")
    parser.add_argument("--theta-lo", type=float)
    parser.add_argument("--theta-hi", type=float)
    parser.add_argument("--points", type=int, default=11)
    parser.add_argument("--model", choices=MODELS, default="grover")
    parser.add_argument("--lambda", dest="lam", type=float, default=1.0)
    parser.add_argument("--epsilon", type=float, nargs="+")
    parser.add_argument("--c-n", type=float, default=0.0, help="integration constant C_N (elliptic, model4)")
    parser.add_argument("--format", dest="output_format", choices=("csv", "json"), default="csv")
    parser.add_argument("--out", dest="output_path")
    return parser


def parse_config(argv) -> SweepConfig:
    ns = build_parser().parse_args(argv)
    cfg = SweepConfig(**{k: v for k, v in vars(ns).items() if v is not None})
    if cfg.N < 2:
        raise UsageError("N must be ≥ 2")
    if cfg.points < 2:
        raise UsageError("points must be ≥ 2")
    if cfg.theta_lo is not None and cfg.theta_hi is not None and not cfg.theta_lo < cfg.theta_hi:
        raise UsageError("theta-lo must be smaller than theta-hi")
    return cfg


def main(argv=None) -> int:
    try:
        config = parse_config(sys.argv[1:] if argv is None else argv)
        text = render(config, RUNNERS[config.command](config))
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ConvergenceError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    if config.output_path:
        with open(config.output_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
