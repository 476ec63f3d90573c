"""Command-line front end: one job per invocation, machine-readable output.

Jobs are described either by flags or by a JSON config file; identical
configs produce byte-identical output (floats use the shortest
round-trip representation).  Exit codes: 0 success, 1 usage error,
2 parse error, 3 assertion/validation failure.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .division import divide, strategy_by_name
from .errors import (
    OrderSpecError,
    PolynomialSyntaxError,
    StableDivError,
)
from .groebner import GroebnerBasis, buchberger, hilbert_series_values
from .norms import h2_norm_sq, l1_norm
from .ordering import parse_order_spec
from .polyring import Ambient, Polynomial, format_polynomial, parse_polynomial
from .shiftop import (
    adjoint_coupling_report,
    commutator_report,
    module_frame,
    quadratic_reduction_report,
)
from .stability import dominance_rescaling, dominance_rho, rescale_polynomial, stability_constant_scan

TASKS = (
    "divide",
    "groebner",
    "hilbert",
    "stability-scan",
    "rescale",
    "comm-report",
    "estimate41",
    "reduce5",
)


@dataclass
class JobConfig:
    """One CLI job; round-trips losslessly through JSON."""

    task: str
    variables: list[str]
    r: int = 1
    order: str | None = None
    generators: list[str] = field(default_factory=list)
    params: dict = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps(dataclasses.asdict(self), sort_keys=True)

    @staticmethod
    def from_json(text: str) -> "JobConfig":
        data = json.loads(text)
        unknown = set(data) - {"task", "variables", "r", "order", "generators", "params"}
        if unknown:
            raise StableDivError(f"unknown config keys: {sorted(unknown)}")
        return JobConfig(
            task=data["task"],
            variables=list(data["variables"]),
            r=int(data.get("r", 1)),
            order=data.get("order"),
            generators=list(data.get("generators", [])),
            params=dict(data.get("params", {})),
        )


def _ambient(config: JobConfig) -> Ambient:
    return Ambient(tuple(config.variables), config.r)


def _gens(config: JobConfig, ambient: Ambient) -> list[Polynomial]:
    return [parse_polynomial(text, ambient) for text in config.generators]


def _order(config: JobConfig, ambient: Ambient):
    if config.order is None:
        raise StableDivError(f"task {config.task!r} needs an order spec")
    return parse_order_spec(config.order, ambient)


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _csv_lines(header: list[str], rows: list[list]) -> list[str]:
    lines = [",".join(header)]
    lines.extend(",".join(_fmt(cell) for cell in row) for row in rows)
    return lines


def run_job(config: JobConfig) -> list[str]:
    """Execute one job and return its output lines."""
    if config.task not in TASKS:
        raise StableDivError(f"unknown task {config.task!r}")
    handler = {
        "divide": _run_divide,
        "groebner": _run_groebner,
        "hilbert": _run_hilbert,
        "stability-scan": _run_stability_scan,
        "rescale": _run_rescale,
        "comm-report": _run_comm_report,
        "estimate41": _run_estimate41,
        "reduce5": _run_reduce5,
    }[config.task]
    return handler(config)


def _run_divide(config: JobConfig) -> list[str]:
    ambient = _ambient(config)
    order = _order(config, ambient)
    gens = _gens(config, ambient)
    dividend = parse_polynomial(config.params["dividend"], ambient)
    strategy = strategy_by_name(config.params.get("strategy", "clo-default"))
    result = divide(dividend, gens, order, strategy)
    lines = []
    for step in result.trace:
        lines.append(
            json.dumps(
                {
                    "step": step.index,
                    "action": step.action,
                    "term": format_polynomial(
                        Polynomial(ambient, {(step.term.index, step.term.channel): step.term.coefficient})
                    ),
                    "divisor": step.divisor,
                    "p_l1": step.p_l1,
                    "p_h2_sq": step.p_h2_sq,
                },
                sort_keys=True,
            )
        )
    for i, a in enumerate(result.quotients):
        lines.append(f"a{i + 1} = {format_polynomial(a)}")
    lines.append(f"r = {format_polynomial(result.remainder)}")
    return lines


def _run_groebner(config: JobConfig) -> list[str]:
    ambient = _ambient(config)
    order = _order(config, ambient)
    gb = buchberger(_gens(config, ambient), order)
    return [format_polynomial(g) for g in gb.generators]


def _run_hilbert(config: JobConfig) -> list[str]:
    ambient = _ambient(config)
    order = _order(config, ambient)
    gb = buchberger(_gens(config, ambient), order) if config.generators else GroebnerBasis((), order)
    n_max = int(config.params.get("n_max", 12))
    degrees = list(range(n_max + 1))
    values = hilbert_series_values(gb, degrees)
    return _csv_lines(["n", "dim_quotient"], [[n, v] for n, v in zip(degrees, values)])


def _run_stability_scan(config: JobConfig) -> list[str]:
    ambient = _ambient(config)
    gens = _gens(config, ambient)
    n_min = int(config.params.get("n_min", 2))
    n_max = int(config.params.get("n_max", 12))
    report = stability_constant_scan(gens, range(n_min, n_max + 1))
    rows = [
        [n, rank, c, lam, report.growth_exponent]
        for n, c, lam, rank in zip(report.degrees, report.constants, report.eigen_min, report.ranks)
    ]
    return _csv_lines(["n", "dim_module", "constant", "eigen_min", "growth_exponent"], rows)


def _run_rescale(config: JobConfig) -> list[str]:
    ambient = _ambient(config)
    gens = _gens(config, ambient)
    scales = dominance_rescaling(gens)
    lines = ["scales = " + " ".join(str(s) for s in scales)]
    from .ordering import dominance_order

    order = dominance_order(ambient)
    rescaled = [rescale_polynomial(f, scales) for f in gens]
    rho = dominance_rho(rescaled, order)
    lines.append(f"rho = {rho}")
    lines.extend(f"g{i + 1} = {format_polynomial(g)}" for i, g in enumerate(rescaled))
    return lines


def _frame(config: JobConfig, ambient: Ambient, n_max: int):
    gens = _gens(config, ambient)
    return module_frame(ambient, gens, n_max)


def _run_comm_report(config: JobConfig) -> list[str]:
    ambient = _ambient(config)
    i = int(config.params.get("i", 1)) - 1
    j = int(config.params.get("j", 1)) - 1
    p = float(config.params.get("p", 2.0))
    n_max = int(config.params.get("n_max", 10))
    frame = _frame(config, ambient, n_max)
    report = commutator_report(frame, i, j, n_max, p)
    rows = []
    for idx, n in enumerate(report.degrees):
        rows.append(
            [
                n,
                report.full_norms[idx],
                report.module_norms[idx],
                report.quotient_norms[idx],
                2.0 / (n + 1),
                report.quotient_schatten_partial[idx],
            ]
        )
    return _csv_lines(
        ["n", "full_norm", "module_norm", "quotient_norm", "bound", "schatten_partial"], rows
    )


def _run_estimate41(config: JobConfig) -> list[str]:
    ambient = _ambient(config)
    j = int(config.params.get("j", 1)) - 1
    n_max = int(config.params.get("n_max", 12))
    frame = _frame(config, ambient, n_max)
    report = adjoint_coupling_report(frame, j, n_max)
    rows = [
        [n, v, s, report.constant]
        for n, v, s in zip(report.degrees, report.values, report.scaled)
    ]
    return _csv_lines(["n", "value", "scaled", "constant"], rows)


def _run_reduce5(config: JobConfig) -> list[str]:
    ambient = _ambient(config)
    gens = _gens(config, ambient)
    n_max = int(config.params.get("n_max", 8))
    report = quadratic_reduction_report(gens, n_max)
    return [json.dumps(report, sort_keys=True)]


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="stablediv", description=__doc__)
    parser.add_argument("--config", type=Path, help="JSON job description (overrides flags)")
    parser.add_argument("--output", type=Path, help="directory for the report file")
    sub = parser.add_subparsers(dest="task")
    for task in TASKS:
        p = sub.add_parser(task)
        p.add_argument("--vars", help="comma-separated variable names", default=None)
        p.add_argument("--r", type=int, default=1, help="channel count")
        p.add_argument("--order", default=None, help="order spec, e.g. grlex:x>y")
        p.add_argument("--gens", default=None, help="semicolon-separated generators")
        if task == "divide":
            p.add_argument("--dividend", required=True)
            p.add_argument(
                "--strategy",
                default="clo-default",
                choices=["clo-default", "bivariate-stable", "dominant-min-term"],
            )
        if task in ("hilbert", "stability-scan", "comm-report", "estimate41", "reduce5"):
            p.add_argument("--n-max", type=int, default=None)
        if task == "stability-scan":
            p.add_argument("--n-min", type=int, default=None)
        if task == "comm-report":
            p.add_argument("--i", type=int, default=1, help="first variable, 1-based")
            p.add_argument("--j", type=int, default=1, help="second variable, 1-based")
            p.add_argument("--p", type=float, default=2.0, help="Schatten exponent")
        if task == "estimate41":
            p.add_argument("--j", type=int, default=1, help="variable, 1-based")
    return parser


def _config_from_args(args) -> JobConfig:
    if args.vars is None:
        raise StableDivError("missing --vars")
    params: dict = {}
    for key in ("dividend", "strategy", "n_max", "n_min", "i", "j", "p"):
        value = getattr(args, key, None)
        if value is not None:
            params[key] = value
    generators = []
    if args.gens:
        generators = [g.strip() for g in args.gens.split(";") if g.strip()]
    return JobConfig(
        task=args.task,
        variables=[v.strip() for v in args.vars.split(",") if v.strip()],
        r=args.r,
        order=args.order,
        generators=generators,
        params=params,
    )


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.config is not None:
            config = JobConfig.from_json(args.config.read_text())
        elif args.task is not None:
            config = _config_from_args(args)
        else:
            parser.error("either --config or a task subcommand is required")
            return 1
        lines = run_job(config)
    except (PolynomialSyntaxError, OrderSpecError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except StableDivError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    text = "\n".join(lines) + "\n"
    sys.stdout.write(text)
    if args.output is not None:
        args.output.mkdir(parents=True, exist_ok=True)
        suffix = "json" if config.task in ("reduce5",) else ("txt" if config.task in ("divide", "groebner", "rescale") else "csv")
        (args.output / f"{config.task}.{suffix}").write_text(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
