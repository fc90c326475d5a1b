"""Command-line front end.

Every CSV or edge-list written here starts with comment lines naming the tool
version and the fully resolved configuration, so outputs are reproducible
from their own headers. Output paths are left out of that header.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import __version__
from .automorphism import DEFAULT_BUDGET, AutomorphismBudgetError
from .complexity import complexity_weighted, write_report_csv
from .experiments import HENON, LORENZ, flow_network
from .graph import GraphParseError, dump_graph, load_graph
from .nullmodel import DEGENERATE, TABLE_COLUMNS, preferential_attachment, seed_sequence, surplus_analysis
from .sources import IntegrationError, SweepRow, ca_network, ca_sweep, langton_lambda
from .svgplot import scatter_svg
from .ts2net import (
    dump_labels,
    dump_trajectory,
    load_trajectory,
    ordinal_counts,
    ordinal_encode,
    optimal_window,
    transitions_to_network,
)

EXIT_OK, EXIT_INPUT, EXIT_BUDGET, EXIT_NUMERIC = 0, 2, 3, 4
SEED_ENV = "NETSURPLUS_SEED"
DEFAULT_SWEEP_OUT = "ca_sweep.csv"
SWEEP_COLUMNS = ("rule", "lambda", "C", "geo_mean_shuffled", "surplus", "sigmas")
_NOT_CONFIG = {"out", "audit", "svg", "dump_series", "resume", "func", "workers"}


@dataclass
class RunConfig:
    command: str
    params: dict = field(default_factory=dict)

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        params = {k: v for k, v in sorted(vars(args).items()) if k not in _NOT_CONFIG and k != "command"}
        return cls(args.command, params)

    def header(self) -> list[str]:
        return [
            f"netsurplus {__version__}",
            "config: " + json.dumps(asdict(self), sort_keys=True, separators=(",", ":")),
        ]


def parse_header(path: str | Path) -> dict | None:
    """Recover the RunConfig dict from an output file's comment header."""
    with open(path) as fh:
        for line in fh:
            if not line.startswith("#"):
                break
            body = line[1:].strip()
            if body.startswith("config: "):
                return json.loads(body[len("config: "):])
    return None


def _num(x: float) -> str:
    return repr(float(x))


def _sigmas(x: float | None) -> str:
    return DEGENERATE if x is None else _num(x)


def _write_comments(fh, lines) -> None:
    for line in lines:
        fh.write(f"# {line}\n")


def _default_seed() -> int:
    return int(os.environ.get(SEED_ENV, "0"))


def _read_graph(path: str):
    try:
        with open(path) as fh:
            return load_graph(fh)
    except GraphParseError as exc:
        raise GraphParseError(f"{path}: {exc}") from None


def cmd_complexity(args) -> int:
    g = _read_graph(args.input)
    report = complexity_weighted(g, budget=args.budget)
    print(f"n={report.n} l={report.l} C={report.c_bits:.6f} bits")
    print(f"{'threshold':>12} {'coef':>8} {'l':>7} {'length':>9} {'log2_aut':>14} {'C_level':>12}")
    for lv in report.levels:
        print(f"{lv.threshold:>12.6g} {lv.coefficient:>8.4f} {lv.l:>7d} "
              f"{lv.length.total_bits:>9d} {lv.log2_aut:>14.4f} {lv.c_bits:>12.4f}")
    if args.out:
        with open(args.out, "w", newline="") as fh:
            write_report_csv(report, fh, tuple(RunConfig.from_args(args).header()))
    return EXIT_OK


def cmd_surplus(args) -> int:
    g = _read_graph(args.input)
    stats = surplus_analysis(g, args.samples, args.seed, workers=args.workers, budget=args.budget)
    dataset = args.dataset or Path(args.input).stem
    row = [dataset, g.n, g.l, _num(stats.c), _num(stats.geo_mean), _num(stats.surplus), _sigmas(stats.sigmas)]
    header = RunConfig.from_args(args).header()
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(TABLE_COLUMNS)
    w.writerow(row)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            _write_comments(fh, header)
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(TABLE_COLUMNS)
            w.writerow(row)
        audit = args.audit or str(Path(args.out).with_suffix(".audit.csv"))
    else:
        audit = args.audit
    if audit:
        with open(audit, "w", newline="") as fh:
            _write_comments(fh, header)
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(("sample", "C"))
            for i, c in enumerate(stats.samples):
                w.writerow((i, _num(c)))
    return EXIT_OK


def _emit_graph(args, g, extra: list[str]) -> None:
    header = RunConfig.from_args(args).header() + extra
    if args.out:
        with open(args.out, "w") as fh:
            dump_graph(g, fh, header)
    else:
        dump_graph(g, sys.stdout, header)


def cmd_generate(args) -> int:
    src = args.source
    extra = []
    if src in ("lorenz", "henon"):
        base = LORENZ if src == "lorenz" else HENON
        cfg = base.replace(
            bins=args.bins if args.bins is not None else base.bins,
            dt=args.dt if args.dt is not None else base.dt,
            steps=args.steps if args.steps is not None else base.steps,
            transient=args.transient, stride=args.stride, jitter=args.jitter,
            occupied_only=args.occupied_only,
        )
        g, traj, dropped = flow_network(cfg, args.seed)
        extra.append(f"resolved: {json.dumps(asdict(cfg), sort_keys=True)}")
        extra.append(f"dropped_self_transitions: {dropped}")
        if "energy_drift" in traj.meta:
            extra.append(f"energy_drift: {traj.meta['energy_drift']!r}")
        if args.dump_series:
            with open(args.dump_series, "w") as fh:
                dump_trajectory(traj, fh, RunConfig.from_args(args).header())
    elif src == "ca":
        seeds = seed_sequence(args.seed, args.rule).spawn(args.seeds_per_rule + 1)[:-1]
        g, dropped = ca_network(args.rule, args.cells, args.transient, args.steps, seeds)
        extra.append(f"lambda: {langton_lambda(args.rule)!r}")
        extra.append(f"dropped_self_transitions: {dropped}")
    elif src == "pa":
        g = preferential_attachment(args.nodes, args.out_degree, args.seed)
    else:  # pragma: no cover - argparse restricts choices
        raise ValueError(src)
    _emit_graph(args, g, extra)
    return EXIT_OK


def _sweep_row(r: SweepRow) -> list[str]:
    return [str(r.rule), _num(r.lam), _num(r.c), _num(r.geo_mean_shuffled), _num(r.surplus), _sigmas(r.sigmas)]


def _load_partial_sweep(path: Path, header: list[str]) -> list[list[str]]:
    with open(path) as fh:
        lines = fh.read().splitlines()
    comments = [ln[2:] for ln in lines if ln.startswith("# ")]
    if comments[: len(header)] != header:
        raise ValueError(f"{path}: existing sweep was produced with a different configuration")
    body = [ln for ln in lines if not ln.startswith("#")]
    return [row for row in csv.reader(body[1:])] if body else []


def cmd_ca_sweep(args) -> int:
    header = RunConfig.from_args(args).header()
    out = Path(args.out or DEFAULT_SWEEP_OUT)
    done: list[list[str]] = []
    if args.resume and out.exists():
        done = _load_partial_sweep(out, header)
    finished = {int(r[0]) for r in done}
    rows = list(done)
    with open(out, "w", newline="") as fh:
        _write_comments(fh, header)
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(SWEEP_COLUMNS)
        for r in done:
            w.writerow(r)
        fh.flush()
        todo = [r for r in range(256) if r not in finished]
        for row in ca_sweep(args.cells, args.transient, args.steps, args.seeds_per_rule, args.samples,
                            args.seed, rules=todo, workers=args.workers, budget=args.budget):
            rec = _sweep_row(row)
            rows.append(rec)
            w.writerow(rec)
            fh.flush()
    rows.sort(key=lambda r: int(r[0]))
    with open(out, "w", newline="") as fh:
        _write_comments(fh, header)
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(SWEEP_COLUMNS)
        w.writerows(rows)
    svg = args.svg or str(out.with_suffix(".svg"))
    lam = [float(r[1]) for r in rows]
    svg_text = scatter_svg(
        lam,
        {"C": [float(r[2]) for r in rows], "shuffled C (geometric mean)": [float(r[3]) for r in rows]},
        xlabel="Langton lambda", ylabel="C (bits)",
        title=f"elementary CA, {args.cells} cells",
    )
    with open(svg, "w") as fh:
        fh.write(svg_text)
    return EXIT_OK


def cmd_ordinal(args) -> int:
    with open(args.input) as fh:
        traj = load_trajectory(fh)
    header = RunConfig.from_args(args).header()
    w_max = args.w_max
    counts = ordinal_counts(traj, w_max)
    w_opt = optimal_window(traj, w_max) if w_max >= 3 else 2
    w = args.window or w_opt
    enc = ordinal_encode(traj, w)
    print("w,m")
    for k in range(2, w_max + 1):
        print(f"{k},{counts[k]}")
    print(f"# w_opt={w_opt} window={w} m={enc.m}")
    if args.out:
        with open(args.out, "w") as fh:
            dump_labels(enc.series, fh, header + [f"window: {w}", f"alphabet: {enc.series.alphabet_size}"])
    if args.network:
        g, dropped = transitions_to_network(enc.series, occupied_only=args.occupied_only)
        with open(args.network, "w") as fh:
            dump_graph(g, fh, header + [f"window: {w}", f"dropped_self_transitions: {dropped}"])
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=_default_seed(),
                        help=f"master seed (default ${SEED_ENV} or 0)")
    common.add_argument("--out", help=f"output path (ca-sweep: {DEFAULT_SWEEP_OUT})")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                        help="automorphism search refinement-node limit")
    common.add_argument("--workers", type=int, default=1)

    p = argparse.ArgumentParser(prog="netsurplus", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"netsurplus {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("complexity", parents=[common], help="complexity of an edge-list graph")
    c.add_argument("input")
    c.set_defaults(func=cmd_complexity)

    s = sub.add_parser("surplus", parents=[common], help="complexity surplus against shuffles")
    s.add_argument("input")
    s.add_argument("--samples", type=int, default=100)
    s.add_argument("--dataset", help="dataset name for the output row (default: file stem)")
    s.add_argument("--audit", help="per-sample C file (default: <out>.audit.csv)")
    s.set_defaults(func=cmd_surplus)

    g = sub.add_parser("generate", parents=[common], help="generate a network")
    g.add_argument("source", choices=["lorenz", "henon", "ca", "pa"])
    g.add_argument("--bins", type=int, help="cells per dimension (lorenz 20, henon 10)")
    g.add_argument("--dt", type=float, help="RK4 step (lorenz 0.01, henon 0.001)")
    g.add_argument("--steps", type=int, help="recorded steps (lorenz 1000, henon 100000, ca 1000)")
    g.add_argument("--transient", type=int, default=1000)
    g.add_argument("--stride", type=int, default=1)
    g.add_argument("--jitter", type=float, default=0.0, help="seeded initial-condition perturbation")
    g.add_argument("--occupied-only", action="store_true")
    g.add_argument("--rule", type=int, default=30)
    g.add_argument("--cells", type=int, default=10)
    g.add_argument("--seeds-per-rule", type=int, default=1)
    g.add_argument("--nodes", type=int, default=100)
    g.add_argument("--out-degree", type=int, default=1)
    g.add_argument("--dump-series", help="also write the trajectory CSV")
    g.set_defaults(func=cmd_generate)

    w = sub.add_parser("ca-sweep", parents=[common], help="all 256 elementary CA rules")
    w.add_argument("--cells", type=int, default=10)
    w.add_argument("--transient", type=int, default=1000)
    w.add_argument("--steps", type=int, default=1000)
    w.add_argument("--seeds-per-rule", type=int, default=1)
    w.add_argument("--samples", type=int, default=100)
    w.add_argument("--svg", help="plot path (default: <out>.svg)")
    w.add_argument("--resume", action="store_true", help="continue a partial sweep in --out")
    w.set_defaults(func=cmd_ca_sweep)

    o = sub.add_parser("ordinal", parents=[common], help="ordinal-pattern encoding of a scalar series")
    o.add_argument("input", help="one-column CSV")
    o.add_argument("--w-max", type=int, default=8)
    o.add_argument("--window", type=int, help="window to encode (default: w_opt)")
    o.add_argument("--network", help="also write the transition network")
    o.add_argument("--occupied-only", action="store_true")
    o.set_defaults(func=cmd_ordinal)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "generate" and args.steps is None and args.source == "ca":
        args.steps = 1000
    try:
        return args.func(args)
    except AutomorphismBudgetError as exc:
        print(f"netsurplus: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (IntegrationError, ArithmeticError) as exc:
        print(f"netsurplus: numeric error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (GraphParseError, ValueError, OSError) as exc:
        print(f"netsurplus: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
