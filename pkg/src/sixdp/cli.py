"""Command-line front end: figure-ready CSV and JSON for every analysis.

Usage::

    sixdp ira-sweep --mode single --steps 181 -o fig1.csv
    sixdp ira-extrema --mode two --steps 91
    sixdp pn-table --c 0.5 --P 0.25 0.28 --n 8
    sixdp cnot-report
    sixdp simulate --attack ira --eve-basis z --trials 100000 --c 1 --seed 7
    sixdp decode-table

Every flag may also come from ``--config FILE`` (``key = value`` lines, keys
spelled like the long flag without dashes or with underscores); flags given on
the command line win. Relative output paths are resolved against
``$SIXDP_OUTPUT_DIR`` when it is set.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys

import numpy as np

from . import cnot_model, ira_model, protocol_sim
from .ira_model import AttackEconomics, BasisPair, DomainError, EveStrategy, Model
from .quantum_core import Axis, EveBasis

OUTPUT_DIR_ENV = "SIXDP_OUTPUT_DIR"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.exit(2, f"{self.prog}: error: {message}\n")


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([repr(float(v)) if isinstance(v, (float, np.floating)) else v for v in row])
    return buf.getvalue()


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _angle(value: float, degrees: bool) -> float:
    return math.radians(value) if degrees else value


def _eve_basis(spec: str | None, theta, phi, degrees: bool) -> EveBasis:
    if spec is not None:
        return EveBasis.along(Axis(spec))
    if theta is None:
        raise UsageError("give --eve-basis {x,y,z} or --theta/--phi")
    return EveBasis(_angle(theta, degrees), _angle(phi or 0.0, degrees))


def _sweep(args):
    if args.steps < 2 or (args.steps2 is not None and args.steps2 < 2):
        raise UsageError("--steps must be at least 2")
    range1 = (_angle(args.min1, args.degrees), _angle(args.max1, args.degrees)) if args.max1 is not None else (0.0, math.pi)
    range2 = None
    if args.max2 is not None:
        range2 = (_angle(args.min2, args.degrees), _angle(args.max2, args.degrees))
    return ira_model.sweep(args.mode, args.steps, args.steps2, range1, range2, Model(args.model))


def cmd_ira_sweep(args) -> str:
    sw = _sweep(args)
    if args.format == "json":
        return _json_text({"columns": [*sw.names, "P"], "rows": [list(r) for r in sw.rows()]})
    return _csv_text([*sw.names, "P"], sw.rows())


def cmd_ira_extrema(args) -> str:
    sw = _sweep(args)
    lo, hi = sw.minimum(args.tie_tol), sw.maximum(args.tie_tol)
    out = {
        "mode": sw.mode.value,
        "model": sw.model.value,
        "grid": [len(sw.axis1), len(sw.axis2)],
        "columns": list(sw.names),
        "min": {"P": lo.value, "detection": 1.0 - lo.value, "points": [list(p) for p in lo.points]},
        "max": {"P": hi.value, "detection": 1.0 - hi.value, "points": [list(p) for p in hi.points]},
    }
    if args.format == "csv":
        rows = [("min", lo.value, *p) for p in lo.points] + [("max", hi.value, *p) for p in hi.points]
        return _csv_text(["kind", "P", *sw.names], rows)
    return _json_text(out)


def cmd_pn_table(args) -> str:
    if (args.d is None) == (args.P is None):
        raise UsageError("give exactly one of --d or --P")
    ds = args.d if args.d is not None else [ira_model.detection_prob(p) for p in args.P]
    rows = []
    for d in ds:
        for n in args.n:
            rows.append((args.c, d, n, ira_model.success_prob(AttackEconomics(args.c, d, n))))
    if args.format == "json":
        return _json_text({"rows": [dict(zip(("c", "d", "n", "P_n"), r)) for r in rows]})
    return _csv_text(["c", "d", "n", "P_n"], rows)


def cmd_cnot_report(args) -> str:
    return _json_text(cnot_model.sweep_report())


def _attack(args):
    if args.attack == "none":
        if args.eve_basis or args.theta is not None:
            raise UsageError("--eve-basis/--theta only apply to --attack ira")
        return None
    if args.attack == "2cnot":
        if args.eve_basis or args.theta is not None:
            raise UsageError("--eve-basis/--theta only apply to --attack ira")
        return protocol_sim.TwoCnotAttack(tuple(args.ancilla), ("z", "x") if args.mixed_ancillas else ("z", "z"))
    b1 = _eve_basis(args.eve_basis, args.theta, args.phi, args.degrees)
    if args.eve_basis2 is None and args.theta2 is None:
        strat = EveStrategy.single(b1)
    else:
        strat = EveStrategy.two(b1, _eve_basis(args.eve_basis2, args.theta2, args.phi2, args.degrees))
    return protocol_sim.IRAAttack(strat, Model.PHYSICAL)


def cmd_simulate(args) -> str:
    if args.trials < 1:
        raise UsageError("--trials must be at least 1")
    attack = _attack(args)
    pairs = [BasisPair.parse(args.pair)] if args.pair else None
    report = protocol_sim.simulate(attack, args.trials, args.c, args.seed, pairs, args.workers)
    out = report.to_dict()
    out["pair_selection"] = args.pair or "uniform"
    return _json_text(out)


def cmd_decode_table(args) -> str:
    rows = protocol_sim.decode_table()
    if args.format == "json":
        return _json_text({"rows": rows})
    keys = ["axis1", "axis2", "operator", "flip1", "flip2", "codeword"]
    return _csv_text(keys, ([r[k] for k in keys] for r in rows))


COMMANDS = {
    "ira-sweep": (cmd_ira_sweep, "csv"),
    "ira-extrema": (cmd_ira_extrema, "json"),
    "pn-table": (cmd_pn_table, "csv"),
    "cnot-report": (cmd_cnot_report, "json"),
    "simulate": (cmd_simulate, "json"),
    "decode-table": (cmd_decode_table, "csv"),
}


def _add_grid(p):
    p.add_argument("--mode", choices=["single", "two"], default="single")
    p.add_argument("--steps", type=int, default=181, help="grid points per axis")
    p.add_argument("--steps2", type=int, default=None, help="grid points on the second axis")
    p.add_argument("--min1", type=float, default=0.0)
    p.add_argument("--max1", type=float, default=None)
    p.add_argument("--min2", type=float, default=0.0)
    p.add_argument("--max2", type=float, default=None)
    p.add_argument("--model", choices=[m.value for m in Model], default="paper")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sixdp", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("-o", "--output", default=None, help="output file (default: stdout)")
        p.add_argument("--format", choices=["csv", "json"], default=None)
        p.add_argument("--config", default=None, help="key=value file mirroring the flags")
        p.add_argument("--degrees", action="store_true", help="read angle flags in degrees")
        return p

    p = common(sub.add_parser("ira-sweep", help="IRA no-detection probability on an angle grid"))
    _add_grid(p)
    p = common(sub.add_parser("ira-extrema", help="grid minimum and maximum with all tied points"))
    _add_grid(p)
    p.add_argument("--tie-tol", type=float, default=1e-9)

    p = common(sub.add_parser("pn-table", help="probability of n undetected bits"))
    p.add_argument("--c", type=float, default=0.5)
    p.add_argument("--d", type=float, nargs="+", default=None)
    p.add_argument("--P", type=float, nargs="+", default=None)
    p.add_argument("--n", type=int, nargs="+", default=[8])

    common(sub.add_parser("cnot-report", help="exhaustive double-CNOT attack summary"))

    p = common(sub.add_parser("simulate", help="seeded Monte Carlo protocol run"))
    p.add_argument("--attack", choices=["none", "ira", "2cnot"], default="none")
    p.add_argument("--eve-basis", choices=["x", "y", "z"], default=None)
    p.add_argument("--theta", type=float, default=None)
    p.add_argument("--phi", type=float, default=None)
    p.add_argument("--eve-basis2", choices=["x", "y", "z"], default=None)
    p.add_argument("--theta2", type=float, default=None)
    p.add_argument("--phi2", type=float, default=None)
    p.add_argument("--ancilla", type=int, nargs=2, default=[0, 0], choices=[0, 1])
    p.add_argument("--mixed-ancillas", action="store_true")
    p.add_argument("--pair", default=None, help="fix Bob's pair, e.g. 'z+,x+'")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--c", type=float, default=0.5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)

    common(sub.add_parser("decode-table", help="flip-pattern decode table"))
    parser.subcommands = sub.choices
    return parser


def _read_config(path: str) -> dict:
    cfg = {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key=value")
            key, value = (x.strip() for x in line.split("=", 1))
            cfg[key.lstrip("-").replace("-", "_")] = value
    return cfg


def _apply_config(parser, sub_name: str, argv: list[str], cfg: dict) -> argparse.Namespace:
    by_dest = {a.dest: a for a in parser.subcommands[sub_name]._actions}
    extra = []
    for key, value in cfg.items():
        action = by_dest.get(key)
        if action is None:
            raise UsageError(f"unknown config key {key!r}")
        flag = max(action.option_strings, key=len)
        if action.nargs == 0:
            if value.lower() in ("1", "true", "yes", "on"):
                extra.append(flag)
        else:
            extra += [flag, *value.split()]
    # config first so command-line flags override it
    return parser.parse_args([sub_name, *extra, *argv[1:]])


def _write(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not os.path.isabs(path):
        path = os.path.join(base, path)
    try:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc.strerror}") from exc


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.config:
            args = _apply_config(parser, args.command, argv, _read_config(args.config))
        func, default_fmt = COMMANDS[args.command]
        args.format = args.format or default_fmt
        _write(func(args), args.output)
    except (UsageError, DomainError, ValueError, OSError) as exc:
        msg = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
        print(f"sixdp {args.command}: error: {msg}", file=sys.stderr)
        return 2 if isinstance(exc, UsageError) else 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
