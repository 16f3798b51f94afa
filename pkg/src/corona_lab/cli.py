"""``corona-lab`` command line.

Exit codes: 0 when nothing was witnessed (or a bound/cross-check verified),
3 when a violation, discontinuity or divergence was witnessed, 1 on usage
errors, 2 on runtime errors and failed reproductions.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .core import CoronaLabError, SpaceHandle, parse_scalar
from .hyperspace import DISCONTINUOUS, continuity_probe
from .plotting import series_of
from .probes import DIVERGENCE, FAIL, VIOLATION, SamplerSpec, default_center, scp_scan, wcp_probe
from .repro import REPROS, run_repro
from .report import FORMATS, emit_report
from .spaces import SPACE_NAMES, make_builtin_space, space_from_spec

GRAMMAR = """\
usage:
  corona-lab spaces [--format json]
  corona-lab probe wcp --space S --family F [--kmax N]
  corona-lab probe continuity --space S [--x X] --t T --direction left|right [--resolution N]
  corona-lab estimate scp --space S --t-grid T1,T2,... --eps-grid E1,E2,... [--resolution N]
  corona-lab repro <theorem6|example1|example2|theorem7|x1|x2|theorem2>
      [--kmax N] [--c RULE] [--t T] [--eps E] [--trials N] [--pairs N]
common options:
  --format json|csv|svg   --output PATH   --plot   --seed N
  --params JSON           --config FILE   (space spec {"space": ..., "params": {...}})
rationals may be written as p/q or as decimals
"""

EXIT_OK, EXIT_USAGE, EXIT_RUNTIME, EXIT_WITNESSED = 0, 1, 2, 3
WITNESSED = {VIOLATION, DISCONTINUOUS, DIVERGENCE}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _common(p: argparse.ArgumentParser, space: bool = True) -> None:
    p.add_argument("--format", default="json", choices=FORMATS)
    p.add_argument("--output")
    p.add_argument("--plot", action="store_true", help="also write an SVG next to --output")
    p.add_argument("--seed", type=int, default=0)
    if space:
        p.add_argument("--space")
        p.add_argument("--params", help="JSON object of space parameters")
        p.add_argument("--config", help="JSON file with a space spec")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="corona-lab", description="Falsification probes for corona properties of metric spaces.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    spaces = sub.add_parser("spaces", help="list builtin spaces")
    spaces.add_argument("--format", default="text", choices=("text", "json"))

    probe = sub.add_parser("probe", help="run a single probe")
    probes = probe.add_subparsers(dest="probe", required=True, parser_class=_Parser)
    wcp = probes.add_parser("wcp")
    _common(wcp)
    wcp.add_argument("--family", required=True)
    wcp.add_argument("--kmax", type=int, default=50)
    cont = probes.add_parser("continuity")
    _common(cont)
    cont.add_argument("--x")
    cont.add_argument("--t", required=True)
    cont.add_argument("--direction", required=True, type=str.lower, choices=("left", "right"))
    cont.add_argument("--resolution", type=int, default=16)

    estimate = sub.add_parser("estimate", help="estimate corona constants")
    estimates = estimate.add_subparsers(dest="estimate", required=True, parser_class=_Parser)
    scp = estimates.add_parser("scp")
    _common(scp)
    scp.add_argument("--t-grid", required=True)
    scp.add_argument("--eps-grid", required=True)
    scp.add_argument("--x")
    scp.add_argument("--resolution", type=int, default=16)

    repro = sub.add_parser("repro", help="reproduce a worked example")
    _common(repro, space=False)
    repro.add_argument("name", choices=tuple(REPROS))
    repro.add_argument("--kmax", type=int)
    repro.add_argument("--c")
    repro.add_argument("--t")
    repro.add_argument("--eps")
    repro.add_argument("--trials", type=int)
    repro.add_argument("--pairs", type=int)
    return parser


def _load_space(args) -> SpaceHandle:
    if args.config:
        spec = json.loads(Path(args.config).read_text())
        if args.space:
            spec["space"] = args.space
    else:
        if not args.space:
            raise UsageError("--space or --config is required")
        spec = {"space": args.space}
    if args.params:
        spec["params"] = {**spec.get("params", {}), **json.loads(args.params)}
    return space_from_spec(spec)


def parse_radius(space: SpaceHandle, text: str):
    value = parse_scalar(text)
    return value if space.exact else float(value)


def parse_point(space: SpaceHandle, text: str | None):
    if text is None:
        return default_center(space)
    try:
        obj = json.loads(text)
    except json.JSONDecodeError:
        obj = text.split(",") if "," in text else text
    return space.validate(space.decode_point(obj))


def _grid(space: SpaceHandle, text: str) -> list:
    return [parse_radius(space, item) for item in text.split(",") if item.strip()]


def _repro_kwargs(args) -> dict:
    allowed = {
        "theorem6": ("kmax",), "x1": ("kmax",), "x2": ("kmax",),
        "theorem7": ("c", "t", "eps", "trials"), "theorem2": ("pairs",),
        "example1": (), "example2": (),
    }[args.name]
    rename = {"kmax": "k_max"}
    kwargs = {"seed": args.seed}
    for opt in ("kmax", "c", "t", "eps", "trials", "pairs"):
        value = getattr(args, opt)
        if value is None:
            continue
        if opt not in allowed:
            raise UsageError(f"repro {args.name} does not take --{opt}")
        kwargs[rename.get(opt, opt)] = value
    return kwargs


def _run(args):
    """Return ``(report, space)`` for the parsed command."""
    if args.command == "repro":
        return run_repro(args.name, **_repro_kwargs(args)), None
    space = _load_space(args)
    if args.command == "probe" and args.probe == "wcp":
        if args.kmax < 3:
            raise UsageError("--kmax must be at least 3")
        return wcp_probe(space, args.family, args.kmax, args.seed), space
    if args.command == "probe":
        x = parse_point(space, args.x)
        t = parse_radius(space, args.t)
        return continuity_probe(space, x, t, args.direction, resolution=args.resolution, seed=args.seed), space
    x = parse_point(space, args.x)
    sampler = SamplerSpec(resolution=args.resolution)
    return scp_scan(space, _grid(space, args.t_grid), _grid(space, args.eps_grid), sampler, args.seed, x), space


def _list_spaces(fmt: str) -> bytes:
    rows = []
    for name in SPACE_NAMES:
        s = make_builtin_space(name)
        rows.append({
            "name": name,
            "exact": s.exact,
            "boundedly_compact": s.metadata.boundedly_compact,
            "translation_invariant": s.metadata.translation_invariant,
            "families": sorted(s.witness_families),
        })
    if fmt == "json":
        return (json.dumps(rows, indent=2, sort_keys=True) + "\n").encode()
    lines = [f"{r['name']:<22} {'exact' if r['exact'] else 'float':<6} "
             f"families: {', '.join(r['families']) or '-'}" for r in rows]
    return ("\n".join(lines) + "\n").encode()


def exit_code(verdict: str) -> int:
    if verdict in WITNESSED:
        return EXIT_WITNESSED
    if verdict == FAIL:
        return EXIT_RUNTIME
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "spaces":
            sys.stdout.buffer.write(_list_spaces(args.format))
            sys.stdout.flush()
            return EXIT_OK
        if args.plot and not args.output:
            raise UsageError("--plot needs --output")
        report, space = _run(args)
        payload = emit_report(report, args.format, space)
        if args.output:
            out = Path(args.output)
            out.write_bytes(payload)
            if args.plot and args.format != "svg":
                if series_of(report) is None:
                    sys.stderr.write("corona-lab: this report has no series to plot; --plot ignored\n")
                else:
                    out.with_suffix(".svg").write_bytes(emit_report(report, "svg", space))
        else:
            sys.stdout.buffer.write(payload)
            sys.stdout.flush()
    except UsageError as exc:
        sys.stderr.write(f"corona-lab: {exc}\n{GRAMMAR}")
        return EXIT_USAGE
    except (CoronaLabError, ValueError, KeyError, ArithmeticError, OSError) as exc:
        code = getattr(exc, "code", type(exc).__name__)
        sys.stderr.write(f"corona-lab: {code}: {exc}\n")
        return EXIT_RUNTIME
    if report.verdict == FAIL:
        sys.stderr.write("corona-lab: reproduction mismatch, see the rows with ok = false\n")
    return exit_code(report.verdict)


run_command = main


if __name__ == "__main__":
    sys.exit(main())
