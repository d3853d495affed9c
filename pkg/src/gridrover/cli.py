"""Command-line interface: run, verify, gen and oracle.

Exit codes: 0 ok, 2 unreadable or rejected input, 3 a strategy broke the
exploration rules, 4 a proven bound was exceeded (``run`` only with
``--strict``; ``verify`` always).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

from . import corpus
from . import generators as gen
from .grid import GridPolygon, PolygonError, parse_polygon, serialize_polygon
from .oracle import InstanceTooLarge, hamiltonian_cycle_exists, optimal_tour, oracle_limit
from .render import render_ascii, render_svg
from .simulator import SimulationError, run_on_polygon, validate_trace
from .strategies import STRATEGIES, STRATEGY_BOUNDS, get_strategy

SCHEMA = 1
EXIT_OK, EXIT_PARSE, EXIT_STRATEGY, EXIT_BOUND = 0, 2, 3, 4
CSV_COLUMNS = ("id", "C", "E", "H", "Wcw", "strategy", "S", "L", "bound", "slack", "Sopt", "ratio")


class InputError(Exception):
    pass


def load_polygon(path: str | Path) -> GridPolygon:
    """Read a polygon file; a bare name falls back to the bundled corpus."""
    try:
        if not Path(path).exists() and Path(path).parent == Path("."):
            try:
                return parse_polygon(corpus.bundled_text(str(path)))
            except FileNotFoundError:
                pass
        return parse_polygon(Path(path).read_text())
    except (OSError, UnicodeDecodeError, PolygonError) as exc:
        raise InputError(f"{path}: {exc}") from exc


def _ratio_fields(S: int, S_opt: int | None) -> dict:
    if S_opt is None:
        return {"S_opt": None, "ratio": None}
    r = Fraction(S, S_opt) if S_opt else Fraction(1)
    return {"S_opt": S_opt, "ratio": f"{r.numerator}/{r.denominator}", "ratio_float": round(float(r), 6)}


def _optimum(P: GridPolygon) -> int | None:
    if len(P.free_cells) > oracle_limit():
        return None
    return optimal_tour(P).S_opt


def run_report(ident: str, P: GridPolygon, strategy: str, with_oracle: bool = False) -> tuple[dict, object]:
    """Run one strategy and recompute every number from the trace itself.

    Raises :class:`SimulationError` when the strategy breaks the rules.
    """
    trace = run_on_polygon(P, get_strategy(strategy))
    report = validate_trace(P, trace)
    if not (report.covered and report.closed):
        raise SimulationError(f"{ident}: tour does not cover the polygon and return to the start")
    checked = [report.bound(name) for name in STRATEGY_BOUNDS[strategy]]
    out = {
        "schema": SCHEMA,
        "id": ident,
        "strategy": strategy,
        **report.to_dict(),
        "checked": [b.name for b in checked if b.applicable],
        "violations": [b.name for b in checked if b.applicable and not b.satisfied],
    }
    out.update(_ratio_fields(report.S, _optimum(P) if with_oracle else None))
    return out, trace


def csv_rows(report: dict) -> list[dict]:
    base = {
        "id": report["id"],
        "C": report["C"],
        "E": report["E"],
        "H": report["H"],
        "Wcw": report["W_cw"],
        "strategy": report["strategy"],
        "S": report["S"],
        "L": report["L"],
        "Sopt": "" if report.get("S_opt") is None else report["S_opt"],
        "ratio": report.get("ratio") or "",
    }
    names = report["checked"] or [""]
    return [
        {**base, "bound": name, "slack": report["bounds"][name]["slack"] if name else ""} for name in names
    ]


# --- run ------------------------------------------------------------------


def cmd_run(args: argparse.Namespace) -> int:
    P = load_polygon(args.polygon)
    report, trace = run_report(Path(args.polygon).stem, P, args.strategy, args.oracle)
    if args.render:
        text = render_svg(P, trace) if args.render == "svg" else render_ascii(P, trace)
        if args.render_out:
            Path(args.render_out).write_text(text)
        else:
            sys.stdout.write(text)
    if args.trace_out:
        Path(args.trace_out).write_text(trace.to_text())
    if not args.render or args.render_out:
        print(json.dumps(report, sort_keys=True, indent=2))
    if args.strict and report["violations"]:
        print(f"bound violated: {', '.join(report['violations'])}", file=sys.stderr)
        return EXIT_BOUND
    return EXIT_OK


# --- verify ---------------------------------------------------------------


def _corpus(args: argparse.Namespace) -> list[tuple[str, GridPolygon]]:
    items = []
    if args.bundled:
        items.extend((name, corpus.load_bundled(name)) for name in corpus.bundled_names())
    for p in args.paths:
        path = Path(p)
        files = sorted(path.glob("*.poly")) if path.is_dir() else [path]
        items.extend((f.stem, load_polygon(f)) for f in files)
    for i in range(args.random_simple):
        seed = args.seed + i
        size = 10 + seed % (args.max_cells - 9)
        items.append((f"simple-{seed}", gen.gen_random_simple(seed, size)))
    for i in range(args.random_holey):
        seed = args.seed + i
        size = 30 + seed % max(1, args.max_cells - 29)
        try:
            items.append((f"holey-{seed}", gen.gen_random_holey(seed, size, 1 + seed % 3)))
        except gen.TargetInfeasible:
            continue
    return items


def _verify_one(job: tuple[str, GridPolygon, str, bool]) -> dict:
    ident, P, strategy, with_oracle = job
    try:
        report, _ = run_report(ident, P, strategy, with_oracle)
    except SimulationError as exc:
        return {"schema": SCHEMA, "id": ident, "strategy": strategy, "error": str(exc)}
    return report


def cmd_verify(args: argparse.Namespace) -> int:
    if args.adversary:
        return _verify_adversary(args)
    strategies = args.strategies or list(STRATEGIES)
    for s in strategies:
        get_strategy(s)
    jobs = [(ident, P, s, args.oracle) for ident, P in _corpus(args) for s in strategies]
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            reports = list(pool.map(_verify_one, jobs, chunksize=8))
    else:
        reports = [_verify_one(j) for j in jobs]
    reports.sort(key=lambda r: (r["id"], r["strategy"]))

    errors = [r for r in reports if "error" in r]
    good = [r for r in reports if "error" not in r]
    violations = [
        {"id": r["id"], "strategy": r["strategy"], "bound": b, "slack": r["bounds"][b]["slack"]}
        for r in good
        for b in r["violations"]
    ]
    tight = [
        {"id": r["id"], "strategy": r["strategy"], "bound": b}
        for r in good
        for b in r["checked"]
        if r["bounds"][b]["slack"] == 0
    ]
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for r in good:
        writer.writerows(csv_rows(r))
    if args.csv:
        Path(args.csv).write_text(buf.getvalue())
    summary = {
        "schema": SCHEMA,
        "runs": len(reports),
        "polygons": len({r["id"] for r in reports}),
        "strategies": strategies,
        "violations": violations,
        "strategy_errors": [{"id": r["id"], "strategy": r["strategy"], "error": r["error"]} for r in errors],
        "zero_slack": tight,
    }
    if args.json:
        Path(args.json).write_text(json.dumps(summary, sort_keys=True, indent=2) + "\n")
    print(json.dumps(summary, sort_keys=True, indent=2))
    if errors:
        return EXIT_STRATEGY
    return EXIT_BOUND if violations else EXIT_OK


def _verify_adversary(args: argparse.Namespace) -> int:
    strategy = args.strategy or "dfs"
    get_strategy(strategy)
    if args.adversary == "holes":
        res = gen.adversary_holes(strategy, args.q)
    else:
        res = gen.adversary_simple(strategy, args.blocks)
    out = {
        "schema": SCHEMA,
        "adversary": args.adversary,
        "strategy": strategy,
        "case": res.case,
        "C": len(res.polygon.free_cells),
        "S": res.trace.S,
        **_ratio_fields(res.trace.S, res.S_opt),
    }
    if args.adversary == "holes":
        out["Q"] = args.q
    else:
        out["blocks"] = args.blocks
    if args.out_dir:
        d = Path(args.out_dir)
        d.mkdir(parents=True, exist_ok=True)
        (d / f"adversary-{args.adversary}-{strategy}.poly").write_text(serialize_polygon(res.polygon, border=True))
        (d / f"adversary-{args.adversary}-{strategy}.json").write_text(json.dumps(out, sort_keys=True, indent=2) + "\n")
    print(json.dumps(out, sort_keys=True, indent=2))
    return EXIT_OK


# --- gen and oracle -------------------------------------------------------


def _generate(args: argparse.Namespace, seed: int) -> GridPolygon:
    fam = args.family
    if fam == "rectangle":
        return gen.gen_rectangle(args.width, args.height)
    if fam == "corridor":
        return gen.gen_corridor(args.width, args.len)
    if fam == "comb":
        return gen.gen_comb(args.teeth, args.tooth_len)
    if fam == "random-simple":
        return gen.gen_random_simple(seed, args.cells)
    if fam == "random-holey":
        return gen.gen_random_holey(seed, args.cells, args.holes)
    if fam == "fat":
        return gen.gen_fat(seed, args.rounds)
    return gen.gadget_polygon(args.variant)


def cmd_gen(args: argparse.Namespace) -> int:
    if args.count == 1 and not args.out_dir:
        try:
            P = _generate(args, args.seed)
        except (gen.TargetInfeasible, ValueError) as exc:
            raise InputError(str(exc)) from exc
        text = serialize_polygon(P, border=True)
        if args.out:
            Path(args.out).write_text(text)
        else:
            sys.stdout.write(text)
        return EXIT_OK
    out_dir = Path(args.out_dir or ".")
    out_dir.mkdir(parents=True, exist_ok=True)
    written = 0
    for i in range(args.count):
        seed = args.seed + i
        try:
            P = _generate(args, seed)
        except gen.TargetInfeasible:
            continue
        (out_dir / f"{args.family}-{seed}.poly").write_text(serialize_polygon(P, border=True))
        written += 1
    print(json.dumps({"schema": SCHEMA, "family": args.family, "written": written, "dir": str(out_dir)}))
    return EXIT_OK


def cmd_oracle(args: argparse.Namespace) -> int:
    P = load_polygon(args.polygon)
    limit = args.limit if args.limit is not None else oracle_limit()
    try:
        res = optimal_tour(P, limit=limit)
        ham = hamiltonian_cycle_exists(P, limit=max(limit, 20)) if len(P.free_cells) <= 20 else res.S_opt == len(P.free_cells)
    except InstanceTooLarge as exc:
        raise InputError(str(exc)) from exc
    out = {
        "schema": SCHEMA,
        "id": Path(args.polygon).stem,
        "C": len(P.free_cells),
        "S_opt": res.S_opt,
        "hamiltonian": ham,
        "method": res.method,
    }
    if args.tour:
        out["tour"] = [list(c) for c in res.tour]
    print(json.dumps(out, sort_keys=True, indent=2))
    return EXIT_OK


# --- parser ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gridrover", description="Online exploration of grid polygons.")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("run", help="run one strategy on one polygon file")
    r.add_argument("polygon")
    r.add_argument("strategy", choices=sorted(STRATEGIES))
    r.add_argument("--strict", action="store_true", help="exit 4 when a proven bound is exceeded")
    r.add_argument("--render", choices=("ascii", "svg"))
    r.add_argument("--render-out", help="write the rendering here instead of stdout")
    r.add_argument("--trace-out", help="write the visited cells, one x,y per line")
    r.add_argument("--oracle", action="store_true", help="add S_opt and the ratio (small polygons)")
    r.set_defaults(func=cmd_run)

    v = sub.add_parser("verify", help="check bounds over a corpus or against an adversary")
    v.add_argument("paths", nargs="*", help="polygon files or directories of *.poly")
    v.add_argument("--bundled", action="store_true", help="include the polygons shipped with the package")
    v.add_argument("--strategies", nargs="+", choices=sorted(STRATEGIES))
    v.add_argument("--random-simple", type=int, default=0, metavar="N")
    v.add_argument("--random-holey", type=int, default=0, metavar="N")
    v.add_argument("--max-cells", type=int, default=200)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--oracle", action="store_true", help="add S_opt where C is within the oracle limit")
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--csv")
    v.add_argument("--json")
    v.add_argument("--adversary", choices=("holes", "simple"))
    v.add_argument("--q", type=int, default=100)
    v.add_argument("--blocks", type=int, default=20)
    v.add_argument("--strategy", choices=sorted(STRATEGIES))
    v.add_argument("--out-dir")
    v.set_defaults(func=cmd_verify)

    g = sub.add_parser("gen", help="write polygon files")
    g.add_argument(
        "family", choices=("rectangle", "corridor", "comb", "random-simple", "random-holey", "fat", "gadget")
    )
    g.add_argument("--width", type=int, default=3)
    g.add_argument("--height", type=int, default=3)
    g.add_argument("--len", type=int, default=10)
    g.add_argument("--teeth", type=int, default=3)
    g.add_argument("--tooth-len", type=int, default=2)
    g.add_argument("--cells", type=int, default=40)
    g.add_argument("--holes", type=int, default=1)
    g.add_argument("--rounds", type=int, default=5)
    g.add_argument("--variant", choices=sorted(gen.GADGETS), default="vii")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--count", type=int, default=1)
    g.add_argument("--out")
    g.add_argument("--out-dir")
    g.set_defaults(func=cmd_gen)

    o = sub.add_parser("oracle", help="exact optimal tour of a small polygon")
    o.add_argument("polygon")
    o.add_argument("--limit", type=int)
    o.add_argument("--tour", action="store_true")
    o.set_defaults(func=cmd_oracle)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"gridrover: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except SimulationError as exc:
        print(f"gridrover: strategy violation: {exc}", file=sys.stderr)
        return EXIT_STRATEGY


if __name__ == "__main__":
    sys.exit(main())
