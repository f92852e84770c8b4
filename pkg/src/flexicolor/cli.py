"""Command-line front end.

Every subcommand prints one report (JSON object, or TSV with a header) on
stdout.  Exit codes: 0 success, 2 input error, 3 budget exceeded,
4 falsification alarm.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from collections import Counter
from fractions import Fraction
from pathlib import Path

from . import __version__
from .algorithms import (bounded_palette_color, cartesian_flexible_color, exact_solver,
                         greedy_flexible, join_split_color,
                         random_degenerate_color, square_class_color)
from .bounds import join_bound_report, joinpath_check, oddrequest_check
from .errors import BudgetExceeded, FalsificationAlarm, InputError, RetryCapExhausted
from .estimate import ALGORITHMS, estimate
from .exact import (DEFAULT_ASSIGNMENT_CAP, chi_flex_report, epsilon_report,
                    list_chromatic_number, list_packing_number, satisfy_max, worst_request)
from .graph import (Graph, chromatic_number, degeneracy, generate, hall_ratio_witness, parse_graph,
                    serialize_graph)
from .instances import oddrequest_instance, t0, verify_k37_flexibility
from .lists import (count_satisfied, parse_lists, parse_request, serialize_lists,
                    serialize_request, validate)
from .orientation import sink_orientation, single_request_color
from .packing import (best_of_family, grid_balanced_family,
                      ladder_flexible_color, verify_family)
from .rng import make_rng

EXIT_OK, EXIT_INPUT, EXIT_BUDGET, EXIT_ALARM = 0, 2, 3, 4

COLOR_ALGORITHMS = ("greedy", "random-degenerate", "square-class", "bounded-palette",
                    "join-split", "cartesian", "exact")


def frac(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


# ------------------------------------------------------------------ inputs


def load_graph(args) -> Graph:
    if args.gen:
        return generate(args.gen)
    if args.graph:
        return parse_graph(_read(args.graph))
    raise InputError("a graph is required: pass --graph FILE or --gen SPEC")


def load_lists(args, required=True):
    if args.lists:
        return parse_lists(_read(args.lists))
    if required:
        raise InputError("--lists FILE is required")
    return None


def load_request(args, required=True):
    if args.request:
        return parse_request(_read(args.request))
    if required:
        raise InputError("--request FILE is required")
    return None


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _budget(args) -> int:
    return args.budget if args.budget is not None else DEFAULT_ASSIGNMENT_CAP


# ------------------------------------------------------------ subcommands


def cmd_gen(args):
    g = load_graph(args)
    return {"n": g.n, "m": g.edge_count, "edges": [list(e) for e in g.edges()],
            "text": serialize_graph(g)}


def cmd_validate(args):
    g = load_graph(args)
    L = load_lists(args)
    r = load_request(args, required=False)
    rep = validate(g, L, r)
    return {"ok": rep.ok, "violations": list(rep.violations)}


def _coloring_record(r, f):
    out = {"coloring": list(f)}
    if r is not None:
        out["satisfied"] = count_satisfied(r, f)
        out["domain"] = len(r)
    return out


def cmd_color(args):
    g = load_graph(args)
    L = load_lists(args)
    r = load_request(args)
    alg = args.algorithm
    rng = make_rng(args.seed)
    extra = {}
    if alg == "greedy":
        f = greedy_flexible(g, L, r)
    elif alg == "random-degenerate":
        f = random_degenerate_color(g, L, r, rng)
    elif alg == "square-class":
        f = square_class_color(g, L, r, _need_s(args))
    elif alg == "bounded-palette":
        res = bounded_palette_color(g, L, r, _need_s(args), budget=args.palette_budget, rng=rng)
        f = res.coloring
        extra = {"mode": res.mode, "chi": res.chi}
    elif alg == "join-split":
        res = join_split_color(g, L, r, _need_s(args), rng, retries=args.retries)
        f = res.coloring
        extra = {"attempts": res.attempts, "kept": list(res.kept)}
    elif alg == "cartesian":
        parts = g.meta.get("operands")
        if g.meta.get("kind") != "cartesian" or not parts:
            raise InputError("cartesian colouring needs --gen cartesian:A|B")
        f = cartesian_flexible_color(generate(parts[0]), generate(parts[1]), L, r, exact_solver)
    else:
        count, f = satisfy_max(g, L, r)
        if f is None:
            raise InputError("lists admit no proper colouring")
    out = _coloring_record(r, f)
    out.update(extra)
    out["algorithm"] = alg
    return out


def _need_s(args) -> int:
    if args.s is None:
        raise InputError("--s (choosability of the graph) is required for this algorithm")
    return args.s


def cmd_satisfy_max(args):
    g = load_graph(args)
    L = load_lists(args)
    r = load_request(args)
    count, f = satisfy_max(g, L, r)
    return {"count": count, "domain": len(r), "witness": None if f is None else list(f)}


def cmd_flex_value(args):
    g = load_graph(args)
    L = load_lists(args)
    rep = worst_request(g, L)
    return rep.to_json()


def cmd_epsilon(args):
    g = load_graph(args)
    if args.k is None:
        raise InputError("--k is required")
    rep = epsilon_report(g, args.k, cap=_budget(args), exhaustive=args.exhaustive)
    out = rep.to_json()
    out["k"] = args.k
    return out


def cmd_chi_list(args):
    g = load_graph(args)
    return {"chi_list": list_chromatic_number(g, _budget(args)), "chi": chromatic_number(g)}


def cmd_chi_pack(args):
    g = load_graph(args)
    return {"chi_pack": list_packing_number(g, _budget(args))}


def cmd_chi_flex(args):
    g = load_graph(args)
    rep = chi_flex_report(g, _budget(args))
    return {"chi_flex": rep.chi_flex, "rho": frac(rep.rho), "chi_list": rep.chi_list,
            "max_degree_bound_used": rep.upper_bound_used,
            "epsilon_checked": {str(k): frac(v.value) for k, v in rep.checked.items()}}


def cmd_hall_ratio(args):
    g = load_graph(args)
    rho, witness = hall_ratio_witness(g)
    return {"rho": frac(rho), "witness": list(witness)}


def cmd_pack_verify(args):
    g = load_graph(args)
    L = load_lists(args)
    if not args.family:
        raise InputError("--family FILE (JSON array of colourings) is required")
    try:
        members = json.loads(_read(args.family))
    except json.JSONDecodeError as exc:
        raise InputError(f"family file is not JSON: {exc.msg} at line {exc.lineno}") from None
    require = tuple(x for x in args.require.split(",") if x)
    rep = verify_family(g, L, [tuple(m) for m in members], require)
    return {"ok": rep.ok, "flags": rep.flags, "multiplicity": rep.multiplicity,
            "violation": rep.violation}


def cmd_grid_pack(args):
    g = load_graph(args)
    L = load_lists(args)
    fam = grid_balanced_family(g, L)
    out = {"size": len(fam), "multiplicity": fam.flags["balanced"],
           "members": [list(f) for f in fam.members]}
    r = load_request(args, required=False)
    if r is not None:
        out.update({"best_" + k: v for k, v in _coloring_record(r, best_of_family(fam, r)).items()})
    return out


def cmd_ladder_color(args):
    g = load_graph(args)
    L = load_lists(args)
    r = load_request(args)
    stats = Counter()
    f = ladder_flexible_color(g, L, r, stats)
    out = _coloring_record(r, f)
    out["routes"] = dict(sorted(stats.items()))
    return out


def cmd_orient(args):
    g = load_graph(args)
    if args.target is None:
        raise InputError("--target is required")
    d = args.d if args.d is not None else degeneracy(g)
    o = sink_orientation(g, d, args.target)
    return {"d": d, "target": args.target, "arcs": [f"{u}>{v}" for u, v in o.arcs],
            "out_degrees": list(o.out_degrees)}


def cmd_satisfy_one(args):
    g = load_graph(args)
    L = load_lists(args)
    r = load_request(args)
    return _coloring_record(r, single_request_color(g, L, r))


def cmd_adversary(args):
    if args.kind == "t0":
        return {"l": args.l, "t0": str(t0(args.l))}
    if args.kind == "k37":
        rep = verify_k37_flexibility(samples=args.samples, seed=args.seed)
        return rep.to_json()
    t = args.t if args.t is not None else t0(args.l)
    g, L, r = oddrequest_instance(args.l, t)
    out = {"l": args.l, "t": t, "t0": str(t0(args.l)), "graph": serialize_graph(g),
           "lists": serialize_lists(L), "request": serialize_request(r)}
    if args.certify:
        count, f = satisfy_max(g, L, r)
        out.update({"satisfy_max": count, "half_threshold": frac(Fraction(len(r), 2)),
                    "half_satisfiable": 2 * count >= len(r)})
    if args.out_dir:
        d = Path(args.out_dir)
        d.mkdir(parents=True, exist_ok=True)
        (d / "graph.txt").write_text(out["graph"])
        (d / "lists.txt").write_text(out["lists"])
        (d / "request.txt").write_text(out["request"])
    return out


def _check_record(check):
    return {"holds": check.holds, "value": check.value, "margin": check.margin,
            "log_value": check.log_value, "flagged": check.flagged,
            "high_precision": check.high_precision}


def cmd_bounds(args):
    if args.kind == "join":
        for name in ("n", "s", "m", "l", "r"):
            if getattr(args, name) is None:
                raise InputError(f"--{name} is required for the join bound")
        rep = join_bound_report(args.n, args.s, args.m, args.l, args.r)
        out = {"bound": rep.value, "terms": list(rep.terms), "raw_terms": list(rep.raw_terms)}
        if rep.ambiguous:
            out["guarded_bound"] = rep.guarded_value
        return out
    if args.kind == "joinpath":
        if args.n is None:
            raise InputError("--n is required")
        p = args.p if args.p is not None else 2 * math.log(args.n) / args.n
        k = args.k if args.k is not None else math.ceil(args.n / 2 + math.log(args.n))
        out = {"n": args.n, "p": p, "k": k}
        out.update(_check_record(joinpath_check(args.n, p, k)))
        return out
    if args.l is None:
        raise InputError("--l is required")
    p = args.p if args.p is not None else math.log(args.l) / args.l
    k = args.k if args.k is not None else math.ceil(3 * args.l / 2)
    out = {"l": args.l, "p": p, "k": k}
    out.update(_check_record(oddrequest_check(args.l, p, k)))
    return out


def cmd_estimate(args):
    g = load_graph(args)
    L = load_lists(args, required=False)
    r = load_request(args, required=False)
    est = estimate(args.algorithm, g, L, r, trials=args.trials or 1000, seed=args.seed,
                   k=args.k, density=args.density, s=args.s)
    return est.to_json()


COMMANDS = {
    "gen": (cmd_gen, "build a graph from a generator descriptor"),
    "validate": (cmd_validate, "check a graph / lists / request triple"),
    "color": (cmd_color, "colour with one of the flexible colouring algorithms"),
    "satisfy-max": (cmd_satisfy_max, "most requests any proper colouring honours"),
    "flex-value": (cmd_flex_value, "worst request fraction for fixed lists"),
    "epsilon": (cmd_epsilon, "largest eps with the graph (k, eps)-flexible"),
    "chi-list": (cmd_chi_list, "list chromatic number"),
    "chi-pack": (cmd_chi_pack, "list packing number"),
    "chi-flex": (cmd_chi_flex, "list flexibility number"),
    "hall-ratio": (cmd_hall_ratio, "Hall ratio with a witness vertex set"),
    "pack-verify": (cmd_pack_verify, "verify a colouring family"),
    "grid-pack": (cmd_grid_pack, "balanced colouring family of a grid"),
    "ladder-color": (cmd_ladder_color, "half-flexible colouring of a ladder"),
    "orient": (cmd_orient, "orientation with a chosen sink"),
    "satisfy-one": (cmd_satisfy_one, "honour one request on a bipartite graph"),
    "adversary": (cmd_adversary, "odd-request instances and the K_{3,7} check"),
    "bounds": (cmd_bounds, "evaluate the closed-form bounds"),
    "estimate": (cmd_estimate, "Monte Carlo estimate of honoured requests"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_mutually_exclusive_group()
    src.add_argument("--graph", metavar="FILE")
    src.add_argument("--gen", metavar="SPEC")
    common.add_argument("--lists", metavar="FILE")
    common.add_argument("--request", metavar="FILE")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--trials", type=int)
    common.add_argument("--format", choices=("json", "tsv"), default="json")
    common.add_argument("--budget", type=int, help="cap on enumerated list assignments")

    parser = argparse.ArgumentParser(prog="flexicolor", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"flexicolor {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    subs = {name: sub.add_parser(name, parents=[common], help=text)
            for name, (_, text) in COMMANDS.items()}

    p = subs["color"]
    p.add_argument("--algorithm", choices=COLOR_ALGORITHMS, default="greedy")
    p.add_argument("--s", type=int)
    p.add_argument("--retries", type=int, default=1000)
    p.add_argument("--palette-budget", type=int, default=10**6)
    subs["epsilon"].add_argument("--k", type=int)
    subs["epsilon"].add_argument("--exhaustive", action="store_true",
                                 help="enumerate assignments even when k > max degree")
    subs["pack-verify"].add_argument("--family", metavar="FILE")
    subs["pack-verify"].add_argument("--require", default="proper,disjoint")
    subs["orient"].add_argument("--target", type=int)
    subs["orient"].add_argument("--d", type=int)
    p = subs["adversary"]
    p.add_argument("kind", choices=("oddrequest", "t0", "k37"))
    p.add_argument("--l", type=int, default=1)
    p.add_argument("--t", type=int)
    p.add_argument("--certify", action="store_true")
    p.add_argument("--out-dir")
    p.add_argument("--samples", type=int, default=1000)
    p = subs["bounds"]
    p.add_argument("kind", choices=("join", "joinpath", "oddrequest"))
    for name in ("n", "s", "m", "l", "k"):
        p.add_argument(f"--{name}", type=int)
    p.add_argument("--r", type=float)
    p.add_argument("--p", type=float)
    p = subs["estimate"]
    p.add_argument("--algorithm", choices=ALGORITHMS, default="random-degenerate")
    p.add_argument("--k", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--density", type=float, default=1.0)
    return parser


# ---------------------------------------------------------------- output


def to_tsv(record: dict) -> str:
    """Two columns, key and value; non-string values are JSON-encoded."""
    lines = ["key\tvalue"]
    for key, value in record.items():
        text = value if isinstance(value, str) else json.dumps(value, sort_keys=True)
        lines.append(f"{key}\t{text.replace(chr(10), chr(92) + 'n')}")
    return "\n".join(lines) + "\n"


def from_tsv(text: str) -> dict:
    out = {}
    for line in text.splitlines()[1:]:
        key, _, value = line.partition("\t")
        value = value.replace("\\n", "\n")
        try:
            out[key] = json.loads(value)
        except json.JSONDecodeError:
            out[key] = value
    return out


def _config(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k != "func"}


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    start = time.perf_counter()
    handler = COMMANDS[args.command][0]
    try:
        result = handler(args)
        code = EXIT_OK
    except InputError as exc:
        result, code = {"error": "input", "message": str(exc)}, EXIT_INPUT
    except (BudgetExceeded, RetryCapExhausted) as exc:
        result, code = {"error": "budget", "message": str(exc)}, EXIT_BUDGET
        if isinstance(exc, RetryCapExhausted):
            result["stats"] = exc.stats
    except FalsificationAlarm as exc:
        result, code = {"error": "falsification-alarm", "message": str(exc),
                        "instance": exc.instance}, EXIT_ALARM
    record = dict(result)
    record.update({"command": args.command, "version": __version__, "seed": args.seed,
                   "config": _config(args), "runtime_s": round(time.perf_counter() - start, 6)})
    if code:
        print(f"flexicolor: {result['message']}", file=stderr)
    if args.format == "json":
        stdout.write(json.dumps(record, sort_keys=True, default=str) + "\n")
    else:
        stdout.write(to_tsv(json.loads(json.dumps(record, default=str))))
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
