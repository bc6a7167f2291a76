"""Command-line interface.

Exit codes:

==  ==========================================================
0   success (adjacent / path found / reproduction matches)
1   not adjacent, or no connection (distance infinite)
2   uncertain verdict
3   path longer than ``--max-len``
4   reproduction mismatch
64  input error (bad file, shape, signature, unknown case)
65  isolated vertex
==  ==========================================================
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
from pathlib import Path

from . import __version__
from .decide import is_isolated_vertex, mutual_strong_orth
from .errors import InputError, NoPathError, OrthographError
from .explorer import (
    STRATEGIES,
    bfs_distance,
    build_graph,
    components,
    diameter_lower_bound,
    sample_vertices,
    theorem_diameter,
    theorem_source,
)
from .golden import CASES, reproduce
from .io import dump_json, element_from_doc, element_to_doc, load_element, mutual_to_dict, path_to_dict, write_atomic
from .linalg import DEFAULT_TOL, ToleranceConfig, Tri, parse_signature
from .witness import route

EXIT_OK = 0
EXIT_NO = 1
EXIT_UNCERTAIN = 2
EXIT_TOO_LONG = 3
EXIT_MISMATCH = 4
EXIT_INPUT = 64
EXIT_ISOLATED = 65


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit 2, which means "uncertain" here
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--tol-rank", type=float, default=DEFAULT_TOL.eps_rank, help="relative singular-value cutoff for rank")
    p.add_argument("--tol-tie", type=float, default=DEFAULT_TOL.eps_tie, help="relative tie tolerance at the maximum")
    p.add_argument("--tol-orth", type=float, default=DEFAULT_TOL.eps_orth, help="certificate residual bound")
    p.add_argument("--seed", type=int, default=None, help="RNG seed (default: $ORTHOGRAPH_SEED or 0)")
    p.add_argument("--json", action="store_true", help="print the JSON report instead of text")
    p.add_argument("--out", type=Path, default=None, help="also write the JSON report to this file")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="orthograph", description="Strong Birkhoff-James orthogonality and orthograph distances.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("check", help="decide mutual strong orthogonality of two elements")
    p.add_argument("a", type=Path)
    p.add_argument("b", type=Path)
    _common(p)

    p = sub.add_parser("witness", help="certified path between two elements")
    p.add_argument("a", type=Path)
    p.add_argument("b", type=Path)
    p.add_argument("--max-len", type=int, default=None, help="fail with exit 3 if the path is longer")
    _common(p)

    p = sub.add_parser("distance", help="sample distance between two elements")
    p.add_argument("a", type=Path)
    p.add_argument("b", type=Path)
    p.add_argument("--sample", type=Path, default=None, help="sample report to measure in (as written by 'sample --out')")
    p.add_argument("--count", type=int, default=100, help="random vertices added to a fresh sample")
    _common(p)

    p = sub.add_parser("sample", help="sample vertices and build the orthograph on them")
    p.add_argument("signature", help="algebra signature, e.g. 1+2")
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--strategy", choices=STRATEGIES[:2], default="random-singular")
    p.add_argument("--workers", type=int, default=1)
    _common(p)

    p = sub.add_parser("diameter", help="diameter of the orthograph of a signature")
    p.add_argument("signature", help="algebra signature, e.g. 1+2")
    p.add_argument("--count", type=int, default=0, help="also report a sampled lower bound from this many random vertices")
    _common(p)

    p = sub.add_parser("reproduce", help="run a reference scenario and compare with the known value")
    p.add_argument("case", help=f"one of: {', '.join(CASES)}")
    _common(p)
    return parser


def _tolerances(args) -> ToleranceConfig:
    return ToleranceConfig(eps_rank=args.tol_rank, eps_tie=args.tol_tie, eps_orth=args.tol_orth)


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("ORTHOGRAPH_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise InputError(f"ORTHOGRAPH_SEED must be an integer, got {env!r}") from None


def _emit(args, report: dict, text: list[str]) -> None:
    if args.out is not None:
        write_atomic(args.out, dump_json(report) + "\n")
    if args.json:
        print(dump_json(report))
    else:
        print("\n".join(text))


def _pair(args):
    a, b = load_element(args.a), load_element(args.b)
    if a.signature != b.signature:
        raise InputError(f"signature mismatch: {args.a} has {list(a.signature)}, {args.b} has {list(b.signature)}")
    return a, b


def _fmt_sig(sig) -> str:
    return "+".join(map(str, sig))


# ---------------------------------------------------------------------------
# commands


def cmd_check(args, tol, seed):
    a, b = _pair(args)
    if a.is_zero() or b.is_zero():
        raise InputError("elements must be nonzero")
    d = mutual_strong_orth(a, b, tol)
    report = {"inputs": {"a": element_to_doc(a), "b": element_to_doc(b)}, "result": mutual_to_dict(d)}
    text = [
        f"a orth b: {d.forward.verdict} (margin {d.forward.margin:.3g})",
        f"b orth a: {d.backward.verdict} (margin {d.backward.margin:.3g})",
        f"mutual: {d.verdict}",
    ]
    for label, dec in (("a->b", d.forward), ("b->a", d.backward)):
        if dec.certificate is not None:
            c = dec.certificate
            text.append(f"  {label} witness at coordinate {c.coordinate_index}: residuals {c.norm_residual:.2e}, {c.orth_residual:.2e}")
    code = {Tri.YES: EXIT_OK, Tri.NO: EXIT_NO, Tri.UNCERTAIN: EXIT_UNCERTAIN}[d.verdict]
    return report, text, code


def _isolated(*xs, tol):
    for x in xs:
        if is_isolated_vertex(x, tol) is Tri.YES:
            return True
    return False


def cmd_witness(args, tol, seed):
    a, b = _pair(args)
    if a.is_zero() or b.is_zero():
        raise InputError("elements must be nonzero")
    inputs = {"a": element_to_doc(a), "b": element_to_doc(b), "max_len": args.max_len}
    if _isolated(a, b, tol=tol):
        return {"inputs": inputs, "result": {"error": "isolated vertex"}}, ["isolated vertex: every coordinate is invertible"], EXIT_ISOLATED
    try:
        path = route(a, b, tol)
    except NoPathError as exc:
        return {"inputs": inputs, "result": {"error": str(exc), "length": math.inf}}, [f"no path: {exc}"], EXIT_NO
    text = [f"path of length {path.length} ({path.theorem_case}, bound {path.bound})"]
    if path.hard_case:
        text.append("hard case: no length-3 construction applies")
    for i, v in enumerate(path.vertices):
        text.append(f"  v{i} = {v!r}")
    code = EXIT_OK
    if args.max_len is not None and path.length > args.max_len:
        text.append(f"length {path.length} exceeds --max-len {args.max_len}")
        code = EXIT_TOO_LONG
    return {"inputs": inputs, "result": path_to_dict(path)}, text, code


def _load_sample(path: Path):
    try:
        doc = json.loads(path.read_text())
        sample = doc.get("result", doc)
        vertices = [element_from_doc(v) for v in sample["vertices"]]
        sig = tuple(sample["signature"])
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise InputError(f"{path}: not a sample report ({exc})") from None
    return sig, vertices


def cmd_distance(args, tol, seed):
    a, b = _pair(args)
    if args.sample is not None:
        sig, vertices = _load_sample(args.sample)
        if sig != a.signature:
            raise InputError(f"sample signature {list(sig)} does not match the elements {list(a.signature)}")
        vs = sample_vertices(sig, "user-supplied", max(1, len(vertices)), seed, vertices=vertices, tol=tol)
    else:
        sig = a.signature
        vs = sample_vertices(sig, "structured-templates", 10_000, seed, tol=tol)
        vs = vs.union(sample_vertices(sig, "random-singular", max(1, args.count), seed, tol=tol))
        vs = vs.union(sample_vertices(sig, "user-supplied", 2, seed, vertices=[a, b], tol=tol))
    g = build_graph(vs, tol)
    try:
        dist = bfs_distance(g, a, b)
    except InputError:
        dist = math.inf
    report = {
        "inputs": {"a": element_to_doc(a), "b": element_to_doc(b), "sample": str(args.sample) if args.sample else None, "count": args.count},
        "result": {"sample_distance": dist, "theorem_diameter": theorem_diameter(sig), "sample_size": len(vs)},
    }
    text = [f"sample distance: {dist}  (sample of {len(vs)} vertices; an upper bound within the sample only)"]
    text.append(f"theorem diameter for {_fmt_sig(sig)}: {theorem_diameter(sig)}")
    return report, text, EXIT_OK if math.isfinite(dist) else EXIT_NO


def cmd_sample(args, tol, seed):
    sig = parse_signature(args.signature)
    if args.count < 1 or args.workers < 1:
        raise InputError("--count and --workers must be positive")
    vs = sample_vertices(sig, args.strategy, args.count, seed, tol=tol)
    g = build_graph(vs, tol, workers=args.workers)
    comps = components(g)
    lb, pair = diameter_lower_bound(g)
    edges = [[int(i), int(j)] for i, j in sorted(g.certificates)]
    result = {
        "signature": list(sig),
        "provenance": vs.provenance,
        "vertices": [element_to_doc(v) for v in vs.vertices],
        "edges": edges,
        "uncertain_pairs": [list(p) for p in g.uncertain_pairs],
        "components": comps,
        "sample_diameter_lower_bound": lb,
        "achieved_by": list(pair) if pair else None,
    }
    text = [
        f"signature {_fmt_sig(sig)}: {len(vs)} vertices, {len(edges)} edges, {len(comps)} components",
        f"uncertain pairs: {len(g.uncertain_pairs)}",
        f"largest sample distance: {lb}" + (f" between vertices {pair[0]} and {pair[1]}" if pair else ""),
    ]
    return {"inputs": {"signature": list(sig), "count": args.count, "strategy": args.strategy}, "result": result}, text, EXIT_OK


def cmd_diameter(args, tol, seed):
    sig = parse_signature(args.signature)
    value = theorem_diameter(sig)
    source = theorem_source(sig)
    result = {"signature": list(sig), "theorem_diameter": value, "source": source}
    text = [f"diameter of {_fmt_sig(sig)}: {value}  [{source}]"]
    if args.count > 0:
        vs = sample_vertices(sig, "structured-templates", 10_000, seed, tol=tol)
        vs = vs.union(sample_vertices(sig, "random-singular", args.count, seed, tol=tol))
        lb, _ = diameter_lower_bound(build_graph(vs, tol))
        result["sample_lower_bound"] = lb
        text.append(f"largest sample distance over {len(vs)} vertices: {lb}")
    return {"inputs": {"signature": list(sig), "count": args.count}, "result": result}, text, EXIT_OK


def cmd_reproduce(args, tol, seed):
    if args.case not in CASES:
        raise InputError(f"unknown case {args.case!r}; expected one of: {', '.join(CASES)}")
    rep = reproduce(args.case, tol, seed)
    text = [f"{args.case}: {'match' if rep.ok else 'MISMATCH'}"]
    for c in rep.checks:
        mark = "ok " if c["ok"] else "FAIL"
        text.append(f"  [{mark}] {c['check']}: expected {c['expected']!r}, observed {c['observed']!r}")
    result = {"match": rep.ok, "checks": rep.checks, "diff": rep.diff(), "details": rep.details}
    return {"inputs": {"case": args.case}, "result": result}, text, EXIT_OK if rep.ok else EXIT_MISMATCH


COMMANDS = {
    "check": cmd_check,
    "witness": cmd_witness,
    "distance": cmd_distance,
    "sample": cmd_sample,
    "diameter": cmd_diameter,
    "reproduce": cmd_reproduce,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        tol = _tolerances(args)
        seed = _seed(args)
        body, text, code = COMMANDS[args.command](args, tol, seed)
    except (InputError, OrthographError) as exc:
        print(f"orthograph {args.command}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    report = {
        "command": args.command,
        **body,
        "tolerances": tol.as_dict(),
        "seed": seed,
        "exit_code": code,
        "wall_time": time.perf_counter() - start,
    }
    _emit(args, report, text)
    return code


if __name__ == "__main__":
    sys.exit(main())
