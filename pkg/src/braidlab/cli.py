"""Command-line interface.

Subcommands: invariants, upsilon, distance, adjacency, verify, render.
Exit codes: 0 success, 1 domain error, 2 verification failure (argparse
itself also exits 2 on usage errors, to stderr).  JSON output is the
interchange format; the human-readable output is a thin layer over the
same data.  Set BRAIDLAB_NO_COLOR to disable ANSI colors.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

from . import __version__
from .adjacency import (
    adj_grid,
    adj_index3,
    adj_index4,
    adj_square,
    adj_staircase,
    certificate_from_json,
    load_certificate,
    save_certificate,
    verify,
)
from .braid import fence_render, parse_word
from .cobordism import distance
from .errors import BraidlabError, ParseError
from .exactmath import rational_to_str
from .invariants import (
    TorusKnotId,
    alexander_torus,
    genus,
    tau,
    upsilon,
    upsilon_function,
)


def _style(text: str, code: str) -> str:
    if os.environ.get("BRAIDLAB_NO_COLOR") or not sys.stdout.isatty():
        return text
    return f"\x1b[{code}m{text}\x1b[0m"


def _cmd_invariants(args: argparse.Namespace) -> int:
    knot = TorusKnotId(args.p, args.q, args.sign)
    alex = alexander_torus(knot.p, knot.q)
    data = {
        "knot": str(knot),
        "genus": genus(knot.p, knot.q),
        "tau": tau(knot),
        "upsilon": upsilon(knot),
        "alexander": alex.to_json_dict(),
    }
    if args.json:
        print(json.dumps(data))
    else:
        print(str(knot))
        print(f"genus      {data['genus']}")
        print(f"tau        {data['tau']}")
        print(f"upsilon    {data['upsilon']}")
        print(f"alexander  {alex}")
    return 0


def _cmd_upsilon(args: argparse.Namespace) -> int:
    knot = TorusKnotId(args.p, args.q, args.sign)
    f = upsilon_function(knot.p, knot.q)
    if knot.sign < 0:
        f = -f
    if args.samples is not None:
        if args.samples < 1:
            raise ParseError("--samples needs a positive count")
        rows = []
        for k in range(args.samples + 1):
            t = Fraction(2 * k, args.samples)
            rows.append((t, f(t)))
        if args.json:
            print(json.dumps([{"t": rational_to_str(t), "value": rational_to_str(v)}
                              for t, v in rows]))
        else:
            for t, v in rows:
                print(f"{rational_to_str(t)}\t{rational_to_str(v)}")
    else:
        if args.json:
            print(json.dumps(f.to_json()))
        else:
            print(f)
    return 0


def _cmd_distance(args: argparse.Namespace) -> int:
    a = TorusKnotId.parse(args.K)
    b = TorusKnotId.parse(args.T)
    print(json.dumps(distance(a, b).to_json_dict()))
    return 0


def _cmd_adjacency(args: argparse.Namespace) -> int:
    if args.construction == "grid":
        missing = [k for k in ("n", "m", "a", "b") if getattr(args, k) is None]
        if missing:
            raise ParseError(f"grid needs --n --m --a --b (missing {', '.join(missing)})")
        cert = adj_grid(args.n, args.m, args.a, args.b)
    else:
        if args.m is None:
            raise ParseError(f"{args.construction} needs --m")
        maker = {"index3": adj_index3, "index4": adj_index4,
                 "square": adj_square, "staircase": adj_staircase}[args.construction]
        cert = maker(args.m)
    if args.out:
        save_certificate(cert, args.out)
        print(f"wrote {args.out}: {cert.source} from {cert.target} "
              f"via {args.construction}, {len(cert.steps)} steps, "
              f"{cert.deletions()} deletions")
    else:
        print(json.dumps(cert.to_json_dict()))
    return 0


def _verify_one(path: str) -> dict:
    try:
        if path == "-":
            cert = certificate_from_json(json.load(sys.stdin))
        else:
            cert = load_certificate(path)
    except (ParseError, OSError) as exc:
        return {"path": path, "error": str(exc)}
    return {"path": path, "verdict": verify(cert).to_json_dict()}


def _cmd_verify(args: argparse.Namespace) -> int:
    paths = list(args.paths)
    if args.batch:
        paths.extend(sorted(str(p) for p in Path(args.batch).glob("*.json")))
    if not paths:
        raise ParseError("nothing to verify: give certificate paths or --batch DIR")
    if args.jobs > 1 and "-" not in paths:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_verify_one, paths))
    else:
        results = [_verify_one(p) for p in paths]
    if any("error" in r for r in results):
        for r in results:
            if "error" in r:
                print(f"error: {r['path']}: {r['error']}", file=sys.stderr)
        return 1
    if args.json:
        print(json.dumps(results))
    else:
        for r in results:
            v = r["verdict"]
            if v["status"] == "valid":
                print(f"{r['path']}: {_style('Valid', '32')}")
            elif v["status"] == "invalid_step":
                print(f"{r['path']}: {_style('InvalidStep', '31')} "
                      f"at step {v['step_index']}: {v['reason']}")
            else:
                print(f"{r['path']}: {_style('EndpointMismatch', '31')} "
                      f"on {v['which']}: expected {v['expected']}, "
                      f"found {v['found']}")
    return 0 if all(r["verdict"]["status"] == "valid" for r in results) else 2


def _cmd_render(args: argparse.Namespace) -> int:
    print(fence_render(parse_word(args.word)))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="braidlab",
        description="Exact concordance invariants of torus knots and "
                    "subword-adjacency certificates.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_inv = sub.add_parser("invariants",
                           help="genus, tau, upsilon, Alexander polynomial")
    p_inv.add_argument("p", type=int)
    p_inv.add_argument("q", type=int)
    p_inv.add_argument("--sign", type=int, choices=(1, -1), default=1,
                       help="-1 for the mirror")
    p_inv.add_argument("--json", action="store_true")
    p_inv.set_defaults(func=_cmd_invariants)

    p_ups = sub.add_parser("upsilon", help="the upsilon function on [0, 2]")
    p_ups.add_argument("p", type=int)
    p_ups.add_argument("q", type=int)
    p_ups.add_argument("--sign", type=int, choices=(1, -1), default=1)
    group = p_ups.add_mutually_exclusive_group()
    group.add_argument("--breakpoints", action="store_true", default=True,
                       help="print exact segments (default)")
    group.add_argument("--samples", type=int, default=None, metavar="N",
                       help="evaluate at N+1 evenly spaced points instead")
    p_ups.add_argument("--json", action="store_true")
    p_ups.set_defaults(func=_cmd_upsilon)

    p_dist = sub.add_parser("distance",
                            help="cobordism distance between torus knots")
    p_dist.add_argument("K", help="knot as 'p,q', leading '-' for the mirror")
    p_dist.add_argument("T", help="knot as 'p,q', leading '-' for the mirror")
    # let argparse accept '-2,7' style mirror arguments as positionals
    p_dist._negative_number_matcher = re.compile(r"^-\d+(,\d+)?$")
    p_dist.set_defaults(func=_cmd_distance)

    p_adj = sub.add_parser("adjacency",
                           help="emit a subword-adjacency certificate")
    p_adj.add_argument("construction",
                       choices=("grid", "index3", "index4", "square", "staircase"))
    p_adj.add_argument("--m", type=int, default=None)
    p_adj.add_argument("--n", type=int, default=None, help="grid only")
    p_adj.add_argument("--a", type=int, default=None, help="grid only")
    p_adj.add_argument("--b", type=int, default=None, help="grid only")
    p_adj.add_argument("-o", "--out", default=None,
                       help="write the certificate here instead of stdout")
    p_adj.set_defaults(func=_cmd_adjacency)

    p_ver = sub.add_parser("verify", help="replay and check certificates")
    p_ver.add_argument("paths", nargs="*", help="certificate files ('-' for stdin)")
    p_ver.add_argument("--batch", default=None, metavar="DIR",
                       help="also verify every *.json in DIR")
    p_ver.add_argument("--jobs", type=int, default=1,
                       help="verify files in parallel")
    p_ver.add_argument("--json", action="store_true")
    p_ver.set_defaults(func=_cmd_verify)

    p_ren = sub.add_parser("render", help="fence diagram of a positive word")
    p_ren.add_argument("word", help="word literal, e.g. 's:3 w:1,2,1'")
    p_ren.set_defaults(func=_cmd_render)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BraidlabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def run(argv: list[str] | None = None) -> int:
    return main(argv)


if __name__ == "__main__":
    sys.exit(main())
