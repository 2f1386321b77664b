"""Command-line front end: ``chanprob <command> ...``.

Exit codes: 0 ok, 1 parse error, 2 validation error, 3 zero-validity
evidence, 4 inference engines disagree, 5 a law check failed.
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from pathlib import Path
from typing import List, Optional

from .core import format_rat
from .dsl import ParseError, bind_evidence, parse_network
from .errors import InvalidNetwork, MethodMismatch, ProbError, ZeroValidity
from .factorize import disintegrate, regroup
from .jsonio import JsonFormatError, dist_to_obj, read_dist, write_channel, write_dist
from .laws import network_laws, run_laws
from .network import check, compile_joint, infer, to_dot, validate

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_INVALID = 2
EXIT_ZERO = 3
EXIT_MISMATCH = 4
EXIT_LAW = 5


def _resolve(path: str) -> Path:
    """Existing path, or a bundled example of that name (``student.bn``...)."""
    p = Path(path)
    if p.exists():
        return p
    bundled = resources.files("chanprob") / "data" / p.name
    if bundled.is_file():
        return Path(str(bundled))
    raise FileNotFoundError(path)


def _read(path: str) -> str:
    return _resolve(path).read_text(encoding="utf-8")


def _load_net(path: str):
    text = _read(path)
    return parse_network(text, name=Path(path).stem)


def _err(msg: str) -> None:
    print(msg, file=sys.stderr)


def _rat_obj(r) -> dict:
    return {"num": str(r.numerator), "den": str(r.denominator), "decimal": format_rat(r, 6)}


# -- commands ---------------------------------------------------------------------------

def cmd_validate(args) -> int:
    try:
        net = _load_net(args.file)
    except ParseError as e:
        for d in e.diagnostics:
            _err(f"{args.file}:{d}")
        return EXIT_PARSE
    except UnicodeDecodeError as e:
        _err(f"{args.file}: not UTF-8 text ({e.reason})")
        return EXIT_PARSE
    errors = validate(net)
    if errors:
        for e in errors:
            _err(f"{args.file}: {e}")
        return EXIT_INVALID
    print(f"{args.file}: ok ({len(net.nodes)} nodes)")
    return EXIT_OK


def cmd_infer(args) -> int:
    net = _load_net(args.file)
    evidence = bind_evidence(net, args.evidence or [])
    res = infer(net, evidence, args.target, method=args.method)
    if args.format == "json":
        out = {"dist": dist_to_obj(res.dist), "validity": _rat_obj(res.validity),
               "method": res.method}
        print(json.dumps(out, indent=2))
    else:
        print(res.dist.ket(args.digits))
        print(f"exact: {res.dist.exact()}")
        print(f"validity: {res.validity} ({format_rat(res.validity, args.digits)})")
    if args.timings:
        for k, v in res.timings.items():
            _err(f"{k}: {v * 1000:.3f} ms")
        if res.max_frontier_arity is not None:
            _err(f"max frontier arity: {res.max_frontier_arity}")
    return EXIT_OK


def cmd_joint(args) -> int:
    net = _load_net(args.file)
    joint = compile_joint(net)
    if args.format == "json":
        sys.stdout.write(write_dist(joint))
    else:
        print("# " + " ".join(net.names))
        for e, w in joint.items():
            print(f"{','.join(e)}  {format_rat(w, args.digits)}  {w}")
    return EXIT_OK


def cmd_disintegrate(args) -> int:
    joint = read_dist(_read(args.file))
    d = disintegrate(regroup(joint, args.given, args.target))
    sys.stdout.write(write_channel(d.channel))
    for x in sorted(d.flagged_rows, key=d.channel.dom.index):
        _err(f"row {x!r} has zero mass; set to uniform")
    return EXIT_OK


def cmd_dot(args) -> int:
    sys.stdout.write(to_dot(_load_net(args.file)))
    return EXIT_OK


def cmd_check(args) -> int:
    net = check(_load_net(args.file))
    reports = network_laws(net, args.samples, args.seed) + run_laws(args.samples, args.seed)
    bad = 0
    for rep in reports:
        status = "ok" if rep.ok else f"FAIL ({len(rep.failures)})"
        print(f"{rep.name:<22} {rep.runs:>5} runs  {status}")
        for f in rep.failures[:3]:
            _err(f"  {rep.name}: {f}")
        bad += not rep.ok
    return EXIT_OK if bad == 0 else EXIT_LAW


# -- argument parsing ------------------------------------------------------------------------

def _digits(s: str) -> int:
    n = int(s)
    if n < 1:
        raise argparse.ArgumentTypeError("digits must be at least 1")
    return n


def _index_list(s: str) -> List[int]:
    try:
        return [int(x) for x in s.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated indices, got {s!r}") from None


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="chanprob", description="Exact channel-based probability.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="parse and validate a .bn network")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("infer", help="posterior over target nodes")
    p.add_argument("file")
    p.add_argument("--target", "-t", action="append", required=True)
    p.add_argument("--evidence", "-e", action="append",
                   help="Node=label or Node~{label:value, ...}; repeatable")
    p.add_argument("--method", choices=["crossover", "transformer", "both"], default="both")
    p.add_argument("--digits", type=_digits, default=4)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--timings", action="store_true", help="report engine runtimes on stderr")
    p.set_defaults(func=cmd_infer)

    p = sub.add_parser("joint", help="full joint state of a network")
    p.add_argument("file")
    p.add_argument("--digits", type=_digits, default=4)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_joint)

    p = sub.add_parser("disintegrate", help="extract a channel from a JSON joint state")
    p.add_argument("file")
    p.add_argument("--given", type=_index_list, default=[1], help="1-based factor indices")
    p.add_argument("--target", type=_index_list, default=[2], help="1-based factor indices")
    p.set_defaults(func=cmd_disintegrate)

    p = sub.add_parser("dot", help="Graphviz rendering of the network graph")
    p.add_argument("file")
    p.set_defaults(func=cmd_dot)

    p = sub.add_parser("check", help="run the law suites")
    p.add_argument("file")
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_check)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FileNotFoundError as e:
        _err(f"no such file: {e}")
        return EXIT_PARSE
    except ParseError as e:
        for d in e.diagnostics:
            _err(str(d))
        return EXIT_PARSE
    except (JsonFormatError, UnicodeDecodeError) as e:
        _err(str(e))
        return EXIT_PARSE
    except InvalidNetwork as e:
        for x in e.errors:
            _err(str(x))
        return EXIT_INVALID
    except ZeroValidity as e:
        _err(f"zero validity: {e}")
        return EXIT_ZERO
    except MethodMismatch as e:
        _err(f"engines disagree: {e}")
        return EXIT_MISMATCH
    except ProbError as e:
        _err(str(e))
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
