"""Command-line front end.

Exit status: 0 on success, 1 when a verification finds violations (listed on
stdout), 2 for unreadable or malformed input.  ``--format json`` prints the
same report as one JSON document.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Callable, Sequence

from . import __version__
from .algebras import AlgebraError, roundtrip_report, verify_algebra, verify_algebra_map
from .collection import CollectionError, validate_collection
from .free import FreeError, free_elements, serialize as serialize_decorated, vertex_count as dvertex_count
from .io import (FormatError, algebra_from_json, collection_from_json, dump_json, load_json,
                 map_from_json, monoid_from_json, operad_from_json, operad_to_json)
from .operads import (MonoidError, OperadError, ass_truncated, gamma, operad_from_monoid,
                      terminal_operad, verify_operad)
from .perms import Permutation
from .report import Report
from .sc_operad import circ, compose, sigma_action
from .trees import (TreeError, TreeSyntaxError, parse_profile, parse_profiles, parse_tree, profile_of,
                    read_tree, serialize_tree, validate)

INPUT_ERRORS = (FormatError, TreeError, CollectionError, OperadError, MonoidError, FreeError,
                AlgebraError, ValueError)


class Output:
    """Collects text lines and the JSON payload of one command."""

    def __init__(self, fmt: str):
        self.fmt = fmt
        self.lines: list[str] = []
        self.data: dict = {}

    def line(self, text: str = ""):
        self.lines.append(text)

    def render(self) -> str:
        if self.fmt == "json":
            return json.dumps(self.data, indent=2) + "\n"
        return "".join(line + "\n" for line in self.lines)


def _colours(text: str | None):
    if text is None:
        return None
    return [c.strip() for c in text.split(",") if c.strip()]


def _report(out: Output, report: Report, extra: dict | None = None) -> int:
    out.data.update(report.to_json())
    if extra:
        out.data.update(extra)
    for line in str(report).splitlines():
        out.line(line)
    return 0 if report.ok else 1


# ---------------------------------------------------------------------- tree

def cmd_tree_check(args, out: Output) -> int:
    if args.file:
        try:
            text = Path(args.file).read_text(encoding="utf-8").strip()
        except OSError as exc:
            raise FormatError(f"cannot read {args.file}: {exc.strerror}") from None
    elif args.tree is not None:
        text = args.tree
    else:
        raise FormatError("give a tree or -f FILE")
    t = read_tree(text)
    problems = validate(t, _colours(args.colours))
    report = Report(violations=problems, checks=1)
    if problems:
        return _report(out, report)
    vps, b = profile_of(t)
    canon = serialize_tree(t)
    out.data.update({"ok": True, "tree": canon, "vertex_profiles": [str(p) for p in vps],
                     "boundary": str(b)})
    out.line("OK")
    out.line(f"tree: {canon}")
    out.line("vertex profiles: " + (" ".join(map(str, vps)) if vps else "(none)"))
    out.line(f"boundary: {b}")
    return 0


# ------------------------------------------------------------------------ sc

def _tree_result(out: Output, t) -> int:
    s = serialize_tree(t)
    out.data.update({"tree": s, "profile": d_profile_text(t)})
    out.line(s)
    return 0


def d_profile_text(t) -> str:
    vps, b = profile_of(t)
    return "(" + ",".join(map(str, vps)) + ";" + str(b) + ")"


def cmd_sc_compose(args, out: Output) -> int:
    x = parse_tree(args.tree)
    return _tree_result(out, compose(x, [parse_tree(s) for s in args.with_ or []]))


def cmd_sc_circ(args, out: Output) -> int:
    return _tree_result(out, circ(parse_tree(args.tree), args.i, parse_tree(args.other)))


def cmd_sc_act(args, out: Output) -> int:
    alpha = Permutation(tuple(int(a) for a in args.perm.split(",")))
    return _tree_result(out, sigma_action(parse_tree(args.tree), alpha))


def cmd_sc_enumerate(args, out: Output) -> int:
    from .trees import enumerate_trees
    vps = parse_profiles(args.profiles)
    b = parse_profile(args.boundary)
    found = enumerate_trees(_colours(args.colours), vps, b)
    out.data.update({"count": len(found), "trees": found})
    for s in found:
        out.line(s)
    return 0


# -------------------------------------------------------------------- operad

def cmd_operad_verify(args, out: Output) -> int:
    P = operad_from_json(load_json(args.operad))
    return _report(out, verify_operad(P))


def _locate(P, name: str, profile_text: str | None):
    if profile_text:
        p = parse_profile(profile_text)
        if name not in P.elements(p):
            raise OperadError(f"{name!r} is not an element of {p}")
        return p
    hits = [p for p in P.profiles if name in P.elements(p)]
    if not hits:
        raise OperadError(f"no component contains {name!r}")
    if len(hits) > 1:
        raise OperadError(f"{name!r} lies in several components ({', '.join(map(str, hits))}); "
                          f"write NAME@PROFILE")
    return hits[0]


def _split_ref(ref: str) -> tuple[str, str | None]:
    if "@" in ref:
        name, prof = ref.split("@", 1)
        return name, prof
    return ref, None


def cmd_operad_gamma(args, out: Output) -> int:
    P = operad_from_json(load_json(args.operad))
    name, prof = _split_ref(args.e)
    p = _locate(P, name, prof)
    refs = [] if not args.a else _split_args(args.a)
    pieces = []
    for ref in refs:
        n, pr = _split_ref(ref)
        pieces.append((_locate(P, n, pr), n))
    r, z = gamma(P, p, name, pieces)
    out.data.update({"element": z, "profile": str(r)})
    out.line(f"{z} in {r}")
    return 0


def _split_args(text: str) -> list[str]:
    """Split on commas that are not inside a profile's parentheses."""
    parts, depth, cur = [], 0, ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append(cur)
            cur = ""
        else:
            cur += ch
    parts.append(cur)
    return [p.strip() for p in parts]


def _emit_operad(out: Output, P) -> int:
    doc = operad_to_json(P)
    out.data.update(doc)
    out.lines.extend(dump_json(doc).splitlines())
    return 0


def cmd_operad_from_monoid(args, out: Output) -> int:
    return _emit_operad(out, operad_from_monoid(monoid_from_json(load_json(args.monoid)), args.colour))


def cmd_operad_ass(args, out: Output) -> int:
    return _emit_operad(out, ass_truncated(args.max_arity, args.colour))


def cmd_operad_terminal(args, out: Output) -> int:
    return _emit_operad(out, terminal_operad(_colours(args.colours), args.max_arity))


# ---------------------------------------------------------------------- free

def cmd_free_enumerate(args, out: Output) -> int:
    K = collection_from_json(load_json(args.collection))
    report = validate_collection(K)
    if not report.ok:
        return _report(out, report)
    b = parse_profile(args.boundary)
    unknown = sorted(set(b.inputs + (b.output,)) - set(K.colours))
    if unknown:
        raise FormatError(f"boundary uses colours not in the collection: {', '.join(unknown)}")
    found = free_elements(K, b, args.max_vertices)
    if args.exact:
        found = [d for d in found if dvertex_count(d) == args.max_vertices]
    texts = [serialize_decorated(d) for d in found]
    out.data.update({"count": len(texts), "elements": texts})
    out.lines.extend(texts)
    return 0


# ------------------------------------------------------------------- algebra

def _load_algebra(path: str):
    return algebra_from_json(load_json(path), Path(path).parent)


def cmd_algebra_verify(args, out: Output) -> int:
    A = _load_algebra(args.algebra)
    report = verify_operad(A.operad)
    report.extend(verify_algebra(A))
    report.support = A.operad.support_summary()
    return _report(out, report)


def cmd_algebra_map_check(args, out: Output) -> int:
    A, B = _load_algebra(args.source), _load_algebra(args.target)
    f = map_from_json(load_json(args.map))
    if A.operad.profiles != B.operad.profiles:
        raise FormatError("the two algebras are over operads with different supports")
    report = Report()
    for label, alg in (("source", A), ("target", B)):
        sub = verify_algebra(alg)
        sub.violations = [f"{label}: {v}" for v in sub.violations]
        report.extend(sub)
    if report.ok:
        report.extend(verify_algebra_map(A, B, f))
    report.support = A.operad.support_summary()
    return _report(out, report)


# ----------------------------------------------------------------- roundtrip

def cmd_roundtrip(args, out: Output) -> int:
    Q = operad_from_json(load_json(args.operad))
    cap = None if args.max_labellings <= 0 else args.max_labellings
    return _report(out, roundtrip_report(Q, args.max_vertices, cap))


# -------------------------------------------------------------------- parser

def _nonneg(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json"], default="text")

    parser = argparse.ArgumentParser(prog="operad-forge", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    top = parser.add_subparsers(dest="command", required=True)

    tree = top.add_parser("tree", help="numbered coloured trees").add_subparsers(dest="sub", required=True)
    p = tree.add_parser("check", parents=[common], help="validate a tree and print its profile")
    p.add_argument("tree", nargs="?")
    p.add_argument("-f", "--file")
    p.add_argument("--colours")
    p.set_defaults(run=cmd_tree_check)

    sc = top.add_parser("sc", help="the operad of trees").add_subparsers(dest="sub", required=True)
    p = sc.add_parser("compose", parents=[common], help="substitute trees for vertices 1..n")
    p.add_argument("tree")
    p.add_argument("--with", dest="with_", action="append", metavar="TREE")
    p.set_defaults(run=cmd_sc_compose)
    p = sc.add_parser("circ", parents=[common], help="substitute one tree for vertex i")
    p.add_argument("tree")
    p.add_argument("-i", type=int, required=True)
    p.add_argument("other")
    p.set_defaults(run=cmd_sc_circ)
    p = sc.add_parser("act", parents=[common], help="renumber vertices by a permutation")
    p.add_argument("tree")
    p.add_argument("--perm", required=True, help="images, e.g. 2,1,3")
    p.set_defaults(run=cmd_sc_act)
    p = sc.add_parser("enumerate", parents=[common], help="list a component")
    p.add_argument("--profiles", required=True, help='vertex profiles, e.g. "(a,b;c);(b,b;a)"')
    p.add_argument("--boundary", required=True)
    p.add_argument("--colours")
    p.set_defaults(run=cmd_sc_enumerate)

    op = top.add_parser("operad", help="finite operads").add_subparsers(dest="sub", required=True)
    p = op.add_parser("verify", parents=[common], help="check every operad law on the support")
    p.add_argument("operad")
    p.set_defaults(run=cmd_operad_verify)
    p = op.add_parser("gamma", parents=[common], help="full composition of stored elements")
    p.add_argument("operad")
    p.add_argument("-e", required=True, help="outer element, NAME or NAME@PROFILE")
    p.add_argument("-a", default="", help="comma-separated arguments, each NAME or NAME@PROFILE")
    p.set_defaults(run=cmd_operad_gamma)
    p = op.add_parser("from-monoid", parents=[common], help="the operad of a monoid")
    p.add_argument("monoid")
    p.add_argument("--colour", default="c")
    p.set_defaults(run=cmd_operad_from_monoid)
    p = op.add_parser("ass", parents=[common], help="the associative operad, truncated")
    p.add_argument("--max-arity", type=int, required=True)
    p.add_argument("--colour", default="c")
    p.set_defaults(run=cmd_operad_ass)
    p = op.add_parser("terminal", parents=[common], help="the terminal operad, truncated")
    p.add_argument("--colours", required=True)
    p.add_argument("--max-arity", type=int, required=True)
    p.set_defaults(run=cmd_operad_terminal)

    fr = top.add_parser("free", help="free operads").add_subparsers(dest="sub", required=True)
    p = fr.add_parser("enumerate", parents=[common], help="classes of decorated trees")
    p.add_argument("collection")
    p.add_argument("--boundary", required=True)
    p.add_argument("--max-vertices", type=_nonneg, required=True)
    p.add_argument("--exact", action="store_true", help="only trees with exactly that many vertices")
    p.set_defaults(run=cmd_free_enumerate)

    al = top.add_parser("algebra", help="algebras over finite operads").add_subparsers(dest="sub", required=True)
    p = al.add_parser("verify", parents=[common])
    p.add_argument("algebra")
    p.set_defaults(run=cmd_algebra_verify)
    p = al.add_parser("map-check", parents=[common])
    p.add_argument("source")
    p.add_argument("target")
    p.add_argument("map")
    p.set_defaults(run=cmd_algebra_map_check)

    p = top.add_parser("roundtrip", parents=[common], help="operad to tree action and back")
    p.add_argument("operad")
    p.add_argument("--max-vertices", type=_nonneg, required=True)
    p.add_argument("--max-labellings", type=int, default=32,
                   help="element labellings checked per tree, sampled beyond this (0: all)")
    p.set_defaults(run=cmd_roundtrip)
    return parser


def run(argv: Sequence[str], stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    out = Output(args.format)
    handler: Callable = args.run
    try:
        code = handler(args, out)
    except TreeSyntaxError as exc:
        return _error(out, stdout, stderr, "syntax", str(exc))
    except INPUT_ERRORS as exc:
        return _error(out, stdout, stderr, type(exc).__name__, str(exc))
    stdout.write(out.render())
    return code


def _error(out: Output, stdout, stderr, kind: str, message: str) -> int:
    if out.fmt == "json":
        stdout.write(json.dumps({"ok": False, "error": kind, "message": message}, indent=2) + "\n")
    else:
        stderr.write(f"error: {message}\n")
    return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))
