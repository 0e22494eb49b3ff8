"""Command-line entry point.  Exit codes: 0 ok, 1 a law check failed, 2 usage error."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .batanin import btree as bt
from .batanin.globset import GlobSet, StrictOps
from .batanin.kgen import generate_K, generate_K_n, kcell_to_json
from .batanin.operad import TerminalOperad, check_algebra_table, check_operad, terminal_algebra_table
from .finbase import FinMap, FinSet, SliceObj
from .monadkit import get_instance, check_cartesian, check_monad_laws
from .multicat import (AlgebraStr, Multicat, algebra_structures, algebra_to_opfibration, category_multicat,
                       check_multicategory, terminal_multicategory)
from .opetopia import ptree
from .opetopia.pd import PdMorphism, pd_compose, pd_hom
from .opetopia.slicing import slice_by_algebra, slice_plus
from .opetopia.tower import Opetope, opetopes, payload_from_json
from .render import render

DEFAULT_BOUND = 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _bounds(p: argparse.ArgumentParser, dim=False, size=False, bound=False):
    if dim is not False:
        p.add_argument("--dim", type=int, required=dim == "required", default=None if dim == "required" else dim)
    if size:
        p.add_argument("--max-size", type=int, default=DEFAULT_BOUND)
    if bound:
        p.add_argument("--bound", type=int, default=DEFAULT_BOUND)


def _json_arg(text: str):
    """Inline JSON, '-' for stdin, or @path."""
    if text == "-":
        return json.load(sys.stdin)
    if text.startswith("@"):
        return json.loads(Path(text[1:]).read_text())
    return json.loads(text)


def build_parser() -> argparse.ArgumentParser:
    top = _Parser(prog="opetope-forge", description="Desk-scale higher-category constructions.")
    top.add_argument("--out", help="write output to FILE instead of stdout")
    sub = top.add_subparsers(dest="cmd", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("opetopes", help="enumerate n-opetopes")
    _bounds(p, dim="required", size=True)

    trees = sub.add_parser("trees", help="planar trees and the category of trees")
    tsub = trees.add_subparsers(dest="action", parser_class=_Parser)
    tsub.required = True
    p = tsub.add_parser("enumerate")
    _bounds(p, size=True)
    p = tsub.add_parser("graft")
    p.add_argument("--tree", required=True)
    p.add_argument("--parts", required=True, help="JSON list, one tree per leaf")
    p = tsub.add_parser("hom")
    p.add_argument("--dom", required=True)
    p.add_argument("--cod", required=True)
    _bounds(p, dim=2)
    p.add_argument("--contraction-only", action="store_true")
    p = tsub.add_parser("compose", help="g . f of two pd morphisms given as JSON")
    p.add_argument("--g", required=True)
    p.add_argument("--f", required=True)

    btrees = sub.add_parser("btrees", help="Batanin trees")
    bsub = btrees.add_subparsers(dest="action", parser_class=_Parser)
    bsub.required = True
    p = bsub.add_parser("enumerate")
    _bounds(p, dim="required", size=True)
    p = bsub.add_parser("boundary")
    p.add_argument("--tree", required=True)
    _bounds(p, dim=None)
    p = bsub.add_parser("subst")
    p.add_argument("--tree", required=True)
    _bounds(p, dim=None)
    p.add_argument("--labels", required=True, help="JSON list of trees, one per maximal glob cell")

    check = sub.add_parser("check", help="bounded law checks")
    csub = check.add_subparsers(dest="action", parser_class=_Parser)
    csub.required = True
    p = csub.add_parser("monad")
    p.add_argument("--instance", required=True)
    p.add_argument("--set-size", type=int, default=2)
    _bounds(p, bound=True)
    p = csub.add_parser("cartesian")
    p.add_argument("--instance", required=True)
    p.add_argument("--map", default="2to1", help="AtoB: the map i -> min(i, B-1) from A atoms to B atoms")
    _bounds(p, bound=True)
    p = csub.add_parser("multicat")
    p.add_argument("--instance", help="terminal multicategory of this monad")
    p.add_argument("--input", help="multicategory JSON (inline, @file or -)")
    _bounds(p, bound=True)
    p = csub.add_parser("operad", help="laws of the terminal operad or a K fragment")
    p.add_argument("--instance", choices=("terminal", "k"), default="terminal")
    _bounds(p, dim=2, size=True)
    p.add_argument("--gen-bound", type=int, default=1)
    p = csub.add_parser("algebra", help="strict 2-category on two objects as a terminal-operad algebra")
    _bounds(p, size=True)
    p.add_argument("--corrupt", action="store_true", help="flip one table entry")

    k = sub.add_parser("k", help="bounded generation of K and K_n")
    ksub = k.add_subparsers(dest="action", parser_class=_Parser)
    ksub.required = True
    for name in ("generate", "count"):
        p = ksub.add_parser(name)
        _bounds(p, dim=1, size=True)
        p.add_argument("--gen-bound", type=int, default=2)
        p.add_argument("--binary-only", action="store_true", help="only the contraction over the 2-edge path")
        p.add_argument("--truncate", action="store_true", help="identify parallel top cells (K_n, n = --dim)")

    sl = sub.add_parser("slice", help="slice multicategories")
    ssub = sl.add_subparsers(dest="action", parser_class=_Parser)
    ssub.required = True
    p = ssub.add_parser("plus")
    p.add_argument("--input", help="category JSON (identity monad); default Z/2")
    _bounds(p, bound=True)
    p = ssub.add_parser("by-algebra")
    p.add_argument("--set-size", type=int, default=2)
    p.add_argument("--index", type=int, default=0, help="which Z/2-algebra on the carrier")

    p = sub.add_parser("render")
    p.add_argument("--kind", choices=("ptree", "btree", "opetope", "globset"), required=True)
    p.add_argument("--input", required=True)
    _bounds(p, dim=None)
    p.add_argument("--format", choices=("ascii", "dot"), default="ascii")
    return top


# -- helpers ---------------------------------------------------------------------------

def z2() -> Multicat:
    return category_multicat(["*"], {0: ("*", "*"), 1: ("*", "*")}, {"*": 0}, lambda g, f: (g + f) % 2)


def _parse_map(text: str) -> FinMap:
    try:
        a, b = (int(x) for x in text.split("to"))
    except ValueError:
        raise UsageError(f"--map expects AtoB, got {text!r}") from None
    if a < 0 or b < 1:
        raise UsageError("--map needs A >= 0 and B >= 1")
    A, B = FinSet.range(a), FinSet.range(b)
    return FinMap.from_function(A, B, lambda i: min(i, b - 1))


def _btree(data, stage):
    return bt.from_json(data, stage)


def two_objects_globset() -> tuple[GlobSet, StrictOps]:
    """The codiscrete-on-2-cells 2-category with objects a, b and 1-cells (x, y, k), k in Z/2."""
    objs = ["a", "b"]
    c1 = [(x, y, k) for x in objs for y in objs for k in (0, 1)]
    c2 = [(f, g) for f in c1 for g in c1 if f[:2] == g[:2]]
    X = GlobSet(2, (objs, c1, c2), ({f: f[0] for f in c1}, {c: c[0] for c in c2}),
                ({f: f[1] for f in c1}, {c: c[1] for c in c2}))

    def comp(k, a, b):
        if isinstance(a[0], str):
            return (a[0], b[1], (a[2] + b[2]) % 2)
        if k == 0:
            return (comp(0, a[0], b[0]), comp(0, a[1], b[1]))
        return (a[0], b[1])

    def ident(x):
        return (x, x, 0) if isinstance(x, str) else (x, x)

    return X, StrictOps(comp, ident)


def _status(ok: bool, text: str) -> tuple[int, str]:
    return (0 if ok else 1), text


# -- dispatch ----------------------------------------------------------------------------

def dispatch(args) -> tuple[int, str]:
    cmd = args.cmd
    if cmd == "opetopes":
        if args.dim < 0:
            raise UsageError("--dim must be non-negative")
        return 0, json.dumps([o.to_json()["payload"] for o in opetopes(args.dim, args.max_size)])

    if cmd == "trees":
        if args.action == "enumerate":
            return 0, json.dumps([ptree.to_json(o.payload) for o in opetopes(3, args.max_size)])
        if args.action == "graft":
            t = ptree.from_json(_json_arg(args.tree))
            parts = [ptree.from_json(x) for x in _json_arg(args.parts)]
            return 0, json.dumps(ptree.to_json(ptree.graft(t, parts)))
        if args.action == "hom":
            d = args.dim + 1
            dom = payload_from_json(d, _json_arg(args.dom))
            cod = payload_from_json(d, _json_arg(args.cod))
            hs = pd_hom(args.dim, dom, cod, args.contraction_only)
            return 0, json.dumps([h.to_json() for h in hs])
        g = PdMorphism.from_json(_json_arg(args.g))
        f = PdMorphism.from_json(_json_arg(args.f))
        return 0, json.dumps(pd_compose(g.n, g, f).to_json())

    if cmd == "btrees":
        if args.action == "enumerate":
            return 0, json.dumps([t.to_json() for t in bt.trees(args.dim, args.max_size)])
        t = _btree(_json_arg(args.tree), args.dim)
        if args.action == "boundary":
            return 0, json.dumps(bt.boundary(t).to_json())
        maxc = bt.maximal_cells(t)
        raw = _json_arg(args.labels)
        if len(raw) != len(maxc):
            raise UsageError(f"{len(maxc)} labels needed, one per maximal cell")
        dims = bt.glob_index(t)
        labels = {c: _btree(x, dims[c][0]) for c, x in zip(maxc, raw)}
        return 0, json.dumps(bt.substitute(t, labels)[0].to_json())

    if cmd == "check":
        return _check(args)

    if cmd == "k":
        filt = None
        if args.binary_only:
            two = bt.BTree(1, (0, 0))
            filt = lambda g: g.tree == two  # noqa: E731
        if args.truncate:
            frag = generate_K_n(args.dim, args.max_size, args.gen_bound, filt)
            cells = [x for t in frag.trees() for x in frag.cells(t)]
        else:
            frag = generate_K(args.dim, args.max_size, args.gen_bound, filt)
            cells = frag.all_cells()
        if args.action == "count":
            out = [{"tree": t.to_json(), "stage": t.stage, "count": len(frag.cells(t))} for t in frag.trees()]
            return 0, json.dumps(out)
        shape = frag.shape
        return 0, json.dumps([{"tree": shape(x).to_json(), "stage": shape(x).stage, "cell": kcell_to_json(x)}
                              for x in cells])

    if cmd == "slice":
        if args.action == "plus":
            C = Multicat.from_json(_json_arg(args.input)) if args.input else z2()
            S = slice_plus(C, args.bound)
            out = [{"inputs": [str(a) for a in S.inputs(e)], "output": str(e[1])} for e in S.arrows]
            return 0, json.dumps(out)
        C = z2()
        if args.set_size < 1:
            raise UsageError("--set-size must be positive")
        X = SliceObj.from_function(FinSet.range(args.set_size), C.C0, lambda _: "*")
        structs = algebra_structures(C, X)
        if not 0 <= args.index < len(structs):
            raise UsageError(f"--index must be below {len(structs)}")
        _, f = algebra_to_opfibration(C, AlgebraStr(C, X, structs[args.index]))
        return 0, json.dumps(slice_by_algebra(C, f).to_json())

    # render
    data = _json_arg(args.input)
    if args.kind == "ptree":
        obj = ptree.from_json(data)
    elif args.kind == "btree":
        obj = _btree(data, args.dim)
    elif args.kind == "opetope":
        obj = Opetope.from_json(data)
    else:
        obj = GlobSet.from_json(data)
    return 0, render(obj, args.format)


def _check(args) -> tuple[int, str]:
    a = args.action
    if a in ("monad", "cartesian", "multicat") and args.bound < 0:
        raise UsageError("--bound must be non-negative")
    if a == "monad":
        rep = check_monad_laws(get_instance(args.instance), FinSet.range(args.set_size), args.bound)
        return _status(rep.passed, rep.summary())
    if a == "cartesian":
        rep = check_cartesian(get_instance(args.instance), _parse_map(args.map), args.bound)
        return _status(rep.passed, rep.summary())
    if a == "multicat":
        if args.input:
            C = Multicat.from_json(_json_arg(args.input))
        elif args.instance:
            C = terminal_multicategory(get_instance(args.instance), args.bound)
        else:
            raise UsageError("give --instance or --input")
        rep = check_multicategory(C)
        return _status(rep.passed, rep.summary())
    if a == "operad":
        if args.instance == "terminal":
            op = TerminalOperad(args.dim, args.max_size)
        else:
            op = generate_K(args.dim, args.max_size, args.gen_bound)
        problems = check_operad(op)
        return _status(not problems, "PASS" if not problems else f"FAIL: {problems[0]}")
    X, ops = two_objects_globset()
    op = TerminalOperad(2, args.max_size)
    table = terminal_algebra_table(op, X, ops)
    if args.corrupt:
        key = next(k for k in sorted(table, key=lambda k: (k[0].sort_key(), repr(k[1])))
                   if k[0].stage == 1 and k[0].size == 2)
        v = table[key]
        table[key] = (v[0], v[1], 1 - v[2])
    problems = check_algebra_table(op, X, table)
    return _status(not problems, "PASS" if not problems else f"FAIL: {problems[0]}")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        code, text = dispatch(args)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return 2
    except (ValueError, KeyError, json.JSONDecodeError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    if args.out:
        Path(args.out).write_text(text + "\n")
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
