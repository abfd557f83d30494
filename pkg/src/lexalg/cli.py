"""Command line front end; every subcommand prints one JSON report.

Exit codes: 0 on success, 1 when an internal consistency check fails,
2 on bad user input (parse errors, budget, unsupported orders).
"""
from __future__ import annotations

import argparse
import json
import math
import sys

from . import __version__
from .algebra_core import DigraphAlgebra, radical_combinatorial, radical_trace_oracle, span_equal
from .exceptions import LexalgError
from .lex_tower import build_chain
from .limit_analysis import (
    find_link,
    split_point,
    has_elementary_radical_decomposition,
    is_semisimple,
    limit_radical_member,
    quotient_structure,
)
from .order_calculus import (
    classify_iso,
    format_order,
    interval_decomposition,
    normalize,
    parse_order,
    segments,
    wois_split_weighted,
)


class InvariantViolation(Exception):
    pass


def format_expr(expr):
    names = {"OmegaPlus": "w", "OmegaMinus": "w*", "Zeta": "z", "Eta": "q"}
    return " + ".join(str(t.k) if type(t).__name__ == "Finite" else names[type(t).__name__]
                      for t in segments(expr))


def _report(command, inputs, result):
    return {"command": command, "input": inputs, "result": result, "tool_version": __version__}


def cmd_stage(order, depth, budget=None):
    w = parse_order(order)
    chain = build_chain(w, depth, budget)
    stages = [{"index": k, "n_F": s.n_f, "edges": s.edge_count(),
               "positions": [p.to_json() for p in s.positions], "mults": list(s.mults)}
              for k, s in enumerate(chain)]
    return _report("stage", {"order": format_order(w), "depth": depth},
                   {"sizes": [s.n_f for s in chain], "stages": stages})


def cmd_radical(order, depth, budget=None):
    w = parse_order(order)
    chain = build_chain(w, depth, budget)
    rows = []
    for k, s in enumerate(chain):
        q = quotient_structure(w, s)
        if q.radical_dimension + q.quotient_dimension != q.dimension:
            raise InvariantViolation(f"stage {k}: radical and quotient do not add up")
        n1 = math.prod(s.mults[:split_point(w, s)])
        rows.append({"index": k, "n_F": s.n_f,
                     "limit_radical_dimension": q.radical_dimension,
                     "quotient_dimension": q.quotient_dimension,
                     "stage_radical_dimension": q.stage_radical_dimension,
                     "quotient_blocks": [s.n_f // n1] * n1})
    return _report("radical", {"order": format_order(w), "depth": depth},
                   {"limit_radical_dimensions": [r["limit_radical_dimension"] for r in rows],
                    "stages": rows})


def cmd_semisimple(order):
    w = parse_order(order)
    head, tail = wois_split_weighted(w)
    return _report("semisimple", {"order": format_order(w)}, {
        "semisimple": is_semisimple(w),
        "elementary_decomposition": has_elementary_radical_decomposition(w),
        "wois": {"initial": None if head is None else format_order(head),
                 "remainder": None if tail is None else format_order(tail)},
    })


def cmd_classify(order_a, order_b):
    a, b = parse_order(order_a), parse_order(order_b)
    return _report("classify", {"order_a": format_order(a), "order_b": format_order(b)}, {
        "isomorphic": classify_iso(a, b),
        "decompositionA": [iv.to_json() for iv in interval_decomposition(a)],
        "decompositionB": [iv.to_json() for iv in interval_decomposition(b)],
    })


def cmd_decompose(order):
    w = parse_order(order)
    return _report("decompose", {"order": format_order(w)}, {
        "normalized": format_expr(normalize(w.expr)),
        "intervals": [iv.to_json() for iv in interval_decomposition(w)],
    })


def cmd_links(order, depth, horizon, budget=None):
    w = parse_order(order)
    chain = build_chain(w, depth, budget)
    first = chain[0]
    units = []
    for r, c in first.algebra.strict_edges():
        rec = find_link(w, chain, 0, (r, c), horizon)
        units.append({"unit": {"row": r, "col": c,
                               "row_label": list(first.label(r)),
                               "col_label": list(first.label(c))},
                      "link": None if rec is None else rec.to_json(),
                      "radical": limit_radical_member(w, first, (r, c)).to_json()})
    linked = sum(u["link"] is not None for u in units)
    return _report("links", {"order": format_order(w), "depth": depth, "horizon": horizon},
                   {"strict_units": len(units), "linked": linked, "units": units})


def cmd_oracle(data):
    a = DigraphAlgebra.from_json(data)
    basis = radical_trace_oracle(a)
    comb = radical_combinatorial(a)
    return _report("oracle", {"relation": a.to_json()}, {
        "oracle_basis": [x.to_json() for x in basis],
        "combinatorial_edges": [list(e) for e in sorted(comb.edges)],
        "agree": span_equal(a, basis, comb.basis()),
    })


def build_parser():
    parser = argparse.ArgumentParser(prog="lexalg", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, depth=False):
        p.add_argument("--order", required=True, help='order expression, e.g. "w*[2] + q[3]"')
        if depth:
            p.add_argument("--depth", type=int, default=3)
            p.add_argument("--budget", type=int, default=None,
                           help="stage size cap (default: $LEXALG_BUDGET or 4096)")
        p.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
        p.add_argument("--pretty", action="store_true")

    common(sub.add_parser("stage", help="stage sizes along the canonical chain"), depth=True)
    common(sub.add_parser("radical", help="radical dimensions per stage"), depth=True)
    common(sub.add_parser("semisimple", help="semisimplicity and radical decomposition"))
    p = sub.add_parser("classify", help="compare two orders for isomorphism")
    common(p)
    p.add_argument("--other", required=True)
    p = sub.add_parser("links", help="link search for the first stage's strict units")
    common(p, depth=True)
    p.add_argument("--horizon", type=int, default=1)
    common(sub.add_parser("decompose", help="maximal interval decomposition"))
    p = sub.add_parser("oracle", help="trace-form radical of a serialized relation")
    p.add_argument("--relation", required=True, help="JSON file, or - for stdin")
    p.add_argument("--pretty", action="store_true")
    return parser


def _dispatch(args):
    if args.command == "stage":
        return cmd_stage(args.order, args.depth, args.budget)
    if args.command == "radical":
        return cmd_radical(args.order, args.depth, args.budget)
    if args.command == "semisimple":
        return cmd_semisimple(args.order)
    if args.command == "classify":
        return cmd_classify(args.order, args.other)
    if args.command == "links":
        return cmd_links(args.order, args.depth, args.horizon, args.budget)
    if args.command == "decompose":
        return cmd_decompose(args.order)
    if args.relation == "-":
        data = json.load(sys.stdin)
    else:
        with open(args.relation, encoding="utf-8") as fh:
            data = json.load(fh)
    return cmd_oracle(data)


def _emit(payload, pretty, stream):
    stream.write(json.dumps(payload, indent=2 if pretty else None) + "\n")


def main(argv=None, stdout=None):
    stdout = stdout or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        report = _dispatch(args)
    except (LexalgError, OSError, json.JSONDecodeError, KeyError) as exc:
        _emit({"command": args.command, "error": {"type": type(exc).__name__,
                                                  "message": str(exc)},
               "tool_version": __version__}, args.pretty, stdout)
        return 2
    except InvariantViolation as exc:
        _emit({"command": args.command, "error": {"type": "InvariantViolation",
                                                  "message": str(exc)},
               "tool_version": __version__}, args.pretty, stdout)
        return 1
    _emit(report, args.pretty, stdout)
    return 0


if __name__ == "__main__":
    sys.exit(main())
