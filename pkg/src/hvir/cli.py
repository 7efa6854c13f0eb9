"""Command-line front end.

Verbs: bracket, jacobi, act, classify, iso, phi, closure, scan,
restrict, recover.  Text output is the default; ``--structured`` prints
a JSON report whose keys appear in a fixed documented order (params,
window, verdict, dimensions, basisIndices, cosets, then verb-specific
extras).  All outputs are deterministic: identical invocations print
identical bytes, and the CLI keeps no state between runs.

Errors are reported as ``error[<code>]: <message>`` on stderr with exit
status 1; usage errors exit with status 2.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from itertools import combinations

from .algebra import (
    CD,
    CDI,
    CI,
    CENTERLESS,
    EXACT_CENTRAL,
    I,
    RescalingMap,
    apply_phi,
    bracket,
    d,
    jacobiator,
)
from .analysis import (
    Window,
    closure,
    recover_params,
    restriction_report,
    scan_details,
)
from .errors import HvirError, ParseError
from .groups import Cyclic, qk
from .intermediate import act, basis_vector, classify, iso_check
from .parsing import parse_element, parse_group, parse_params, parse_rational, parse_table

_REPORT_KEYS = ("params", "window", "verdict", "dimensions", "basisIndices", "cosets")


def _report(extras=None, **fields):
    report = {key: fields.get(key) for key in _REPORT_KEYS}
    for key, value in (extras or {}).items():
        report[key] = value
    return json.dumps(report, indent=2)


def _emit(args, text_lines, **report_fields):
    if args.structured:
        print(_report(**report_fields))
    else:
        for line in text_lines:
            print(line)


def _window_for(params, bound):
    if not isinstance(params.group, Cyclic):
        raise ValueError("windows require a cyclic index group, got %s" % params.group)
    return Window(params.group, bound)


def _cmd_bracket(args):
    result = bracket(parse_element(args.left), parse_element(args.right))
    _emit(args, [str(result)], extras={"element": str(result)})
    return 0


def _basis_keys(window):
    keys = [d(g) for g in window.indices()]
    keys += [I(g) for g in window.indices()]
    keys += [CD, CDI, CI]
    return keys


def _cmd_jacobi(args):
    try:
        k_text, bound_text = args.window.split(":", 1)
        k, bound = int(k_text), int(bound_text)
    except ValueError:
        raise ParseError("jacobi window must be <k>:<bound> with integers")
    window = Window(qk(k), bound)
    keys = _basis_keys(window)
    triples = combinations(keys, 3)
    if args.samples is not None:
        rng = random.Random(args.seed)
        pool = list(combinations(range(len(keys)), 3))
        chosen = rng.sample(pool, min(args.samples, len(pool)))
        triples = ((keys[i], keys[j], keys[l]) for i, j, l in chosen)
    checked = 0
    for x, y, z in triples:
        value = jacobiator(x, y, z)
        if not value.is_zero():
            print("jacobi FAILED on (%s, %s, %s): %s" % (x, y, z, value))
            return 1
        checked += 1
    _emit(args, ["jacobi: OK (%d triples checked)" % checked],
          window=str(window), extras={"checked": checked})
    return 0


def _cmd_act(args):
    params = parse_params(args.params)
    element = parse_element(args.element)
    vector = basis_vector(params, parse_rational(args.at))
    result = act(params, element, vector)
    _emit(args, [str(result)], params=str(params), extras={"vector": str(result)})
    return 0


def _cmd_classify(args):
    params = parse_params(args.params)
    result = classify(params)
    _emit(
        args,
        ["verdict: %s" % result.verdict, "subquotient: %s" % result.subquotient_note],
        params=str(params),
        verdict=result.verdict,
        extras={"note": result.subquotient_note},
    )
    return 0


def _cmd_iso(args):
    p1 = parse_params(args.left)
    p2 = parse_params(args.right)
    flag, shift = iso_check(p1, p2)
    lines = ["isomorphic: %s" % ("true" if flag else "false")]
    if flag:
        lines.append("witness: %s" % shift)
    _emit(
        args,
        lines,
        params=str(p1),
        extras={
            "other": str(p2),
            "isomorphic": flag,
            "witness": str(shift) if flag else None,
        },
    )
    return 0


def _cmd_phi(args):
    variant = EXACT_CENTRAL if args.variant == "exact" else CENTERLESS
    rescaling = RescalingMap(args.m, variant)
    result = apply_phi(rescaling, parse_element(args.element))
    _emit(args, [str(result)], extras={"element": str(result)})
    return 0


def _parse_seeds(text):
    return [parse_rational(part) for part in text.split(",") if part != ""]


def _cmd_closure(args):
    params = parse_params(args.params)
    window = _window_for(params, args.window)
    seeds = [basis_vector(params, q) for q in _parse_seeds(args.seed)]
    if not seeds:
        raise ParseError("closure needs at least one seed index")
    span = closure(params, window, seeds)
    pivots = [str(p) for p in span.pivots()]
    _emit(
        args,
        [
            "dimension: %d" % span.dimension,
            "window size: %d" % window.size,
            "indices: %s" % ", ".join(pivots),
        ],
        params=str(params),
        window=str(window),
        dimensions={"span": span.dimension, "window": window.size},
        basisIndices=pivots,
    )
    return 0


def _cmd_scan(args):
    params = parse_params(args.params)
    window = _window_for(params, args.window)
    classification, dims, proper = scan_details(params, window)
    dims_text = ", ".join("%s:%d" % (q, dim) for q, dim in sorted(dims.items()))
    lines = [
        "verdict: %s" % classification.verdict,
        "note: %s" % classification.subquotient_note,
        "dimensions: %s" % dims_text,
    ]
    _emit(
        args,
        lines,
        params=str(params),
        window=str(window),
        verdict=classification.verdict,
        dimensions={str(q): dim for q, dim in sorted(dims.items())},
        basisIndices=None if proper is None else [str(p) for p in proper],
        extras={"note": classification.subquotient_note},
    )
    return 0


def _cmd_restrict(args):
    params = parse_params(args.params)
    window = _window_for(params, args.window)
    subgroup = parse_group(args.subgroup)
    report = restriction_report(params, subgroup, window)
    lines = ["%s -> %s" % (rep, sub_params) for rep, sub_params in report]
    _emit(
        args,
        lines,
        params=str(params),
        window=str(window),
        cosets=[{"rep": str(rep), "params": str(p)} for rep, p in report],
    )
    return 0


def _cmd_recover(args):
    with open(args.table, "r", encoding="utf-8") as handle:
        table = parse_table(handle.read())
    params, scales = recover_params(table)
    scale_text = ", ".join("%s=%s" % (q, c) for q, c in sorted(scales.items()))
    _emit(
        args,
        ["params: %s" % params, "scales: %s" % scale_text],
        params=str(params),
        window=str(table.window),
        extras={"scales": {str(q): str(c) for q, c in sorted(scales.items())}},
    )
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="hvir",
        description="Exact computations in the rational Heisenberg-Virasoro "
        "algebras and their intermediate-series modules.",
    )
    parser.add_argument(
        "--structured",
        action="store_true",
        help="emit a JSON report with a fixed key order instead of text",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("bracket", help="bracket of two elements")
    p.add_argument("left")
    p.add_argument("right")
    p.set_defaults(handler=_cmd_bracket)

    p = sub.add_parser("jacobi", help="verify the Jacobi identity on a window")
    p.add_argument("--window", required=True, metavar="K:BOUND")
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(handler=_cmd_jacobi)

    p = sub.add_parser("act", help="act an element on a basis vector")
    p.add_argument("params")
    p.add_argument("element")
    p.add_argument("--at", required=True, metavar="INDEX")
    p.set_defaults(handler=_cmd_act)

    p = sub.add_parser("classify", help="reducibility verdict for module parameters")
    p.add_argument("params")
    p.set_defaults(handler=_cmd_classify)

    p = sub.add_parser("iso", help="isomorphism test for two parameter sets")
    p.add_argument("left")
    p.add_argument("right")
    p.set_defaults(handler=_cmd_iso)

    p = sub.add_parser("phi", help="apply the index rescaling map")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--variant", choices=("exact", "centerless"), required=True)
    p.add_argument("element")
    p.set_defaults(handler=_cmd_phi)

    p = sub.add_parser("closure", help="submodule closure of seed vectors")
    p.add_argument("params")
    p.add_argument("--window", type=int, required=True, metavar="BOUND")
    p.add_argument("--seed", required=True, metavar="INDEX[,INDEX]*")
    p.set_defaults(handler=_cmd_closure)

    p = sub.add_parser("scan", help="empirical reducibility scan")
    p.add_argument("params")
    p.add_argument("--window", type=int, required=True, metavar="BOUND")
    p.set_defaults(handler=_cmd_scan)

    p = sub.add_parser("restrict", help="coset decomposition along a subgroup")
    p.add_argument("params")
    p.add_argument("--subgroup", required=True, metavar="GROUPSPEC")
    p.add_argument("--window", type=int, required=True, metavar="BOUND")
    p.set_defaults(handler=_cmd_restrict)

    p = sub.add_parser("recover", help="recover parameters from a table file")
    p.add_argument("--table", required=True, metavar="FILE")
    p.set_defaults(handler=_cmd_recover)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except HvirError as exc:
        print("error[%s]: %s" % (exc.code, exc), file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print("error[invalid-input]: %s" % exc, file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
