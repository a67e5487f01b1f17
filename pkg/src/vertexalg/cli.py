"""Command-line surface.

Exit codes: 0 all checks pass, 1 a check or computation reports failure,
2 usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .coefficients import CoefficientError
from .core import VAError
from .deffiles import DefinitionError, build_algebra, load_definition
from .expressions import format_element, parse_element
from .linear import (
    commutant_basis,
    find_relation,
    nongeneric_levels,
    Obstruction,
)
from .suites import SUITES, run_suite


def _load_algebra(spec: str):
    if spec.endswith(".json"):
        definition = load_definition(spec)
        return definition.algebra, definition
    return build_algebra(spec), None


def _resolve(pres, definition, text):
    if definition is not None:
        hit = definition.lookup(text.strip())
        if hit is not None:
            return hit
    return parse_element(pres, text)


def _emit(args, payload, pretty_lines):
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in pretty_lines:
            print(line)


def cmd_define(args) -> int:
    definition = load_definition(args.file)
    P = definition.algebra
    payload = {
        "name": P.name,
        "parameter": P.param,
        "generators": [
            {
                "name": g.name,
                "parity": "odd" if g.parity else "even",
                "weight": str(g.weight),
            }
            for g in P.generators
        ],
        "currents": sorted(definition.currents),
        "elements": sorted(definition.elements),
    }
    lines = [f"algebra {P.name} over Q({P.param})"]
    for g in P.generators:
        lines.append(
            f"  {g.name}: weight {g.weight}, {'odd' if g.parity else 'even'}"
        )
    if definition.currents:
        lines.append("currents: " + ", ".join(sorted(definition.currents)))
    if definition.elements:
        lines.append("elements: " + ", ".join(sorted(definition.elements)))
    _emit(args, payload, lines)
    return 0


def cmd_bracket(args) -> int:
    P, definition = _load_algebra(args.algebra)
    left = _resolve(P, definition, args.left)
    right = _resolve(P, definition, args.right)
    br = P.lambda_bracket(left, right)
    payload = {
        "coefficients": [format_element(c) for c in br.coeffs],
    }
    lines = []
    if br.is_zero():
        lines.append("[left_lambda right] = 0")
    else:
        for n, c in enumerate(br.coeffs):
            if not c.is_zero():
                lines.append(f"lambda^{n}/{n}!:  {format_element(c)}")
    _emit(args, payload, lines)
    return 0


def cmd_nproduct(args) -> int:
    P, definition = _load_algebra(args.algebra)
    left = _resolve(P, definition, args.left)
    right = _resolve(P, definition, args.right)
    out = P.nprod(left, right, args.n)
    _emit(args, {"result": format_element(out)}, [format_element(out)])
    return 0


def cmd_normal_form(args) -> int:
    P, definition = _load_algebra(args.algebra)
    out = _resolve(P, definition, args.expr)
    _emit(args, {"result": format_element(out)}, [format_element(out)])
    return 0


def _parse_actions(P, definition, text):
    actions = []
    for part in text.split(","):
        part = part.strip()
        if part:
            actions.append(_resolve(P, definition, part))
    if not actions:
        raise DefinitionError("no currents given")
    return actions


def cmd_commutant(args) -> int:
    P, definition = _load_algebra(args.algebra)
    currents = _parse_actions(P, definition, args.currents)
    report = commutant_basis(P, currents, Fraction(args.weight))
    payload = report.serialize()
    payload["kernel_elements"] = [format_element(v) for v in report.kernel_elements()]
    lines = [
        f"weight {args.weight}: basis {len(report.basis)}, "
        f"generic kernel dimension {report.kernel_dim}"
    ]
    for v in report.kernel_elements():
        lines.append("  " + format_element(v))
    _emit(args, payload, lines)
    return 0


def cmd_find_relation(args) -> int:
    P, definition = _load_algebra(args.algebra)
    target = _resolve(P, definition, args.target)
    gens = [
        _resolve(P, definition, part)
        for part in args.generators.split(";")
        if part.strip()
    ]
    rel = find_relation(P, target, gens)
    if isinstance(rel, Obstruction):
        _emit(
            args,
            {"obstruction": rel.serialize()},
            [
                "target is not in the span of the words: "
                f"ranks {rel.words_rank} vs {rel.combined_rank}"
            ],
        )
        return 1
    payload = rel.serialize()
    roots, _ = rel.multiplier_roots()
    payload["multiplier_roots"] = sorted(str(r) for r in roots)
    lines = [
        f"multiplier: {rel.multiplier}",
        f"multiplier roots: {sorted(str(r) for r in roots)}",
        f"combination: {format_element(rel.combination)}",
    ]
    _emit(args, payload, lines)
    return 0


def cmd_nongeneric(args) -> int:
    P, definition = _load_algebra(args.algebra)
    currents = _parse_actions(P, definition, args.currents)
    report = commutant_basis(P, currents, Fraction(args.weight))
    ng = nongeneric_levels(report)
    payload = ng.serialize()
    lines = [
        f"certified nongeneric levels: {sorted(str(r) for r in ng.certified)}",
        f"candidates: {sorted(str(r) for r in ng.candidates)}",
        f"poles: {sorted(str(r) for r in ng.poles)}",
    ]
    _emit(args, payload, lines)
    return 0


def cmd_suite(args) -> int:
    report = run_suite(args.name)
    if args.format == "json":
        print(json.dumps(report.serialize(), indent=2, sort_keys=True))
    else:
        print(report.pretty())
    return 0 if report.passed else 1


def cmd_list(args) -> int:
    payload = {
        "suites": sorted(SUITES),
        "constructors": [
            "affine:<lie>@<level>", "heisenberg:<n>", "freefermion:<n>",
            "bc:<n>", "betagamma:<n>", "sympfermion:<n>", "hpairs:<n>",
            "tau:<n>", "sigma:<m>",
        ],
        "builtin_lie": __import__("vertexalg.lie", fromlist=["builtin_names"]).builtin_names(),
    }
    lines = ["suites: " + ", ".join(sorted(SUITES))]
    lines.append("constructors: " + ", ".join(payload["constructors"]))
    lines.append("built-in Lie algebras: " + ", ".join(payload["builtin_lie"]))
    _emit(args, payload, lines)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vertexalg",
        description="Exact symbolic calculus for vertex superalgebras over Q(k).",
    )
    parser.add_argument(
        "--format", choices=["pretty", "json"], default="pretty",
        help="output format",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("define", help="validate and summarize a definition file")
    p.add_argument("--file", required=True)
    p.set_defaults(func=cmd_define)

    p = sub.add_parser("bracket", help="lambda bracket of two expressions")
    p.add_argument("--algebra", required=True)
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.set_defaults(func=cmd_bracket)

    p = sub.add_parser("nproduct", help="n-th product of two expressions")
    p.add_argument("--algebra", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.set_defaults(func=cmd_nproduct)

    p = sub.add_parser("normal-form", help="canonical form of an expression")
    p.add_argument("--algebra", required=True)
    p.add_argument("--expr", required=True)
    p.set_defaults(func=cmd_normal_form)

    p = sub.add_parser("commutant", help="weight-graded commutant solve")
    p.add_argument("--algebra", required=True)
    p.add_argument("--currents", required=True, help="comma-separated expressions")
    p.add_argument("--weight", required=True)
    p.set_defaults(func=cmd_commutant)

    p = sub.add_parser("find-relation", help="express a target through words")
    p.add_argument("--algebra", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--generators", required=True, help="semicolon-separated expressions")
    p.set_defaults(func=cmd_find_relation)

    p = sub.add_parser("nongeneric", help="nongeneric levels of a commutant solve")
    p.add_argument("--algebra", required=True)
    p.add_argument("--currents", required=True)
    p.add_argument("--weight", required=True)
    p.set_defaults(func=cmd_nongeneric)

    p = sub.add_parser("suite", help="run a named verification suite")
    p.add_argument("name")
    p.set_defaults(func=cmd_suite)

    p = sub.add_parser("list", help="list suites and constructors")
    p.set_defaults(func=cmd_list)

    return parser


def main(argv=None) -> int:
    from .lie import LieError

    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DefinitionError, CoefficientError, VAError, LieError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
