"""Command-line front end.

Exit codes: 0 for success or a positive verdict, 1 for a negative verdict
(inconsistent table, violations, failed checks), 2 for usage or parse
errors.  All output is deterministic for fixed inputs.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from .field import FieldContext, FieldError, RationalFunction
from .expr import ExprSyntaxError, parse_value, print_canonical
from .table import TableSemanticError, TableSyntaxError, parse_table, write_table
from .algebra import ElementSyntaxError, bracket, parse_element, print_element
from .families import (
    BadParameter,
    Family,
    FamilyModule,
    GradedVector,
    Irreducible,
    check_graded_irreducible,
    gen_table,
    verify_axiom,
)
from .algebra import AlgebraElement
from .presentation import (
    DegenerateTable,
    MissingData,
    NotConstant,
    ZeroEntry,
    extract_invariants,
    omega_normalize,
    validate_table,
    verify_relation_suite,
)
from .classifier import Inconsistent, IsoClass, TrivialSum, classify
from . import selftest

USAGE_ERROR = 2
VERDICT_NEGATIVE = 1


class _CliError(Exception):
    def __init__(self, message: str, code: int = USAGE_ERROR):
        self.code = code
        super().__init__(message)


def _load_table(path: str):
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise _CliError(f"cannot read {path}: {exc}") from None
    try:
        return parse_table(text)
    except (TableSyntaxError, TableSemanticError, ExprSyntaxError) as exc:
        raise _CliError(f"{path}: {exc}") from None


def _parse_field_value(text: str) -> RationalFunction:
    try:
        return parse_value(text)
    except (ExprSyntaxError, FieldError) as exc:
        raise _CliError(f"bad expression {text!r}: {exc}") from None


def _context_from_args(args) -> FieldContext:
    if args.mode == "symbolic":
        if args.q is not None or args.a_val is not None:
            raise _CliError("--q/--a-val are only valid with --mode numeric")
        return FieldContext.symbolic()
    if args.q is None or args.a_val is None:
        raise _CliError("--mode numeric requires --q and --a-val")
    try:
        return FieldContext.numeric(Fraction(args.q), Fraction(args.a_val))
    except (ValueError, ZeroDivisionError) as exc:
        raise _CliError(f"bad numeric mode: {exc}") from None


def cmd_bracket(args) -> int:
    try:
        x = parse_element(args.left)
        y = parse_element(args.right)
    except (ElementSyntaxError, ExprSyntaxError) as exc:
        raise _CliError(str(exc)) from None
    print(print_element(bracket(x, y)))
    return 0


def cmd_gen_table(args) -> int:
    context = _context_from_args(args)
    a = _parse_field_value(args.a)
    try:
        doc = gen_table(Family(args.family), a, args.h, args.j, args.k, context)
    except (BadParameter, ValueError) as exc:
        raise _CliError(str(exc)) from None
    text = write_table(doc)
    if args.output == "-":
        sys.stdout.write(text)
    else:
        with open(args.output, "w", encoding="utf-8") as handle:
            handle.write(text)
    return 0


def cmd_validate(args) -> int:
    doc = _load_table(args.table)
    violations = validate_table(doc)
    if not violations:
        print("valid")
        return 0
    for v in violations:
        print(
            f"violation h={v.h} j={v.j} m={v.m} n={v.n} k={v.k}"
            f" lhs={print_canonical(v.lhs)} rhs={print_canonical(v.rhs)}"
        )
    return VERDICT_NEGATIVE


def cmd_classify(args) -> int:
    doc = _load_table(args.table)
    result = classify(doc)
    if isinstance(result, TrivialSum):
        print("verdict trivial-sum")
        return 0
    if isinstance(result, IsoClass):
        print("verdict iso-class")
        print(f"orientation {result.orientation.value}")
        print(f"a {print_canonical(result.a)}")
        if result.exact_family is not None:
            print(f"family {result.exact_family.value}")
        return 0
    assert isinstance(result, Inconsistent)
    print("verdict inconsistent")
    print(f"reason {result.reason.value}")
    if result.witness is not None:
        print(f"witness {result.witness}")
    return VERDICT_NEGATIVE


def cmd_check_axioms(args) -> int:
    a = _parse_field_value(args.a)
    try:
        module = FamilyModule(Family(args.family), a)
    except BadParameter as exc:
        raise _CliError(str(exc)) from None
    indices = [
        (h, j)
        for h in range(-args.bound, args.bound + 1)
        for j in range(-args.bound, args.bound + 1)
        if (h, j) != (0, 0)
    ]
    checked = 0
    failures = []
    for hx, jx in indices:
        x = AlgebraElement.basis(hx, jx)
        for hy, jy in indices:
            y = AlgebraElement.basis(hy, jy)
            for k in range(-args.kmax, args.kmax + 1):
                checked += 1
                witness = verify_axiom(module, x, y, GradedVector.basis(k))
                if witness is not None:
                    failures.append(((hx, jx), (hy, jy), k))
    print(f"checked {checked}")
    for failure in failures:
        print(f"failure x={failure[0]} y={failure[1]} k={failure[2]}")
    print("result " + ("pass" if not failures else "fail"))
    return 0 if not failures else VERDICT_NEGATIVE


def cmd_relations(args) -> int:
    doc = _load_table(args.table)
    try:
        nt = omega_normalize(doc)
        invariants = extract_invariants(nt)
    except (DegenerateTable, MissingData, ZeroEntry, NotConstant, ValueError) as exc:
        print(f"error {exc}")
        return VERDICT_NEGATIVE
    print(
        "invariants"
        f" p={print_canonical(invariants.p)}"
        f" b={print_canonical(invariants.b)}"
        f" a={print_canonical(invariants.a)}"
    )
    failed = False
    for report in verify_relation_suite(nt, invariants):
        line = f"{report.status} {report.name} checked={report.checked}"
        if report.failures:
            first = report.failures[0]
            line += (
                f" witness index={first.index}"
                f" lhs={print_canonical(first.lhs)} rhs={print_canonical(first.rhs)}"
            )
            failed = True
        print(line)
    return VERDICT_NEGATIVE if failed else 0


def cmd_irreducible(args) -> int:
    doc = _load_table(args.table)
    verdict = check_graded_irreducible(doc)
    if isinstance(verdict, Irreducible):
        print("irreducible")
        return 0
    print(f"reducible split={verdict.split_degree}")
    return VERDICT_NEGATIVE


def cmd_selftest(args) -> int:
    return 0 if selftest.run_all(print) else VERDICT_NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qvira",
        description="Exact tools for the q-deformed Virasoro-like algebra "
        "and its windowed graded modules.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bracket", help="Lie bracket of two algebra elements")
    p.add_argument("left")
    p.add_argument("right")
    p.set_defaults(func=cmd_bracket)

    p = sub.add_parser("gen-table", help="generate a family action table")
    p.add_argument("--family", required=True, choices=[f.value for f in Family])
    p.add_argument("--a", default="a", help="module parameter (field expression)")
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--mode", choices=["symbolic", "numeric"], default="symbolic")
    p.add_argument("--q", help="rational value of q in numeric mode")
    p.add_argument("--a-val", help="rational value of a in numeric mode")
    p.add_argument("-o", "--output", default="-", help="output path, '-' for stdout")
    p.set_defaults(func=cmd_gen_table)

    p = sub.add_parser("validate", help="check the bracket-compatibility relation")
    p.add_argument("table")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("classify", help="run the classification decision procedure")
    p.add_argument("table")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("check-axioms", help="sweep the module action axiom")
    p.add_argument("--family", required=True, choices=[f.value for f in Family])
    p.add_argument("--a", default="a")
    p.add_argument("--bound", type=int, default=2)
    p.add_argument("--kmax", type=int, default=4)
    p.set_defaults(func=cmd_check_axioms)

    p = sub.add_parser("relations", help="run the internal-relation suite")
    p.add_argument("table")
    p.set_defaults(func=cmd_relations)

    p = sub.add_parser("irreducible", help="graded-irreducibility check")
    p.add_argument("table")
    p.set_defaults(func=cmd_irreducible)

    p = sub.add_parser("selftest", help="run the acceptance suite")
    p.set_defaults(func=cmd_selftest)

    return parser


def dispatch(argv) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except FieldError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
