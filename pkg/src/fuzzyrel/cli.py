"""Command-line surface: classes, compare, query, check-matrix, merge.

Exit codes: 0 on success, 2 for parse or validation problems, 3 for data
errors (unknown names, out-of-range values).
"""

from __future__ import annotations

import argparse
import sys

from . import query as querylang
from .algebra import merge_relation
from .closure import closure_classes
from .config import Database, load_database
from .errors import (
    DomainError,
    FormatError,
    FuzzyRelError,
    UnknownAttributeError,
    UnknownRelationError,
    UnknownValueError,
    ValidationError,
)
from .partition import Grouping, classes_over, partition_line, partition_plane
from .proximity import Linear, Planar, degree_of, relation_properties
from .query import ParseError
from .tables import (
    format_grouping,
    format_matrix,
    format_table,
    format_value,
    grouping_to_csv,
    load_matrix,
    relation_to_csv,
)

CLASS_METHODS = ("interval", "equalized", "grid", "closure")
ALL_METHODS = CLASS_METHODS + ("threshold",)


def _grouping_for(db: Database, attr: str, alpha: float, method: str) -> Grouping:
    cfg = db.attribute(attr)
    spec = cfg.spec.proximity
    values = db.temporal_domain(attr)
    if method == "closure":
        return closure_classes(values, spec, alpha)
    if isinstance(spec, Planar) or method == "grid":
        if not isinstance(spec, Planar):
            raise ValidationError(f"attribute {attr!r} has no planar domain")
        grid = partition_plane(spec.side, alpha)
        return classes_over(values, grid, spec.resolve)
    mode = "equalized" if method == "equalized" else "standard"
    if isinstance(spec, Linear):
        part = partition_line(spec.length, alpha, mode)
        return classes_over(values, part)
    if cfg.spec.order is not None:
        positions = {label: i for i, label in enumerate(cfg.spec.order)}
        part = partition_line(len(positions) - 1, alpha, mode)
        return classes_over(values, part, positions)
    raise ValidationError(f"attribute {attr!r} does not support {method!r} classes")


def cmd_classes(db: Database, attr: str, alpha: float, method: str,
                emit: str) -> str:
    if method == "threshold":
        raise ValidationError("the classes command needs a class method, "
                              f"one of {CLASS_METHODS}")
    grouping = _grouping_for(db, attr, alpha, method)
    if emit == "csv":
        return grouping_to_csv(grouping)
    head = f"attribute {attr}  method {method}  alpha {format_value(alpha)}"
    return head + "\n" + format_grouping(grouping)


def cmd_compare(db: Database, attr: str, alphas: list[float], emit: str) -> str:
    cfg = db.attribute(attr)
    spec = cfg.spec.proximity
    if isinstance(spec, Planar):
        cell_method = "grid"
    elif isinstance(spec, Linear) or cfg.spec.order is not None:
        cell_method = "interval"
    else:
        raise ValidationError(
            f"attribute {attr!r} does not support content-independent classes"
        )
    values = sorted(db.temporal_domain(attr), key=lambda v: str(v))
    lines: list[str] = []
    if emit == "csv":
        lines.append("alpha,method,class,members")
        for alpha in alphas:
            for method in (cell_method, "closure"):
                grouping = _grouping_for(db, attr, alpha, method)
                for i, cls in enumerate(grouping.classes, start=1):
                    members = "|".join(
                        format_value(v) for v in sorted(cls, key=lambda v: str(v))
                    )
                    lines.append(f"{format_value(alpha)},{method},{i},{members}")
        return "\n".join(lines) + "\n"
    labels = [str(v) for v in values]
    lines.append(f"attribute {attr}: proximity matrix")
    lines.append(
        format_matrix(labels, lambda x, y: degree_of(spec, x, y), decimals=3)
    )
    for alpha in alphas:
        lines.append("")
        lines.append(f"alpha {format_value(alpha)}")
        for method in (cell_method, "closure"):
            grouping = _grouping_for(db, attr, alpha, method)
            count = len(grouping.classes)
            noun = "class" if count == 1 else "classes"
            lines.append(f"  {method}: {count} {noun}")
            for line in format_grouping(grouping).splitlines():
                lines.append(f"    {line}")
    return "\n".join(lines)


def cmd_query(db: Database, text: str, emit: str,
              method: str | None = None) -> str:
    parsed = querylang.parse(text)
    result = querylang.evaluate(parsed, db.relations, method)
    if emit == "csv":
        return relation_to_csv(result)
    body = format_table(result)
    if parsed.giving:
        return f"{parsed.giving}\n{body}"
    return body


def cmd_check_matrix(path: str) -> str:
    matrix = load_matrix(path)
    report = relation_properties(matrix)

    def yesno(flag: bool) -> str:
        return "yes" if flag else "no"

    lines = [
        f"labels: {len(matrix.labels)}",
        f"reflexive: {yesno(report.reflexive)}",
        f"symmetric: {yesno(report.symmetric)}",
        f"max-min transitive: {yesno(report.max_min_transitive)}",
    ]
    if report.first_violation:
        x, y, z = report.first_violation
        lines.append(f"first violation: ({x}, {y}, {z})")
    return "\n".join(lines)


def cmd_merge(db: Database, relation: str | None, alpha: float | None,
              method: str | None, emit: str) -> str:
    if relation is None:
        if len(db.relations) != 1:
            raise UnknownRelationError(
                f"--relation is required; database has {sorted(db.relations)}"
            )
        relation = next(iter(db.relations))
    rel = db.relation(relation)
    merged = merge_relation(rel, db.levels(alpha), method)
    if emit == "csv":
        return relation_to_csv(merged)
    return format_table(merged)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fuzzyrel",
        description="Fuzzy relational engine with proximity-based equivalence classes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_db(p):
        p.add_argument("--db", required=True, help="database directory")

    def add_emit(p):
        p.add_argument("--emit", choices=("text", "csv"), default="text")

    p = sub.add_parser("classes", help="equivalence classes of one attribute")
    add_db(p)
    p.add_argument("--attr", required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--method", choices=CLASS_METHODS, default="closure")
    add_emit(p)

    p = sub.add_parser("compare", help="cell-based vs closure classes side by side")
    add_db(p)
    p.add_argument("--attr", required=True)
    p.add_argument("--alpha", type=float, action="append",
                   help="repeatable; defaults to 0.4 0.6 0.8")
    add_emit(p)

    p = sub.add_parser("query", help="parse and evaluate a query")
    add_db(p)
    p.add_argument("text", help="query text")
    p.add_argument("--method", choices=ALL_METHODS, default=None,
                   help="force one class-formation method on every merge")
    add_emit(p)

    p = sub.add_parser("check-matrix", help="report the properties of a degree table")
    p.add_argument("path")

    p = sub.add_parser("merge", help="merge the redundant tuples of a relation")
    add_db(p)
    p.add_argument("--relation", default=None)
    p.add_argument("--alpha", type=float, default=None,
                   help="level for attributes without a configured alpha")
    p.add_argument("--method", choices=ALL_METHODS, default=None)
    add_emit(p)
    return parser


def _show_parse_error(text: str, err: ParseError) -> str:
    lines = text.splitlines() or [""]
    line = lines[min(err.line, len(lines)) - 1]
    caret = " " * (err.column - 1) + "^"
    return f"{err}\n{line}\n{caret}"


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "classes":
            db = load_database(args.db)
            print(cmd_classes(db, args.attr, args.alpha, args.method, args.emit))
        elif args.command == "compare":
            db = load_database(args.db)
            alphas = args.alpha or [0.4, 0.6, 0.8]
            print(cmd_compare(db, args.attr, alphas, args.emit))
        elif args.command == "query":
            db = load_database(args.db)
            try:
                print(cmd_query(db, args.text, args.emit, args.method))
            except ParseError as err:
                print(_show_parse_error(args.text, err), file=sys.stderr)
                return 2
        elif args.command == "check-matrix":
            print(cmd_check_matrix(args.path))
        elif args.command == "merge":
            db = load_database(args.db)
            print(cmd_merge(db, args.relation, args.alpha, args.method, args.emit))
    except (ParseError, FormatError, ValidationError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except (DomainError, UnknownValueError, UnknownAttributeError,
            UnknownRelationError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 3
    except FuzzyRelError as err:
        print(f"error: {err}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
