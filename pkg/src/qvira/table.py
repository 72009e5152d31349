"""Line-oriented action-table file format ("vlq-table").

A table document presents a candidate graded module on a finite index
window: per-degree dimensions plus the action coefficients f(h, j, k)
defined by (t1^h t2^j).v_k = f(h, j, k) v_{k+h}.

Format (UTF-8, "#" starts a comment, omitted entries denote zero):

    vlq-table 1
    mode symbolic            | mode numeric q=<rat> a=<rat>
    k-range <k_min> <k_max>
    dims <bitstring>         # one bit per degree, k_min first
    h-range <h_min> <h_max>
    j-range <j_min> <j_max>
    f <h> <j> <k> <expr>     # zero or more entry lines

Entry expressions are evaluated on parse (and substituted in numeric
mode); serialization prints them canonically, so write -> parse -> write
is byte-identical.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .field import FieldContext, RationalFunction, RF_ZERO
from .expr import ExprSyntaxError, parse_value, print_canonical

FORMAT_VERSION = 1


class TableSyntaxError(Exception):
    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}")


class TableSemanticError(Exception):
    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}")


@dataclass
class TableDocument:
    """Validated in-memory form of a table file.

    Entries are canonical field elements; zero entries are never stored.
    Invariants: (h, j) != (0, 0), h and j inside their declared ranges,
    k and k+h inside k_range, and no entry touches a dimension-0 degree.
    """

    context: FieldContext
    k_range: tuple[int, int]
    dims: tuple[int, ...]
    h_range: tuple[int, int]
    j_range: tuple[int, int]
    entries: dict[tuple[int, int, int], RationalFunction] = field(default_factory=dict)
    version: int = FORMAT_VERSION

    def dim_at(self, k: int) -> int:
        k_min, k_max = self.k_range
        if not k_min <= k <= k_max:
            raise IndexError(f"degree {k} outside k-range")
        return self.dims[k - k_min]

    def degrees(self) -> range:
        return range(self.k_range[0], self.k_range[1] + 1)

    def entry(self, h: int, j: int, k: int) -> RationalFunction:
        """f(h, j, k), reading omitted entries as zero."""
        return self.entries.get((h, j, k), RF_ZERO)

    def check(self) -> None:
        """Raise TableSemanticError on any invariant violation."""
        k_min, k_max = self.k_range
        if k_min > k_max:
            raise TableSemanticError(0, "empty k-range")
        if len(self.dims) != k_max - k_min + 1:
            raise TableSemanticError(0, "dims length does not match k-range")
        for (h, j, k), value in self.entries.items():
            _check_entry_indices(self, h, j, k, 0)
            if value.is_zero:
                raise TableSemanticError(0, f"stored zero entry at ({h},{j},{k})")


def _check_entry_indices(doc: TableDocument, h: int, j: int, k: int, line: int) -> None:
    if (h, j) == (0, 0):
        raise TableSemanticError(line, "index (h, j) = (0, 0) is excluded")
    if not doc.h_range[0] <= h <= doc.h_range[1]:
        raise TableSemanticError(line, f"h={h} outside h-range")
    if not doc.j_range[0] <= j <= doc.j_range[1]:
        raise TableSemanticError(line, f"j={j} outside j-range")
    k_min, k_max = doc.k_range
    if not (k_min <= k <= k_max and k_min <= k + h <= k_max):
        raise TableSemanticError(line, f"degrees k={k}, k+h={k + h} outside k-range")
    if doc.dim_at(k) == 0 or doc.dim_at(k + h) == 0:
        raise TableSemanticError(line, f"entry ({h},{j},{k}) touches a dimension-0 degree")


def _parse_rational(text: str, line: int) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise TableSyntaxError(line, f"bad rational literal {text!r}") from None


def _format_rational(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _split_lines(text: str) -> list[tuple[int, str]]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            out.append((lineno, body))
    return out


def _header_fields(lines, index, keyword, count):
    if index >= len(lines):
        raise TableSyntaxError(len(lines) + 1, f"missing {keyword!r} line")
    lineno, body = lines[index]
    parts = body.split()
    if parts[0] != keyword:
        raise TableSyntaxError(lineno, f"expected {keyword!r} line, found {parts[0]!r}")
    if count is not None and len(parts) - 1 != count:
        raise TableSyntaxError(lineno, f"{keyword!r} takes {count} field(s)")
    return lineno, parts[1:]


def parse_table(text: str) -> TableDocument:
    lines = _split_lines(text)

    lineno, fields = _header_fields(lines, 0, "vlq-table", 1)
    if fields[0] != str(FORMAT_VERSION):
        raise TableSemanticError(lineno, f"unsupported format version {fields[0]!r}")

    lineno, fields = _header_fields(lines, 1, "mode", None)
    if fields == ["symbolic"]:
        context = FieldContext.symbolic()
    elif len(fields) == 3 and fields[0] == "numeric":
        assignments = {}
        for item in fields[1:]:
            name, _, value = item.partition("=")
            assignments[name] = _parse_rational(value, lineno)
        if set(assignments) != {"q", "a"}:
            raise TableSyntaxError(lineno, "numeric mode needs q=<rat> a=<rat>")
        try:
            context = FieldContext.numeric(assignments["q"], assignments["a"])
        except ValueError as exc:
            raise TableSemanticError(lineno, str(exc)) from None
    else:
        raise TableSyntaxError(lineno, "bad mode line")

    lineno, fields = _header_fields(lines, 2, "k-range", 2)
    k_range = (int(fields[0]), int(fields[1]))
    if k_range[0] > k_range[1]:
        raise TableSemanticError(lineno, "empty k-range")

    lineno, fields = _header_fields(lines, 3, "dims", 1)
    if set(fields[0]) - {"0", "1"}:
        raise TableSyntaxError(lineno, "dims must be a bitstring")
    dims = tuple(int(bit) for bit in fields[0])
    if len(dims) != k_range[1] - k_range[0] + 1:
        raise TableSemanticError(lineno, "dims length does not match k-range")

    lineno, fields = _header_fields(lines, 4, "h-range", 2)
    h_range = (int(fields[0]), int(fields[1]))
    lineno, fields = _header_fields(lines, 5, "j-range", 2)
    j_range = (int(fields[0]), int(fields[1]))

    doc = TableDocument(context, k_range, dims, h_range, j_range)
    seen: set[tuple[int, int, int]] = set()
    for lineno, body in lines[6:]:
        parts = body.split(None, 4)
        if parts[0] != "f":
            raise TableSyntaxError(lineno, f"expected an 'f' entry line, found {parts[0]!r}")
        if len(parts) != 5:
            raise TableSyntaxError(lineno, "entry line needs 'f <h> <j> <k> <expr>'")
        try:
            h, j, k = int(parts[1]), int(parts[2]), int(parts[3])
        except ValueError:
            raise TableSyntaxError(lineno, "entry indices must be integers") from None
        key = (h, j, k)
        if key in seen:
            raise TableSemanticError(lineno, f"duplicate entry for ({h}, {j}, {k})")
        seen.add(key)
        _check_entry_indices(doc, h, j, k, lineno)
        try:
            value = context.reduce(parse_value(parts[4]))
        except ExprSyntaxError as exc:
            raise TableSyntaxError(lineno, str(exc)) from None
        if not value.is_zero:
            doc.entries[key] = value
    return doc


def write_table(doc: TableDocument) -> str:
    """Deterministic serialization; entries sorted by (h, j, k)."""
    out = [f"vlq-table {doc.version}"]
    if doc.context.is_numeric:
        out.append(
            "mode numeric"
            f" q={_format_rational(doc.context.q0)}"
            f" a={_format_rational(doc.context.a0)}"
        )
    else:
        out.append("mode symbolic")
    out.append(f"k-range {doc.k_range[0]} {doc.k_range[1]}")
    out.append("dims " + "".join(str(bit) for bit in doc.dims))
    out.append(f"h-range {doc.h_range[0]} {doc.h_range[1]}")
    out.append(f"j-range {doc.j_range[0]} {doc.j_range[1]}")
    for (h, j, k) in sorted(doc.entries):
        out.append(f"f {h} {j} {k} {print_canonical(doc.entries[(h, j, k)])}")
    return "\n".join(out) + "\n"
