"""Reading and writing contexts: Burmeister CXT, 0/1 CSV and JSON."""

from __future__ import annotations

import csv
import io as _io
import json
from pathlib import Path

from .complexes import Hypergraph
from .context import FormalContext
from .errors import DimensionMismatch, ParseError, UnknownLabel


def parse_cxt(text: str) -> FormalContext:
    """Parse the Burmeister format.

    Layout: ``B``, an optional name line, ``|G|``, ``|M|``, blank line(s),
    ``|G|`` object labels, ``|M|`` attribute labels, then one row of
    ``X``/``.`` per object.  ``x`` is accepted for ``X``.  Line and column
    numbers in errors are 1-based.
    """
    lines = text.splitlines()
    pos = 0

    def take(what: str) -> str:
        nonlocal pos
        if pos >= len(lines):
            raise ParseError(f"unexpected end of file, expected {what}", pos + 1)
        pos += 1
        return lines[pos - 1]

    def number(what: str) -> int:
        raw = take(what).strip()
        if not raw.isdigit():
            raise ParseError(f"expected {what} as a non-negative integer, got {raw!r}", pos)
        return int(raw)

    if take("'B' header").strip() != "B":
        raise ParseError("first line must be 'B'", 1)
    if pos < len(lines) and not lines[pos].strip().isdigit():
        pos += 1  # name line, possibly empty
    n_obj = number("number of objects")
    n_att = number("number of attributes")
    while pos < len(lines) and not lines[pos].strip() and (n_obj or n_att):
        pos += 1
    objects = [take("object label").strip() for _ in range(n_obj)]
    attributes = [take("attribute label").strip() for _ in range(n_att)]
    rows = []
    for g in range(n_obj):
        raw = take(f"incidence row for {objects[g]!r}").rstrip()
        if len(raw) != n_att:
            raise DimensionMismatch(f"row for {objects[g]!r} has {len(raw)} cells, expected {n_att}", pos, min(len(raw), n_att) + 1)
        row = []
        for j, ch in enumerate(raw):
            if ch in "Xx":
                row.append(1)
            elif ch == ".":
                row.append(0)
            else:
                raise ParseError(f"unexpected cell {ch!r}; use 'X' or '.'", pos, j + 1)
        rows.append(row)
    for extra in lines[pos:]:
        pos += 1
        if extra.strip():
            raise DimensionMismatch("content after the last incidence row", pos, 1)
    try:
        return FormalContext.from_matrix(rows, objects, attributes)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def write_cxt(ctx: FormalContext, name: str = "") -> str:
    out = ["B", name, str(ctx.n_objects), str(ctx.n_attributes), ""]
    out += list(ctx.objects) + list(ctx.attributes)
    out += ["".join("X" if v else "." for v in row) for row in ctx.matrix()]
    return "\n".join(out) + "\n"


def parse_csv(text: str, header: bool = True) -> FormalContext:
    """Parse a 0/1 matrix.

    With ``header`` the first row holds attribute labels after a corner cell
    and each later row starts with its object label; without it labels are
    generated.
    """
    reader = list(csv.reader(_io.StringIO(text)))
    # keep original line numbers while dropping blank rows
    numbered = [(i + 1, r) for i, r in enumerate(reader) if any(c.strip() for c in r)]
    if header:
        if not numbered:
            return FormalContext.from_matrix([])
        _, head = numbered[0]
        attributes = [c.strip() for c in head[1:]]
        body = numbered[1:]
        offset = 1
    else:
        attributes = None
        body = numbered
        offset = 0
    objects = []
    matrix = []
    width = len(attributes) if attributes is not None else None
    for line, row in body:
        if header:
            objects.append(row[0].strip())
        cells = row[offset:]
        if width is None:
            width = len(cells)
        if len(cells) != width:
            raise DimensionMismatch(f"row has {len(cells)} cells, expected {width}", line)
        vals = []
        for j, c in enumerate(cells):
            c = c.strip()
            if c not in ("0", "1"):
                raise ParseError(f"cell {c!r} is not 0 or 1", line, j + offset + 1)
            vals.append(int(c))
        matrix.append(vals)
    try:
        if header:
            return FormalContext.from_matrix(matrix, objects, attributes)
        return FormalContext.from_matrix(matrix, attributes=None if matrix else [])
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def write_csv(ctx: FormalContext, header: bool = True) -> str:
    buf = _io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if header:
        w.writerow([""] + list(ctx.attributes))
    for g, row in enumerate(ctx.matrix()):
        w.writerow(([ctx.objects[g]] if header else []) + row)
    return buf.getvalue()


def parse_json(text: str) -> tuple[FormalContext, Hypergraph | None]:
    """A context plus, optionally, a stored hypergraph to audit against it.

    Objects: ``{"objects", "attributes", "incidence"}`` with an optional
    ``"hypergraph": {"edges": [[object labels], ...]}``.
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(data, dict) or not {"objects", "attributes", "incidence"} <= data.keys():
        raise ParseError("JSON context needs 'objects', 'attributes' and 'incidence'")
    try:
        ctx = FormalContext.from_json(data)
    except (ValueError, TypeError) as exc:
        raise ParseError(str(exc)) from None
    hyper = None
    if "hypergraph" in data:
        try:
            edges = tuple(ctx.object_set(e) for e in data["hypergraph"]["edges"])
        except (KeyError, TypeError, UnknownLabel) as exc:
            raise ParseError(f"bad 'hypergraph' entry: {exc}") from None
        hyper = Hypergraph(ctx.objects, edges)
    return ctx, hyper


def dumps(obj) -> str:
    """Deterministic JSON: sorted keys, two-space indent, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def read_context(path: str | Path) -> tuple[FormalContext, Hypergraph | None]:
    """Load a context, choosing the parser from the file extension."""
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    suffix = path.suffix.lower()
    if suffix == ".cxt":
        return parse_cxt(text), None
    if suffix == ".csv":
        return parse_csv(text), None
    if suffix == ".json":
        return parse_json(text)
    raise ParseError(f"unknown context format {suffix!r}; use .cxt, .csv or .json")


def bundled_example_path() -> Path:
    return Path(__file__).with_name("data") / "running_example.cxt"


__all__ = [
    "bundled_example_path",
    "dumps",
    "parse_csv",
    "parse_cxt",
    "parse_json",
    "read_context",
    "write_csv",
    "write_cxt",
]
