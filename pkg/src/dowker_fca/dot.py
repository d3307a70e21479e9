"""Graphviz DOT export for posets, concept lattices and Dowker cosheaves.

Covers are drawn bottom-up (``rankdir=BT``, edges from the smaller element
to the larger).  Node ids are ``n0, n1, ...`` in the structure's own element
order, so output is deterministic.
"""

from __future__ import annotations

import re
from typing import Callable, Hashable, Sequence

from . import _bits
from .concept import ConceptLattice, _compact, reduced_labels
from .cosheaf import DowkerCosheaf
from .order import Poset, hasse


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _galois(extent: Sequence[str], intent: Sequence[str]) -> str:
    return f"{_compact(extent)} | {_compact(intent)}"


def _render(
    name: str,
    labels: Sequence[str],
    covers,
    node_attrs: Sequence[dict[str, str]] | None = None,
    ranks: Sequence[Sequence[int]] = (),
) -> str:
    out = [f"digraph {name} {{", "  rankdir=BT;", "  node [shape=box];"]
    for i, lab in enumerate(labels):
        attrs = {"label": _quote(lab)}
        if node_attrs:
            attrs.update(node_attrs[i])
        body = ", ".join(f"{k}={v}" for k, v in attrs.items())
        out.append(f"  n{i} [{body}];")
    for group in ranks:
        if len(group) > 1:
            out.append("  { rank=same; " + " ".join(f"n{i};" for i in group) + " }")
    for lo, hi in sorted(covers):
        out.append(f"  n{lo} -> n{hi};")
    out.append("}")
    return "\n".join(out) + "\n"


def poset_dot(p: Poset, labels: Callable[[Hashable], str] | Sequence[str] | None = None, name: str = "poset") -> str:
    if labels is None:
        labs = [str(e) for e in p.elements]
    elif callable(labels):
        labs = [labels(e) for e in p.elements]
    else:
        labs = list(labels)
    return _render(name, labs, hasse(p))


def lattice_dot(lattice: ConceptLattice, reduced: bool = False) -> str:
    ctx = lattice.context
    pairs = reduced_labels(lattice) if reduced else None
    labels = []
    for i, k in enumerate(lattice.concepts):
        pair = pairs[i] if pairs is not None else k
        labels.append(_galois(*pair.labels(ctx)))
    return _render("concepts", labels, lattice.hasse())


def cosheaf_dot(cs: DowkerCosheaf) -> str:
    """One node per cell labelled ``face | costalk``; concepts in bold."""
    ctx = cs.context
    cells = list(cs.cells)
    base_index = [cs.base.index(s) for s in cells]
    sub = cs.base.subposet(base_index)
    labels = [_galois(ctx.object_labels(s), ctx.attribute_labels(cs.costalk_vertices(s))) for s in cells]
    attrs = [{"style": "bold"} if cs.is_concept(s) else {} for s in cells]
    by_dim: dict[int, list[int]] = {}
    for i, s in enumerate(cells):
        by_dim.setdefault(_bits.count(s), []).append(i)
    return _render("cosheaf", labels, hasse(sub), attrs, [by_dim[d] for d in sorted(by_dim)])


def export_dot(structure, labels=None, *, reduced: bool = False) -> str:
    """Dispatch on the structure type: Poset, ConceptLattice or DowkerCosheaf."""
    if isinstance(structure, ConceptLattice):
        return lattice_dot(structure, reduced=reduced)
    if isinstance(structure, DowkerCosheaf):
        return cosheaf_dot(structure)
    if isinstance(structure, Poset):
        return poset_dot(structure, labels)
    raise TypeError(f"cannot export {type(structure).__name__} to DOT")


# A validator for the DOT language (graphviz.org/doc/info/lang.html),
# without HTML strings or ports.

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+|//[^\n]*|/\*.*?\*/|\#[^\n]*)
  | (?P<string>"(?:[^"\\]|\\.)*")
  | (?P<edgeop>->|--)
  | (?P<punct>[{}\[\];,=:])
  | (?P<id>[A-Za-z_\x80-￿][A-Za-z_0-9\x80-￿]*|-?(?:\.[0-9]+|[0-9]+(?:\.[0-9]*)?))
    """,
    re.VERBOSE | re.DOTALL,
)
_KEYWORDS = {"strict", "graph", "digraph", "node", "edge", "subgraph"}


def _tokenize(text: str) -> list[tuple[str, str]]:
    pos = 0
    toks = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"bad character {text[pos]!r} at offset {pos}")
        pos = m.end()
        kind = m.lastgroup
        if kind == "ws":
            continue
        val = m.group()
        if kind == "id" and val.lower() in _KEYWORDS:
            kind = val.lower()
        elif kind == "punct":
            kind = val
        toks.append((kind, val))
    return toks


class _Parser:
    def __init__(self, toks):
        self.toks = toks
        self.i = 0
        self.directed = False

    def peek(self, k: int = 0):
        j = self.i + k
        return self.toks[j][0] if j < len(self.toks) else None

    def eat(self, *kinds):
        kind = self.peek()
        if kind not in kinds:
            raise ValueError(f"expected {' or '.join(kinds)} at token {self.i}, got {kind}")
        self.i += 1
        return self.toks[self.i - 1]

    def is_id(self, k: int = 0) -> bool:
        return self.peek(k) in ("id", "string")

    def graph(self):
        if self.peek() == "strict":
            self.eat("strict")
        kind, _ = self.eat("graph", "digraph")
        self.directed = kind == "digraph"
        if self.is_id():
            self.eat("id", "string")
        self.eat("{")
        self.stmt_list()
        self.eat("}")
        if self.peek() is not None:
            raise ValueError("trailing tokens after the graph")

    def stmt_list(self):
        while self.peek() not in ("}", None):
            self.stmt()
            if self.peek() == ";":
                self.eat(";")

    def stmt(self):
        kind = self.peek()
        if kind in ("graph", "node", "edge"):
            self.eat(kind)
            self.attr_list()
        elif self.is_id() and self.peek(1) == "=":
            self.eat("id", "string")
            self.eat("=")
            self.eat("id", "string")
        else:
            self.operand()
            if self.peek() == "edgeop":
                while self.peek() == "edgeop":
                    _, op = self.eat("edgeop")
                    if (op == "->") != self.directed:
                        raise ValueError(f"edge operator {op} does not match the graph kind")
                    self.operand()
                if self.peek() == "[":
                    self.attr_list()
            elif self.peek() == "[":
                self.attr_list()

    def operand(self):
        if self.peek() in ("subgraph", "{"):
            if self.peek() == "subgraph":
                self.eat("subgraph")
                if self.is_id():
                    self.eat("id", "string")
            self.eat("{")
            self.stmt_list()
            self.eat("}")
        else:
            self.eat("id", "string")
            if self.peek() == ":":
                raise ValueError("ports are not supported")

    def attr_list(self):
        self.eat("[")
        while self.peek() != "]":
            self.eat("id", "string")
            self.eat("=")
            self.eat("id", "string")
            if self.peek() in (";", ","):
                self.eat(self.peek())
        self.eat("]")
        if self.peek() == "[":
            self.attr_list()


def validate_dot(text: str) -> None:
    """Raise ValueError unless ``text`` is a single syntactically valid DOT graph."""
    _Parser(_tokenize(text)).graph()


def is_valid_dot(text: str) -> bool:
    try:
        validate_dot(text)
    except ValueError:
        return False
    return True


__all__ = ["cosheaf_dot", "export_dot", "is_valid_dot", "lattice_dot", "poset_dot", "validate_dot"]
