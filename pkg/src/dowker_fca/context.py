"""Formal contexts: a labeled Boolean incidence matrix read three ways.

A :class:`FormalContext` is simultaneously a binary relation, the incidence
matrix of a multi-hypergraph (objects are vertices, attributes are edges)
and a formal context.  Object and attribute sets are integer bitsets over
the context's ``objects`` and ``attributes`` universes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import _bits
from .errors import TooLarge, UniverseMismatch, UnknownLabel
from .order import Verdict

DEFAULT_SUBSET_LIMIT = 20


@dataclass(frozen=True)
class FormalContext:
    objects: tuple[str, ...]
    attributes: tuple[str, ...]
    # rows[g] = attributes of object g; cols[m] = objects having attribute m
    rows: tuple[int, ...]
    cols: tuple[int, ...] = field(repr=False)

    def __post_init__(self):
        if len(set(self.objects)) != len(self.objects):
            raise ValueError("object labels must be unique")
        if len(set(self.attributes)) != len(self.attributes):
            raise ValueError("attribute labels must be unique")
        if len(self.rows) != len(self.objects) or len(self.cols) != len(self.attributes):
            raise ValueError("incidence dimensions do not match the label lists")
        for r in self.rows:
            if r >> len(self.attributes):
                raise ValueError("incidence row has bits beyond the attribute universe")

    @classmethod
    def from_matrix(
        cls,
        matrix: Sequence[Sequence[int | bool]],
        objects: Sequence[str] | None = None,
        attributes: Sequence[str] | None = None,
    ) -> "FormalContext":
        matrix = [list(row) for row in matrix]
        n = len(matrix)
        m = len(matrix[0]) if n else (len(attributes) if attributes is not None else 0)
        if any(len(row) != m for row in matrix):
            raise ValueError("incidence matrix is ragged")
        objects = tuple(objects) if objects is not None else tuple(f"g{i}" for i in range(n))
        attributes = tuple(attributes) if attributes is not None else tuple(f"m{j}" for j in range(m))
        if len(objects) != n or len(attributes) != m:
            raise ValueError(f"{len(objects)} x {len(attributes)} labels for a {n} x {m} matrix")
        rows = tuple(_bits.from_indices(j for j, v in enumerate(row) if v) for row in matrix)
        return cls.from_rows(objects, attributes, rows)

    @classmethod
    def from_rows(cls, objects: Sequence[str], attributes: Sequence[str], rows: Sequence[int]) -> "FormalContext":
        cols = [0] * len(attributes)
        for g, row in enumerate(rows):
            for m in _bits.iter_bits(row):
                cols[m] |= 1 << g
        return cls(tuple(objects), tuple(attributes), tuple(rows), tuple(cols))

    @property
    def n_objects(self) -> int:
        return len(self.objects)

    @property
    def n_attributes(self) -> int:
        return len(self.attributes)

    @property
    def all_objects(self) -> int:
        return _bits.full(len(self.objects))

    @property
    def all_attributes(self) -> int:
        return _bits.full(len(self.attributes))

    def incident(self, g: int, m: int) -> bool:
        return bool(self.rows[g] >> m & 1)

    def matrix(self) -> list[list[int]]:
        return [[int(self.incident(g, m)) for m in range(self.n_attributes)] for g in range(self.n_objects)]

    # label <-> bitset conversion

    def object_index(self, label: str) -> int:
        try:
            return self.objects.index(label)
        except ValueError:
            raise UnknownLabel(f"unknown object {label!r}") from None

    def attribute_index(self, label: str) -> int:
        try:
            return self.attributes.index(label)
        except ValueError:
            raise UnknownLabel(f"unknown attribute {label!r}") from None

    def object_set(self, labels: Iterable[str]) -> int:
        return _bits.from_indices(self.object_index(x) for x in labels)

    def attribute_set(self, labels: Iterable[str]) -> int:
        return _bits.from_indices(self.attribute_index(x) for x in labels)

    def object_labels(self, mask: int) -> list[str]:
        return [self.objects[i] for i in _bits.iter_bits(mask)]

    def attribute_labels(self, mask: int) -> list[str]:
        return [self.attributes[i] for i in _bits.iter_bits(mask)]

    # derivations

    def derive_objects(self, A: int) -> int:
        """A' : the attributes shared by every object of ``A`` (all attributes for ``A = {}``)."""
        _check_universe(A, self.n_objects, "object")
        out = self.all_attributes
        for g in _bits.iter_bits(A):
            out &= self.rows[g]
        return out

    def derive_attributes(self, B: int) -> int:
        """B' : the objects having every attribute of ``B``."""
        _check_universe(B, self.n_attributes, "attribute")
        out = self.all_objects
        for m in _bits.iter_bits(B):
            out &= self.cols[m]
        return out

    def close_objects(self, A: int) -> int:
        return self.derive_attributes(self.derive_objects(A))

    def close_attributes(self, B: int) -> int:
        return self.derive_objects(self.derive_attributes(B))

    def transpose(self) -> "FormalContext":
        return FormalContext(self.attributes, self.objects, self.cols, self.rows)

    def is_total(self) -> bool:
        """No zero row and no zero column; empty contexts are not total."""
        if not self.objects or not self.attributes:
            return False
        return all(self.rows) and all(self.cols)

    def to_json(self) -> dict:
        return {
            "objects": list(self.objects),
            "attributes": list(self.attributes),
            "incidence": self.matrix(),
        }

    @classmethod
    def from_json(cls, data: dict) -> "FormalContext":
        return cls.from_matrix(data["incidence"], data["objects"], data["attributes"])

    def relabel(self, object_perm: Sequence[int], attribute_perm: Sequence[int]) -> "FormalContext":
        """Permute rows and columns: new row ``i`` is old row ``object_perm[i]``."""
        mat = self.matrix()
        new = [[mat[g][m] for m in attribute_perm] for g in object_perm]
        return FormalContext.from_matrix(
            new, [self.objects[g] for g in object_perm], [self.attributes[m] for m in attribute_perm]
        )


def _check_universe(mask: int, size: int, what: str) -> None:
    if mask < 0 or mask >> size:
        raise UniverseMismatch(f"{what} set {mask:#b} is not within a universe of {size}")


# Module-level spellings of the context methods.

def derive_objects(ctx: FormalContext, A: int) -> int:
    return ctx.derive_objects(A)


def derive_attributes(ctx: FormalContext, B: int) -> int:
    return ctx.derive_attributes(B)


def close_objects(ctx: FormalContext, A: int) -> int:
    return ctx.close_objects(A)


def close_attributes(ctx: FormalContext, B: int) -> int:
    return ctx.close_attributes(B)


def transpose(ctx: FormalContext) -> FormalContext:
    return ctx.transpose()


def is_total(ctx: FormalContext) -> bool:
    return ctx.is_total()


@dataclass(frozen=True)
class ContextMap:
    """A pair of total index maps ``G1 -> G2`` and ``M1 -> M2``."""

    object_map: tuple[int, ...]
    attribute_map: tuple[int, ...]

    @classmethod
    def identity(cls, ctx: FormalContext) -> "ContextMap":
        return cls(tuple(range(ctx.n_objects)), tuple(range(ctx.n_attributes)))

    def check_total(self, c1: FormalContext, c2: FormalContext) -> None:
        if len(self.object_map) != c1.n_objects or len(self.attribute_map) != c1.n_attributes:
            raise ValueError("context map is not total on the source context")
        if any(not 0 <= g < c2.n_objects for g in self.object_map) or any(
            not 0 <= m < c2.n_attributes for m in self.attribute_map
        ):
            raise ValueError("context map leaves the target context")


def is_rel_morphism(c1: FormalContext, c2: FormalContext, cmap: ContextMap) -> Verdict:
    """Incidence is preserved: ``g I1 m`` implies ``f(g) I2 h(m)``.

    The witness is the first incident pair ``(g, m)`` sent onto a zero.
    """
    cmap.check_total(c1, c2)
    for g in range(c1.n_objects):
        for m in _bits.iter_bits(c1.rows[g]):
            if not c2.incident(cmap.object_map[g], cmap.attribute_map[m]):
                return Verdict(False, (c1.objects[g], c1.attributes[m]))
    return Verdict(True)


def is_ctx_morphism(
    c1: FormalContext, c2: FormalContext, cmap: ContextMap, *, limit: int = DEFAULT_SUBSET_LIMIT
) -> Verdict:
    """Check ``f(A)' = h(A')`` for every ``A`` and ``h(B)' = f(B')`` for every ``B``.

    Both quantifiers range over all subsets, so the scan is exponential;
    contexts with more than ``limit`` objects or attributes are refused with
    :class:`TooLarge`.  The witness is ``("objects", labels)`` or
    ``("attributes", labels)`` naming the first failing subset.
    """
    cmap.check_total(c1, c2)
    if c1.n_objects > limit or c1.n_attributes > limit:
        raise TooLarge(f"exhaustive subset scan refused beyond {limit} objects/attributes")
    f, h = cmap.object_map, cmap.attribute_map
    for A in range(1 << c1.n_objects):
        if c2.derive_objects(_bits.image(A, f)) != _bits.image(c1.derive_objects(A), h):
            return Verdict(False, ("objects", c1.object_labels(A)))
    for B in range(1 << c1.n_attributes):
        if c2.derive_attributes(_bits.image(B, h)) != _bits.image(c1.derive_attributes(B), f):
            return Verdict(False, ("attributes", c1.attribute_labels(B)))
    return Verdict(True)


def _galois_side(n: int, derive, back, close, labels, side: str) -> Verdict:
    """Laws for one side of the connection; ``derive``/``back`` are the two polars."""
    closed = set()
    for A in range(1 << n):
        d = derive(A)
        if A & ~back(d):
            return Verdict(False, ("extensive", side, labels(A)))
        for g in range(n):
            if not A >> g & 1 and derive(A | 1 << g) & ~d:
                return Verdict(False, ("antitone", side, labels(A), labels(1 << g)))
        if derive(back(d)) != d:
            return Verdict(False, ("triple_prime", side, labels(A)))
        c = close(A)
        if close(c) != c:
            return Verdict(False, ("idempotent", side, labels(A)))
        singles = -1
        for g in _bits.iter_bits(A):
            singles &= derive(1 << g)
        if A and singles != d:
            return Verdict(False, ("intersection_of_singletons", side, labels(A)))
        closed.add(c)
    for a in closed:
        for b in closed:
            if a & b not in closed:
                return Verdict(False, ("intersection_closed", side, labels(a), labels(b)))
    return Verdict(True)


def check_galois_laws(ctx: FormalContext, *, limit: int = DEFAULT_SUBSET_LIMIT) -> Verdict:
    """Exhaustive check of the Galois connection laws on both sides.

    Per side: ``A`` is contained in ``A''``; adding an element shrinks ``A'``
    (enough for antitonicity); ``A' = A'''``; closure is idempotent;
    ``A'`` is the intersection of the singleton derivations; closed sets
    are closed under intersection.  Witness: ``(law, side, labels...)``.
    """
    if ctx.n_objects > limit or ctx.n_attributes > limit:
        raise TooLarge(f"exhaustive subset scan refused beyond {limit} objects/attributes")
    v = _galois_side(
        ctx.n_objects, ctx.derive_objects, ctx.derive_attributes, ctx.close_objects, ctx.object_labels, "objects"
    )
    if not v:
        return v
    return _galois_side(
        ctx.n_attributes,
        ctx.derive_attributes,
        ctx.derive_objects,
        ctx.close_attributes,
        ctx.attribute_labels,
        "attributes",
    )


def running_example() -> FormalContext:
    """The 4 x 6 context used throughout the documentation and tests."""
    return FormalContext.from_matrix(
        [
            [1, 1, 1, 0, 0, 1],
            [0, 0, 0, 1, 1, 1],
            [0, 1, 0, 0, 1, 1],
            [1, 1, 1, 0, 0, 0],
        ],
        objects="abcd",
        attributes="012345",
    )
