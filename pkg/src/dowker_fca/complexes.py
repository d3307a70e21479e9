"""Hypergraph views of a context and the complexes built from them.

Hyperedges and faces are bitsets over the vertex list.  ``collapse`` reads
the columns of a context as hyperedges; from there we close under
intersection (the intersection complex), or under subsets (the Dowker
complex).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from . import _bits
from .concept import enumerate_concepts
from .context import FormalContext
from .errors import FaceBudgetExceeded, TheoremMismatch
from .order import DEFAULT_ISO_BUDGET, Poset, Verdict, order_isomorphism, subset_poset

DEFAULT_FACE_BUDGET = 2**20


@dataclass(frozen=True)
class Hypergraph:
    vertices: tuple[str, ...]
    edges: tuple[int, ...]
    # number of context columns merged into each edge (collapse only)
    multiplicity: tuple[int, ...] | None = None

    def __post_init__(self):
        if len(set(self.edges)) != len(self.edges):
            raise ValueError("hyperedges must be distinct")
        full = _bits.full(len(self.vertices))
        if any(e & ~full for e in self.edges):
            raise ValueError("hyperedge uses a vertex outside the vertex list")

    @property
    def full(self) -> int:
        return _bits.full(len(self.vertices))

    def labels(self, edge: int) -> list[str]:
        return [self.vertices[i] for i in _bits.iter_bits(edge)]

    def to_json(self) -> dict:
        out = {"vertices": list(self.vertices), "edges": [self.labels(e) for e in self.edges]}
        if self.multiplicity is not None:
            out["multiplicity"] = list(self.multiplicity)
        return out


def hyp_rep(ctx: FormalContext) -> tuple[Hypergraph, tuple[int, ...]]:
    """Collapsed hypergraph of the columns plus the attribute -> edge index."""
    edges: list[int] = []
    where: dict[int, int] = {}
    edge_of = []
    for col in ctx.cols:
        if col not in where:
            where[col] = len(edges)
            edges.append(col)
        edge_of.append(where[col])
    mult = [0] * len(edges)
    for e in edge_of:
        mult[e] += 1
    return Hypergraph(ctx.objects, tuple(edges), tuple(mult)), tuple(edge_of)


def collapse(ctx: FormalContext) -> Hypergraph:
    """Columns of ``ctx`` as hyperedges over the objects, duplicates merged."""
    return hyp_rep(ctx)[0]


def collapsed_context(ctx: FormalContext) -> FormalContext:
    """``ctx`` with duplicate columns removed; the first attribute label of each group survives."""
    h, edge_of = hyp_rep(ctx)
    keep = [edge_of.index(e) for e in range(len(h.edges))]
    return FormalContext.from_matrix(
        [[int(ctx.incident(g, m)) for m in keep] for g in range(ctx.n_objects)],
        ctx.objects,
        [ctx.attributes[m] for m in keep],
    )


def top(h: Hypergraph) -> Hypergraph:
    """Add the full vertex set as an edge if it is missing."""
    if h.full in h.edges:
        return h
    mult = None if h.multiplicity is None else h.multiplicity + (0,)
    return Hypergraph(h.vertices, h.edges + (h.full,), mult)


def edge_poset(h: Hypergraph) -> Poset:
    return subset_poset(h.edges)


def intersection_complex(h: Hypergraph) -> Hypergraph:
    """Close the edge family under intersections of nonempty subfamilies.

    The empty set is kept when it arises (from disjoint edges).  Input edges
    come first, in their original order; new edges follow in canonical order.
    """
    closed = set(h.edges)
    frontier = set(h.edges)
    while frontier:
        fresh = set()
        for a in frontier:
            for b in closed:
                c = a & b
                if c not in closed:
                    fresh.add(c)
        closed |= fresh
        frontier = fresh
    added = sorted(closed - set(h.edges), key=_bits.canonical_key)
    return Hypergraph(h.vertices, h.edges + tuple(added))


def int_close_lattice(h: Hypergraph) -> Poset:
    """Edge order of the topped intersection complex; always a complete lattice."""
    return edge_poset(top(intersection_complex(h)))


@dataclass(frozen=True, eq=False)
class AbstractSimplicialComplex:
    """Downward-closed family of nonempty vertex sets, stored by its facets."""

    vertices: tuple[str, ...]
    facets: tuple[int, ...]
    budget: int = field(default=DEFAULT_FACE_BUDGET, repr=False)

    def __post_init__(self):
        if any(f == 0 for f in self.facets):
            raise ValueError("the empty set is not a face")

    @classmethod
    def from_faces(
        cls, vertices: Sequence[str], faces: Iterable[int], budget: int = DEFAULT_FACE_BUDGET
    ) -> "AbstractSimplicialComplex":
        """Subset closure of ``faces`` (empty sets are dropped)."""
        faces = {f for f in faces if f}
        facets = [f for f in faces if not any(f != g and f & ~g == 0 for g in faces)]
        return cls(tuple(vertices), tuple(sorted(facets, key=_bits.canonical_key)), budget)

    @classmethod
    def simplex(cls, vertices: Sequence[str], face: int) -> "AbstractSimplicialComplex":
        return cls(tuple(vertices), (face,) if face else ())

    @cached_property
    def all_faces(self) -> tuple[int, ...]:
        """Every face, ordered by dimension and then lexicographically."""
        faces: set[int] = set()
        for f in self.facets:
            if (1 << _bits.count(f)) - 1 > self.budget:
                raise FaceBudgetExceeded(f"a facet alone has more than {self.budget} faces")
            for s in _bits.submasks(f):
                faces.add(s)
            if len(faces) > self.budget:
                raise FaceBudgetExceeded(f"complex has more than {self.budget} faces")
        return tuple(sorted(faces, key=_bits.canonical_key))

    @cached_property
    def face_set(self) -> frozenset[int]:
        return frozenset(self.all_faces)

    def __contains__(self, face: int) -> bool:
        return face in self.face_set

    def __len__(self) -> int:
        return len(self.all_faces)

    @property
    def vertex_set(self) -> int:
        out = 0
        for f in self.facets:
            out |= f
        return out

    def faces_of_dim(self, k: int) -> list[int]:
        return [f for f in self.all_faces if _bits.count(f) == k + 1]

    @property
    def dimension(self) -> int:
        return max((_bits.count(f) - 1 for f in self.facets), default=-1)

    def f_vector(self) -> list[int]:
        counts = [0] * (self.dimension + 1)
        for f in self.all_faces:
            counts[_bits.count(f) - 1] += 1
        return counts

    def labels(self, face: int) -> list[str]:
        return [self.vertices[i] for i in _bits.iter_bits(face)]

    def to_json(self) -> dict:
        return {"vertices": list(self.vertices), "facets": [self.labels(f) for f in self.facets]}


def dowker_complex(h: Hypergraph | AbstractSimplicialComplex, *, budget: int = DEFAULT_FACE_BUDGET) -> AbstractSimplicialComplex:
    """All nonempty subsets of hyperedges; an ASC passes through unchanged."""
    if isinstance(h, AbstractSimplicialComplex):
        return AbstractSimplicialComplex(h.vertices, h.facets, budget)
    return AbstractSimplicialComplex.from_faces(h.vertices, h.edges, budget)


def d_ctx(ctx: FormalContext, *, budget: int = DEFAULT_FACE_BUDGET) -> AbstractSimplicialComplex:
    """The Dowker complex of a context: object sets sharing at least one attribute."""
    return dowker_complex(collapse(ctx), budget=budget)


def face_poset(asc: AbstractSimplicialComplex, topped: bool = False) -> Poset:
    faces = list(asc.all_faces)
    full = _bits.full(len(asc.vertices))
    if topped and full not in asc.face_set:
        faces.append(full)
    return subset_poset(faces)


def is_simplicial_map(
    src: AbstractSimplicialComplex, dst: AbstractSimplicialComplex, vertex_map: Mapping[int, int] | Sequence[int]
) -> Verdict:
    """Every face of ``src`` lands on a face of ``dst`` (duplicates merged).

    Checking facets suffices because ``dst`` is closed under subsets.  The
    witness is the offending facet's image as vertex labels of ``dst``.
    """
    for f in src.facets:
        try:
            img = _bits.image(f, vertex_map)
        except (KeyError, IndexError):
            return Verdict(False, ("unmapped", src.labels(f)))
        if img not in dst.face_set:
            return Verdict(False, dst.labels(img))
    return Verdict(True)


@dataclass(frozen=True)
class Theorem1Report:
    extents: tuple[int, ...]
    edges: tuple[int, ...]
    # concept index -> element index of the intersection lattice
    matching: dict[int, int]

    def to_json(self, ctx: FormalContext) -> dict:
        return {
            "size": len(self.extents),
            "extents": [ctx.object_labels(e) for e in self.extents],
            "matching": [[k, v] for k, v in sorted(self.matching.items())],
        }


def verify_theorem1(
    ctx: FormalContext,
    hypergraph: Hypergraph | None = None,
    *,
    iso_budget: int = DEFAULT_ISO_BUDGET,
) -> Theorem1Report:
    """Compare the topped intersection closure of the columns with the extent lattice.

    ``hypergraph`` defaults to ``collapse(ctx)``; passing a stored one lets
    callers audit it against the context.  Raises :class:`TheoremMismatch`
    whose witness is the first extent (as labels) present on one side only.
    """
    h = collapse(ctx) if hypergraph is None else hypergraph
    lattice = int_close_lattice(h)
    concepts = enumerate_concepts(ctx)
    edges = tuple(lattice.elements)
    extents = tuple(concepts.extents())
    only_concepts = sorted(set(extents) - set(edges), key=_bits.canonical_key)
    only_edges = sorted(set(edges) - set(extents), key=_bits.canonical_key)
    if only_concepts or only_edges:
        first = (only_concepts + only_edges)[0]
        side = "extent missing from intersection closure" if only_concepts else "edge that is not an extent"
        raise TheoremMismatch(f"{side}: {ctx.object_labels(first)}", ctx.object_labels(first))
    iso = order_isomorphism(concepts.poset, lattice, budget=iso_budget)
    if iso is None:
        raise TheoremMismatch("extent lattice and intersection lattice are not order-isomorphic")
    # identical families under inclusion: the identity on sets must be one such map
    identity = {i: lattice.index(e) for i, e in enumerate(extents)}
    return Theorem1Report(extents, edges, identity)


__all__ = [
    "AbstractSimplicialComplex",
    "DEFAULT_FACE_BUDGET",
    "Hypergraph",
    "Theorem1Report",
    "collapse",
    "collapsed_context",
    "d_ctx",
    "dowker_complex",
    "edge_poset",
    "face_poset",
    "hyp_rep",
    "int_close_lattice",
    "intersection_complex",
    "is_simplicial_map",
    "top",
    "verify_theorem1",
]
