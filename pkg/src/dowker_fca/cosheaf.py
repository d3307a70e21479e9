"""The Dowker cosheaf of a context.

The cosheaf lives on the topped face poset of the Dowker complex.  Its
costalk at a face ``s`` is the full simplex on the attribute set ``s'``,
and the extension along ``s <= t`` is the inclusion ``t' -> s'``.  Costalks
are stored as attribute bitsets; the simplex is built on demand.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import _bits
from .complexes import DEFAULT_FACE_BUDGET, AbstractSimplicialComplex, d_ctx, face_poset, is_simplicial_map
from .concept import ConceptLattice, GaloisPair, enumerate_concepts
from .context import DEFAULT_SUBSET_LIMIT, FormalContext
from .errors import EmptyDowkerComplex, NotAFacePair, TheoremMismatch, TooLarge
from .order import DEFAULT_ISO_BUDGET, Poset, order_isomorphism, subset_poset


@dataclass(frozen=True)
class Extension:
    """Inclusion of costalk vertices ``t' -> s'`` for faces ``s <= t``."""

    source: int  # the larger face t
    target: int  # the smaller face s
    vertex_map: dict[int, int]

    def compose(self, inner: "Extension") -> "Extension":
        """``self after inner``: ``inner`` maps ``u' -> t'``, ``self`` maps ``t' -> s'``."""
        if inner.target != self.source:
            raise NotAFacePair("extensions do not compose")
        return Extension(inner.source, self.target, {v: self.vertex_map[w] for v, w in inner.vertex_map.items()})


@dataclass(frozen=True, eq=False)
class DowkerCosheaf:
    context: FormalContext
    complex: AbstractSimplicialComplex
    # faces of the Dowker complex, by dimension then lexicographically
    cells: tuple[int, ...]
    # base poset elements: the cells, then the full object set if it is not a cell
    base: Poset

    @cached_property
    def _costalks(self) -> dict[int, int]:
        return {s: self.context.derive_objects(s) for s in self.base.elements}

    def costalk_vertices(self, face: int) -> int:
        """The vertex-level restriction: ``s'`` as an attribute bitset."""
        try:
            return self._costalks[face]
        except KeyError:
            raise NotAFacePair(f"{self.context.object_labels(face)} is not a cell of the base") from None

    def costalk(self, face: int) -> AbstractSimplicialComplex:
        return AbstractSimplicialComplex.simplex(self.context.attributes, self.costalk_vertices(face))

    def galois_label(self, face: int) -> GaloisPair:
        return GaloisPair(face, self.costalk_vertices(face))

    def is_concept(self, face: int) -> bool:
        return self.context.close_objects(face) == face

    def extension(self, s: int, t: int) -> Extension:
        return extension(self, s, t)

    def to_json(self) -> dict:
        ctx = self.context
        return {
            "cells": [
                {
                    "face": ctx.object_labels(s),
                    "costalk": ctx.attribute_labels(self.costalk_vertices(s)),
                    "is_concept": self.is_concept(s),
                }
                for s in self.cells
            ]
        }


def dowker_cosheaf(ctx: FormalContext, *, budget: int = DEFAULT_FACE_BUDGET) -> DowkerCosheaf:
    asc = d_ctx(ctx, budget=budget)
    if not asc.facets:
        raise EmptyDowkerComplex("no object has any attribute; the Dowker complex is empty")
    cells = asc.all_faces
    base = face_poset(asc, topped=True)
    return DowkerCosheaf(ctx, asc, cells, base)


def extension(cs: DowkerCosheaf, s: int, t: int) -> Extension:
    """Extension along ``s <= t``: the identity on the attributes of ``t'``."""
    if s not in cs._costalks or t not in cs._costalks or s & ~t:
        raise NotAFacePair(
            f"{cs.context.object_labels(s)} <= {cs.context.object_labels(t)} is not a face pair of the base"
        )
    return Extension(t, s, {m: m for m in _bits.iter_bits(cs.costalk_vertices(t))})


def check_extension(cs: DowkerCosheaf, ext: Extension) -> bool:
    """The extension is an injective simplicial map between the two costalks."""
    src, dst = cs.costalk(ext.source), cs.costalk(ext.target)
    injective = len(set(ext.vertex_map.values())) == len(ext.vertex_map)
    return injective and bool(is_simplicial_map(src, dst, ext.vertex_map))


def pos_rep(ctx: FormalContext, *, limit: int = DEFAULT_SUBSET_LIMIT) -> Poset:
    """Nonempty object sets with a common attribute, ordered by inclusion (subset scan)."""
    if ctx.n_objects > limit:
        raise TooLarge(f"pos_rep scans 2^{ctx.n_objects} subsets; limit is {limit} objects")
    sets = [A for A in range(1, 1 << ctx.n_objects) if ctx.derive_objects(A)]
    sets.sort(key=_bits.canonical_key)
    return subset_poset(sets)


@dataclass(frozen=True)
class CostalkReport:
    poset: Poset  # unique costalk vertex sets under inclusion
    intents: tuple[int, ...]
    # intents with no costalk: only the full attribute set, when no object has every attribute
    extremes_added: tuple[int, ...]
    # costalk poset (plus extremes) -> intent lattice ordered by inclusion
    matching: dict[int, int]


def unique_costalk_lattice(cs: DowkerCosheaf, *, iso_budget: int = DEFAULT_ISO_BUDGET) -> CostalkReport:
    """Deduplicate costalks over the topped base and match them with the intents.

    The topped base contributes ``G'``.  The only intent that can be missing
    is the full attribute set (when ``M' = {}``); it is adjoined explicitly
    and reported in ``extremes_added``.
    """
    ctx = cs.context
    unique = sorted({cs.costalk_vertices(s) for s in cs.base.elements}, key=_bits.canonical_key)
    poset = subset_poset(unique)
    intents = sorted(enumerate_concepts(ctx).intents(), key=_bits.canonical_key)
    extras = tuple(sorted(set(intents) - set(unique), key=_bits.canonical_key))
    stray = set(unique) - set(intents)
    if stray or any(b != ctx.all_attributes for b in extras):
        bad = sorted(stray or set(extras), key=_bits.canonical_key)[0]
        raise TheoremMismatch(f"costalk/intent mismatch at {ctx.attribute_labels(bad)}", ctx.attribute_labels(bad))
    padded = subset_poset(unique + list(extras))
    target = subset_poset(intents)
    iso = order_isomorphism(padded, target, budget=iso_budget)
    if iso is None:
        raise TheoremMismatch("unique costalks are not order-isomorphic to the intents")
    return CostalkReport(poset, tuple(intents), extras, iso)


@dataclass(frozen=True, eq=False)
class RecoveredConcepts:
    pairs: tuple[GaloisPair, ...]
    poset: Poset


def recover_concepts(cs: DowkerCosheaf) -> RecoveredConcepts:
    """Read the concepts off the cosheaf alone.

    A base element is a concept when no strictly larger base element has the
    same costalk.  The empty extent is a concept exactly when no cell's
    costalk is the whole attribute universe; it is adjoined in that case.
    """
    full_m = _bits.full(len(cs.context.attributes))
    elements = cs.base.elements
    strict = cs.base.strict()
    pairs = []
    for i, s in enumerate(elements):
        cost = cs.costalk_vertices(s)
        if any(cs.costalk_vertices(elements[j]) == cost for j in np.flatnonzero(strict[i, :])):
            continue
        pairs.append(GaloisPair(s, cost))
    if not any(cs.costalk_vertices(s) == full_m for s in elements):
        pairs.append(GaloisPair(0, full_m))
    pairs.sort(key=lambda k: _bits.canonical_key(k.extent))
    n = len(pairs)
    leq = np.array([[a.extent & ~b.extent == 0 for b in pairs] for a in pairs], dtype=bool).reshape(n, n)
    return RecoveredConcepts(tuple(pairs), Poset(range(n), leq, check=False))


def verify_cosheaf_recovery(
    ctx: FormalContext, *, iso_budget: int = DEFAULT_ISO_BUDGET, budget: int = DEFAULT_FACE_BUDGET
) -> tuple[RecoveredConcepts, ConceptLattice, dict[int, int]]:
    """Recover concepts from the cosheaf and match them with the concept lattice."""
    rec = recover_concepts(dowker_cosheaf(ctx, budget=budget))
    lattice = enumerate_concepts(ctx)
    got = {(k.extent, k.intent) for k in rec.pairs}
    want = {(k.extent, k.intent) for k in lattice.concepts}
    if got != want:
        diff = sorted(got ^ want, key=lambda p: _bits.canonical_key(p[0]))[0]
        raise TheoremMismatch(
            f"recovered concepts differ at {GaloisPair(*diff).format(ctx)}", GaloisPair(*diff).format(ctx)
        )
    iso = order_isomorphism(rec.poset, lattice.poset, budget=iso_budget)
    if iso is None:
        raise TheoremMismatch("recovered concepts are not order-isomorphic to the concept lattice")
    return rec, lattice, iso


def m_hat(ctx: FormalContext, face: int) -> int:
    """Attributes whose column is exactly ``face``."""
    out = 0
    for m, col in enumerate(ctx.cols):
        if col == face:
            out |= 1 << m
    return out


def extent_embedding(ctx: FormalContext) -> dict[int, int]:
    """Index map from the nonempty extents into the topped face poset.

    The empty extent has no face to land on and is left out.
    """
    base = face_poset(d_ctx(ctx), topped=True)
    return {e: base.index(e) for e in enumerate_concepts(ctx).extents() if e}


__all__ = [
    "CostalkReport",
    "DowkerCosheaf",
    "Extension",
    "RecoveredConcepts",
    "check_extension",
    "dowker_cosheaf",
    "extension",
    "extent_embedding",
    "m_hat",
    "pos_rep",
    "recover_concepts",
    "unique_costalk_lattice",
    "verify_cosheaf_recovery",
]
