"""Concept enumeration and the concept lattice."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import _bits
from .context import FormalContext
from .errors import NotALattice, UnknownLabel
from .order import Poset, hasse, is_complete_lattice


def _compact(labels: Sequence[str]) -> str:
    if all(len(x) == 1 for x in labels):
        return "".join(labels)
    return ",".join(labels)


@dataclass(frozen=True)
class GaloisPair:
    """An object set paired with an attribute set, both as bitsets."""

    extent: int
    intent: int

    def is_concept(self, ctx: FormalContext) -> bool:
        return ctx.derive_objects(self.extent) == self.intent and ctx.derive_attributes(self.intent) == self.extent

    def labels(self, ctx: FormalContext) -> tuple[list[str], list[str]]:
        return ctx.object_labels(self.extent), ctx.attribute_labels(self.intent)

    def format(self, ctx: FormalContext, sep: str = "|") -> str:
        """Compact notation such as ``ad|012``."""
        a, b = self.labels(ctx)
        return f"{_compact(a)}{sep}{_compact(b)}"

    def to_json(self, ctx: FormalContext) -> dict:
        a, b = self.labels(ctx)
        return {"extent": a, "intent": b}


def next_closure(ctx: FormalContext) -> Iterator[int]:
    """Yield every closed attribute set (intent) in lectic order.

    Attribute ``j`` is lectically smaller than ``k`` when ``j < k``; an
    intent ``A`` precedes ``B`` when the smallest attribute on which they
    differ belongs to ``B``.
    """
    n = ctx.n_attributes
    intent = ctx.close_attributes(0)
    yield intent
    while intent != ctx.all_attributes:
        for i in range(n - 1, -1, -1):
            bit = 1 << i
            if intent & bit:
                continue
            below = bit - 1
            candidate = ctx.close_attributes((intent & below) | bit)
            if candidate & below == intent & below:
                intent = candidate
                yield intent
                break
        else:  # pragma: no cover - the loop always finds a successor before M
            return


@dataclass(frozen=True)
class ReducedLabels:
    """Per-concept reduced extent and reduced intent, aligned with the lattice's concepts."""

    extents: tuple[int, ...]
    intents: tuple[int, ...]

    def __getitem__(self, k: int) -> GaloisPair:
        return GaloisPair(self.extents[k], self.intents[k])


@dataclass(frozen=True, eq=False)
class ConceptLattice:
    context: FormalContext
    concepts: tuple[GaloisPair, ...]
    poset: Poset
    gamma_index: tuple[int, ...]
    mu_index: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.concepts)

    def __iter__(self):
        return iter(self.concepts)

    @cached_property
    def _by_extent(self) -> dict[int, int]:
        return {k.extent: i for i, k in enumerate(self.concepts)}

    @cached_property
    def _by_intent(self) -> dict[int, int]:
        return {k.intent: i for i, k in enumerate(self.concepts)}

    def index_of(self, concept: GaloisPair) -> int:
        return self._by_extent[concept.extent]

    def index_of_extent(self, extent: int) -> int:
        return self._by_extent[extent]

    def index_of_intent(self, intent: int) -> int:
        return self._by_intent[intent]

    def extents(self) -> list[int]:
        return [k.extent for k in self.concepts]

    def intents(self) -> list[int]:
        return [k.intent for k in self.concepts]

    def top(self) -> GaloisPair:
        return self.concepts[self._by_extent[self.context.all_objects]]

    def bottom(self) -> GaloisPair:
        return self.concepts[self._by_intent[self.context.all_attributes]]

    def join(self, concepts: Iterable[GaloisPair]) -> GaloisPair:
        """``((union of extents)'', intersection of intents)``; the empty join is the bottom."""
        ctx = self.context
        union = 0
        intent = ctx.all_attributes
        for k in concepts:
            union |= k.extent
            intent &= k.intent
        return GaloisPair(ctx.close_objects(union), intent)

    def meet(self, concepts: Iterable[GaloisPair]) -> GaloisPair:
        """``(intersection of extents, (union of intents)'')``; the empty meet is the top."""
        ctx = self.context
        extent = ctx.all_objects
        union = 0
        for k in concepts:
            extent &= k.extent
            union |= k.intent
        return GaloisPair(extent, ctx.close_attributes(union))

    def gamma(self, g: str) -> GaloisPair:
        try:
            return self.concepts[self.gamma_index[self.context.objects.index(g)]]
        except ValueError:
            raise UnknownLabel(f"unknown object {g!r}") from None

    def mu(self, m: str) -> GaloisPair:
        try:
            return self.concepts[self.mu_index[self.context.attributes.index(m)]]
        except ValueError:
            raise UnknownLabel(f"unknown attribute {m!r}") from None

    def hasse(self):
        return hasse(self.poset)

    def labels(self, sep: str = "|") -> list[str]:
        return [k.format(self.context, sep) for k in self.concepts]

    def to_json(self, reduced: bool = False) -> dict:
        out = {
            "concepts": [k.to_json(self.context) for k in self.concepts],
            "covers": [list(p) for p in self.hasse()],
        }
        if reduced:
            red = reduced_labels(self)
            out["reduced"] = [red[i].to_json(self.context) for i in range(len(self))]
        return out


def enumerate_concepts(ctx: FormalContext) -> ConceptLattice:
    """All concepts of ``ctx``, in lectic order of their intents, with the extent order."""
    concepts = tuple(GaloisPair(ctx.derive_attributes(b), b) for b in next_closure(ctx))
    n = len(concepts)
    leq = np.zeros((n, n), dtype=bool)
    for i, ki in enumerate(concepts):
        for j, kj in enumerate(concepts):
            leq[i, j] = ki.extent & ~kj.extent == 0
    poset = Poset(range(n), leq, check=False)
    by_extent = {k.extent: i for i, k in enumerate(concepts)}
    gamma = tuple(by_extent[ctx.close_objects(1 << g)] for g in range(ctx.n_objects))
    mu = tuple(by_extent[ctx.cols[m]] for m in range(ctx.n_attributes))
    return ConceptLattice(ctx, concepts, poset, gamma, mu)


def join(lattice: ConceptLattice, concepts: Iterable[GaloisPair]) -> GaloisPair:
    return lattice.join(concepts)


def meet(lattice: ConceptLattice, concepts: Iterable[GaloisPair]) -> GaloisPair:
    return lattice.meet(concepts)


def gamma(lattice: ConceptLattice, g: str) -> GaloisPair:
    """Object concept ``<g''|g'>``."""
    return lattice.gamma(g)


def mu(lattice: ConceptLattice, m: str) -> GaloisPair:
    """Attribute concept ``<m'|m''>``."""
    return lattice.mu(m)


def concept_of_objects(ctx: FormalContext, A: int) -> GaloisPair:
    """``<A''|A'>``."""
    intent = ctx.derive_objects(A)
    return GaloisPair(ctx.derive_attributes(intent), intent)


def concept_of_attributes(ctx: FormalContext, B: int) -> GaloisPair:
    """``<B'|B''>``."""
    extent = ctx.derive_attributes(B)
    return GaloisPair(extent, ctx.derive_objects(extent))


def reduced_labels(lattice: ConceptLattice) -> ReducedLabels:
    """Strip from each extent what lies below and from each intent what lies above."""
    strict = lattice.poset.strict()
    extents, intents = [], []
    for i, k in enumerate(lattice.concepts):
        below = 0
        above = 0
        for j in np.flatnonzero(strict[:, i]):
            below |= lattice.concepts[j].extent
        for j in np.flatnonzero(strict[i, :]):
            above |= lattice.concepts[j].intent
        extents.append(k.extent & ~below)
        intents.append(k.intent & ~above)
    return ReducedLabels(tuple(extents), tuple(intents))


def reconstruct_from_reduced(lattice: ConceptLattice, reduced: ReducedLabels) -> list[GaloisPair]:
    """Union reduced extents over down-sets and reduced intents over up-sets."""
    leq = lattice.poset.leq
    out = []
    for i in range(len(lattice)):
        extent = 0
        intent = 0
        for j in np.flatnonzero(leq[:, i]):
            extent |= reduced.extents[j]
        for j in np.flatnonzero(leq[i, :]):
            intent |= reduced.intents[j]
        out.append(GaloisPair(extent, intent))
    return out


def context_from_lattice(lattice: Poset) -> FormalContext:
    """The context ``(L, L, <=)`` whose concept lattice is isomorphic to ``lattice``."""
    verdict = is_complete_lattice(lattice)
    if not verdict:
        raise NotALattice("context_from_lattice needs a complete lattice", verdict.witness)
    labels = [str(e) for e in lattice.elements]
    if len(set(labels)) != len(labels):
        labels = [str(i) for i in range(len(lattice))]
    return FormalContext.from_matrix(lattice.leq.astype(int).tolist(), labels, labels)


def intersection_closed(family: Iterable[int]) -> bool:
    fam = set(family)
    return all(a & b in fam for a in fam for b in fam)


__all__ = [
    "ConceptLattice",
    "GaloisPair",
    "ReducedLabels",
    "concept_of_attributes",
    "concept_of_objects",
    "context_from_lattice",
    "enumerate_concepts",
    "gamma",
    "intersection_closed",
    "join",
    "meet",
    "mu",
    "next_closure",
    "reconstruct_from_reduced",
    "reduced_labels",
]
