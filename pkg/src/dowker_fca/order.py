"""Finite posets and lattices.

Elements are identified by their index; the ``elements`` tuple only carries
opaque identifiers for callers that want to label things.  The order itself
is a read-only boolean matrix ``leq[i, j] == (element i <= element j)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Hashable, Iterable, Sequence

import numpy as np

from .errors import (
    NotALattice,
    NotAntisymmetric,
    NotReflexive,
    NotTransitive,
    SearchExhausted,
)

DEFAULT_ISO_BUDGET = 10**7


@dataclass(frozen=True)
class CoverRelation:
    """Covering pairs ``(lower, upper)`` of a poset, by element index."""

    pairs: tuple[tuple[int, int], ...]

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    def __contains__(self, pair) -> bool:
        return tuple(pair) in self.pairs


@dataclass(frozen=True)
class Verdict:
    """Boolean outcome plus the witness that decided it (``None`` on success)."""

    ok: bool
    witness: Any = None

    def __bool__(self) -> bool:
        return self.ok


class Poset:
    """An immutable finite partial order."""

    __slots__ = ("elements", "leq", "_index")

    def __init__(self, elements: Sequence[Hashable], leq: np.ndarray, *, check: bool = True):
        elements = tuple(elements)
        leq = np.array(leq, dtype=bool)
        n = len(elements)
        if leq.shape != (n, n):
            raise ValueError(f"order matrix has shape {leq.shape}, expected {(n, n)}")
        index = {e: i for i, e in enumerate(elements)}
        if len(index) != n:
            raise ValueError("poset elements must be unique")
        if check:
            _check_partial_order(elements, leq)
        leq.setflags(write=False)
        object.__setattr__(self, "elements", elements)
        object.__setattr__(self, "leq", leq)
        object.__setattr__(self, "_index", index)

    def __setattr__(self, name, value):
        raise AttributeError("Poset is immutable")

    def __len__(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        return f"Poset({len(self)} elements, {int(self.leq.sum())} comparable pairs)"

    def index(self, element: Hashable) -> int:
        return self._index[element]

    def le(self, i: int, j: int) -> bool:
        return bool(self.leq[i, j])

    def lt(self, i: int, j: int) -> bool:
        return i != j and bool(self.leq[i, j])

    def strict(self) -> np.ndarray:
        return self.leq & ~np.eye(len(self), dtype=bool)

    def down_set(self, i: int) -> list[int]:
        return np.flatnonzero(self.leq[:, i]).tolist()

    def up_set(self, i: int) -> list[int]:
        return np.flatnonzero(self.leq[i, :]).tolist()

    def minimal(self, subset: Iterable[int] | None = None) -> list[int]:
        idx = list(range(len(self))) if subset is None else sorted(set(subset))
        return [x for x in idx if not any(y != x and self.leq[y, x] for y in idx)]

    def maximal(self, subset: Iterable[int] | None = None) -> list[int]:
        idx = list(range(len(self))) if subset is None else sorted(set(subset))
        return [x for x in idx if not any(y != x and self.leq[x, y] for y in idx)]

    def upper_bounds(self, subset: Iterable[int]) -> list[int]:
        mask = np.ones(len(self), dtype=bool)
        for i in subset:
            mask &= self.leq[i, :]
        return np.flatnonzero(mask).tolist()

    def lower_bounds(self, subset: Iterable[int]) -> list[int]:
        mask = np.ones(len(self), dtype=bool)
        for i in subset:
            mask &= self.leq[:, i]
        return np.flatnonzero(mask).tolist()

    def join(self, subset: Iterable[int]) -> int | None:
        """Least upper bound of ``subset``, or ``None`` if it does not exist."""
        ub = self.upper_bounds(subset)
        least = self.minimal(ub)
        return least[0] if len(least) == 1 else None

    def meet(self, subset: Iterable[int]) -> int | None:
        lb = self.lower_bounds(subset)
        greatest = self.maximal(lb)
        return greatest[0] if len(greatest) == 1 else None

    def top(self) -> int | None:
        return self.join([]) if len(self) else None

    def bottom(self) -> int | None:
        return self.meet([]) if len(self) else None

    def levels(self) -> list[int]:
        """Length of the longest chain ending at each element."""
        n = len(self)
        strict = self.strict()
        level = [0] * n
        # elements with fewer strict predecessors can never sit higher
        for j in sorted(range(n), key=lambda k: int(strict[:, k].sum())):
            preds = np.flatnonzero(strict[:, j])
            if len(preds):
                level[j] = 1 + max(level[p] for p in preds)
        return level

    def subposet(self, indices: Sequence[int]) -> "Poset":
        idx = list(indices)
        return Poset([self.elements[i] for i in idx], self.leq[np.ix_(idx, idx)], check=False)

    def to_json(self, labels: Callable[[Hashable], str] | None = None) -> dict:
        label = labels or str
        return {
            "elements": [label(e) for e in self.elements],
            "covers": [list(p) for p in hasse(self)],
        }


def _check_partial_order(elements: Sequence, leq: np.ndarray) -> None:
    n = len(elements)
    diag = np.flatnonzero(~np.diag(leq))
    if len(diag):
        x = elements[diag[0]]
        raise NotReflexive(f"{x!r} is not <= itself", (x, x))
    both = leq & leq.T & ~np.eye(n, dtype=bool)
    if both.any():
        i, j = np.argwhere(both)[0]
        raise NotAntisymmetric(
            f"{elements[i]!r} <= {elements[j]!r} and back, but they differ",
            (elements[i], elements[j]),
        )
    li = leq.astype(np.int64)
    missing = ((li @ li) > 0) & ~leq
    if missing.any():
        i, k = np.argwhere(missing)[0]
        j = int(np.flatnonzero(leq[i, :] & leq[:, k])[0])
        raise NotTransitive(
            f"{elements[i]!r} <= {elements[j]!r} <= {elements[k]!r} but not {elements[i]!r} <= {elements[k]!r}",
            (elements[i], elements[k]),
        )


def make_poset(elements: Sequence[Hashable], leq) -> Poset:
    """Build a poset from a matrix, a set of ``(x, y)`` pairs, or a predicate.

    Sets and lists of tuples are read as pairs; nested lists and arrays as
    ``|P| x |P|`` matrices.

    Raises :class:`NotReflexive`, :class:`NotAntisymmetric` or
    :class:`NotTransitive` with a witness pair when ``leq`` is not a
    partial order.
    """
    elements = tuple(elements)
    n = len(elements)
    if callable(leq):
        mat = np.array([[bool(leq(x, y)) for y in elements] for x in elements], dtype=bool)
        mat = mat.reshape(n, n)
    elif isinstance(leq, (set, frozenset)) or (
        isinstance(leq, (list, tuple)) and all(isinstance(pair, tuple) for pair in leq) and len(leq)
    ):
        pos = {e: i for i, e in enumerate(elements)}
        mat = np.zeros((n, n), dtype=bool)
        for x, y in leq:
            mat[pos[x], pos[y]] = True
    else:
        mat = np.asarray(leq, dtype=bool).reshape(n, n)
    return Poset(elements, mat)


def subset_poset(sets: Sequence[int]) -> Poset:
    """Poset of bitmask sets under inclusion."""
    n = len(sets)
    mat = np.zeros((n, n), dtype=bool)
    for i, a in enumerate(sets):
        for j, b in enumerate(sets):
            mat[i, j] = a & ~b == 0
    return Poset(sets, mat)


def hasse(p: Poset) -> CoverRelation:
    """Covering pairs: the reflexive and transitive reduction of ``p``."""
    strict = p.strict()
    si = strict.astype(np.int64)
    covers = strict & ~((si @ si) > 0)
    return CoverRelation(tuple((int(i), int(j)) for i, j in np.argwhere(covers)))


def meet_join_sets(p: Poset, x: int, y: int) -> tuple[list[int], list[int]]:
    """Maximal common lower bounds and minimal common upper bounds of ``x`` and ``y``."""
    return p.maximal(p.lower_bounds([x, y])), p.minimal(p.upper_bounds([x, y]))


def is_complete_lattice(p: Poset) -> Verdict:
    """Finite completeness: a top, a bottom, and a unique join and meet for every pair.

    On failure the witness is the subset whose join or meet does not exist.
    """
    n = len(p)
    if n == 0 or p.top() is None or p.bottom() is None:
        return Verdict(False, tuple(range(n)))
    for x in range(n):
        for y in range(x + 1, n):
            meets, joins = meet_join_sets(p, x, y)
            if len(meets) != 1 or len(joins) != 1:
                return Verdict(False, (x, y))
    return Verdict(True)


def _signatures(p: Poset) -> list[tuple[int, int, int]]:
    strict = p.strict()
    below = strict.sum(axis=0)
    above = strict.sum(axis=1)
    levels = p.levels()
    return [(int(below[i]), int(above[i]), levels[i]) for i in range(len(p))]


def order_isomorphism(p: Poset, q: Poset, *, budget: int = DEFAULT_ISO_BUDGET) -> dict[int, int] | None:
    """Find ``f`` with ``x <= y`` iff ``f(x) <= f(y)``, as an index map ``p -> q``.

    Candidates are pruned by (#below, #above, level) signatures before
    backtracking.  Returns ``None`` when no isomorphism exists and raises
    :class:`SearchExhausted` after ``budget`` backtracking steps.
    """
    n = len(p)
    if n != len(q) or int(p.leq.sum()) != int(q.leq.sum()):
        return None
    sp, sq = _signatures(p), _signatures(q)
    if sorted(sp) != sorted(sq):
        return None
    candidates = [[j for j in range(n) if sq[j] == sp[i]] for i in range(n)]
    order = sorted(range(n), key=lambda i: (len(candidates[i]), sp[i][2], i))
    pl, ql = p.leq, q.leq
    assignment: dict[int, int] = {}
    used = [False] * n
    steps = 0

    def extend(k: int) -> bool:
        nonlocal steps
        if k == n:
            return True
        i = order[k]
        for j in candidates[i]:
            if used[j]:
                continue
            steps += 1
            if steps > budget:
                raise SearchExhausted(f"order isomorphism search exceeded {budget} steps")
            if all(pl[i, a] == ql[j, b] and pl[a, i] == ql[b, j] for a, b in assignment.items()):
                assignment[i] = j
                used[j] = True
                if extend(k + 1):
                    return True
                del assignment[i]
                used[j] = False
        return False

    return dict(sorted(assignment.items())) if extend(0) else None


def _require_lattice(p: Poset) -> None:
    verdict = is_complete_lattice(p)
    if not verdict:
        raise NotALattice("poset is not a complete lattice", verdict.witness)


def is_join_dense(p: Poset, subset: Iterable[int]) -> bool:
    """Every element is the join of the members of ``subset`` below it."""
    _require_lattice(p)
    s = sorted(set(subset))
    return all(p.join([a for a in s if p.leq[a, x]]) == x for x in range(len(p)))


def is_meet_dense(p: Poset, subset: Iterable[int]) -> bool:
    _require_lattice(p)
    s = sorted(set(subset))
    return all(p.meet([a for a in s if p.leq[x, a]]) == x for x in range(len(p)))


def chain(n: int) -> Poset:
    return Poset(range(n), np.triu(np.ones((n, n), dtype=bool)))


def antichain(n: int) -> Poset:
    return Poset(range(n), np.eye(n, dtype=bool))


__all__ = [
    "CoverRelation",
    "DEFAULT_ISO_BUDGET",
    "Poset",
    "Verdict",
    "antichain",
    "chain",
    "hasse",
    "is_complete_lattice",
    "is_join_dense",
    "is_meet_dense",
    "make_poset",
    "meet_join_sets",
    "order_isomorphism",
    "subset_poset",
]
