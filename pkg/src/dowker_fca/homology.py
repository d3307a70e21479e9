"""Exact chain and cochain complexes built from contexts.

Everything is over the rationals.  Simplices are oriented by the global
vertex order (context row order for objects, column order for attributes)
and boundaries carry the usual alternating signs.  In the cosheaf grid the
horizontal (costalk) and vertical (base) differentials both use these signs,
so every square commutes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, Sequence

from . import _bits
from .complexes import DEFAULT_FACE_BUDGET, AbstractSimplicialComplex, d_ctx
from .context import FormalContext
from .cosheaf import dowker_cosheaf, m_hat
from .errors import FaceBudgetExceeded, NotAComplex, NotTotal, TheoremMismatch
from .linalg import Echelon, RationalMatrix, rank


@dataclass(frozen=True, eq=False)
class ChainComplex:
    """Graded vector spaces with differentials keyed by source degree.

    ``step`` is -1 for a chain complex (``maps[k]: C_k -> C_{k-1}``) and +1
    for a cochain complex (``maps[k]: C^k -> C^{k+1}``).  Missing maps are zero.
    """

    dims: tuple[int, ...]
    maps: dict[int, RationalMatrix]
    basis: tuple[tuple[Hashable, ...], ...] = ()
    step: int = -1

    def __post_init__(self):
        for k, mat in self.maps.items():
            tgt = k + self.step
            if not (0 <= k < len(self.dims) and 0 <= tgt < len(self.dims)):
                raise NotAComplex(f"differential from degree {k} leaves the complex", k)
            if mat.shape != (self.dims[tgt], self.dims[k]):
                raise NotAComplex(f"differential {k} has shape {mat.shape}, expected {(self.dims[tgt], self.dims[k])}", k)

    def map(self, k: int) -> RationalMatrix:
        tgt = k + self.step
        if k in self.maps:
            return self.maps[k]
        rows = self.dims[tgt] if 0 <= tgt < len(self.dims) else 0
        cols = self.dims[k] if 0 <= k < len(self.dims) else 0
        return RationalMatrix.zeros(rows, cols)

    @cached_property
    def ranks(self) -> dict[int, int]:
        return {k: rank(m) for k, m in self.maps.items()}

    def check(self) -> None:
        """Raise :class:`NotAComplex` unless consecutive differentials compose to zero."""
        for k, mat in self.maps.items():
            nxt = self.maps.get(k + self.step)
            if nxt is not None and not (nxt @ mat).is_zero():
                raise NotAComplex(f"differentials out of degrees {k} and {k + self.step} do not compose to zero", k)

    def betti(self) -> list[int]:
        return betti(self)

    def to_json(self, with_matrices: bool = False) -> dict:
        out = {
            "dims": list(self.dims),
            "ranks": {str(k): r for k, r in sorted(self.ranks.items())},
            "betti": self.betti(),
            "orientation": "chain" if self.step == -1 else "cochain",
        }
        if with_matrices:
            out["matrices"] = {str(k): m.to_strings() for k, m in sorted(self.maps.items())}
        return out


def betti(cc: ChainComplex) -> list[int]:
    """``dim C_k - rank(out of k) - rank(into k)`` per degree."""
    cc.check()
    r = cc.ranks
    return [
        d - r.get(k, 0) - r.get(k - cc.step, 0)
        for k, d in enumerate(cc.dims)
    ]


def _order_key(order: Sequence[int] | None):
    if order is None:
        return _bits.canonical_key
    pos = {v: i for i, v in enumerate(order)}
    return lambda face: (_bits.count(face), tuple(sorted(pos[v] for v in _bits.iter_bits(face))))


def _sorted_vertices(face: int, order: Sequence[int] | None) -> list[int]:
    verts = _bits.indices(face)
    if order is None:
        return verts
    pos = {v: i for i, v in enumerate(order)}
    return sorted(verts, key=pos.__getitem__)


def boundary_entries(face: int, order: Sequence[int] | None = None):
    """``(codim-1 face, sign)`` pairs of the oriented boundary of ``face``."""
    for i, v in enumerate(_sorted_vertices(face, order)):
        yield face & ~(1 << v), (-1) ** i


def simplicial_chain_complex(asc: AbstractSimplicialComplex, vertex_order: Sequence[int] | None = None) -> ChainComplex:
    """The simplicial chain complex of ``asc``.

    ``C_k`` is spanned by the k-faces sorted lexicographically under
    ``vertex_order`` (default: vertex index order).
    """
    key = _order_key(vertex_order)
    by_dim: list[list[int]] = [[] for _ in range(asc.dimension + 1)]
    for f in asc.all_faces:
        by_dim[_bits.count(f) - 1].append(f)
    for faces in by_dim:
        faces.sort(key=key)
    index = [{f: i for i, f in enumerate(faces)} for faces in by_dim]
    maps = {}
    for k in range(1, len(by_dim)):
        entries = {}
        for j, f in enumerate(by_dim[k]):
            for g, sign in boundary_entries(f, vertex_order):
                entries[index[k - 1][g], j] = sign
        maps[k] = RationalMatrix(len(by_dim[k - 1]), len(by_dim[k]), entries)
    basis = tuple(tuple(tuple(asc.labels(f)) for f in faces) for faces in by_dim)
    return ChainComplex(tuple(len(f) for f in by_dim), maps, basis, step=-1)


def _require_total(ctx: FormalContext) -> None:
    if not ctx.is_total():
        raise NotTotal("this construction needs a total context (no zero rows or columns)")


# Dowker sheaf


def dowker_sheaf_cochain(ctx: FormalContext, *, budget: int = DEFAULT_FACE_BUDGET) -> ChainComplex:
    """Cellular cochains of the Dowker sheaf.

    ``C^k`` has one basis vector ``(s, m)`` per k-face ``s`` and ``m in s'``.
    ``d^k`` sends ``(s_i, m)`` to ``(-1)^i (t, m)`` for each (k+1)-face ``t``
    whose i-th vertex removed gives ``s_i``, whenever ``m in t'``; this is
    the alternating sum of the projections ``span s' -> span t'``.
    """
    _require_total(ctx)
    asc = d_ctx(ctx, budget=budget)
    by_dim: list[list[int]] = [asc.faces_of_dim(k) for k in range(asc.dimension + 1)]
    basis: list[list[tuple[int, int]]] = [
        [(s, m) for s in faces for m in _bits.iter_bits(ctx.derive_objects(s))] for faces in by_dim
    ]
    index = [{b: i for i, b in enumerate(level)} for level in basis]
    maps = {}
    for k in range(len(by_dim) - 1):
        entries = {}
        for t in by_dim[k + 1]:
            t_prime = ctx.derive_objects(t)
            for s, sign in boundary_entries(t):
                for m in _bits.iter_bits(t_prime):
                    entries[index[k + 1][t, m], index[k][s, m]] = sign
        maps[k] = RationalMatrix(len(basis[k + 1]), len(basis[k]), entries)
    labels = tuple(
        tuple((tuple(ctx.object_labels(s)), ctx.attributes[m]) for s, m in level) for level in basis
    )
    return ChainComplex(tuple(len(b) for b in basis), maps, labels, step=+1)


@dataclass(frozen=True, eq=False)
class SheafCohomology:
    betti: list[int]
    # face -> attributes whose column is exactly that face
    decomposition: dict[int, int]
    # one global section per attribute: the indicator of (g, m) over g in m'
    generators: dict[int, dict[int, int]]

    def to_json(self, ctx: FormalContext) -> dict:
        return {
            "betti": self.betti,
            "field": "Q",
            "h0_decomposition": [
                {"face": ctx.object_labels(s), "attributes": ctx.attribute_labels(ms)}
                for s, ms in sorted(self.decomposition.items(), key=lambda kv: _bits.canonical_key(kv[0]))
            ],
        }


def sheaf_cohomology(ctx: FormalContext, *, budget: int = DEFAULT_FACE_BUDGET) -> SheafCohomology:
    """Betti numbers of the Dowker sheaf plus the split of ``H^0`` by faces.

    Each attribute ``m`` gives the global section that is 1 on ``(g, m)``
    for every ``g`` in ``m'``.  These are checked to be cocycles and to be
    independent, so they span ``H^0`` whenever ``dim H^0 = |M|``.
    """
    cc = dowker_sheaf_cochain(ctx, budget=budget)
    b = betti(cc)
    asc = d_ctx(ctx, budget=budget)
    decomposition = {}
    for s in asc.all_faces:
        ms = m_hat(ctx, s)
        if ms:
            decomposition[s] = ms
    vertex_index = {}
    pos = 0
    for g in range(ctx.n_objects):
        for m in _bits.iter_bits(ctx.rows[g]):
            vertex_index[g, m] = pos
            pos += 1
    generators = {
        m: {vertex_index[g, m]: 1 for g in _bits.iter_bits(ctx.cols[m])} for m in range(ctx.n_attributes)
    }
    d0 = cc.map(0)
    for m, vec in generators.items():
        if d0.apply(vec):
            raise TheoremMismatch(f"section of attribute {ctx.attributes[m]!r} is not a cocycle", ctx.attributes[m])
    if len(Echelon(cc.dims[0], generators.values())) != ctx.n_attributes:
        raise TheoremMismatch("attribute sections are linearly dependent")
    return SheafCohomology(b, decomposition, generators)


# The cosheaf of chain complexes


@dataclass(frozen=True, eq=False)
class CosheafOfChainComplexes:
    """``C^Delta`` applied costalk-wise to the Dowker cosheaf, as a double complex.

    ``spaces[p, q]`` lists basis pairs ``(s, b)``: a p-face ``s`` of the
    Dowker complex and a q-face ``b`` of the simplex on ``s'``.
    ``horizontal[p, q]`` is the costalk boundary ``(p, q) -> (p, q-1)``;
    ``vertical[p, q]`` the cosheaf boundary ``(p, q) -> (p-1, q)`` built from
    the extension inclusions.
    """

    context: FormalContext
    cells: tuple[tuple[int, ...], ...]  # p -> p-faces
    spaces: dict[tuple[int, int], tuple[tuple[int, int], ...]]
    horizontal: dict[tuple[int, int], RationalMatrix]
    vertical: dict[tuple[int, int], RationalMatrix]

    @property
    def max_p(self) -> int:
        return len(self.cells) - 1

    @cached_property
    def max_q(self) -> int:
        return max((q for (_, q) in self.spaces), default=-1)

    def dim(self, p: int, q: int) -> int:
        return len(self.spaces.get((p, q), ()))

    def cell_complex(self, face: int) -> ChainComplex:
        """``C^Delta`` of the costalk at ``face``."""
        ctx = self.context
        simplex = AbstractSimplicialComplex.simplex(ctx.attributes, ctx.derive_objects(face))
        return simplicial_chain_complex(simplex)

    def chain_map(self, s: int, t: int) -> dict[int, RationalMatrix]:
        """Chain map ``C^Delta(t') -> C^Delta(s')`` induced by the extension along ``s <= t``."""
        ctx = self.context
        small = AbstractSimplicialComplex.simplex(ctx.attributes, ctx.derive_objects(s))
        large = AbstractSimplicialComplex.simplex(ctx.attributes, ctx.derive_objects(t))
        out = {}
        for k in range(large.dimension + 1):
            src = sorted(large.faces_of_dim(k), key=_bits.canonical_key)
            dst = {f: i for i, f in enumerate(sorted(small.faces_of_dim(k), key=_bits.canonical_key))}
            out[k] = RationalMatrix(len(dst), len(src), {(dst[f], j): 1 for j, f in enumerate(src)})
        return out

    def column(self, q: int) -> ChainComplex:
        """Fixed costalk degree ``q`` as a complex over base dimension."""
        dims = tuple(self.dim(p, q) for p in range(self.max_p + 1))
        maps = {p: self.vertical[p, q] for p in range(1, self.max_p + 1) if (p, q) in self.vertical}
        return ChainComplex(dims, maps, step=-1)

    def row(self, p: int) -> ChainComplex:
        dims = tuple(self.dim(p, q) for q in range(self.max_q + 1))
        maps = {q: self.horizontal[p, q] for q in range(1, self.max_q + 1) if (p, q) in self.horizontal}
        return ChainComplex(dims, maps, step=-1)

    def check(self) -> None:
        """Rows and columns are complexes and every square commutes."""
        for p in range(self.max_p + 1):
            self.row(p).check()
        for q in range(self.max_q + 1):
            self.column(q).check()
        for (p, q), h in self.horizontal.items():
            v = self.vertical.get((p, q))
            v_next = self.vertical.get((p, q - 1))
            h_down = self.horizontal.get((p - 1, q))
            if v is None or v_next is None or h_down is None:
                continue
            if v_next @ h != h_down @ v:
                raise NotAComplex(f"grid square at {(p, q)} does not commute", (p, q))


def cosheaf_of_chain_complexes(ctx: FormalContext, *, budget: int = DEFAULT_FACE_BUDGET) -> CosheafOfChainComplexes:
    """Raises :class:`FaceBudgetExceeded` if the grid would have more than ``budget`` basis vectors."""
    _require_total(ctx)
    cs = dowker_cosheaf(ctx, budget=budget)
    asc = cs.complex
    size = sum((1 << _bits.count(cs.costalk_vertices(s))) - 1 for s in asc.all_faces)
    if size > budget:
        raise FaceBudgetExceeded(f"chain-complex cosheaf has {size} basis vectors, budget {budget}")
    cells = tuple(tuple(asc.faces_of_dim(p)) for p in range(asc.dimension + 1))
    spaces: dict[tuple[int, int], tuple[tuple[int, int], ...]] = {}
    for p, faces in enumerate(cells):
        per_q: dict[int, list[tuple[int, int]]] = {}
        for s in faces:
            cost = cs.costalk_vertices(s)
            for b in sorted(_bits.submasks(cost), key=_bits.canonical_key):
                per_q.setdefault(_bits.count(b) - 1, []).append((s, b))
        for q, basis in per_q.items():
            spaces[p, q] = tuple(basis)
    index = {key: {b: i for i, b in enumerate(basis)} for key, basis in spaces.items()}
    horizontal = {}
    vertical = {}
    for (p, q), basis in spaces.items():
        if q > 0:
            tgt = index.get((p, q - 1), {})
            entries = {}
            for j, (s, b) in enumerate(basis):
                for face, sign in boundary_entries(b):
                    entries[tgt[s, face], j] = sign
            horizontal[p, q] = RationalMatrix(len(tgt), len(basis), entries)
        if p > 0:
            tgt = index.get((p - 1, q), {})
            entries = {}
            for j, (s, b) in enumerate(basis):
                for face, sign in boundary_entries(s):
                    entries[tgt[face, b], j] = sign
            vertical[p, q] = RationalMatrix(len(tgt), len(basis), entries)
    return CosheafOfChainComplexes(ctx, cells, spaces, horizontal, vertical)


def column_homology(grid: CosheafOfChainComplexes) -> dict[int, list[int]]:
    """Betti numbers of each fixed-q column over base dimension."""
    return {q: betti(grid.column(q)) for q in range(grid.max_q + 1)}


@dataclass(frozen=True, eq=False)
class ZerothHomology:
    complex: ChainComplex
    # per q: echelon form of the image of the vertical map into (0, q)
    images: dict[int, Echelon] = field(repr=False)
    # per q: grid coordinates in (0, q) that index the quotient basis
    coordinates: dict[int, list[int]] = field(repr=False)


def zeroth_cosheaf_homology(grid: CosheafOfChainComplexes) -> ZerothHomology:
    """Column-wise ``H_0`` with the differentials induced by the costalk boundaries.

    ``H_0`` of column ``q`` is the quotient of ``(0, q)`` by the image of the
    vertical map from ``(1, q)``.  Its basis is the set of unit vectors on
    coordinates that are not pivots of that image; a class is read off by
    reducing a representative modulo the image.
    """
    images: dict[int, Echelon] = {}
    coords: dict[int, list[int]] = {}
    for q in range(grid.max_q + 1):
        n = grid.dim(0, q)
        v = grid.vertical.get((1, q))
        ech = Echelon(n, v.columns() if v is not None else ())
        images[q] = ech
        coords[q] = ech.free_coordinates()
    maps = {}
    for q in range(1, grid.max_q + 1):
        h = grid.horizontal[0, q]
        h_cols = h.columns()
        pos = {c: i for i, c in enumerate(coords[q - 1])}
        entries = {}
        for j, c in enumerate(coords[q]):
            rem = images[q - 1].reduce(h_cols[c])
            for i, val in rem.items():
                entries[pos[i], j] = val
        maps[q] = RationalMatrix(len(coords[q - 1]), len(coords[q]), entries)
    ctx = grid.context
    basis = tuple(
        tuple(
            (tuple(ctx.object_labels(grid.spaces[0, q][c][0])), tuple(ctx.attribute_labels(grid.spaces[0, q][c][1])))
            for c in coords[q]
        )
        for q in range(grid.max_q + 1)
    )
    cc = ChainComplex(tuple(len(coords[q]) for q in range(grid.max_q + 1)), maps, basis, step=-1)
    return ZerothHomology(cc, images, coords)


@dataclass(frozen=True)
class DualHomologyReport:
    dims: list[int]
    dual_dims: list[int]
    betti: list[int]
    dual_betti: list[int]
    column_betti: dict[int, list[int]]

    def to_json(self) -> dict:
        return {
            "zeroth_homology_dims": self.dims,
            "dual_dowker_dims": self.dual_dims,
            "betti": self.betti,
            "dual_dowker_betti": self.dual_betti,
            "column_betti": {str(q): b for q, b in sorted(self.column_betti.items())},
            "field": "Q",
        }


def verify_dual_homology(ctx: FormalContext, *, budget: int = DEFAULT_FACE_BUDGET) -> DualHomologyReport:
    """Zeroth cosheaf homology of the chain-complex cosheaf versus the dual Dowker complex.

    Beyond comparing dimensions and Betti numbers, the class of
    ``(g, b)`` for any ``g`` in ``b'`` is used as the image of the dual
    simplex ``b``; this change of basis must be invertible and carry the
    dual simplicial boundary onto the induced differential.
    """
    grid = cosheaf_of_chain_complexes(ctx, budget=budget)
    grid.check()
    cols = column_homology(grid)
    zh = zeroth_cosheaf_homology(grid)
    cc = zh.complex
    dual_asc = d_ctx(ctx.transpose(), budget=budget)
    dual = simplicial_chain_complex(dual_asc)
    dims, dual_dims = list(cc.dims), list(dual.dims)
    b, db = betti(cc), betti(dual)
    if dims != dual_dims:
        raise TheoremMismatch(f"dimension mismatch {dims} vs {dual_dims}", (dims, dual_dims))
    for q, col in cols.items():
        if any(col[1:]) or col[0] != dual_dims[q]:
            raise TheoremMismatch(f"column {q} homology {col} is not concentrated in degree 0", q)
    # change of basis: dual q-simplex b -> class of (first object of b', b)
    transforms = {}
    for q in range(len(dims)):
        index = {pair: i for i, pair in enumerate(grid.spaces[0, q])}
        pos = {c: i for i, c in enumerate(zh.coordinates[q])}
        faces = sorted(dual_asc.faces_of_dim(q), key=_bits.canonical_key)
        entries = {}
        for j, beta in enumerate(faces):
            g = min(_bits.iter_bits(ctx.derive_attributes(beta)))
            rem = zh.images[q].reduce({index[1 << g, beta]: 1})
            for c, val in rem.items():
                entries[pos[c], j] = val
        t = RationalMatrix(dims[q], len(faces), entries)
        if rank(t) != dims[q]:
            raise TheoremMismatch(f"dual simplices do not give a basis of H_0 in degree {q}", q)
        transforms[q] = t
    for q in range(1, len(dims)):
        if cc.map(q) @ transforms[q] != transforms[q - 1] @ dual.map(q):
            raise TheoremMismatch(f"induced differential {q} does not match the dual boundary", q)
    if b != db:
        raise TheoremMismatch(f"Betti mismatch {b} vs {db}", (b, db))
    return DualHomologyReport(dims, dual_dims, b, db, cols)


__all__ = [
    "ChainComplex",
    "DualHomologyReport",
    "CosheafOfChainComplexes",
    "SheafCohomology",
    "ZerothHomology",
    "betti",
    "boundary_entries",
    "column_homology",
    "cosheaf_of_chain_complexes",
    "dowker_sheaf_cochain",
    "sheaf_cohomology",
    "simplicial_chain_complex",
    "verify_dual_homology",
    "zeroth_cosheaf_homology",
]
