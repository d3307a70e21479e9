"""Exact rational matrices.

Matrices are sparse (row -> {column: Fraction}).  Boundary matrices of
simplicial and sheaf complexes have few nonzeros per column, so sparse
elimination keeps fill-in small.  Floating point is never used.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

Number = int | Fraction


class RationalMatrix:
    """Immutable ``rows x cols`` matrix of exact rationals."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, rows: int, cols: int, entries: Mapping[tuple[int, int], Number] | None = None):
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        data: dict[int, dict[int, Fraction]] = {}
        for (i, j), v in (entries or {}).items():
            if not (0 <= i < rows and 0 <= j < cols):
                raise IndexError(f"entry {(i, j)} outside a {rows}x{cols} matrix")
            v = Fraction(v)
            if v:
                data.setdefault(i, {})[j] = v
        self.rows = rows
        self.cols = cols
        self._data = data

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Number]], cols: int | None = None) -> "RationalMatrix":
        n = len(rows)
        m = len(rows[0]) if n else (cols or 0)
        entries = {(i, j): v for i, row in enumerate(rows) for j, v in enumerate(row) if v}
        if any(len(r) != m for r in rows):
            raise ValueError("ragged matrix")
        return cls(n, m, entries)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls(n, n, {(i, i): 1 for i in range(n)})

    @classmethod
    def from_columns(cls, rows: int, columns: Sequence[Mapping[int, Number]]) -> "RationalMatrix":
        return cls(rows, len(columns), {(i, j): v for j, col in enumerate(columns) for i, v in col.items()})

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        i, j = key
        return self._data.get(i, {}).get(j, Fraction(0))

    def items(self):
        for i, row in self._data.items():
            for j, v in row.items():
                yield (i, j), v

    def nnz(self) -> int:
        return sum(len(r) for r in self._data.values())

    def row(self, i: int) -> dict[int, Fraction]:
        return dict(self._data.get(i, {}))

    def column(self, j: int) -> dict[int, Fraction]:
        return {i: row[j] for i, row in self._data.items() if j in row}

    def columns(self) -> list[dict[int, Fraction]]:
        out: list[dict[int, Fraction]] = [{} for _ in range(self.cols)]
        for i, row in self._data.items():
            for j, v in row.items():
                out[j][i] = v
        return out

    def to_dense(self) -> list[list[Fraction]]:
        return [[self[i, j] for j in range(self.cols)] for i in range(self.rows)]

    def to_strings(self) -> list[list[str]]:
        return [[str(v) for v in row] for row in self.to_dense()]

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(self.cols, self.rows, {(j, i): v for (i, j), v in self.items()})

    @property
    def T(self) -> "RationalMatrix":
        return self.transpose()

    def is_zero(self) -> bool:
        return not self._data

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self):
        return hash((self.shape, tuple(sorted(self.items()))))

    def __neg__(self) -> "RationalMatrix":
        return RationalMatrix(self.rows, self.cols, {k: -v for k, v in self.items()})

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} + {other.shape}")
        acc: dict[tuple[int, int], Fraction] = dict(self.items())
        for k, v in other.items():
            acc[k] = acc.get(k, 0) + v
        return RationalMatrix(self.rows, self.cols, acc)

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        return self + (-other)

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        acc: dict[tuple[int, int], Fraction] = {}
        for i, row in self._data.items():
            for k, a in row.items():
                for j, b in other._data.get(k, {}).items():
                    acc[i, j] = acc.get((i, j), 0) + a * b
        return RationalMatrix(self.rows, other.cols, acc)

    def apply(self, vector: Mapping[int, Number]) -> dict[int, Fraction]:
        """Matrix times a sparse column vector."""
        out: dict[int, Fraction] = {}
        for i, row in self._data.items():
            s = sum((v * vector[j] for j, v in row.items() if j in vector), Fraction(0))
            if s:
                out[i] = s
        return out

    def __repr__(self) -> str:
        return f"RationalMatrix({self.rows}x{self.cols}, nnz={self.nnz()})"

    def rank(self) -> int:
        return rank(self)

    def kernel_basis(self) -> list[dict[int, Fraction]]:
        return kernel_basis(self)


def _integer_rows(m: RationalMatrix) -> list[dict[int, int]]:
    rows = []
    for i in range(m.rows):
        row = m._data.get(i)
        if not row:
            continue
        scale = lcm(*(v.denominator for v in row.values()))
        rows.append({j: int(v * scale) for j, v in row.items()})
    return rows


def _primitive(row: dict[int, int]) -> dict[int, int]:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    return {j: v // g for j, v in row.items()}


def rank(m: RationalMatrix) -> int:
    """Exact rank by fraction-free elimination.

    Rows are scaled to integers; eliminating ``r`` against a pivot row ``p``
    forms ``p[c] * r - r[c] * p``, then divides out the row content, so no
    fraction is ever created and entries stay small.
    """
    pivots: dict[int, dict[int, int]] = {}
    for row in sorted(_integer_rows(m), key=len):
        while row:
            lead = min(row)
            piv = pivots.get(lead)
            if piv is None:
                pivots[lead] = _primitive(row)
                break
            a, b = row[lead], piv[lead]
            new = {j: b * v for j, v in row.items()}
            for j, v in piv.items():
                w = new.get(j, 0) - a * v
                if w:
                    new[j] = w
                else:
                    new.pop(j, None)
            row = _primitive(new) if new else new
    return len(pivots)


class Echelon:
    """Row-echelon basis of a subspace of ``Q^n`` (vectors as sparse dicts).

    ``reduce`` returns the remainder of a vector modulo the subspace,
    supported only on non-pivot coordinates; those coordinates therefore
    give a basis of the quotient.
    """

    def __init__(self, n: int, vectors: Iterable[Mapping[int, Number]] = ()):
        self.n = n
        self.pivots: dict[int, dict[int, Fraction]] = {}
        for v in vectors:
            self.add(v)

    def __len__(self) -> int:
        return len(self.pivots)

    def reduce(self, vector: Mapping[int, Number]) -> dict[int, Fraction]:
        v = {j: Fraction(x) for j, x in vector.items() if x}
        todo = sorted(j for j in v if j in self.pivots)
        while todo:
            c = todo[0]
            coeff = v.get(c)
            if coeff:
                for j, x in self.pivots[c].items():
                    w = v.get(j, 0) - coeff * x
                    if w:
                        v[j] = w
                    else:
                        v.pop(j, None)
            todo = sorted(j for j in v if j in self.pivots and j > c)
        return v

    def add(self, vector: Mapping[int, Number]) -> bool:
        """Insert ``vector``; returns False if it was already in the span."""
        v = self.reduce(vector)
        if not v:
            return False
        lead = min(v)
        inv = 1 / v[lead]
        self.pivots[lead] = {j: x * inv for j, x in v.items()}
        return True

    def free_coordinates(self) -> list[int]:
        return [j for j in range(self.n) if j not in self.pivots]

    def contains(self, vector: Mapping[int, Number]) -> bool:
        return not self.reduce(vector)


def rref_rows(m: RationalMatrix) -> dict[int, dict[int, Fraction]]:
    """Reduced row echelon form keyed by pivot column."""
    ech = Echelon(m.cols, (m.row(i) for i in range(m.rows)))
    piv = ech.pivots
    for c in sorted(piv, reverse=True):
        for d in piv:
            if d < c and c in piv[d]:
                coeff = piv[d][c]
                row = dict(piv[d])
                for j, x in piv[c].items():
                    w = row.get(j, 0) - coeff * x
                    if w:
                        row[j] = w
                    else:
                        row.pop(j, None)
                piv[d] = row
    return piv


def kernel_basis(m: RationalMatrix) -> list[dict[int, Fraction]]:
    """Basis of ``{x : m x = 0}``, one vector per free column."""
    piv = rref_rows(m)
    basis = []
    for f in range(m.cols):
        if f in piv:
            continue
        vec = {f: Fraction(1)}
        for c, row in piv.items():
            if f in row:
                vec[c] = -row[f]
        basis.append(vec)
    return basis


def image_dim(m: RationalMatrix) -> int:
    return rank(m)


def solve_in_basis(basis: Sequence[Mapping[int, Number]], target: Mapping[int, Number], n: int) -> list[Fraction] | None:
    """Coefficients expressing ``target`` in ``basis`` (assumed independent), or None."""
    mat = RationalMatrix.from_columns(n, [dict(b) for b in basis] + [dict(target)])
    piv = rref_rows(mat)
    k = len(basis)
    if k in piv:
        return None
    coeffs = [Fraction(0)] * k
    for c, row in piv.items():
        coeffs[c] = row.get(k, Fraction(0))
    return coeffs
