"""Exact sparse linear algebra over Q(zeta_N).

Matrices are stored row-wise as ``{column: value}`` dicts. Ranks use
fraction-free (Bareiss) elimination; bases of kernels and images come from a
reduced row echelon form with a deterministic pivot rule (leftmost column,
then first row), so extracted bases are reproducible.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .cyclotomic import CyclotomicNumber

__all__ = ["Matrix", "EchelonSpace"]

Vector = dict  # column -> CyclotomicNumber, zeros omitted


class Matrix:
    __slots__ = ("nrows", "ncols", "order", "rows")

    def __init__(self, nrows: int, ncols: int, order: int, rows: Sequence[dict] | None = None):
        self.nrows = nrows
        self.ncols = ncols
        self.order = order
        if rows is None:
            rows = [{} for _ in range(nrows)]
        if len(rows) != nrows:
            raise ValueError(f"expected {nrows} rows, got {len(rows)}")
        self.rows = [{j: v for j, v in r.items() if not v.is_zero()} for r in rows]

    # -- constructors --

    @classmethod
    def zeros(cls, nrows, ncols, order) -> Matrix:
        return cls(nrows, ncols, order)

    @classmethod
    def identity(cls, size, order) -> Matrix:
        one = CyclotomicNumber.one(order)
        return cls(size, size, order, [{i: one} for i in range(size)])

    @classmethod
    def from_columns(cls, nrows: int, order: int, columns: Sequence[dict]) -> Matrix:
        m = cls(nrows, len(columns), order)
        for j, col in enumerate(columns):
            for i, v in col.items():
                if not v.is_zero():
                    m.rows[i][j] = v
        return m

    @classmethod
    def from_dense(cls, order, dense: Sequence[Sequence], ncols: int | None = None) -> Matrix:
        nrows = len(dense)
        if ncols is None:
            ncols = len(dense[0]) if dense else 0
        rows = []
        for r in dense:
            row = {}
            for j, v in enumerate(r):
                if not isinstance(v, CyclotomicNumber):
                    v = CyclotomicNumber.from_rational(order, v)
                if not v.is_zero():
                    row[j] = v
            rows.append(row)
        return cls(nrows, ncols, order, rows)

    def to_dense(self) -> list[list[CyclotomicNumber]]:
        zero = CyclotomicNumber.zero(self.order)
        return [[r.get(j, zero) for j in range(self.ncols)] for r in self.rows]

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def column(self, j: int) -> Vector:
        return {i: r[j] for i, r in enumerate(self.rows) if j in r}

    def columns(self) -> list[Vector]:
        cols: list[Vector] = [{} for _ in range(self.ncols)]
        for i, r in enumerate(self.rows):
            for j, v in r.items():
                cols[j][i] = v
        return cols

    def transpose(self) -> Matrix:
        return Matrix(self.ncols, self.nrows, self.order, self.columns())

    def is_zero(self) -> bool:
        return not any(self.rows)

    # -- algebra --

    def __matmul__(self, other: Matrix) -> Matrix:
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        out = []
        for r in self.rows:
            acc: dict = {}
            for k, a in r.items():
                for j, b in other.rows[k].items():
                    s = acc.get(j)
                    acc[j] = a * b if s is None else s + a * b
            out.append(acc)
        return Matrix(self.nrows, other.ncols, self.order, out)

    def __add__(self, other: Matrix) -> Matrix:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} + {other.shape}")
        out = []
        for a, b in zip(self.rows, other.rows):
            row = dict(a)
            for j, v in b.items():
                row[j] = row[j] + v if j in row else v
            out.append(row)
        return Matrix(self.nrows, self.ncols, self.order, out)

    def __neg__(self) -> Matrix:
        return Matrix(self.nrows, self.ncols, self.order,
                      [{j: -v for j, v in r.items()} for r in self.rows])

    def __sub__(self, other: Matrix) -> Matrix:
        return self + (-other)

    def scale(self, c) -> Matrix:
        return Matrix(self.nrows, self.ncols, self.order,
                      [{j: v * c for j, v in r.items()} for r in self.rows])

    def apply(self, vec: Vector) -> Vector:
        out = {}
        for i, r in enumerate(self.rows):
            s = None
            for j, v in vec.items():
                a = r.get(j)
                if a is not None:
                    s = a * v if s is None else s + a * v
            if s is not None and not s.is_zero():
                out[i] = s
        return out

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols}, nnz={sum(map(len, self.rows))})"

    # -- block assembly --

    @staticmethod
    def vstack(mats: Sequence[Matrix], ncols: int | None = None, order: int | None = None) -> Matrix:
        if mats:
            ncols = mats[0].ncols
            order = mats[0].order
        rows = []
        for m in mats:
            if m.ncols != ncols:
                raise ValueError("vstack column mismatch")
            rows.extend(dict(r) for r in m.rows)
        return Matrix(len(rows), ncols, order, rows)

    @staticmethod
    def hstack(mats: Sequence[Matrix], nrows: int | None = None, order: int | None = None) -> Matrix:
        if mats:
            nrows = mats[0].nrows
            order = mats[0].order
        rows = [{} for _ in range(nrows)]
        offset = 0
        for m in mats:
            if m.nrows != nrows:
                raise ValueError("hstack row mismatch")
            for i, r in enumerate(m.rows):
                for j, v in r.items():
                    rows[i][j + offset] = v
            offset += m.ncols
        return Matrix(nrows, offset, order, rows)

    # -- elimination --

    def rank(self) -> int:
        """Rank by fraction-free (Bareiss) elimination.

        The pivot for each column is the remaining row with the fewest
        nonzeros, which keeps fill-in low on these very sparse matrices.
        """
        rows = [dict(r) for r in self.rows if r]
        if not rows:
            return 0
        one = CyclotomicNumber.one(self.order)
        prev = one
        rank = 0
        active = rows
        for col in range(self.ncols):
            candidates = [r for r in active if col in r]
            if not candidates:
                continue
            pivot = min(candidates, key=len)
            p = pivot[col]
            rest = []
            for r in active:
                if r is pivot:
                    continue
                a = r.get(col)
                new = {}
                if a is None:
                    # entry-wise (p * r[j]) / prev
                    if p == prev:
                        new = r
                    else:
                        f = p / prev
                        new = {j: v * f for j, v in r.items()}
                else:
                    keys = set(r) | set(pivot)
                    keys.discard(col)
                    inv_prev = prev.inverse() if prev != one else None
                    for j in keys:
                        v = r.get(j)
                        w = pivot.get(j)
                        if v is None:
                            val = -(a * w)
                        elif w is None:
                            val = p * v
                        else:
                            val = p * v - a * w
                        if inv_prev is not None:
                            val = val * inv_prev
                        if not val.is_zero():
                            new[j] = val
                if new:
                    rest.append(new)
            active = rest
            prev = p
            rank += 1
            if not active:
                break
        return rank

    def rref(self) -> tuple[list[dict], list[int]]:
        """Reduced row echelon form: (nonzero rows, pivot columns)."""
        rows = [dict(r) for r in self.rows if r]
        pivots: list[int] = []
        reduced: list[dict] = []
        for col in range(self.ncols):
            idx = next((i for i, r in enumerate(rows) if col in r), None)
            if idx is None:
                continue
            pivot = rows.pop(idx)
            inv = pivot[col].inverse()
            pivot = {j: v * inv for j, v in pivot.items()}
            rows = [_eliminate(r, pivot, col) for r in rows]
            rows = [r for r in rows if r]
            reduced = [_eliminate(r, pivot, col) for r in reduced]
            reduced.append(pivot)
            pivots.append(col)
        return reduced, pivots

    def kernel(self) -> list[Vector]:
        """Basis of the right kernel, one vector per free column, ascending."""
        reduced, pivots = self.rref()
        pivot_set = set(pivots)
        one = CyclotomicNumber.one(self.order)
        basis = []
        for free in range(self.ncols):
            if free in pivot_set:
                continue
            vec = {free: one}
            for row, pc in zip(reduced, pivots):
                v = row.get(free)
                if v is not None:
                    vec[pc] = -v
            basis.append(vec)
        return basis


def _eliminate(row: dict, pivot: dict, col: int) -> dict:
    a = row.get(col)
    if a is None:
        return row
    out = dict(row)
    for j, v in pivot.items():
        s = out.get(j)
        val = -(a * v) if s is None else s - a * v
        if val.is_zero():
            out.pop(j, None)
        else:
            out[j] = val
    return out


class EchelonSpace:
    """Incrementally grown subspace of a fixed ambient space.

    ``add`` reports whether a vector was independent of everything added so
    far; ``contains`` tests membership without modifying the space.
    """

    def __init__(self, dim: int, order: int, vectors: Iterable[Vector] = ()):
        self.dim = dim
        self.order = order
        self._rows: dict[int, dict] = {}  # pivot column -> row with 1 at pivot
        for v in vectors:
            self.add(v)

    @property
    def rank(self) -> int:
        return len(self._rows)

    def reduce(self, vec: Vector) -> dict:
        v = {j: c for j, c in vec.items() if not c.is_zero()}
        changed = True
        while changed and v:
            changed = False
            for col in sorted(v):
                row = self._rows.get(col)
                if row is not None:
                    v = _eliminate(v, row, col)
                    changed = True
                    break
        return v

    def add(self, vec: Vector) -> bool:
        v = self.reduce(vec)
        if not v:
            return False
        col = min(v)
        inv = v[col].inverse()
        self._rows[col] = {j: c * inv for j, c in v.items()}
        return True

    def contains(self, vec: Vector) -> bool:
        return not self.reduce(vec)
