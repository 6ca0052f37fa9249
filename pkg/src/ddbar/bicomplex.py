"""Finite double complexes with exact matrices for del and delbar."""

from __future__ import annotations

from dataclasses import dataclass, field

from .cyclotomic import CyclotomicNumber
from .errors import DdbarError
from .exterior import Form, Monomial
from .linalg import Matrix, Vector

__all__ = ["FiniteBicomplex"]

Bidegree = tuple[int, int]


@dataclass(eq=False)
class FiniteBicomplex:
    """Basis per bidegree plus the matrices of del: (p,q)->(p+1,q) and delbar: (p,q)->(p,q+1).

    ``basis[(p, q)]`` holds the basis elements as forms; ``pivots[(p, q)][i]``
    is a monomial whose coefficient is 1 in basis element ``i`` and 0 in every
    other basis element of that bidegree, which makes reading off coordinates
    a lookup. Column ``j`` of a matrix is the image of basis element ``j``.
    """

    n: int
    order: int
    basis: dict[Bidegree, list[Form]]
    pivots: dict[Bidegree, list[Monomial]]
    del_mats: dict[Bidegree, Matrix]
    delbar_mats: dict[Bidegree, Matrix]
    name: str = ""
    _pivot_index: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        for pq, piv in self.pivots.items():
            self._pivot_index[pq] = {m: i for i, m in enumerate(piv)}
        self._check_shapes()

    def _check_shapes(self):
        for p, q in self.bidegrees():
            d = self.dim(p, q)
            if len(self.basis[(p, q)]) != d:
                raise DdbarError(f"basis size mismatch at {(p, q)}")
            if self.del_(p, q).shape != (self.dim(p + 1, q), d):
                raise DdbarError(f"del matrix at {(p, q)} has shape {self.del_(p, q).shape}")
            if self.delbar(p, q).shape != (self.dim(p, q + 1), d):
                raise DdbarError(f"delbar matrix at {(p, q)} has shape {self.delbar(p, q).shape}")

    # -- dimensions and matrices, zero outside [0, n]^2 --

    def bidegrees(self) -> list[Bidegree]:
        return [(p, q) for p in range(self.n + 1) for q in range(self.n + 1)]

    def dim(self, p: int, q: int) -> int:
        basis = self.basis.get((p, q))
        return len(basis) if basis is not None else 0

    @property
    def dims(self) -> dict[Bidegree, int]:
        return {pq: self.dim(*pq) for pq in self.bidegrees()}

    def del_(self, p: int, q: int) -> Matrix:
        m = self.del_mats.get((p, q))
        if m is None:
            return Matrix.zeros(self.dim(p + 1, q), self.dim(p, q), self.order)
        return m

    def delbar(self, p: int, q: int) -> Matrix:
        m = self.delbar_mats.get((p, q))
        if m is None:
            return Matrix.zeros(self.dim(p, q + 1), self.dim(p, q), self.order)
        return m

    def deldelbar(self, p: int, q: int) -> Matrix:
        """del o delbar: (p,q) -> (p+1,q+1)."""
        return self.del_(p, q + 1) @ self.delbar(p, q)

    # -- total complex --

    def total_bidegrees(self, k: int) -> list[Bidegree]:
        return [(p, k - p) for p in range(self.n + 1) if 0 <= k - p <= self.n]

    def total_dim(self, k: int) -> int:
        return sum(self.dim(p, q) for p, q in self.total_bidegrees(k))

    def total_offsets(self, k: int) -> dict[Bidegree, int]:
        out, off = {}, 0
        for pq in self.total_bidegrees(k):
            out[pq] = off
            off += self.dim(*pq)
        return out

    def d_total(self, k: int) -> Matrix:
        """d = del + delbar: Tot^k -> Tot^(k+1), blocks ordered by ascending p."""
        src = self.total_offsets(k)
        dst = self.total_offsets(k + 1)
        rows = [{} for _ in range(self.total_dim(k + 1))]
        for (p, q), c0 in src.items():
            for mat, target in ((self.del_(p, q), (p + 1, q)), (self.delbar(p, q), (p, q + 1))):
                if target not in dst:
                    continue
                r0 = dst[target]
                for i, row in enumerate(mat.rows):
                    for j, v in row.items():
                        rows[r0 + i][c0 + j] = v
        return Matrix(self.total_dim(k + 1), self.total_dim(k), self.order, rows)

    def embed_total(self, vec: Vector, p: int, q: int) -> Vector:
        off = self.total_offsets(p + q)[(p, q)]
        return {off + i: v for i, v in vec.items()}

    # -- forms <-> coordinates --

    def coordinates(self, form: Form, p: int, q: int) -> Vector:
        """Coordinates of a form assumed to lie in the span of ``basis[(p, q)]``."""
        index = self._pivot_index.get((p, q), {})
        out = {}
        for mono, c in form.terms.items():
            i = index.get(mono)
            if i is not None:
                out[i] = c
        return out

    def to_form(self, vec: Vector, p: int, q: int) -> Form:
        out = Form.zero(self.n, self.order)
        basis = self.basis[(p, q)]
        for i, c in sorted(vec.items()):
            out = out + basis[i].scale(c)
        return out

    # -- validation --

    def check_identities(self) -> list[str]:
        """Names of violated identities among del^2, delbar^2, del delbar + delbar del."""
        bad = []
        for p, q in self.bidegrees():
            if not (self.del_(p + 1, q) @ self.del_(p, q)).is_zero():
                bad.append(f"del^2 at {(p, q)}")
            if not (self.delbar(p, q + 1) @ self.delbar(p, q)).is_zero():
                bad.append(f"delbar^2 at {(p, q)}")
            anti = self.del_(p, q + 1) @ self.delbar(p, q) + self.delbar(p + 1, q) @ self.del_(p, q)
            if not anti.is_zero():
                bad.append(f"del delbar + delbar del at {(p, q)}")
        return bad

    def validate(self) -> FiniteBicomplex:
        bad = self.check_identities()
        if bad:
            raise DdbarError("not a double complex: " + "; ".join(bad))
        return self

    def zero_scalar(self) -> CyclotomicNumber:
        return CyclotomicNumber.zero(self.order)
