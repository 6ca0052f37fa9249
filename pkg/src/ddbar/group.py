"""Finite groups of CDBA automorphisms and invariant sub-bicomplexes.

An automorphism is given by its values on phi^1..phi^n (each a (1,0)-form);
its value on bphi^i is the conjugate, so quotients keep their real structure.
The invariant part of each bidegree is the image of the Reynolds projector
``(1/|G|) sum_g g*``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .bicomplex import FiniteBicomplex
from .cdba import CDBA
from .cyclotomic import CyclotomicNumber
from .errors import BadBidegree, GeneratorCountMismatch, GroupTooLarge, NotChainMap, NotInvertible
from .exterior import Form, render_form, substitute
from .linalg import Matrix

__all__ = [
    "GeneratorAction", "FiniteGroupAction", "validate_action", "group_closure",
    "reynolds_projector", "invariant_subcomplex", "invariant_differentials_report",
]

DEFAULT_MAX_ORDER = 4096


@dataclass(frozen=True, eq=False)
class GeneratorAction:
    images: tuple[Form, ...]
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))
        for i, f in enumerate(self.images, start=1):
            degs = f.bidegrees()
            if degs != {(1, 0)}:
                raise BadBidegree(f"image of phi{i} must be a nonzero (1,0)-form, got {f}")

    @property
    def n(self) -> int:
        return len(self.images)

    @property
    def order(self) -> int:
        return self.images[0].order

    def apply(self, form: Form) -> Form:
        return substitute(form, list(self.images))

    def compose(self, other: GeneratorAction) -> GeneratorAction:
        """The pullback ``self* o other*``: first other, then self."""
        return GeneratorAction(tuple(self.apply(f) for f in other.images))

    def matrix(self) -> Matrix:
        """Degree-(1,0) action; column i holds the coefficients of images[i]."""
        n = self.n
        cols = []
        for f in self.images:
            cols.append({m.holo.bit_length() - 1: c for m, c in f.terms.items()})
        return Matrix.from_columns(n, self.order, cols)

    def key(self):
        return tuple(tuple(sorted(f.terms.items(), key=lambda t: t[0])) for f in self.images)

    def is_identity(self) -> bool:
        return all(f == Form.phi(self.n, self.order, i) for i, f in enumerate(self.images, start=1))

    @classmethod
    def identity(cls, n: int, order: int) -> GeneratorAction:
        return cls(tuple(Form.phi(n, order, i) for i in range(1, n + 1)), name="id")


def validate_action(x: CDBA, g: GeneratorAction) -> GeneratorAction:
    """Check that g is invertible on degree one and commutes with del and delbar."""
    if g.n != x.n:
        raise GeneratorCountMismatch(f"action on {g.n} generators, algebra has {x.n}")
    if g.order != x.order:
        raise GeneratorCountMismatch(f"action over Q(zeta_{g.order}), algebra over Q(zeta_{x.order})")
    if g.matrix().rank() != x.n:
        raise NotInvertible(f"action {g.name or ''} is singular on the (1,0)-generators")
    for label, gen in x.generators():
        for opname, op in (("del", x.del_), ("delbar", x.delbar)):
            residual = g.apply(op(gen)) - op(g.apply(gen))
            if residual:
                raise NotChainMap(
                    f"action {g.name or ''} does not commute with {opname} on {label}: residual {residual}",
                    generator=label, residual=residual)
    return g


def group_closure(generators: Sequence[GeneratorAction], max_order: int = DEFAULT_MAX_ORDER) -> list[GeneratorAction]:
    """All products of the generators, identity first, in discovery order."""
    if not generators:
        raise ValueError("need at least one generator to fix n and the field")
    n, order = generators[0].n, generators[0].order
    ident = GeneratorAction.identity(n, order)
    elements = [ident]
    seen = {ident.key()}
    frontier = [ident]
    while frontier:
        nxt = []
        for h in frontier:
            for g in generators:
                e = g.compose(h)
                k = e.key()
                if k not in seen:
                    seen.add(k)
                    elements.append(e)
                    nxt.append(e)
                    if len(elements) > max_order:
                        raise GroupTooLarge(f"group generated exceeds {max_order} elements")
        frontier = nxt
    return elements


class FiniteGroupAction:
    """A validated finite group of automorphisms of one CDBA."""

    def __init__(self, cdba: CDBA, generators: Sequence[GeneratorAction], name: str = "",
                 max_order: int = DEFAULT_MAX_ORDER):
        self.cdba = cdba
        self.name = name
        self.generators = [validate_action(cdba, g) for g in generators]
        if not self.generators:
            self.generators = [GeneratorAction.identity(cdba.n, cdba.order)]
        self.elements = group_closure(self.generators, max_order)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __repr__(self):
        return f"FiniteGroupAction({self.name!r}, order={self.order})"


def _action_matrix(bc: FiniteBicomplex, g: GeneratorAction, p: int, q: int) -> Matrix:
    cols = [bc.coordinates(g.apply(b), p, q) for b in bc.basis[(p, q)]]
    return Matrix.from_columns(bc.dim(p, q), bc.order, cols)


def reynolds_projector(bc: FiniteBicomplex, group: FiniteGroupAction, p: int, q: int) -> Matrix:
    d = bc.dim(p, q)
    total = Matrix.zeros(d, d, bc.order)
    for g in group.elements:
        total = total + _action_matrix(bc, g, p, q)
    return total.scale(CyclotomicNumber.from_rational(bc.order, 1) / group.order)


def invariant_subcomplex(bc: FiniteBicomplex, group: FiniteGroupAction) -> FiniteBicomplex:
    """Restrict del and delbar to the G-invariant forms of each bidegree.

    The invariant basis is the reduced row echelon form of the projector's
    image, so each basis form has coefficient 1 on its own pivot monomial and
    0 on the other pivots; coordinates of invariant forms are then read off
    at the pivots.
    """
    n, order = bc.n, bc.order
    basis, pivots, vectors = {}, {}, {}
    for p, q in bc.bidegrees():
        proj = reynolds_projector(bc, group, p, q)
        rows, piv = proj.transpose().rref()
        vectors[(p, q)] = rows
        basis[(p, q)] = [bc.to_form(r, p, q) for r in rows]
        # ambient pivots are coordinates in bc's basis; map them to bc's pivot monomials
        amb = bc.pivots[(p, q)]
        pivots[(p, q)] = [amb[c] for c in piv]

    def restrict(op, target_of):
        mats = {}
        for p, q in bc.bidegrees():
            tp, tq = target_of(p, q)
            if (tp, tq) not in basis:
                mats[(p, q)] = Matrix.zeros(0, len(basis[(p, q)]), order)
                continue
            amb_mat = op(p, q)
            tgt_rows = vectors[(tp, tq)]
            tgt_piv = [bc.pivots[(tp, tq)].index(m) for m in pivots[(tp, tq)]]
            cols = []
            for v in vectors[(p, q)]:
                img = amb_mat.apply(v)
                coords = {i: img[c] for i, c in enumerate(tgt_piv) if c in img}
                check = {}
                for i, c in coords.items():
                    for j, val in tgt_rows[i].items():
                        s = check.get(j)
                        check[j] = val * c if s is None else s + val * c
                check = {j: val for j, val in check.items() if not val.is_zero()}
                assert check == img, "image of an invariant form left the invariant subspace"
                cols.append(coords)
            mats[(p, q)] = Matrix.from_columns(len(tgt_rows), order, cols)
        return mats

    sub = FiniteBicomplex(
        n=n, order=order, basis=basis, pivots=pivots,
        del_mats=restrict(bc.del_, lambda p, q: (p + 1, q)),
        delbar_mats=restrict(bc.delbar, lambda p, q: (p, q + 1)),
        name=f"{bc.name}/{group.name}" if group.name else bc.name,
    )
    return sub.validate()


def invariant_differentials_report(sub: FiniteBicomplex) -> list[str]:
    """Lines ``d <basis form> = <image>`` for every basis form with d != 0."""
    lines = []
    for k in range(2 * sub.n + 1):
        dk = sub.d_total(k)
        if dk.is_zero():
            continue
        cols = dk.columns()
        src = sub.total_offsets(k)
        dst = sub.total_offsets(k + 1)
        for (p, q), off in src.items():
            for i, b in enumerate(sub.basis[(p, q)]):
                col = cols[off + i]
                if not col:
                    continue
                image = Form.zero(sub.n, sub.order)
                for (tp, tq), toff in dst.items():
                    part = {r - toff: v for r, v in col.items() if toff <= r < toff + sub.dim(tp, tq)}
                    if part:
                        image = image + sub.to_form(part, tp, tq)
                lines.append(f"d({render_form(b)}) = {render_form(image)}")
    return lines

