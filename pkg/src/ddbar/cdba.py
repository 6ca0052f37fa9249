"""Complex differential bigraded algebras given by structure equations.

Only ``del phi^i`` (a (2,0)-form) and ``delbar phi^i`` (a (1,1)-form) are
supplied; the barred generators get ``del bphi^i = conj(delbar phi^i)`` and
``delbar bphi^i = conj(del phi^i)``. Both operators extend to all forms as
graded derivations.
"""

from __future__ import annotations

from typing import Sequence

from .bicomplex import FiniteBicomplex
from .errors import BadBidegree, GeneratorCountMismatch, IntegrabilityFailure, NonHomogeneousInput, OrderMismatch
from .exterior import Form, Monomial, basis, conjugate_form, indices_from_mask, wedge
from .linalg import Matrix

__all__ = ["CDBA", "build_cdba", "apply_del", "apply_delbar", "compile_bicomplex"]


def _gen_label(i: int, barred: bool) -> str:
    return f"bphi{i}" if barred else f"phi{i}"


class CDBA:
    """Validated on construction; raises instead of ever holding ``d^2 != 0``."""

    def __init__(self, n: int, order: int, del_gen: Sequence[Form | None] = (),
                 delbar_gen: Sequence[Form | None] = (), name: str = ""):
        if n < 0:
            raise ValueError("generator count must be nonnegative")
        self.n = n
        self.order = order
        self.name = name
        self.del_gen = tuple(self._normalize(del_gen, (2, 0), "del"))
        self.delbar_gen = tuple(self._normalize(delbar_gen, (1, 1), "delbar"))
        # operator values on the 2n degree-1 generators, holomorphic first
        self._del_values = list(self.del_gen) + [conjugate_form(f) for f in self.delbar_gen]
        self._delbar_values = list(self.delbar_gen) + [conjugate_form(f) for f in self.del_gen]
        self._cache: dict[tuple[str, Monomial], Form] = {}
        self._validate()

    def _normalize(self, values, bidegree, label):
        values = list(values) if values else []
        if len(values) > self.n:
            raise GeneratorCountMismatch(f"{len(values)} {label} equations for {self.n} generators")
        values += [None] * (self.n - len(values))
        out = []
        for i, f in enumerate(values, start=1):
            if f is None:
                f = Form.zero(self.n, self.order)
            if f.n != self.n:
                raise GeneratorCountMismatch(f"{label} phi{i} is a form on {f.n} generators, expected {self.n}")
            if f.order != self.order:
                raise OrderMismatch(f"{label} phi{i} has coefficients in Q(zeta_{f.order})")
            degs = f.bidegrees()
            if degs and degs != {bidegree}:
                raise BadBidegree(f"{label} phi{i} = {f} must have bidegree {bidegree}, got {sorted(degs)}")
            out.append(f)
        return out

    def generators(self) -> list[tuple[str, Form]]:
        gens = [(_gen_label(i, False), Form.phi(self.n, self.order, i)) for i in range(1, self.n + 1)]
        gens += [(_gen_label(i, True), Form.bphi(self.n, self.order, i)) for i in range(1, self.n + 1)]
        return gens

    def _validate(self):
        for label, g in self.generators():
            dg, dbg = self.del_(g), self.delbar(g)
            checks = (
                ("del^2", self.del_(dg)),
                ("delbar^2", self.delbar(dbg)),
                ("del delbar + delbar del", self.del_(dbg) + self.delbar(dg)),
            )
            for what, residual in checks:
                if residual:
                    raise IntegrabilityFailure(
                        f"{what} {label} = {residual} is not zero", generator=label, residual=residual)

    def _derive(self, which: str, values: list[Form], mono: Monomial) -> Form:
        key = (which, mono)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        n, order = self.n, self.order
        factors = [(i - 1, Form.phi(n, order, i)) for i in indices_from_mask(mono.holo)]
        factors += [(n + j - 1, Form.bphi(n, order, j)) for j in indices_from_mask(mono.anti)]
        out = Form.zero(n, order)
        prefix = Form.unit(n, order)
        for pos, (slot, factor) in enumerate(factors):
            dv = values[slot]
            if dv:
                suffix = Form.unit(n, order)
                for _, f in factors[pos + 1:]:
                    suffix = wedge(suffix, f)
                term = wedge(wedge(prefix, dv), suffix)
                out = out - term if pos % 2 else out + term
            prefix = wedge(prefix, factor)
        self._cache[key] = out
        return out

    def _apply(self, which, values, f: Form) -> Form:
        if f.n != self.n:
            raise GeneratorCountMismatch(f"form on {f.n} generators, algebra on {self.n}")
        if not f.is_bihomogeneous():
            raise NonHomogeneousInput(f"{which} needs a bihomogeneous form, got {f}")
        out = Form.zero(self.n, self.order)
        for mono, c in f.terms.items():
            img = self._derive(which, values, mono)
            if img:
                out = out + img.scale(c)
        return out

    def del_(self, f: Form) -> Form:
        return self._apply("del", self._del_values, f)

    def delbar(self, f: Form) -> Form:
        return self._apply("delbar", self._delbar_values, f)

    def d(self, f: Form) -> Form:
        return self.del_(f) + self.delbar(f)

    def is_zero(self) -> bool:
        return not any(self.del_gen) and not any(self.delbar_gen)

    def __repr__(self):
        return f"CDBA(name={self.name!r}, n={self.n}, order={self.order})"


def apply_del(x: CDBA, f: Form) -> Form:
    return x.del_(f)


def apply_delbar(x: CDBA, f: Form) -> Form:
    return x.delbar(f)


def build_cdba(manifest) -> CDBA:
    """CDBA from a parsed :class:`~ddbar.manifest.Manifest`."""
    n = manifest.n
    dels = [manifest.del_eqs.get(i) for i in range(1, n + 1)]
    delbars = [manifest.delbar_eqs.get(i) for i in range(1, n + 1)]
    return CDBA(n, manifest.field_order, dels, delbars, name=manifest.name)


def compile_bicomplex(x: CDBA) -> FiniteBicomplex:
    """Matrices of del and delbar in the lexicographic monomial bases."""
    n, order = x.n, x.order
    bases = {(p, q): basis(n, p, q) for p in range(n + 1) for q in range(n + 1)}
    index = {pq: {m: i for i, m in enumerate(b)} for pq, b in bases.items()}
    del_mats, delbar_mats = {}, {}
    for (p, q), monos in bases.items():
        for op, target, store in ((x.del_, (p + 1, q), del_mats), (x.delbar, (p, q + 1), delbar_mats)):
            tgt = index.get(target, {})
            rows = [{} for _ in range(len(tgt))]
            for j, mono in enumerate(monos):
                for m, c in op(Form.monomial(n, order, mono)).terms.items():
                    rows[tgt[m]][j] = c
            store[(p, q)] = Matrix(len(tgt), len(monos), order, rows)
    return FiniteBicomplex(
        n=n, order=order,
        basis={pq: [Form.monomial(n, order, m) for m in b] for pq, b in bases.items()},
        pivots=dict(bases),
        del_mats=del_mats, delbar_mats=delbar_mats, name=x.name,
    )
