"""Bigraded exterior algebra on phi^1..phi^n and their conjugates.

A monomial ``phi^I ^ bphi^J`` is a pair of bitmasks ``(I, J)`` over the
generator indices (bit ``i - 1`` for generator ``i``). The canonical factor
order is: every holomorphic factor, ascending, then every antiholomorphic
factor, ascending.

Conjugation sign convention: ``conj(phi^I ^ bphi^J) = (-1)^(|I||J|) phi^J ^ bphi^I``,
which is what reordering ``bphi^I ^ phi^J`` into canonical order produces.
"""

from __future__ import annotations

from itertools import combinations
from math import comb
from typing import Iterable, Iterator, Mapping

from .cyclotomic import CyclotomicNumber
from .errors import GeneratorCountMismatch, NonHomogeneousInput, OrderMismatch

__all__ = [
    "Monomial", "Form", "wedge", "conjugate_form", "basis", "substitute",
    "mask_from_indices", "indices_from_mask",
]


def mask_from_indices(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << (i - 1)
    return mask


def indices_from_mask(mask: int) -> tuple[int, ...]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _merge_sign(a: int, b: int) -> int:
    """Sign of the shuffle sorting (ascending a) + (ascending b); a, b disjoint."""
    inversions = 0
    rest = b
    while rest:
        low = rest & -rest
        # elements of a above this element of b
        inversions += _popcount(a & ~((low << 1) - 1))
        rest ^= low
    return -1 if inversions & 1 else 1


class Monomial(tuple):
    """``(holo_mask, anti_mask)``; a plain tuple so it hashes and sorts cheaply."""

    __slots__ = ()

    def __new__(cls, holo: int = 0, anti: int = 0):
        return tuple.__new__(cls, (holo, anti))

    @classmethod
    def from_indices(cls, holo: Iterable[int] = (), anti: Iterable[int] = ()) -> Monomial:
        holo, anti = list(holo), list(anti)
        if len(set(holo)) != len(holo) or len(set(anti)) != len(anti):
            raise ValueError("repeated generator in a monomial")
        return cls(mask_from_indices(holo), mask_from_indices(anti))

    @property
    def holo(self) -> int:
        return self[0]

    @property
    def anti(self) -> int:
        return self[1]

    @property
    def bidegree(self) -> tuple[int, int]:
        return _popcount(self[0]), _popcount(self[1])

    @property
    def degree(self) -> int:
        return _popcount(self[0]) + _popcount(self[1])

    def sort_key(self):
        """Lexicographic order on (holomorphic indices, antiholomorphic indices)."""
        return indices_from_mask(self[0]), indices_from_mask(self[1])

    def shorthand(self) -> str:
        """``phi[1 2 ~3]`` for phi^1 ^ phi^2 ^ bphi^3; the unit renders as ``1``."""
        parts = [str(i) for i in indices_from_mask(self[0])]
        parts += [f"~{j}" for j in indices_from_mask(self[1])]
        if not parts:
            return "1"
        return f"phi[{' '.join(parts)}]"

    def __repr__(self):
        return f"Monomial({self.shorthand()})"


def monomial_wedge(a: Monomial, b: Monomial) -> tuple[int, Monomial | None]:
    """Return ``(sign, product)``; product is None when a factor repeats."""
    ih, ia = a
    jh, ja = b
    if ih & jh or ia & ja:
        return 0, None
    sign = -1 if (_popcount(jh) * _popcount(ia)) & 1 else 1
    sign *= _merge_sign(ih, jh) * _merge_sign(ia, ja)
    return sign, Monomial(ih | jh, ia | ja)


def _coeff_zero(c) -> bool:
    return c.is_zero()


class Form:
    """Finite linear combination of monomials with cyclotomic coefficients.

    Zero coefficients are never stored, so the empty form is zero.
    """

    __slots__ = ("n", "order", "terms")

    def __init__(self, n: int, order: int, terms: Mapping[Monomial, CyclotomicNumber] | None = None):
        self.n = n
        self.order = order
        clean = {}
        if terms:
            for mono, c in terms.items():
                if not isinstance(c, CyclotomicNumber):
                    c = CyclotomicNumber.from_rational(order, c)
                elif c.order != order:
                    raise OrderMismatch(f"coefficient in Q(zeta_{c.order}), form over Q(zeta_{order})")
                if not c.is_zero():
                    clean[Monomial(*mono)] = c
        self.terms = clean

    @classmethod
    def _raw(cls, n, order, terms):
        obj = object.__new__(cls)
        obj.n = n
        obj.order = order
        obj.terms = terms
        return obj

    @classmethod
    def zero(cls, n: int, order: int) -> Form:
        return cls._raw(n, order, {})

    @classmethod
    def unit(cls, n: int, order: int) -> Form:
        return cls._raw(n, order, {Monomial(0, 0): CyclotomicNumber.one(order)})

    @classmethod
    def monomial(cls, n: int, order: int, mono: Monomial, coeff=1) -> Form:
        return cls(n, order, {mono: coeff})

    @classmethod
    def phi(cls, n: int, order: int, i: int) -> Form:
        return cls.monomial(n, order, Monomial.from_indices([i], []))

    @classmethod
    def bphi(cls, n: int, order: int, i: int) -> Form:
        return cls.monomial(n, order, Monomial.from_indices([], [i]))

    # -- inspection --

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def bidegrees(self) -> set[tuple[int, int]]:
        return {m.bidegree for m in self.terms}

    def bidegree(self) -> tuple[int, int] | None:
        """The common bidegree of all terms; None for the zero form."""
        degs = self.bidegrees()
        if not degs:
            return None
        if len(degs) > 1:
            raise NonHomogeneousInput(f"form {self} mixes bidegrees {sorted(degs)}")
        return next(iter(degs))

    def is_bihomogeneous(self) -> bool:
        return len(self.bidegrees()) <= 1

    def coefficient(self, mono: Monomial) -> CyclotomicNumber:
        return self.terms.get(mono, CyclotomicNumber.zero(self.order))

    def sorted_terms(self) -> list[tuple[Monomial, CyclotomicNumber]]:
        return sorted(self.terms.items(), key=lambda t: (t[0].degree, t[0].sort_key()))

    # -- linear structure --

    def _check(self, other: Form):
        if self.n != other.n:
            raise GeneratorCountMismatch(f"forms on {self.n} and {other.n} generators")
        if self.order != other.order:
            raise OrderMismatch(f"forms over Q(zeta_{self.order}) and Q(zeta_{other.order})")

    def __add__(self, other: Form) -> Form:
        self._check(other)
        terms = dict(self.terms)
        for mono, c in other.terms.items():
            s = terms.get(mono)
            s = c if s is None else s + c
            if s.is_zero():
                terms.pop(mono, None)
            else:
                terms[mono] = s
        return Form._raw(self.n, self.order, terms)

    def __neg__(self) -> Form:
        return Form._raw(self.n, self.order, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: Form) -> Form:
        return self + (-other)

    def scale(self, c) -> Form:
        if not isinstance(c, CyclotomicNumber):
            c = CyclotomicNumber.from_rational(self.order, c)
        if c.is_zero():
            return Form.zero(self.n, self.order)
        return Form._raw(self.n, self.order, {m: c * v for m, v in self.terms.items()})

    def __rmul__(self, c) -> Form:
        return self.scale(c)

    def __xor__(self, other: Form) -> Form:
        return wedge(self, other)

    def __eq__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        return self.n == other.n and self.order == other.order and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, self.order, frozenset(self.terms.items())))

    def __iter__(self) -> Iterator[tuple[Monomial, CyclotomicNumber]]:
        return iter(self.terms.items())

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        return f"Form({self})"

    def __str__(self):
        return render_form(self)


def render_form(form: Form) -> str:
    """Shorthand rendering, e.g. ``phi[1 2 ~3] - 1/2 phi[3 ~1 ~2]``."""
    if form.is_zero():
        return "0"
    out = []
    for mono, c in form.sorted_terms():
        unit = mono == (0, 0)
        body = "" if unit else mono.shorthand()
        if c.is_rational():
            q = c.rational_value()
            sign = "-" if q < 0 else "+"
            mag = abs(q)
            if unit:
                text = str(mag)
            else:
                text = body if mag == 1 else f"{mag} {body}"
        else:
            sign = "+"
            text = f"({c})" if unit else f"({c}) {body}"
        out.append((sign, text))
    first_sign, first = out[0]
    s = ("-" if first_sign == "-" else "") + first
    for sign, text in out[1:]:
        s += f" {sign} {text}"
    return s


def wedge(a: Form, b: Form) -> Form:
    a._check(b)
    terms: dict[Monomial, CyclotomicNumber] = {}
    for ma, ca in a.terms.items():
        for mb, cb in b.terms.items():
            sign, prod = monomial_wedge(ma, mb)
            if prod is None:
                continue
            c = ca * cb
            if sign < 0:
                c = -c
            s = terms.get(prod)
            terms[prod] = c if s is None else s + c
    return Form._raw(a.n, a.order, {m: c for m, c in terms.items() if not c.is_zero()})


def conjugate_monomial(mono: Monomial) -> tuple[int, Monomial]:
    holo, anti = mono
    sign = -1 if (_popcount(holo) * _popcount(anti)) & 1 else 1
    return sign, Monomial(anti, holo)


def conjugate_form(a: Form) -> Form:
    terms = {}
    for mono, c in a.terms.items():
        sign, image = conjugate_monomial(mono)
        c = c.conj()
        terms[image] = -c if sign < 0 else c
    return Form._raw(a.n, a.order, terms)


def basis(n: int, p: int, q: int) -> list[Monomial]:
    """Monomials of bidegree (p, q) in lexicographic order; empty out of range."""
    if not (0 <= p <= n and 0 <= q <= n):
        return []
    gens = range(1, n + 1)
    return [Monomial.from_indices(i, j) for i in combinations(gens, p) for j in combinations(gens, q)]


def basis_size(n: int, p: int, q: int) -> int:
    if not (0 <= p <= n and 0 <= q <= n):
        return 0
    return comb(n, p) * comb(n, q)


def substitute(form: Form, images: list[Form]) -> Form:
    """Apply the algebra map phi^i -> images[i-1], bphi^i -> conj(images[i-1])."""
    n = form.n
    if len(images) != n:
        raise GeneratorCountMismatch(f"{len(images)} images for {n} generators")
    bar_images = [conjugate_form(f) for f in images]
    out = Form.zero(n, form.order)
    cache: dict[Monomial, Form] = {}
    for mono, c in form.terms.items():
        img = cache.get(mono)
        if img is None:
            img = Form.unit(n, form.order)
            for i in indices_from_mask(mono.holo):
                img = wedge(img, images[i - 1])
            for j in indices_from_mask(mono.anti):
                img = wedge(img, bar_images[j - 1])
            cache[mono] = img
        out = out + img.scale(c)
    return out
