"""Shared test support: independent sympy oracles and random CDBA generators."""

from __future__ import annotations

import random
from fractions import Fraction

import sympy

from ddbar.cdba import CDBA, compile_bicomplex
from ddbar.catalog import BUILTINS, load_builtin
from ddbar.cyclotomic import CyclotomicNumber
from ddbar.exterior import Form, Monomial, basis, substitute, wedge
from ddbar.linalg import Matrix
from ddbar.pipeline import build_cdba, group_from_manifest
from ddbar.group import invariant_subcomplex

X = sympy.Symbol("x")


# -- oracle: realify a matrix over Q(zeta_N) and take its rank with sympy --

def _sympy_phi(order):
    return sympy.Poly(sympy.cyclotomic_poly(order, X), X, domain="QQ")


def _mult_block(value: CyclotomicNumber, phi: sympy.Poly):
    """d x d rational matrix of multiplication by ``value`` on the power basis."""
    d = phi.degree()
    a = sympy.Poly(sum(sympy.Rational(c.numerator, c.denominator) * X**k
                       for k, c in enumerate(value.coeffs)), X, domain="QQ")
    cols = []
    for k in range(d):
        r = (a * sympy.Poly(X**k, X, domain="QQ")).rem(phi)
        coeffs = list(reversed(r.all_coeffs())) if not r.is_zero else []
        cols.append(coeffs + [0] * (d - len(coeffs)))
    return sympy.Matrix(cols).T


def oracle_rank(m: Matrix) -> int:
    """Rank via the regular representation: rank over Q of the realified matrix / degree."""
    if m.nrows == 0 or m.ncols == 0:
        return 0
    phi = _sympy_phi(m.order)
    d = phi.degree()
    big = sympy.zeros(m.nrows * d, m.ncols * d)
    for i, row in enumerate(m.rows):
        for j, v in row.items():
            big[i * d:(i + 1) * d, j * d:(j + 1) * d] = _mult_block(v, phi)
    r = big.rank()
    assert r % d == 0
    return r // d


def to_sympy_poly(value: CyclotomicNumber):
    return sum(sympy.Rational(c.numerator, c.denominator) * X**k for k, c in enumerate(value.coeffs))


# -- brute-force wedge sign from explicit generator sequences --

def brute_force_monomial(factors):
    """Sign and canonical monomial of a product of generators given as ('h', i) / ('a', i).

    Sorting key puts holomorphic before antiholomorphic, ascending; the sign is
    the parity of the bubble-sort swaps.
    """
    seq = list(factors)
    if len(set(seq)) != len(seq):
        return 0, None
    key = lambda f: (0 if f[0] == "h" else 1, f[1])
    sign = 1
    for i in range(len(seq)):
        for j in range(len(seq) - 1 - i):
            if key(seq[j]) > key(seq[j + 1]):
                seq[j], seq[j + 1] = seq[j + 1], seq[j]
                sign = -sign
    holo = [i for t, i in seq if t == "h"]
    anti = [i for t, i in seq if t == "a"]
    return sign, Monomial.from_indices(holo, anti)


# -- builtins --

def builtin_bicomplexes():
    out = {}
    for name in BUILTINS:
        manifest, action = load_builtin(name)
        cdba = build_cdba(manifest)
        bc = compile_bicomplex(cdba)
        if action is not None:
            bc = invariant_subcomplex(bc, group_from_manifest(cdba, manifest, action))
        out[name] = bc
    return out


def builtin_cdbas():
    out = {}
    for name, (filename, action) in BUILTINS.items():
        if action is None:
            out[name] = build_cdba(load_builtin(name)[0])
    return out


# -- random data --

def random_scalar(rng: random.Random, order: int, zero_weight=0.3, bound=3) -> CyclotomicNumber:
    if rng.random() < zero_weight:
        return CyclotomicNumber.zero(order)
    d = len(CyclotomicNumber.zero(order).coeffs)
    coeffs = [Fraction(rng.randint(-bound, bound), rng.choice([1, 1, 1, 2, 3])) for _ in range(d)]
    c = CyclotomicNumber(order, coeffs)
    return c if not c.is_zero() else CyclotomicNumber.one(order)


def random_form(rng: random.Random, n: int, order: int, p: int, q: int, density=0.5) -> Form:
    terms = {}
    for m in basis(n, p, q):
        if rng.random() < density:
            terms[m] = random_scalar(rng, order, zero_weight=0.0)
    return Form(n, order, terms)


def random_two_step(rng: random.Random, n: int, order: int) -> CDBA:
    """Integrable by construction: d of the last generators lands in the closed first ones."""
    m = rng.randint(1, n - 1)
    dels, delbars = [None] * n, [None] * n
    for i in range(m, n):
        dterms, dbterms = {}, {}
        for a in range(1, m + 1):
            for b in range(1, m + 1):
                if a < b and rng.random() < 0.6:
                    dterms[Monomial.from_indices([a, b], [])] = random_scalar(rng, order)
                if rng.random() < 0.5:
                    dbterms[Monomial.from_indices([a], [b])] = random_scalar(rng, order)
        dels[i] = Form(n, order, dterms)
        delbars[i] = Form(n, order, dbterms)
    return CDBA(n, order, dels, delbars, name=f"two-step-{n}-{order}")


def random_invertible(rng: random.Random, n: int, order: int) -> Matrix:
    while True:
        dense = [[random_scalar(rng, order, zero_weight=0.5, bound=2) for _ in range(n)] for _ in range(n)]
        m = Matrix.from_dense(order, dense)
        if m.rank() == n:
            return m


def matrix_inverse(a: Matrix) -> Matrix:
    n = a.nrows
    aug = Matrix.hstack([a, Matrix.identity(n, a.order)])
    rows, pivots = aug.rref()
    assert pivots[:n] == list(range(n))
    return Matrix(n, n, a.order, [{j - n: v for j, v in r.items() if j >= n} for r in rows])


def change_basis(x: CDBA, a: Matrix) -> CDBA:
    """Same algebra in the coframe psi^i = sum_j a_ij phi^j."""
    n, order = x.n, x.order
    ainv = matrix_inverse(a)
    # phi^k = sum_l ainv_kl psi^l, written as forms in the psi generators
    phi_in_psi = [Form(n, order, {Monomial.from_indices([l + 1], []): v for l, v in ainv.rows[k].items()})
                  for k in range(n)]
    dels, delbars = [], []
    for i in range(n):
        dpsi = Form.zero(n, order)
        dbpsi = Form.zero(n, order)
        for j, v in a.rows[i].items():
            dpsi = dpsi + x.del_gen[j].scale(v)
            dbpsi = dbpsi + x.delbar_gen[j].scale(v)
        dels.append(substitute(dpsi, phi_in_psi))
        delbars.append(substitute(dbpsi, phi_in_psi))
    return CDBA(n, order, dels, delbars, name=f"{x.name}*")


def random_cdbas(count: int, seed: int = 20261018) -> list[CDBA]:
    rng = random.Random(seed)
    bases = list(builtin_cdbas().values())
    out = []
    while len(out) < count:
        kind = len(out) % 3
        order = rng.choice([1, 2, 3, 4, 6])
        if kind == 0:
            out.append(random_two_step(rng, rng.choice([2, 3, 3]), order))
        elif kind == 1:
            base = rng.choice(bases)
            a = random_invertible(rng, base.n, base.order)
            out.append(change_basis(base, a))
        else:
            base = random_two_step(rng, 3, order)
            out.append(change_basis(base, random_invertible(rng, 3, order)))
    return out


def phi(n, order, *holo, anti=()):
    f = Form.unit(n, order)
    for i in holo:
        f = wedge(f, Form.phi(n, order, i))
    for j in anti:
        f = wedge(f, Form.bphi(n, order, j))
    return f


def random_hodge_pair(rng: random.Random, n: int | None = None, bound: int = 4):
    """A symmetric diamond with h^{0,0} >= 1 and the matching Betti sums."""
    from ddbar.diamond import BettiVector, HodgeDiamond
    n = rng.randint(0, 4) if n is None else n
    h = [[0] * (n + 1) for _ in range(n + 1)]
    for p in range(n + 1):
        for q in range(p, n + 1):
            h[p][q] = h[q][p] = rng.randint(0, bound)
    h[0][0] = max(h[0][0], 1)
    b = [sum(h[p][k - p] for p in range(n + 1) if 0 <= k - p <= n) for k in range(2 * n + 1)]
    return HodgeDiamond(n, h), BettiVector(n, b)
