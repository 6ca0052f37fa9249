"""Hodge diamond and Betti number bookkeeping for blow-ups and projective bundles.

Blowing up a codimension-k center Z adds k-1 copies of Z's cohomology,
shifted by (j, j) for j = 1..k-1. The projectivization of a rank-r bundle
is r copies of the base, shifted by (j, j) for j = 0..r-1.

Diamond files hold the complex dimension n, then n+1 rows of the h-grid
(row p lists h^{p,0} .. h^{p,n}), then one row with b_0 .. b_2n::

    2
    1 0 0
    0 2 0
    0 0 1
    1 0 2 0 1
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

from .errors import DiamondFormatError, DimensionMismatch

__all__ = [
    "HodgeDiamond", "BettiVector", "blowup_diamond", "projectivize", "check_hodge_structure",
    "point", "read_diamond", "write_diamond", "format_diamond",
]


@dataclass(frozen=True)
class HodgeDiamond:
    n: int
    h: tuple[tuple[int, ...], ...]

    def __init__(self, n: int, h):
        h = tuple(tuple(int(v) for v in row) for row in h)
        if len(h) != n + 1 or any(len(row) != n + 1 for row in h):
            raise DimensionMismatch(f"a dimension-{n} diamond needs an {n + 1}x{n + 1} grid")
        if any(v < 0 for row in h for v in row):
            raise ValueError("Hodge numbers must be nonnegative")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "h", h)

    def __getitem__(self, pq) -> int:
        p, q = pq
        if 0 <= p <= self.n and 0 <= q <= self.n:
            return self.h[p][q]
        return 0

    def total(self) -> int:
        return sum(map(sum, self.h))

    def degree_sum(self, k: int) -> int:
        return sum(self[p, k - p] for p in range(self.n + 1))


@dataclass(frozen=True)
class BettiVector:
    n: int
    b: tuple[int, ...]

    def __init__(self, n: int, b):
        b = tuple(int(v) for v in b)
        if len(b) != 2 * n + 1:
            raise DimensionMismatch(f"a dimension-{n} Betti vector needs {2 * n + 1} entries")
        if any(v < 0 for v in b):
            raise ValueError("Betti numbers must be nonnegative")
        if b[0] < 1:
            warnings.warn("b_0 < 1: not the Betti vector of a connected model", stacklevel=2)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "b", b)

    def __getitem__(self, k: int) -> int:
        return self.b[k] if 0 <= k <= 2 * self.n else 0

    def euler(self) -> int:
        return sum((-1) ** k * v for k, v in enumerate(self.b))


Pair = tuple[HodgeDiamond, BettiVector]


def point() -> Pair:
    return HodgeDiamond(0, [[1]]), BettiVector(0, [1])


def _check_pair(pair: Pair, label: str):
    h, b = pair
    if h.n != b.n:
        raise DimensionMismatch(f"{label}: diamond has n={h.n} but Betti vector has n={b.n}")


def blowup_diamond(ambient: Pair, center: Pair, codim: int) -> Pair:
    _check_pair(ambient, "ambient")
    _check_pair(center, "center")
    X, bX = ambient
    Z, bZ = center
    if codim < 1:
        raise DimensionMismatch(f"codimension must be at least 1, got {codim}")
    if Z.n != X.n - codim:
        raise DimensionMismatch(
            f"center of dimension {Z.n} cannot have codimension {codim} in dimension {X.n}")
    n = X.n
    h = [[X[p, q] + sum(Z[p - j, q - j] for j in range(1, codim))
          for q in range(n + 1)] for p in range(n + 1)]
    b = [bX[m] + sum(bZ[m - 2 * j] for j in range(1, codim)) for m in range(2 * n + 1)]
    return HodgeDiamond(n, h), BettiVector(n, b)


def projectivize(base: Pair, rank: int) -> Pair:
    _check_pair(base, "base")
    X, bX = base
    if rank < 1:
        raise ValueError(f"bundle rank must be at least 1, got {rank}")
    n = X.n + rank - 1
    h = [[sum(X[p - j, q - j] for j in range(rank)) for q in range(n + 1)] for p in range(n + 1)]
    b = [sum(bX[m - 2 * j] for j in range(rank)) for m in range(2 * n + 1)]
    return HodgeDiamond(n, h), BettiVector(n, b)


def check_hodge_structure(X: HodgeDiamond, B: BettiVector) -> bool:
    """Hodge symmetry and b_k = sum_{p+q=k} h^{p,q} in every degree."""
    if X.n != B.n:
        raise DimensionMismatch(f"diamond has n={X.n} but Betti vector has n={B.n}")
    n = X.n
    if any(X[p, q] != X[q, p] for p in range(n + 1) for q in range(n + 1)):
        return False
    return all(B[k] == X.degree_sum(k) for k in range(2 * n + 1))


# -- file format --

def format_diamond(pair: Pair) -> str:
    h, b = pair
    lines = [str(h.n)]
    lines += [" ".join(map(str, row)) for row in h.h]
    lines.append(" ".join(map(str, b.b)))
    return "\n".join(lines) + "\n"


def parse_diamond(text: str) -> Pair:
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            rows.append((lineno, [int(tok) for tok in line.split()]))
        except ValueError:
            raise DiamondFormatError(f"non-integer entry in {line!r}", lineno) from None
    if not rows:
        raise DiamondFormatError("empty diamond file")
    lineno, first = rows[0]
    if len(first) != 1 or first[0] < 0:
        raise DiamondFormatError("first line must be the complex dimension n", lineno)
    n = first[0]
    if len(rows) != n + 3:
        raise DiamondFormatError(f"expected {n + 1} grid rows and one Betti row after n={n}, "
                                 f"got {len(rows) - 1} rows")
    grid = []
    for lineno, row in rows[1:n + 2]:
        if len(row) != n + 1:
            raise DiamondFormatError(f"grid row needs {n + 1} entries, got {len(row)}", lineno)
        grid.append(row)
    lineno, betti = rows[-1]
    if len(betti) != 2 * n + 1:
        raise DiamondFormatError(f"Betti row needs {2 * n + 1} entries, got {len(betti)}", lineno)
    try:
        return HodgeDiamond(n, grid), BettiVector(n, betti)
    except ValueError as exc:
        raise DiamondFormatError(str(exc)) from None


def read_diamond(path) -> Pair:
    with open(path, encoding="utf-8") as fh:
        return parse_diamond(fh.read())


def write_diamond(path, pair: Pair) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_diamond(pair))
