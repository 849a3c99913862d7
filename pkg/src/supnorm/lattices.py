"""Small exact p-adic linear algebra over Q: valuations, elementary divisors,
and Hermite-normal-form enumeration of Hecke spheres K p^mu K / K in GL_n."""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterator, Sequence

from .errors import ContractError, ResourceError
from .rootdata import invert_matrix

DEFAULT_ENUM_CAP = 2_000_000
INF = float("inf")


def vp(x, p: int):
    """p-adic valuation of a rational; +inf at 0."""
    x = Fraction(x)
    if x == 0:
        return INF
    v = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def det(m: Sequence[Sequence]) -> Fraction:
    n = len(m)
    if n == 1:
        return Fraction(m[0][0])
    if n == 2:
        return Fraction(m[0][0]) * m[1][1] - Fraction(m[0][1]) * m[1][0]
    total = Fraction(0)
    for j in range(n):
        if m[0][j]:
            minor = [row[:j] + row[j + 1:] for row in m[1:]]
            total += (-1) ** j * Fraction(m[0][j]) * det(minor)
    return total


def matmul(a, b):
    return [[sum(Fraction(a[i][k]) * b[k][j] for k in range(len(b))) for j in range(len(b[0]))]
            for i in range(len(a))]


def elementary_divisors(m: Sequence[Sequence], p: int) -> tuple:
    """Smith exponents over Z_p (ascending) via determinantal divisors."""
    n = len(m)
    d = [0]
    for i in range(1, n + 1):
        best = INF
        for rows in itertools.combinations(range(n), i):
            for cols in itertools.combinations(range(n), i):
                best = min(best, vp(det([[m[r][c] for c in cols] for r in rows]), p))
        if best == INF:
            raise ContractError("matrix is singular")
        d.append(best)
    return tuple(d[i] - d[i - 1] for i in range(1, n + 1))


def in_double_coset(m, mu: Sequence[int], p: int) -> bool:
    """m in GL_n(Z_p) p^mu GL_n(Z_p)."""
    return elementary_divisors(m, p) == tuple(sorted(mu))


def is_integral(m, p: int) -> bool:
    return all(vp(x, p) >= 0 for row in m for x in row)


def in_K(m, p: int) -> bool:
    """m in GL_n(Z_p)."""
    return is_integral(m, p) and vp(det(m), p) == 0


def inverse(m):
    return invert_matrix([[Fraction(x) for x in row] for row in m])


def _int_vp(x: int, p: int):
    if x == 0:
        return INF
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def _int_det(m):
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    return sum((-1) ** j * m[0][j] * _int_det([row[:j] + row[j + 1:] for row in m[1:]])
               for j in range(n) if m[0][j])


def _int_elementary_divisors(m, p):
    n = len(m)
    d = [0]
    for i in range(1, n + 1):
        best = INF
        for rows in itertools.combinations(range(n), i):
            for cols in itertools.combinations(range(n), i):
                best = min(best, _int_vp(_int_det([[m[r][c] for c in cols] for r in rows]), p))
                if best == d[-1]:
                    break
            if best == d[-1]:
                break
        d.append(best)
    return tuple(d[i] - d[i - 1] for i in range(1, n + 1))


def hnf_sphere(n: int, mu: Sequence[int], p: int, cap: int = DEFAULT_ENUM_CAP) -> Iterator[list]:
    """Upper-triangular Hermite representatives g with gK in K p^mu K / K.

    Columns span the lattice g Z_p^n; diagonal p^{a_i} with a_i between
    min(mu) and max(mu), off-diagonal entries of row i reduced mod p^{a_i}.
    """
    mu = tuple(mu)
    if len(mu) != n:
        raise ContractError("mu has the wrong length")
    lo, hi = min(mu), max(mu)
    shifted = tuple(sorted(m - lo for m in mu))
    total = sum(shifted)
    scale = Fraction(p) ** lo
    work = 0
    for a in itertools.product(range(hi - lo + 1), repeat=n):
        if sum(a) != total:
            continue
        ranges = [range(p ** a[i]) for i in range(n) for _ in range(i + 1, n)]
        for offs in itertools.product(*ranges):
            work += 1
            if work > cap:
                raise ResourceError(f"sphere enumeration exceeded {cap} matrices")
            g = [[0] * n for _ in range(n)]
            it = iter(offs)
            for i in range(n):
                g[i][i] = p ** a[i]
                for j in range(i + 1, n):
                    g[i][j] = next(it)
            if _int_elementary_divisors(g, p) == shifted:
                yield [[scale * x for x in row] for row in g]


def sphere_count(n: int, mu: Sequence[int], p: int, cap: int = DEFAULT_ENUM_CAP) -> int:
    return sum(1 for _ in hnf_sphere(n, mu, p, cap))
