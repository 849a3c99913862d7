"""Counting on Hecke spheres: delta profiles, sphere-size polynomials, and
brute-force intersection counts with conjugates of small subgroups."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import ContractError, InternalError
from .lattices import DEFAULT_ENUM_CAP, hnf_sphere, in_K, inverse, matmul, vp, det
from .rootdata import (
    RootDatum,
    build_root_datum,
    clean,
    orbit_with_words,
    pair,
    star_norm2,
    torus_datum,
)

KINDS = ("diag-gl2", "diag-pgl2", "torus-gl2", "full")
MAX_P = 5
MAX_ENTRY = 3


@dataclass(frozen=True)
class DeltaProfile:
    mu: tuple
    values: tuple
    total: int

    def to_dict(self) -> dict:
        return {"mu": list(self.mu), "values": list(self.values), "total": self.total}


def delta_profile(datum: RootDatum, mu: Sequence) -> DeltaProfile:
    """delta(mu, k) = #{roots alpha : <alpha, mu> > k} for k = 0, 1, ..."""
    if len(mu) != datum.ambient_dim:
        raise ContractError(f"mu needs {datum.ambient_dim} coordinates for {datum.label}")
    pairings = [pair(alpha, mu) for alpha in datum.roots]
    values = []
    k = 0
    while True:
        d = sum(1 for v in pairings if v > k)
        if d == 0:
            break
        values.append(d)
        k += 1
    total = sum(values)
    if total != star_norm2(datum, mu):
        raise InternalError(f"delta profile total {total} != star norm at {tuple(mu)}")
    return DeltaProfile(mu=clean(mu), values=tuple(values), total=total)


def sphere_size_polynomial(datum: RootDatum, mu: Sequence) -> list[int]:
    """Coefficients (constant term first) of |K p^mu K / K| as a polynomial in q.

    The flag factor sum_{w in W/W_mu} q^{l(w)} is computed over the orbit
    W mu, with l given by the number of positive roots made negative.
    """
    mu = clean(mu)
    if not datum.is_dominant(mu, "coweight"):
        raise ContractError(f"{mu} is not dominant")
    shift = sum(delta_profile(datum, mu).values[1:])
    coeffs = [0] * (shift + len(datum.positive_roots) + 1)
    for nu in orbit_with_words(datum, mu, "coweight"):
        length = sum(1 for alpha in datum.positive_roots if pair(alpha, nu) < 0)
        coeffs[length + shift] += 1
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    if len(coeffs) - 1 != star_norm2(datum, mu) or coeffs[-1] != 1:
        raise InternalError("sphere polynomial has the wrong degree or leading coefficient")
    return coeffs


def evaluate_polynomial(coeffs: Sequence[int], q) -> int:
    return sum(c * q ** i for i, c in enumerate(coeffs))


# ---------------------------------------------------------------------------
# intersection counts


def _identity(n):
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


@dataclass(frozen=True)
class IntersectionConfig:
    """kind: diag-gl2 / diag-pgl2 (diagonal H in H x H), torus-gl2, or full (H = G = GL_n).

    twist is one integral matrix (torus, full) or a pair (diagonal kinds).
    """

    kind: str
    p: int
    twist: tuple = field(default=None)
    n: int = 2

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ContractError(f"unknown configuration {self.kind!r}; known: {KINDS}")
        if self.kind != "full" and self.n != 2:
            raise ContractError(f"{self.kind} is defined for n = 2 only")
        if self.twist is None:
            tw = ((_identity(2), _identity(2)) if self.kind.startswith("diag")
                  else _identity(self.n))
            object.__setattr__(self, "twist", tw)
        mats = self.twist if self.kind.startswith("diag") else (self.twist,)
        for m in mats:
            if len(m) != self.n or not in_K(m, self.p):
                raise ContractError("twist must be an integral matrix invertible mod p")

    @property
    def ambient_dim(self) -> int:
        return 4 if self.kind.startswith("diag") else self.n

    def to_dict(self) -> dict:
        return {"kind": self.kind, "p": self.p, "n": self.n,
                "twist": [[list(map(int, r)) for r in m] for m in
                          (self.twist if self.kind.startswith("diag") else (self.twist,))]}


def random_twist(rng: random.Random, p: int, n: int = 2, bound: int = 9) -> tuple:
    """Random integer matrix with determinant prime to p."""
    while True:
        m = tuple(tuple(rng.randint(-bound, bound) for _ in range(n)) for _ in range(n))
        d = det(m)
        if d and d.numerator % p:
            return m


def _normalize_mu(config: IntersectionConfig, mu: Sequence) -> tuple:
    mu = tuple(int(a) for a in mu)
    if config.kind.startswith("diag") and len(mu) == 2:
        mu = mu + (0, 0)
    if len(mu) != config.ambient_dim:
        raise ContractError(f"mu must have {config.ambient_dim} entries for {config.kind}")
    return mu


def _diagonal_lattice(m, p) -> bool:
    """Is the lattice m Z_p^n spanned by p^{a_i} e_i?"""
    n = len(m)
    minv = inverse(m)
    for i in range(n):
        a = min(vp(x, p) for x in m[i])
        if any(vp(minv[r][i] * Fraction(p) ** a, p) < 0 for r in range(n)):
            return False
    return True


def _same_homothety_class(m, p) -> bool:
    """m in Q_p^x GL_2(Z_p)."""
    d = vp(det(m), p)
    if d % 2:
        return False
    s = Fraction(p) ** (-(d // 2))
    return in_K([[x * s for x in row] for row in m], p)


def intersection_count(config: IntersectionConfig, mu: Sequence, cap: int = DEFAULT_ENUM_CAP) -> int:
    """#( L(Q_p) K  cap  K mu(p) K ) / K by sphere enumeration, L = y H y^{-1}."""
    mu = _normalize_mu(config, mu)
    p = config.p
    if p > MAX_P or max(abs(a) for a in mu) > MAX_ENTRY:
        raise ContractError("configuration is beyond desk scale")
    if config.kind == "full":
        return sum(1 for _ in hnf_sphere(config.n, mu, p, cap))
    if config.kind == "torus-gl2":
        yinv = inverse(config.twist)
        return sum(1 for g in hnf_sphere(2, mu, p, cap) if _diagonal_lattice(matmul(yinv, g), p))
    # (g1 K, g2 K) lies in L K iff y1^{-1} g1 and y2^{-1} g2 span the same
    # lattice (up to homothety for PGL_2).
    y1inv, y2inv = (inverse(y) for y in config.twist)
    first = [matmul(y1inv, g) for g in hnf_sphere(2, mu[:2], p, cap)]
    second = [matmul(y2inv, g) for g in hnf_sphere(2, mu[2:], p, cap)]
    if config.kind == "diag-pgl2":
        # spheres of PGL_2 are spheres of GL_2 with the determinant forgotten
        test = _same_homothety_class
    else:
        def test(m, p):
            return in_K(m, p)
    return sum(1 for a in first for b in second if test(matmul(inverse(b), a), p))


def _h_side(config: IntersectionConfig):
    """(H datum, cocharacter map X_*(T_H) -> X_*(T) as rows)."""
    if config.kind == "full":
        return build_root_datum("A", config.n - 1), [list(r) for r in _identity(config.n)]
    if config.kind == "torus-gl2":
        return torus_datum(2), [[1, 0], [0, 1]]
    return build_root_datum("A", 1), [[1, 0], [0, 1], [1, 0], [0, 1]]


def _g_orbit(config, mu):
    if config.kind.startswith("diag"):
        A1 = build_root_datum("A", 1)
        return {a + b for a in orbit_with_words(A1, mu[:2], "coweight")
                for b in orbit_with_words(A1, mu[2:], "coweight")}
    return set(orbit_with_words(build_root_datum("A", config.n - 1), mu, "coweight"))


@dataclass(frozen=True)
class BuildingCountReport:
    count: int
    bound: int
    ratio: Fraction
    in_subgroup: bool
    h_mu: tuple | None

    def to_dict(self) -> dict:
        r = self.ratio
        return {"count": self.count, "bound": self.bound,
                "ratio": str(r.numerator) if r.denominator == 1 else f"{r.numerator}/{r.denominator}",
                "in_subgroup": self.in_subgroup,
                "h_mu": list(self.h_mu) if self.h_mu is not None else None}


def buildingcount_check(config: IntersectionConfig, mu: Sequence,
                        H_datum: RootDatum | None = None) -> BuildingCountReport:
    """Compare the intersection count with p^{star_norm2_H(mu)}.

    When no Weyl image of mu comes from the H-torus the count must vanish;
    the report then carries bound 0 and ratio 0.
    """
    mu = _normalize_mu(config, mu)
    if config.kind == "diag-pgl2":
        # coweights of PGL_2 are taken modulo (1, 1); align the second factor
        gap = sum(mu[:2]) - sum(mu[2:])
        if gap % 2 == 0:
            mu = mu[:2] + tuple(a + gap // 2 for a in mu[2:])
    default_H, rows = _h_side(config)
    H = H_datum or default_H
    count = intersection_count(config, mu)
    h_mu = None
    r = len(rows[0])
    for nu in sorted(_g_orbit(config, mu)):
        # solve rows * x = nu (rows has full column rank with unit pivots)
        x = tuple(nu[rows.index([int(i == j) for j in range(r)])] for i in range(r))
        if all(pair(row, x) == v for row, v in zip(rows, nu)):
            h_mu = x
            break
    if h_mu is None:
        if count:
            raise InternalError(f"count {count} != 0 although no Weyl image of mu lies in T_H")
        return BuildingCountReport(count=0, bound=0, ratio=Fraction(0), in_subgroup=False, h_mu=None)
    bound = config.p ** star_norm2(H, h_mu)
    return BuildingCountReport(count=count, bound=bound, ratio=Fraction(count, bound),
                               in_subgroup=True, h_mu=h_mu)
