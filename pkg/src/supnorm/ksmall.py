"""K-smallness of maximal-compact torus embeddings.

For an embedding of cocharacter lattices iota: X_*(T_K) -> X_*(T) the doubled
defect is

    f(mu) = star_norm2_G(iota mu) - 2 * star_norm2_K(mu),

a positively homogeneous piecewise-linear function.  ``verify_ksmall``
certifies ``min f > 0`` on the unit sup-norm sphere with exact LPs; the
lattice scan ``min_lattice_defect`` is the brute-force cross-check.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .errors import CapabilityError, InternalError
from .lp import INFEASIBLE, OPTIMAL, solve_lp
from .rootdata import (
    RootDatum,
    build_root_datum,
    clean,
    dominant_rep,
    maximizing_functional,
    pair,
    product_datum,
    star_norm2,
    sup_norm,
    torus_datum,
)


@dataclass(frozen=True)
class CocharEmbedding:
    family: str
    k: int
    label: str
    K: RootDatum
    G: RootDatum
    iota: tuple  # G.ambient_dim rows, K.ambient_dim columns

    def apply(self, mu: Sequence) -> tuple:
        return clean(pair(row, mu) for row in self.iota)

    def pullback(self, g: Sequence) -> tuple:
        """iota^T g: a G-side functional read on K-side cocharacters."""
        return clean(sum(self.iota[i][j] * g[i] for i in range(len(g)))
                     for j in range(self.K.ambient_dim))


def _identity(n):
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def _so_sl(k):
    K = build_root_datum("D", k)
    G = build_root_datum("A", 2 * k - 1)
    rows = [[0] * k for _ in range(2 * k)]
    for i in range(k):
        rows[i][i] = 1
        rows[2 * k - 1 - i][i] = -1
    return f"SO({k},{k}) in SL{2 * k}", K, G, rows


def _so_sl_odd(k):
    K = build_root_datum("B", k)
    G = build_root_datum("A", 2 * k)
    rows = [[0] * k for _ in range(2 * k + 1)]
    for i in range(k):
        rows[i][i] = 1
        rows[2 * k - i][i] = -1
    return f"SO({k},{k + 1}) in SL{2 * k + 1}", K, G, rows


def _gl_sp(n):
    K = build_root_datum("A", n - 1) if n > 1 else torus_datum(1)
    return f"GL{n} in Sp{2 * n}", K, build_root_datum("C", n), _identity(n)


def _so_so_even(k):
    K = product_datum(build_root_datum("D", k), build_root_datum("D", k))
    return f"SO({k},{k})^2 in SO({2 * k},{2 * k})", K, build_root_datum("D", 2 * k), _identity(2 * k)


def _so_so_mixed(k):
    K = product_datum(build_root_datum("D", k), build_root_datum("B", k))
    return (f"SO({k},{k})xSO({k},{k + 1}) in SO({2 * k},{2 * k + 1})", K,
            build_root_datum("B", 2 * k), _identity(2 * k))


def _so_so_odd(k):
    K = product_datum(build_root_datum("B", k), build_root_datum("B", k))
    rows = [list(r) for r in _identity(2 * k)] + [[0] * (2 * k)]
    return (f"SO({k},{k + 1})xSO({k + 1},{k}) in SO({2 * k + 1},{2 * k + 1})", K,
            build_root_datum("D", 2 * k + 1), rows)


def _g2(_k):
    K = product_datum(build_root_datum("SU2", 1), build_root_datum("SU2", 1))
    return "SU(2)xSU(2) in G2", K, build_root_datum("G2", 2), _identity(2)


# tag -> (builder, supported size parameters)
FAMILIES: dict[str, tuple[Callable, range]] = {
    "so-sl": (_so_sl, range(1, 5)),
    "so-sl-odd": (_so_sl_odd, range(1, 4)),
    "gl-sp": (_gl_sp, range(1, 5)),
    "so-so-even": (_so_so_even, range(1, 3)),
    "so-so-mixed": (_so_so_mixed, range(1, 3)),
    "so-so-odd": (_so_so_odd, range(1, 3)),
    "g2": (_g2, range(1, 2)),
}

# The verification matrix: SL3..SL8, Sp4, Sp6, SO(4,4), SO(4,5), SO(5,5), G2.
SECTION7_CASES = (
    ("so-sl-odd", 1), ("so-sl", 2), ("so-sl-odd", 2), ("so-sl", 3), ("so-sl-odd", 3), ("so-sl", 4),
    ("gl-sp", 2), ("gl-sp", 3),
    ("so-so-even", 2), ("so-so-mixed", 2), ("so-so-odd", 2),
    ("g2", 1),
)


def _rank(rows):
    m = [[Fraction(x) for x in r] for r in rows]
    rank, ncols = 0, len(m[0]) if m else 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for r in range(len(m)):
            if r != rank and m[r][col] != 0:
                f = m[r][col] / m[rank][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


def check_embedding(E: CocharEmbedding) -> None:
    """Injectivity of iota and W_K-compatibility on a generating set."""
    r = E.K.ambient_dim
    if _rank(E.iota) != r:
        raise InternalError(f"{E.label}: iota is not injective")
    gens = [tuple(int(i == j) for j in range(r)) for i in range(r)]
    gens += [tuple(a + b for a, b in zip(gens[i], gens[j])) for i in range(r) for j in range(i + 1, r)]
    for i in range(E.K.num_simple):
        for v in gens:
            moved = E.K.reflect(v, i, "coweight")
            if dominant_rep(E.G, E.apply(moved))[0] != dominant_rep(E.G, E.apply(v))[0]:
                raise InternalError(f"{E.label}: K-reflection {i} does not lift to W on {v}")


def build_embedding(family: str, k: int = 1) -> CocharEmbedding:
    if family not in FAMILIES:
        raise CapabilityError(f"unknown embedding family {family!r}; known: {sorted(FAMILIES)}")
    builder, sizes = FAMILIES[family]
    if k not in sizes:
        raise CapabilityError(f"{family}: size {k} outside supported range {list(sizes)}")
    label, K, G, rows = builder(k)
    E = CocharEmbedding(family=family, k=k, label=label, K=K, G=G,
                        iota=tuple(tuple(r) for r in rows))
    check_embedding(E)
    return E


def defect2(E: CocharEmbedding, mu: Sequence):
    """star_norm2_G(iota mu) - 2 star_norm2_K(mu)."""
    return star_norm2(E.G, E.apply(mu)) - 2 * star_norm2(E.K, mu)


def min_lattice_defect(E: CocharEmbedding, box_radius: int) -> tuple[int, tuple]:
    """Exhaustive minimum of defect2 over nonzero mu with sup-norm <= box_radius.

    Ties are broken towards smaller sup-norm, then K-dominant vectors, then
    the lexicographically largest vector.
    """
    if box_radius < 1:
        raise ValueError("box_radius must be >= 1")
    r = E.K.ambient_dim
    best_key, best = None, None
    for mu in itertools.product(range(-box_radius, box_radius + 1), repeat=r):
        if not any(mu):
            continue
        val = defect2(E, mu)
        key = (val, sup_norm(mu), not E.K.is_dominant(mu, "coweight"), tuple(-a for a in mu))
        if best_key is None or key < best_key:
            best_key, best = key, (val, mu)
    return best


@dataclass(frozen=True)
class KSmallCertificate:
    family: str
    k: int
    label: str
    kappa2_lower: Fraction
    kappa2_lattice: int
    witness_mu: tuple
    lp_count: int
    box_radius: int
    lower_point: tuple = field(default=())
    face_optima: tuple = field(default=())

    @property
    def positive(self) -> bool:
        return self.kappa2_lower > 0

    @property
    def verdict(self) -> str:
        return "positive" if self.positive else "non-positive"

    @property
    def kappa_lower(self) -> Fraction:
        """Lower bound in the undoubled (rho-paired) convention."""
        return self.kappa2_lower / 2

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "k": self.k,
            "label": self.label,
            "kappa2_lower": _frac_str(self.kappa2_lower),
            "kappa_lower": _frac_str(self.kappa_lower),
            "kappa2_lattice": self.kappa2_lattice,
            "witness": list(self.witness_mu),
            "lower_point": [_frac_str(Fraction(a)) for a in self.lower_point],
            "lp_count": self.lp_count,
            "box_radius": self.box_radius,
            "verdict": self.verdict,
        }


def _frac_str(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _face_lp(E, chamber, shift, face, sign, stats):
    """Minimize f on {mu in K-chamber, |mu|_inf <= 1, mu[face] = sign} by cut generation.

    Variables: u = mu + 1 (in [0, 2]) and t = tp - tn.  Each cut is a G-side
    functional g with constraint <mu, iota^T g - shift> <= t; the separation
    oracle is the maximizing orbit element of 2 rho_G at the current point.
    """
    r = E.K.ambient_dim
    n = r + 2
    A, b = [], []
    for alpha in chamber:
        A.append([-a for a in alpha] + [0, 0])
        b.append(-sum(alpha))
    for j in range(r):
        A.append([int(i == j) for i in range(r)] + [0, 0])
        b.append(2)
    A_eq = [[int(i == face) for i in range(r)] + [0, 0]]
    b_eq = [1 + sign]
    cost = [0] * r + [1, -1]

    def cut(g):
        a = [x - s for x, s in zip(E.pullback(g), shift)]
        return a + [-1, 1], sum(a)

    cuts = [cut(E.G.two_rho)]
    while True:
        res = solve_lp(cost, A + [c for c, _ in cuts], b + [v for _, v in cuts], A_eq, b_eq)
        stats["lp"] += 1
        if res.status == INFEASIBLE:
            return None
        if res.status != OPTIMAL:
            raise InternalError(f"{E.label}: face LP {res.status}")
        mu = tuple(u - 1 for u in res.x[:r])
        t = res.x[r] - res.x[r + 1]
        true_val = star_norm2(E.G, E.apply(mu)) - pair(mu, shift)
        if true_val <= t:
            return Fraction(t), clean(mu)
        cuts.append(cut(maximizing_functional(E.G, E.apply(mu))))


def verify_ksmall(E: CocharEmbedding, box_radius: int = 3) -> KSmallCertificate:
    """Certified lower bound for the doubled defect on the unit sup-norm sphere.

    By W_K-invariance it suffices to work in the closed K-dominant chamber,
    where the K-norm is the linear form <mu, 2 rho_K> and f is convex.  Each
    facet {mu_i = +-1} of the unit box is one exact LP.  Since every nonzero
    lattice vector has sup-norm >= 1, a positive bound certifies f > 0 on the
    whole lattice.
    """
    chamber = E.K.simple_roots
    shift = tuple(2 * a for a in E.K.two_rho)
    stats = {"lp": 0}
    optima = []
    for face in range(E.K.ambient_dim):
        for sign in (1, -1):
            out = _face_lp(E, chamber, shift, face, sign, stats)
            if out is not None:
                optima.append((face, sign, out[0], out[1]))
    if not optima:
        raise InternalError(f"{E.label}: every face LP infeasible (malformed cone)")
    lower = min(optima, key=lambda o: o[2])
    lattice_val, witness = min_lattice_defect(E, box_radius)
    return KSmallCertificate(
        family=E.family, k=E.k, label=E.label,
        kappa2_lower=lower[2], kappa2_lattice=lattice_val, witness_mu=tuple(witness),
        lp_count=stats["lp"], box_radius=box_radius, lower_point=lower[3],
        face_optima=tuple((f, s, v) for f, s, v, _ in optima),
    )
