"""Weyl characters, weight multiplicities and the Levi-shift machinery.

Characters are evaluated as multiplicity sums, so singular torus points need
no limiting argument.  Torus points whose coordinates are all Gaussian
rationals are evaluated exactly (sympy's QQ_I); anything else falls back to
complex floating point.
"""

from __future__ import annotations

import cmath
import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from sympy.polys.domains import QQ_I

from .errors import ContractError, ExhaustionError, InternalError, ResourceError
from .rootdata import (
    WEIGHT,
    RootDatum,
    clean,
    dominant_rep,
    is_central,
    orbit_with_words,
    pair,
    sup_norm,
    weyl_elements,
    weyl_group_order,
)

DEFAULT_DIM_CAP = 10**5
FLOAT_TOL = 1e-9

GaussianRational = type(QQ_I(0, 1))


# ---------------------------------------------------------------------------
# scalars


_COMPLEX_RE = re.compile(
    r"^(?P<re>[+-]?[\d./]+)?(?:(?P<im>[+-]?[\d./]*)[ij])?$"
)


def parse_scalar(text: str):
    """Parse "a", "bi", "a+bi" (Fractions and decimals allowed) exactly."""
    s = text.strip().replace(" ", "")
    m = _COMPLEX_RE.match(s)
    if not s or not m or (m.group("re") is None and m.group("im") is None):
        raise ContractError(f"cannot parse torus coordinate {text!r}")
    re_part = Fraction(m.group("re")) if m.group("re") else Fraction(0)
    im = m.group("im")
    if im is None:
        im_part = Fraction(0)
    elif im in ("", "+"):
        im_part = Fraction(1)
    elif im == "-":
        im_part = Fraction(-1)
    else:
        im_part = Fraction(im)
    return QQ_I(re_part, im_part)


def _is_exact(a) -> bool:
    return isinstance(a, (int, Fraction, GaussianRational, str))


def torus_point(coords: Iterable) -> tuple[tuple, bool]:
    """Normalize coordinates; returns (point, exact)."""
    coords = list(coords)
    exact = all(_is_exact(a) for a in coords)
    out = []
    for a in coords:
        if isinstance(a, str):
            a = parse_scalar(a)
            if not exact:
                a = to_complex(a)
        elif exact:
            if not isinstance(a, GaussianRational):
                a = QQ_I(Fraction(a), 0)
        else:
            a = complex(a)
        if not a:
            raise ContractError("torus coordinates must be nonzero")
        out.append(a)
    return tuple(out), exact


def to_complex(z) -> complex:
    if isinstance(z, GaussianRational):
        return complex(float(z.x), float(z.y))
    return complex(z)


def scalar_abs(z) -> float:
    return abs(to_complex(z))


def monomial(x: Sequence, weight: Sequence):
    """x^weight = prod x_i^{weight_i}."""
    out = 1
    for xi, wi in zip(x, weight):
        if wi:
            out = out * xi ** int(wi)
    return out


def root_value(x: Sequence, alpha: Sequence) -> float:
    """|alpha(x)| as a float."""
    return scalar_abs(monomial(x, alpha))


# ---------------------------------------------------------------------------
# weight multiplicities


@dataclass(frozen=True)
class CharacterTable:
    highest_weight: tuple
    multiplicities: dict

    @property
    def dimension(self) -> int:
        return sum(self.multiplicities.values())

    def dominant_part(self, datum: RootDatum) -> dict:
        return {w: m for w, m in self.multiplicities.items() if datum.is_dominant(w)}


def weyl_dimension(datum: RootDatum, lam: Sequence) -> int:
    num = Fraction(1)
    shifted = [2 * a + b for a, b in zip(lam, datum.two_rho)]
    for c in datum.positive_coroots:
        num *= Fraction(pair(shifted, c)) / pair(datum.two_rho, c)
    if num.denominator != 1:
        raise InternalError("non-integral Weyl dimension")
    return num.numerator


def _form(datum: RootDatum):
    """W-invariant form B(u, v) = sum over roots of <u, a^v><v, a^v>."""
    cos = datum.coroots

    def B(u, v):
        return sum(pair(u, c) * pair(v, c) for c in cos)

    return B


def dominant_weights_below(datum: RootDatum, lam: Sequence) -> list[tuple]:
    """Dominant weights mu <= lam, closest to lam first."""
    lam = clean(lam)
    seen = {lam}
    frontier = [lam]
    while frontier:
        nxt = []
        for mu in frontier:
            for alpha in datum.positive_roots:
                nu = clean(a - b for a, b in zip(mu, alpha))
                if nu not in seen and datum.is_dominant(nu):
                    seen.add(nu)
                    nxt.append(nu)
        frontier = nxt

    def depth(mu):
        coeffs = datum.simple_coordinates([a - b for a, b in zip(lam, mu)])
        return sum(coeffs)

    return sorted(seen, key=lambda mu: (depth(mu), tuple(-a for a in mu)))


def weight_multiplicities(datum: RootDatum, lam: Sequence,
                          cap: int = DEFAULT_DIM_CAP) -> CharacterTable:
    """Freudenthal's recursion over the dominant weights, then Weyl orbits."""
    lam = clean(lam)
    if not datum.is_dominant(lam):
        raise ContractError(f"{lam} is not dominant")
    dim = weyl_dimension(datum, lam)
    if dim > cap:
        raise ResourceError(f"Weyl dimension {dim} exceeds cap {cap}")
    return _multiplicities(datum, lam)


@lru_cache(maxsize=4096)
def _multiplicities(datum: RootDatum, lam: tuple) -> CharacterTable:
    B = _form(datum)
    rho = tuple(Fraction(a, 2) for a in datum.two_rho)
    lam_rho = [a + r for a, r in zip(lam, rho)]
    top = B(lam_rho, lam_rho)
    dom_mult: dict[tuple, int] = {}

    def mult(nu):
        d, _ = dominant_rep(datum, nu, WEIGHT)
        return dom_mult.get(d, 0)

    for mu in dominant_weights_below(datum, lam):
        if mu == lam:
            dom_mult[mu] = 1
            continue
        total = Fraction(0)
        for alpha in datum.positive_roots:
            k = 1
            while True:
                nu = clean(a + k * b for a, b in zip(mu, alpha))
                m = mult(nu)
                if m == 0:
                    break
                total += B(nu, alpha) * m
                k += 1
        mu_rho = [a + r for a, r in zip(mu, rho)]
        denom = top - B(mu_rho, mu_rho)
        val = 2 * total / denom
        if val.denominator != 1 or val < 0:
            raise InternalError(f"Freudenthal produced {val} at {mu}")
        if val:
            dom_mult[mu] = int(val)

    mults = {}
    for mu, m in dom_mult.items():
        for w in orbit_with_words(datum, mu, WEIGHT):
            mults[w] = m
    table = CharacterTable(highest_weight=lam, multiplicities=mults)
    if table.dimension != weyl_dimension(datum, lam):
        raise InternalError("multiplicities disagree with the Weyl dimension formula")
    return table


# ---------------------------------------------------------------------------
# evaluation


def char_value(datum: RootDatum, lam: Sequence, x: Iterable, cap: int = DEFAULT_DIM_CAP):
    """chi_lam(x) as a multiplicity sum; exact for Gaussian-rational x."""
    point, exact = torus_point(x)
    if len(point) != datum.ambient_dim:
        raise ContractError("torus point dimension mismatch")
    table = weight_multiplicities(datum, lam, cap)
    total = QQ_I(0, 0) if exact else 0j
    for w, m in table.multiplicities.items():
        total += m * monomial(point, w)
    return total


def char_value_weyl_quotient(datum: RootDatum, lam: Sequence, x: Sequence[complex]) -> complex:
    """Weyl character formula at a regular point (floating point)."""
    x = [complex(a) for a in x]
    two_rho = datum.two_rho
    shifted = tuple(2 * a + b for a, b in zip(lam, two_rho))
    num = 0j
    for word in weyl_elements(datum):
        v = datum.apply_word(shifted, word)
        exponent = [Fraction(a - b, 2) for a, b in zip(v, two_rho)]
        num += (-1) ** len(word) * monomial(x, exponent)
    den = 1 + 0j
    for alpha in datum.positive_roots:
        den *= 1 - monomial(x, [-a for a in alpha])
    return num / den


# ---------------------------------------------------------------------------
# Levi data


def _levi_positive(datum: RootDatum, theta: Sequence[int]) -> list[tuple]:
    theta = set(theta)
    out = []
    for alpha in datum.positive_roots:
        coeffs = datum.simple_coordinates(alpha)
        if all(c == 0 for i, c in enumerate(coeffs) if i not in theta):
            out.append(alpha)
    return out


def _check_theta(datum, theta):
    theta = tuple(sorted(set(theta)))
    if any(not 0 <= i < datum.num_simple for i in theta):
        raise ContractError(f"theta {theta} is not a set of simple positions")
    return theta


def levi_lambda(datum: RootDatum, theta: Sequence[int]) -> tuple:
    """lambda_L = 2 rho - 2 rho_L for the standard Levi of theta."""
    theta = _check_theta(datum, theta)
    two_rho_l = [0] * datum.ambient_dim
    for alpha in _levi_positive(datum, theta):
        two_rho_l = [a + b for a, b in zip(two_rho_l, alpha)]
    lam = clean(a - b for a, b in zip(datum.two_rho, two_rho_l))
    pairings = datum.simple_pairings(lam)
    for i, c in enumerate(pairings):
        if (i in theta and c != 0) or (i not in theta and c <= 0):
            raise InternalError(f"lambda_L pairing check failed at simple root {i}")
    order_w = weyl_group_order(datum)
    order_wl = len(orbit_with_words(datum, datum.two_rho, WEIGHT, gens=theta))
    if len(orbit_with_words(datum, lam, WEIGHT)) * order_wl != order_w:
        raise InternalError("Stab_W(lambda_L) != W_L")
    return lam


def lambdashift_decomposition(datum: RootDatum, theta: Sequence[int],
                              word: Sequence[int]) -> dict[int, Fraction | int]:
    """Simple-root coefficients of lambda_L - w lambda_L (word[0] acts first)."""
    theta = _check_theta(datum, theta)
    lam = levi_lambda(datum, theta)
    moved = datum.apply_word(lam, word)
    coeffs = datum.simple_coordinates([a - b for a, b in zip(lam, moved)])
    if coeffs is None:
        raise InternalError("lambda_L - w lambda_L is off the root span")
    if moved != lam:
        if any(c < 0 for c in coeffs) or not any(c > 0 for i, c in enumerate(coeffs)
                                                 if i not in theta):
            raise InternalError(f"sign conditions fail for word {tuple(word)}")
    return dict(enumerate(coeffs))


# ---------------------------------------------------------------------------
# searches


def candidate_weights(datum: RootDatum, R: int) -> list[tuple]:
    """Non-central dominant weights of sup-norm <= R, graded-lex order.

    In GL_n coordinates weights differing by a power of det give characters
    of equal modulus on unitary points; only the representative with last
    coordinate 0 is kept.
    """
    out = []
    for v in itertools.product(range(-R, R + 1), repeat=datum.ambient_dim):
        if not datum.is_dominant(v) or is_central(datum, v):
            continue
        if datum.family == "A" and v[-1] != 0:
            continue
        out.append(v)
    out.sort(key=lambda v: (sup_norm(v), v))
    return out


def _nonzero(value, exact, floor):
    if exact:
        return bool(value) and scalar_abs(value) > floor
    return abs(value) > max(floor, FLOAT_TOL)


def nonvanishing_search(datum: RootDatum, x: Iterable, R: int, floor: float = 0.0,
                        strategy: str = "max"):
    """Nonzero dominant mu with |chi_mu(x)| largest ("max") or first nonzero ("first")."""
    if R < 1:
        raise ContractError("R must be >= 1")
    point, exact = torus_point(x)
    best = None
    for mu in candidate_weights(datum, R):
        val = char_value(datum, mu, point)
        if not _nonzero(val, exact, floor):
            continue
        if strategy == "first":
            return mu, val
        if best is None or scalar_abs(val) > scalar_abs(best[1]):
            best = (mu, val)
    if best is None:
        raise ExhaustionError(f"every candidate character vanishes at x within R={R}")
    return best


def shift_to_nonvanishing(datum: RootDatum, theta: Sequence[int], mu: Sequence, x: Iterable,
                          k_max: int, tol: float = FLOAT_TOL) -> int:
    """Smallest k <= k_max with mu + k lambda_L dominant and chi nonzero at x."""
    theta = _check_theta(datum, theta)
    point, exact = torus_point(x)
    for i, alpha in enumerate(datum.simple_roots):
        size = root_value(point, alpha)
        if size < 1 - tol:
            raise ContractError("x must satisfy |alpha(x)| >= 1 on positive roots")
        if (abs(size - 1) <= tol) != (i in theta):
            raise ContractError("theta must be the set of simple roots with |alpha(x)| = 1")
    if not all(c >= 0 for i, c in enumerate(datum.simple_pairings(mu)) if i in theta):
        raise ContractError(f"{tuple(mu)} is not dominant for the Levi")
    lam = levi_lambda(datum, theta)
    for k in range(k_max + 1):
        nu = clean(a + k * b for a, b in zip(mu, lam))
        if not datum.is_dominant(nu):
            continue
        val = char_value(datum, nu, point)
        if bool(val) if exact else abs(val) > tol:
            return k
    raise ExhaustionError(f"no k <= {k_max} gives a nonvanishing character")


def unit_torus_point(angles: Sequence[float]) -> tuple[complex, ...]:
    return tuple(cmath.exp(2j * cmath.pi * a) for a in angles)
