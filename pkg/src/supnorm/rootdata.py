"""Root data for the split classical families, the G2 realization and products.

Vectors are plain tuples of ints (or Fractions where a Weyl reflection leaves
the integer lattice, which happens only on the coweight side of the G2
realization).  The pairing between weights and coweights is the dot product
in the ambient coordinates.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .errors import CapabilityError, ContractError, InternalError, ResourceError

DEFAULT_ORBIT_CAP = 10**6

# family -> supported ranks
SUPPORTED_RANKS = {
    "A": range(1, 9),
    "B": range(1, 6),
    "C": range(1, 6),
    "D": range(1, 6),
    "SU2": range(1, 2),
    "G2": range(2, 3),
}

WEIGHT = "weight"
COWEIGHT = "coweight"

# W-invariant form on characters of the SU(2) x SU(2) torus in which the
# listed G2 roots have squared lengths 4 (short) and 12 (long).
_G2_FORM = (3, 1)


def pair(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def clean(v: Iterable) -> tuple:
    """Demote integral Fractions to int so vectors print and serialize plainly."""
    out = []
    for a in v:
        if isinstance(a, Fraction) and a.denominator == 1:
            a = a.numerator
        out.append(a)
    return tuple(out)


def sup_norm(v: Sequence) -> int | Fraction:
    return max((abs(a) for a in v), default=0)


def _unit(d, i, s=1):
    v = [0] * d
    v[i] = s
    return v


@dataclass(frozen=True)
class RootDatum:
    label: str
    family: str
    rank: int
    ambient_dim: int
    roots: tuple
    coroots: tuple
    positive_indices: tuple
    simple_indices: tuple

    # -- derived data -------------------------------------------------

    @cached_property
    def positive_roots(self) -> tuple:
        return tuple(self.roots[i] for i in self.positive_indices)

    @cached_property
    def positive_coroots(self) -> tuple:
        return tuple(self.coroots[i] for i in self.positive_indices)

    @cached_property
    def simple_roots(self) -> tuple:
        return tuple(self.roots[i] for i in self.simple_indices)

    @cached_property
    def simple_coroots(self) -> tuple:
        return tuple(self.coroots[i] for i in self.simple_indices)

    @cached_property
    def two_rho(self) -> tuple:
        return tuple(sum(col) for col in zip(*self.positive_roots)) if self.positive_roots \
            else (0,) * self.ambient_dim

    @cached_property
    def two_rho_check(self) -> tuple:
        """Sum of positive coroots (2 rho of the dual datum)."""
        if not self.positive_coroots:
            return (0,) * self.ambient_dim
        return clean(sum(col) for col in zip(*self.positive_coroots))

    @property
    def num_simple(self) -> int:
        return len(self.simple_indices)

    # -- reflections --------------------------------------------------

    def reflect(self, v: Sequence, i: int, side: str = WEIGHT) -> tuple:
        """Apply the i-th simple reflection (0-based position in the simple list)."""
        return self.reflect_root(v, self.simple_indices[i], side)

    def reflect_root(self, v: Sequence, r: int, side: str = WEIGHT) -> tuple:
        alpha, coalpha = self.roots[r], self.coroots[r]
        if side == WEIGHT:
            c = pair(v, coalpha)
            return clean(a - c * b for a, b in zip(v, alpha))
        if side == COWEIGHT:
            c = pair(v, alpha)
            return clean(a - c * b for a, b in zip(v, coalpha))
        raise ContractError(f"unknown side {side!r}")

    def apply_word(self, v: Sequence, word: Sequence[int], side: str = WEIGHT) -> tuple:
        """Apply simple reflections in list order (word[0] acts first)."""
        v = tuple(v)
        for i in word:
            v = self.reflect(v, i, side)
        return v

    def simple_pairings(self, v: Sequence, side: str = WEIGHT) -> tuple:
        other = self.simple_coroots if side == WEIGHT else self.simple_roots
        return tuple(pair(v, a) for a in other)

    def is_dominant(self, v: Sequence, side: str = WEIGHT) -> bool:
        return all(c >= 0 for c in self.simple_pairings(v, side))

    # -- simple-root coordinates ----------------------------------------

    @cached_property
    def _simple_solver(self):
        return {WEIGHT: _projector(self.simple_roots, self.ambient_dim),
                COWEIGHT: _projector(self.simple_coroots, self.ambient_dim)}

    def simple_coordinates(self, v: Sequence, side: str = WEIGHT) -> tuple | None:
        """Coefficients of v in the simple (co)root basis, or None if v is off their span."""
        basis = self.simple_roots if side == WEIGHT else self.simple_coroots
        proj = self._simple_solver[side]
        coeffs = tuple(sum(Fraction(r) * x for r, x in zip(row, v)) for row in proj)
        recon = [sum(c * b[k] for c, b in zip(coeffs, basis)) for k in range(self.ambient_dim)]
        if any(x != y for x, y in zip(recon, v)):
            return None
        return clean(coeffs)

    # -- serialization --------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "label": self.label,
            "rank": self.rank,
            "ambient_dim": self.ambient_dim,
            "roots": [list(r) for r in self.roots],
            "coroots": [[_json_scalar(a) for a in c] for c in self.coroots],
            "positive": list(self.positive_indices),
            "simple": list(self.simple_indices),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, doc: dict) -> "RootDatum":
        roots = tuple(tuple(int(a) for a in r) for r in doc["roots"])
        coroots = tuple(clean(Fraction(a) for a in c) for c in doc["coroots"])
        dim = int(doc["ambient_dim"]) if "ambient_dim" in doc else len(roots[0])
        family, rank = doc["family"], int(doc["rank"])
        datum = cls(label=doc.get("label", f"{family}{rank}"), family=family, rank=rank,
                    ambient_dim=dim, roots=roots, coroots=coroots,
                    positive_indices=tuple(doc["positive"]), simple_indices=tuple(doc["simple"]))
        check_datum(datum)
        return datum

    @classmethod
    def from_json(cls, text: str) -> "RootDatum":
        return cls.from_dict(json.loads(text))


def _json_scalar(a):
    if isinstance(a, Fraction):
        return a.numerator if a.denominator == 1 else f"{a.numerator}/{a.denominator}"
    return a


def _projector(basis, dim):
    """Rows of (B^T B)^{-1} B^T for the column basis B (exact)."""
    r = len(basis)
    if r == 0:
        return ()
    gram = [[Fraction(pair(basis[i], basis[j])) for j in range(r)] for i in range(r)]
    inv = invert_matrix(gram)
    return tuple(tuple(sum(inv[i][j] * basis[j][k] for j in range(r)) for k in range(dim))
                 for i in range(r))


def invert_matrix(m):
    """Gauss-Jordan inverse of a square Fraction matrix."""
    n = len(m)
    a = [list(map(Fraction, row)) + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise InternalError("singular matrix")
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


# ---------------------------------------------------------------------------
# construction


def _classical_roots(family, n):
    roots = []
    for i in range(n):
        for j in range(i + 1, n):
            for si in (1, -1):
                for sj in (1, -1):
                    v = [0] * n
                    v[i], v[j] = si, sj
                    roots.append(v)
        if family == "B":
            roots += [_unit(n, i, 1), _unit(n, i, -1)]
        elif family == "C":
            roots += [_unit(n, i, 2), _unit(n, i, -2)]
    return roots


def _coroot(family, alpha):
    if family == "B" and sum(map(abs, alpha)) == 1:
        return [2 * a for a in alpha]
    if family == "C" and max(map(abs, alpha)) == 2:
        return [a // 2 for a in alpha]
    if family == "SU2":
        return [a // 2 for a in alpha]
    if family == "G2":
        qa = [q * a for q, a in zip(_G2_FORM, alpha)]
        norm = pair(alpha, qa)
        return [Fraction(2 * x, norm) for x in qa]
    return list(alpha)


def _assemble(label, family, rank, dim, roots, coroots, functional):
    order = sorted(range(len(roots)), key=lambda k: tuple(roots[k]))
    roots = tuple(tuple(roots[k]) for k in order)
    coroots = tuple(clean(coroots[k]) for k in order)
    pos = tuple(k for k, r in enumerate(roots) if pair(r, functional) > 0)
    posset = {roots[k] for k in pos}
    simple = []
    for k in pos:
        r = roots[k]
        decomposable = any(tuple(a - b for a, b in zip(r, s)) in posset for s in posset if s != r)
        if not decomposable:
            simple.append(k)
    # alpha_1 = e_1 - e_2, ... first: descending lexicographic order
    simple.sort(key=lambda k: roots[k], reverse=True)
    datum = RootDatum(label=label, family=family, rank=rank, ambient_dim=dim, roots=roots,
                      coroots=coroots, positive_indices=pos, simple_indices=tuple(simple))
    check_datum(datum)
    return datum


def build_root_datum(family: str, rank: int) -> RootDatum:
    """Root datum of the given family in the fixed explicit coordinates.

    A_n lives in GL_{n+1} coordinates (ambient dimension n+1); B, C, D in the
    diagonal-torus coordinates of SO(2n+1), Sp(2n), SO(2n); "SU2" is the
    simply connected A1 with root 2; "G2" is the realization with character
    coordinates of the SU(2) x SU(2) torus.  D1 is a rank-one torus without
    roots.
    """
    family = family.upper() if family.lower() != "su2" else "SU2"
    if family not in SUPPORTED_RANKS or rank not in SUPPORTED_RANKS[family]:
        raise CapabilityError(f"unsupported root datum {family}{rank}")
    if family == "A":
        dim = rank + 1
        roots = [[(k == i) - (k == j) for k in range(dim)]
                 for i in range(dim) for j in range(dim) if i != j]
        functional = list(range(dim, 0, -1))
    elif family in "BCD":
        dim = rank
        roots = _classical_roots(family, rank)
        functional = list(range(dim, 0, -1))
    elif family == "SU2":
        dim = 1
        roots = [[2], [-2]]
        functional = [1]
    else:
        dim = 2
        roots = [[a, b] for a, b in ((2, 0), (0, 2), (1, 1), (1, -1), (1, 3), (1, -3))]
        roots += [[-a, -b] for a, b in roots]
        functional = [10, 1]
    coroots = [_coroot(family, r) for r in roots]
    label = family if family in ("SU2", "G2") else f"{family}{rank}"
    return _assemble(label, family, rank, dim, roots, coroots, functional)


def torus_datum(dim: int) -> RootDatum:
    return RootDatum(label=f"T{dim}", family="T", rank=0, ambient_dim=dim, roots=(),
                     coroots=(), positive_indices=(), simple_indices=())


def product_datum(*factors: RootDatum) -> RootDatum:
    """Direct product; coordinates are concatenated in factor order."""
    dim = sum(f.ambient_dim for f in factors)
    roots, coroots, pos, simple = [], [], [], []
    offset = 0
    for f in factors:
        base = len(roots)
        pad_l, pad_r = (0,) * offset, (0,) * (dim - offset - f.ambient_dim)
        roots += [pad_l + r + pad_r for r in f.roots]
        coroots += [pad_l + c + pad_r for c in f.coroots]
        pos += [base + i for i in f.positive_indices]
        simple += [base + i for i in f.simple_indices]
        offset += f.ambient_dim
    datum = RootDatum(label="x".join(f.label for f in factors), family="product",
                      rank=sum(f.rank for f in factors), ambient_dim=dim,
                      roots=tuple(roots), coroots=tuple(coroots),
                      positive_indices=tuple(pos), simple_indices=tuple(simple))
    check_datum(datum)
    return datum


def check_datum(datum: RootDatum) -> None:
    """Raise InternalError unless the root datum axioms hold."""
    rootset = set(datum.roots)
    if len(rootset) != len(datum.roots) or len(datum.coroots) != len(datum.roots):
        raise InternalError(f"{datum.label}: malformed root list")
    for a, c in zip(datum.roots, datum.coroots):
        if pair(a, c) != 2:
            raise InternalError(f"{datum.label}: <{a}, {c}> != 2")
    for i in range(datum.num_simple):
        if {datum.reflect(r, i) for r in datum.roots} != rootset:
            raise InternalError(f"{datum.label}: simple reflection {i} does not permute roots")
    if 2 * len(datum.positive_indices) != len(datum.roots):
        raise InternalError(f"{datum.label}: |positive| != |roots|/2")


# ---------------------------------------------------------------------------
# Weyl group operations


def dominant_rep(datum: RootDatum, v: Sequence, side: str = COWEIGHT) -> tuple[tuple, list[int]]:
    """Dominant element of the Weyl orbit of v and the word reaching it."""
    v = clean(v)
    word: list[int] = []
    while True:
        pairings = datum.simple_pairings(v, side)
        i = next((k for k, c in enumerate(pairings) if c < 0), None)
        if i is None:
            return v, word
        v = datum.reflect(v, i, side)
        word.append(i)


def weyl_orbit(datum: RootDatum, v: Sequence, side: str = COWEIGHT,
               cap: int = DEFAULT_ORBIT_CAP) -> frozenset:
    return frozenset(orbit_with_words(datum, v, side, cap))


def orbit_with_words(datum: RootDatum, v: Sequence, side: str = WEIGHT,
                     cap: int = DEFAULT_ORBIT_CAP, gens: Sequence[int] | None = None) -> dict:
    """Breadth-first orbit closure; maps each element to a shortest word reaching it.

    ``gens`` restricts to the parabolic subgroup generated by those simple
    reflections.
    """
    gens = range(datum.num_simple) if gens is None else tuple(gens)
    start = clean(v)
    seen = {start: ()}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for i in gens:
            w = datum.reflect(u, i, side)
            if w not in seen:
                seen[w] = seen[u] + (i,)
                if len(seen) > cap:
                    raise ResourceError(f"Weyl orbit exceeds cap {cap}")
                queue.append(w)
    return seen


def weyl_group_order(datum: RootDatum, cap: int = DEFAULT_ORBIT_CAP) -> int:
    return len(orbit_with_words(datum, datum.two_rho, WEIGHT, cap))


def weyl_elements(datum: RootDatum, cap: int = DEFAULT_ORBIT_CAP) -> list[tuple[int, ...]]:
    """One reduced word per Weyl group element (regular orbit of 2 rho)."""
    return list(orbit_with_words(datum, datum.two_rho, WEIGHT, cap).values())


def star_norm2(datum: RootDatum, mu: Sequence) -> int | Fraction:
    """Doubled *-norm: max over the Weyl orbit of <w mu, 2 rho> = <mu^+, 2 rho>.

    Integral for lattice input; exact rational for rational input.
    """
    dom, _ = dominant_rep(datum, mu, COWEIGHT)
    return clean([pair(dom, datum.two_rho)])[0]


def maximizing_functional(datum: RootDatum, mu: Sequence) -> tuple:
    """The element g of the orbit W.2rho with <mu, g> = star_norm2(mu)."""
    _, word = dominant_rep(datum, mu, COWEIGHT)
    # <s_k..s_1 mu, 2rho> = <mu, s_1..s_k 2rho>
    return datum.apply_word(datum.two_rho, list(reversed(word)), WEIGHT)


def dominance_leq(datum: RootDatum, lam: Sequence, mu: Sequence, side: str = WEIGHT) -> bool:
    """lam <= mu: mu - lam is a nonnegative integer combination of simple (co)roots."""
    for v in (lam, mu):
        if not datum.is_dominant(v, side):
            raise ContractError(f"{tuple(v)} is not dominant")
    coeffs = datum.simple_coordinates([b - a for a, b in zip(lam, mu)], side)
    if coeffs is None:
        return False
    return all(isinstance(c, int) and c >= 0 for c in coeffs)


def is_central(datum: RootDatum, v: Sequence, side: str = WEIGHT) -> bool:
    """True if v pairs to zero with every (co)root, i.e. v is central."""
    other = datum.coroots if side == WEIGHT else datum.roots
    return all(pair(v, a) == 0 for a in other)
