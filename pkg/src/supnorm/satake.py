"""Exact type-A Satake transforms.

For GL_n the normalized basis element omega_mu = q^{-<mu, rho>} 1_{K p^mu K}
has Satake transform the Hall-Littlewood polynomial P_mu(x; q^{-1}).  Its
expansion in Weyl characters is read off from the inverse Kostka-Foulkes
matrix.  The definitional transform

    Sf(lam) = q^{<lam, rho>} * integral over N(F) of f(n lam(p)) dn

is implemented independently as a brute-force coset count.  (The exponent
is <lam, rho>; writing <mu, rho> there would not give a W-invariant result.)
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .charring import char_value, scalar_abs, to_complex, torus_point, weight_multiplicities
from .charring import candidate_weights
from .errors import ContractError, ExhaustionError, InternalError, ResourceError
from .lattices import _int_elementary_divisors, elementary_divisors, hnf_sphere, inverse, matmul
from .rootdata import RootDatum, build_root_datum

MAX_N = 4
MAX_SPREAD = 4
BRUTE_MAX_N = 3
BRUTE_MAX_P = 7
BRUTE_MAX_SPREAD = 3


# ---------------------------------------------------------------------------
# Laurent polynomials in q^{1/2}


def _half(e) -> Fraction:
    e = Fraction(e)
    if (2 * e).denominator != 1:
        raise ContractError(f"exponent {e} is not a half-integer")
    return e


class LaurentHalfQ:
    """Finite sums of c * q^e with rational c and half-integral e."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping | None = None):
        clean = {}
        for e, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                e = _half(e)
                clean[e] = clean.get(e, 0) + c
                if not clean[e]:
                    del clean[e]
        self.terms = clean

    @classmethod
    def const(cls, c) -> "LaurentHalfQ":
        return cls({0: c})

    @classmethod
    def q_power(cls, e, c=1) -> "LaurentHalfQ":
        return cls({e: c})

    @classmethod
    def coerce(cls, x) -> "LaurentHalfQ":
        return x if isinstance(x, LaurentHalfQ) else cls.const(x)

    def __add__(self, other):
        other = LaurentHalfQ.coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentHalfQ(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentHalfQ({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-LaurentHalfQ.coerce(other))

    def __rsub__(self, other):
        return LaurentHalfQ.coerce(other) - self

    def __mul__(self, other):
        other = LaurentHalfQ.coerce(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentHalfQ(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        try:
            return self.terms == LaurentHalfQ.coerce(other).terms
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def invert_q(self) -> "LaurentHalfQ":
        """Substitute q -> q^{-1}."""
        return LaurentHalfQ({-e: c for e, c in self.terms.items()})

    @property
    def is_constant(self) -> bool:
        return all(e == 0 for e in self.terms)

    @property
    def degree(self):
        return max(self.terms) if self.terms else None

    @property
    def low_degree(self):
        return min(self.terms) if self.terms else None

    def evaluate(self, q) -> Fraction:
        """Exact value at rational q; needs integral exponents (or square q)."""
        q = Fraction(q)
        total = Fraction(0)
        for e, c in self.terms.items():
            if e.denominator == 1:
                total += c * q ** int(e)
            else:
                root = _rational_sqrt(q)
                if root is None:
                    raise ContractError(f"q^{e} is irrational at q = {q}")
                total += c * root ** int(2 * e)
        return total

    def evaluate_float(self, q: float) -> float:
        return sum(float(c) * float(q) ** float(e) for e, c in self.terms.items())

    def __repr__(self):
        return f"LaurentHalfQ({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            cs = str(c)
            if e == 0:
                parts.append(cs)
                continue
            es = str(e)
            mono = "q" if e == 1 else f"q^{{{es}}}"
            if c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{cs}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def _rational_sqrt(q: Fraction):
    from math import isqrt

    a, b = isqrt(q.numerator), isqrt(q.denominator)
    if a * a == q.numerator and b * b == q.denominator:
        return Fraction(a, b)
    return None


# ---------------------------------------------------------------------------
# characters and Hecke elements for GL_n


def gl_datum(n: int) -> RootDatum:
    return build_root_datum("A", n - 1)


def rho_pair(v: Sequence) -> Fraction:
    """<v, rho> for GL_n, rho = ((n-1)/2, ..., -(n-1)/2)."""
    n = len(v)
    return sum((Fraction(n - 1 - 2 * i, 2) * a for i, a in enumerate(v)), Fraction(0))


def is_dominant_gl(v: Sequence) -> bool:
    return all(v[i] >= v[i + 1] for i in range(len(v) - 1))


def gl_dominance_leq(lam: Sequence, mu: Sequence) -> bool:
    if len(lam) != len(mu) or sum(lam) != sum(mu):
        return False
    a = b = 0
    for x, y in zip(lam, mu):
        a += x
        b += y
        if a > b:
            return False
    return True


def _dominance_key(v):
    return tuple(itertools.accumulate(v))


@dataclass
class VirtualCharacter:
    """Finite combination sum c_lam chi_lam of GL_n characters."""

    n: int
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        self.terms = {tuple(k): LaurentHalfQ.coerce(v) for k, v in self.terms.items() if v}

    def coefficient(self, lam) -> LaurentHalfQ:
        return self.terms.get(tuple(lam), LaurentHalfQ())

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, LaurentHalfQ()) + v
        return VirtualCharacter(self.n, out)

    def scale(self, c) -> "VirtualCharacter":
        return VirtualCharacter(self.n, {k: v * c for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + other.scale(-1)

    def __mul__(self, other):
        return from_weight_function(self.n, _product_weights(self, other))

    def __eq__(self, other):
        return isinstance(other, VirtualCharacter) and self.n == other.n and self.terms == other.terms

    def support(self) -> list:
        return sorted(self.terms, key=_dominance_key, reverse=True)

    def specialize(self, q) -> "VirtualCharacter":
        return VirtualCharacter(self.n, {k: v.evaluate(q) for k, v in self.terms.items()})

    def weight_function(self) -> dict:
        datum = gl_datum(self.n)
        out: dict = {}
        for lam, c in self.terms.items():
            for w, m in weight_multiplicities(datum, lam).multiplicities.items():
                out[w] = out.get(w, LaurentHalfQ()) + c * m
        return {w: c for w, c in out.items() if c}

    def evaluate(self, x: Iterable, q=None):
        """Value at a dual-torus point; q substitutes into the coefficients."""
        point, exact = torus_point(x)
        datum = gl_datum(self.n)
        total = 0
        for lam, c in self.terms.items():
            if q is None:
                if not c.is_constant:
                    raise ContractError("symbolic coefficients need a value of q")
                coeff = c.evaluate(1)
            elif exact:
                coeff = c.evaluate(q)
            else:
                coeff = c.evaluate_float(q)
            val = char_value(datum, lam, point)
            total = total + (val * coeff if exact else to_complex(val) * float(coeff))
        return total

    def to_dict(self) -> dict:
        return {"n": self.n,
                "terms": [{"lambda": list(k), "coeff": str(self.terms[k])} for k in self.support()]}


def _product_weights(a: VirtualCharacter, b: VirtualCharacter) -> dict:
    fa, fb = a.weight_function(), b.weight_function()
    out: dict = {}
    for w1, c1 in fa.items():
        for w2, c2 in fb.items():
            w = tuple(x + y for x, y in zip(w1, w2))
            out[w] = out.get(w, LaurentHalfQ()) + c1 * c2
    return out


def from_weight_function(n: int, f: Mapping) -> VirtualCharacter:
    """Re-express a W-invariant function on weights in the character basis."""
    datum = gl_datum(n)
    f = {tuple(k): LaurentHalfQ.coerce(v) for k, v in f.items()}
    f = {k: v for k, v in f.items() if v}
    out = {}
    while f:
        dom = [w for w in f if is_dominant_gl(w)]
        if not dom:
            raise InternalError("weight function has no dominant support")
        top = max(dom, key=_dominance_key)
        c = f[top]
        out[top] = c
        for w, m in weight_multiplicities(datum, top).multiplicities.items():
            nv = f.get(w, LaurentHalfQ()) - c * m
            if nv:
                f[w] = nv
            else:
                f.pop(w, None)
    return VirtualCharacter(n, out)


# ---------------------------------------------------------------------------
# Kostka-Foulkes polynomials


def _partition(v) -> tuple:
    v = tuple(int(a) for a in v)
    if any(a < 0 for a in v) or not is_dominant_gl(v):
        raise ContractError(f"{v} is not a partition")
    return tuple(a for a in v if a)


def semistandard_tableaux(shape: Sequence[int], content: Sequence[int]):
    """All SSYT of the given shape and content, as tuples of rows.

    Letter k fills a horizontal strip: row i may grow up to the length row
    i-1 had before k was placed.
    """
    shape = tuple(a for a in shape if a)
    content = tuple(content)
    if sum(shape) != sum(content):
        return

    def place(letter, before, row, now, rows, remaining):
        if row == len(shape):
            if remaining == 0:
                yield from fill(letter + 1, now, rows)
            return
        limit = shape[row] if row == 0 else min(shape[row], before[row - 1])
        for take in range(min(limit - before[row], remaining), -1, -1):
            nxt = now[:row] + (before[row] + take,) + now[row + 1:]
            new_rows = rows[:row] + (rows[row] + (letter,) * take,) + rows[row + 1:]
            yield from place(letter, before, row + 1, nxt, new_rows, remaining - take)

    def fill(letter, filled, rows):
        if letter > len(content):
            if filled == shape:
                yield rows
            return
        yield from place(letter, filled, 0, filled, rows, content[letter - 1])

    yield from fill(1, (0,) * len(shape), ((),) * len(shape))


def charge(word: Sequence[int]) -> int:
    """Lascoux-Schutzenberger charge of a word with partition content."""
    letters = list(enumerate(word))
    total = 0
    while letters:
        n = max(a for _, a in letters)
        pos = len(letters)
        chosen = []
        index = 0
        for k in range(1, n + 1):
            # scan leftward from pos, cyclically, for letter k
            found = None
            for step in range(1, len(letters) + 1):
                j = (pos - step) % len(letters)
                if letters[j][1] == k and j not in chosen:
                    found = j
                    break
            if found is None:
                raise ContractError("word content is not a partition")
            if k > 1 and found > pos:
                index += 1
            total += index
            chosen.append(found)
            pos = found
        letters = [letters[j] for j in range(len(letters)) if j not in chosen]
    return total


def reading_word(tableau) -> tuple:
    return tuple(a for row in reversed(tableau) for a in row)


@lru_cache(maxsize=None)
def kostka_foulkes(lam: tuple, mu: tuple) -> LaurentHalfQ:
    """K_{lam, mu}(t), returned as a polynomial in the variable of LaurentHalfQ."""
    lam, mu = _partition(lam), _partition(mu)
    if sum(lam) != sum(mu):
        raise ContractError("|lam| != |mu|")
    out: dict = {}
    for T in semistandard_tableaux(lam, mu):
        c = charge(reading_word(T))
        out[c] = out.get(c, 0) + 1
    return LaurentHalfQ(out)


def partitions(total: int, max_parts: int, max_part: int | None = None):
    if max_part is None:
        max_part = total
    if total == 0:
        yield ()
        return
    if max_parts == 0:
        return
    for first in range(min(total, max_part), 0, -1):
        for rest in partitions(total - first, max_parts - 1, first):
            yield (first,) + rest


# ---------------------------------------------------------------------------
# Satake transform of omega_mu


def _check_size(n, mu, max_n, max_spread):
    if len(mu) != n:
        raise ContractError("mu has the wrong length")
    if not is_dominant_gl(mu):
        raise ContractError(f"{tuple(mu)} is not dominant")
    if n > max_n or max(mu) - min(mu) > max_spread:
        raise ResourceError(f"GL{n}, mu={tuple(mu)} exceeds the size cap")


@lru_cache(maxsize=None)
def _satake_symbolic(n: int, mu: tuple) -> VirtualCharacter:
    shift = mu[-1]
    part = tuple(a - shift for a in mu)
    pmu = _partition(part)
    size = sum(part)
    below = [lam for lam in partitions(size, n) if gl_dominance_leq(lam + (0,) * (n - len(lam)),
                                                                     part)]
    below.sort(key=lambda v: _dominance_key(v + (0,) * (n - len(v))), reverse=True)
    # row mu of K^{-1}: solve sum_nu X_nu K_{nu, lam} = delta_{mu, lam}
    X: dict = {}
    for lam in below:
        acc = LaurentHalfQ.const(1 if lam == pmu else 0)
        for nu, x in X.items():
            acc = acc - x * kostka_foulkes(nu, lam)
        X[lam] = acc  # K_{lam, lam} = 1
    terms = {}
    for lam, c in X.items():
        if c:
            full = tuple(a + shift for a in lam + (0,) * (n - len(lam)))
            terms[full] = c.invert_q()
    return VirtualCharacter(n, terms)


def satake_omega(n: int, mu: Sequence[int], q=None, max_spread: int = MAX_SPREAD) -> VirtualCharacter:
    """Character expansion chi_mu + sum_{lam < mu} C(lam, mu, q) chi_lam.

    q=None keeps q symbolic; a rational q specializes the coefficients.
    """
    mu = tuple(int(a) for a in mu)
    _check_size(n, mu, MAX_N, max_spread)
    V = _satake_symbolic(n, mu)
    if V.coefficient(mu) != 1:
        raise InternalError("leading coefficient is not 1")
    for lam in V.terms:
        if not gl_dominance_leq(lam, mu):
            raise InternalError(f"lower term {lam} is not below {mu}")
    if q is None:
        return VirtualCharacter(n, dict(V.terms))
    return V.specialize(q)


# ---------------------------------------------------------------------------
# brute-force oracle


@dataclass(frozen=True)
class SatakeOracle:
    n: int
    mu: tuple
    p: int
    transform: VirtualCharacter
    weight_values: dict
    sphere_size: int

    def to_dict(self) -> dict:
        return {"n": self.n, "mu": list(self.mu), "p": self.p, "sphere_size": self.sphere_size,
                "terms": self.transform.to_dict()["terms"]}


def _unipotent_count(n, lam, mu, p, B):
    """#{n in N(F)/N(O) : entries of n in p^{-B}Z/Z, n lam(p) in K p^mu K}."""
    lo = min(mu)
    lam_s = [a - lo for a in lam]
    target = tuple(sorted(a - lo + B for a in mu))
    positions = [(i, j) for i in range(n) for j in range(i + 1, n)]
    count = 0
    for ks in itertools.product(range(p ** B), repeat=len(positions)):
        # p^B * n * lam(p), all integral
        m = [[0] * n for _ in range(n)]
        for i in range(n):
            m[i][i] = p ** (lam_s[i] + B)
        for (i, j), k in zip(positions, ks):
            m[i][j] = k * p ** lam_s[j]
        if _int_elementary_divisors(m, p) == target:
            count += 1
    return count


def satake_bruteforce(n: int, mu: Sequence[int], p: int) -> SatakeOracle:
    """Definitional Satake transform of omega_mu at q = p by unipotent coset counting."""
    mu = tuple(int(a) for a in mu)
    _check_size(n, mu, BRUTE_MAX_N, BRUTE_MAX_SPREAD)
    if p > BRUTE_MAX_P:
        raise ResourceError(f"p={p} exceeds the brute-force cap {BRUTE_MAX_P}")
    lo, hi = min(mu), max(mu)
    B = hi - lo
    values = {}
    for lam in itertools.product(range(lo, hi + 1), repeat=n):
        if sum(lam) != sum(mu):
            continue
        c = _unipotent_count(n, lam, mu, p, B)
        if c:
            values[lam] = Fraction(p) ** int(rho_pair([a - b for a, b in zip(lam, mu)])) * c
    for lam, v in values.items():
        for perm in itertools.permutations(lam):
            if values.get(perm) != v:
                raise InternalError(f"brute-force transform is not W-symmetric at {lam}")
    transform = from_weight_function(n, values)
    size = sum(1 for _ in hnf_sphere(n, mu, p))
    return SatakeOracle(n=n, mu=mu, p=p, transform=transform.specialize(p),
                        weight_values=values, sphere_size=size)


# ---------------------------------------------------------------------------
# Hecke algebra


@dataclass
class HeckeElement:
    """sum c_mu omega_mu in the normalized double-coset basis of GL_n."""

    n: int
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        self.terms = {tuple(k): LaurentHalfQ.coerce(v) for k, v in self.terms.items() if v}

    @classmethod
    def omega(cls, n, mu) -> "HeckeElement":
        return cls(n, {tuple(mu): 1})

    def satake(self) -> VirtualCharacter:
        out = VirtualCharacter(self.n, {})
        for mu, c in self.terms.items():
            out = out + satake_omega(self.n, mu).scale(c)
        return out

    @classmethod
    def from_satake(cls, V: VirtualCharacter) -> "HeckeElement":
        """Inverse Satake: peel leading characters off a virtual character."""
        rest = VirtualCharacter(V.n, dict(V.terms))
        out = {}
        while rest.terms:
            top = max(rest.terms, key=_dominance_key)
            c = rest.terms[top]
            out[top] = c
            rest = rest - satake_omega(V.n, top).scale(c)
        return cls(V.n, out)

    def convolve(self, other: "HeckeElement") -> "HeckeElement":
        return HeckeElement.from_satake(self.satake() * other.satake())

    def adjoint(self) -> "HeckeElement":
        """f*(g) = conj f(g^{-1}); omega_mu goes to omega_{-w0 mu}."""
        return HeckeElement(self.n, {tuple(-a for a in reversed(mu)): c
                                     for mu, c in self.terms.items()})

    def specialize(self, q) -> dict:
        return {mu: c.evaluate(q) for mu, c in self.terms.items()}


def bruteforce_convolution(n: int, mu1: Sequence[int], mu2: Sequence[int], p: int) -> dict:
    """omega_mu1 * omega_mu2 at q = p by counting cosets; returns nu -> coefficient."""
    mu1, mu2 = tuple(mu1), tuple(mu2)
    top = tuple(a + b for a, b in zip(mu1, mu2))
    lo, hi = min(mu1) + min(mu2), max(mu1) + max(mu2)
    out = {}
    spheres = list(hnf_sphere(n, mu1, p))
    for nu in itertools.product(range(hi, lo - 1, -1), repeat=n):
        if not is_dominant_gl(nu) or not gl_dominance_leq(nu, top):
            continue
        diag = [[Fraction(p) ** nu[i] if i == j else Fraction(0) for j in range(n)]
                for i in range(n)]
        c = 0
        for h in spheres:
            if elementary_divisors(matmul(inverse(h), diag), p) == tuple(sorted(mu2)):
                c += 1
        if c:
            e = rho_pair([a - b for a, b in zip(nu, top)])
            out[nu] = Fraction(p) ** int(e) * c
    return out


# ---------------------------------------------------------------------------
# amplifier selection


def amplifier_select(n: int, x: Iterable, q, R: int, strategy: str = "max"):
    """Nonzero mu with |S omega_mu(x)| largest over the radius-R candidates.

    strategy="first" instead returns the first candidate (graded-lex) with a
    nonzero value.
    """
    if R < 1:
        raise ContractError("R must be >= 1")
    point, exact = torus_point(x)
    if len(point) != n:
        raise ContractError("dual torus point has the wrong dimension")
    best = None
    for mu in candidate_weights(gl_datum(n), R):
        val = satake_omega(n, mu).evaluate(point, q)
        size = scalar_abs(val)
        if (not val) if exact else size <= 1e-12:
            continue
        if strategy == "first":
            return mu, val
        if best is None or size > best[2]:
            best = (mu, val, size)
    if best is None:
        raise ExhaustionError(f"every amplifier candidate vanishes within R={R}")
    return best[0], best[1]


def default_thresholds(rank: int, c1=2, c2=2) -> dict:
    """Constant threshold table C1 = c1, C2 = c2 on every subset (monotone if c2 <= c1)."""
    return {frozenset(s): (Fraction(c1), Fraction(c2))
            for k in range(rank + 1) for s in itertools.combinations(range(rank), k)}


def threshold_table_from_c2(rank: int, c2: Mapping) -> dict:
    """Build C1 by the recursion C1(theta) = max_{theta' < theta} max(C1, C2)(theta'), C1(empty) = 1."""
    subsets = sorted((frozenset(s) for k in range(rank + 1)
                      for s in itertools.combinations(range(rank), k)), key=len)
    c1 = {}
    for s in subsets:
        vals = [Fraction(1)]
        for t in c1:
            if t < s:
                vals += [c1[t], Fraction(c2[t])]
        c1[s] = max(vals)
    return {s: (c1[s], Fraction(c2[s])) for s in subsets}


def levi_threshold_partition(n: int, x: Iterable, thresholds: Mapping | None = None) -> frozenset:
    """Maximal theta with |alpha(x)| <= C1(theta) for the simple alpha in theta.

    x is first conjugated into the positive chamber (|x_1| >= ... >= |x_n|);
    simple roots are indexed 0..n-2 with alpha_i(x) = x_i / x_{i+1}.
    """
    rank = n - 1
    table = thresholds if thresholds is not None else default_thresholds(rank)
    table = {frozenset(k): (Fraction(v[0]), Fraction(v[1])) for k, v in table.items()}
    subsets = [frozenset(s) for k in range(rank + 1) for s in itertools.combinations(range(rank), k)]
    if any(s not in table for s in subsets):
        raise ContractError("threshold table must cover every subset of simple roots")
    for s in subsets:
        for t in subsets:
            if t < s and table[s][0] < max(table[t]):
                raise ContractError(f"thresholds not monotone at {sorted(s)} over {sorted(t)}")
    moduli = sorted((scalar_abs(a) for a in torus_point(x)[0]), reverse=True)
    if len(moduli) != n:
        raise ContractError("dual torus point has the wrong dimension")
    sizes = [moduli[i] / moduli[i + 1] for i in range(rank)]
    ok = [s for s in subsets if all(sizes[i] <= table[s][0] for i in s)]
    maximal = [s for s in ok if not any(s < t for t in ok)]
    theta = max(maximal, key=lambda s: (len(s), sorted(s)))
    c2 = table[theta][1]
    for i in range(rank):
        if i not in theta and not sizes[i] > c2:
            raise InternalError(f"|alpha_{i}(x)| <= C2(theta_x) for a root outside theta_x")
    return theta
