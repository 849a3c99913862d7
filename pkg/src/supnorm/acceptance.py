"""The acceptance-criteria suite.

Each criterion returns a CriterionResult with the measured values; the
driver never relaxes a threshold.  Randomness comes from one seeded
``random.Random`` per criterion, derived from the run seed.
"""

from __future__ import annotations

import cmath
import itertools
import math
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import buildings, charring, ksmall, satake
from .errors import ContractError
from .lattices import sphere_count
from .rootdata import build_root_datum, star_norm2


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    measured: dict = field(default_factory=dict)
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        vals = ", ".join(f"{k}={v}" for k, v in self.measured.items())
        return f"[{status}] criterion {self.number} ({self.name}): {vals}"

    def to_dict(self, timing: bool = False) -> dict:
        out = {"criterion": self.number, "name": self.name, "passed": self.passed,
               "measured": self.measured}
        if timing:
            out["seconds"] = round(self.seconds, 3)
        return out


def _fs(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _rng(seed: int, number: int) -> random.Random:
    return random.Random(seed * 1000 + number)


# ---------------------------------------------------------------------------


def section7_table(cases=ksmall.SECTION7_CASES, box_radius: int = 3, mapper=map) -> list[dict]:
    certs = mapper(_certify, [(f, k, box_radius) for f, k in cases])
    return [c.to_dict() for c in certs]


def _certify(args):
    family, k, radius = args
    return ksmall.verify_ksmall(ksmall.build_embedding(family, k), box_radius=radius)


def criterion_1(seed: int = 0) -> CriterionResult:
    rows = section7_table()
    bad = [r["label"] for r in rows if r["verdict"] != "positive" or Fraction(r["kappa2_lower"]) <= 0]
    kappas = {r["label"]: r["kappa2_lower"] for r in rows}
    return CriterionResult(1, "K-smallness matrix", not bad,
                           {"rows": len(rows), "non_positive": bad,
                            "min_kappa2": _fs(min(Fraction(v) for v in kappas.values())),
                            "kappa2": kappas})


def criterion_2(seed: int = 0) -> CriterionResult:
    values = {}
    for family, ks in (("so-sl", range(1, 5)), ("gl-sp", (2, 3))):
        for k in ks:
            E = ksmall.build_embedding(family, k)
            val, witness = ksmall.min_lattice_defect(E, 3)
            values[E.label] = {"min": val, "witness": list(witness)}
    ok = all(v["min"] == 2 for v in values.values())
    return CriterionResult(2, "closed-form kappa", ok, {"lattice_minima": values})


GL2_SET = ((1, 0), (1, 1), (2, 0), (2, 1), (3, 0))
GL3_SET = ((1, 0, 0), (1, 1, 0), (2, 0, 0))


def criterion_3(seed: int = 0) -> CriterionResult:
    mismatches, checked = [], 0
    for n, mus, ps in ((2, GL2_SET, (2, 3, 5)), (3, GL3_SET, (2, 3))):
        for mu in mus:
            for p in ps:
                checked += 1
                oracle = satake.satake_bruteforce(n, mu, p)
                if oracle.transform != satake.satake_omega(n, mu, p):
                    mismatches.append([list(mu), p])
    return CriterionResult(3, "Satake oracle equivalence", not mismatches,
                           {"instances": checked, "mismatches": mismatches})


def _structure_instances():
    for n, top in ((2, 4), (3, 4), (4, 3)):
        for mu in itertools.product(range(top, -1, -1), repeat=n):
            if satake.is_dominant_gl(mu) and mu[-1] == 0:
                yield n, mu


def criterion_4(seed: int = 0) -> CriterionResult:
    worst = Fraction(0)
    where = None
    failures = []
    count = 0
    for n, mu in _structure_instances():
        count += 1
        V = satake.satake_omega(n, mu)
        if V.coefficient(mu) != 1:
            failures.append(["leading", list(mu)])
        for lam, c in V.terms.items():
            if lam == mu:
                continue
            if not (satake.gl_dominance_leq(lam, mu) and lam != mu):
                failures.append(["support", list(mu), list(lam)])
            for q in (2, 3, 5, 101):
                v = abs(q * c.evaluate(q))
                if v > worst:
                    worst, where = v, [list(mu), list(lam), q]
    ok = not failures and worst <= 2
    return CriterionResult(4, "Satake leading term and decay", ok,
                           {"expansions": count, "max_abs_qC": _fs(worst), "argmax": where,
                            "failures": failures})


DELTA_DATA = (("A", 1), ("A", 2), ("A", 3), ("A", 4), ("B", 2), ("C", 2),
              ("D", 2), ("D", 3), ("D", 4), ("G2", 2))


def criterion_5(seed: int = 0) -> CriterionResult:
    rng = _rng(seed, 5)
    bad = []
    for family, rank in DELTA_DATA:
        datum = build_root_datum(family, rank)
        for _ in range(200):
            mu = tuple(rng.randint(-5, 5) for _ in range(datum.ambient_dim))
            prof = buildings.delta_profile(datum, mu)
            if prof.total != star_norm2(datum, mu):
                bad.append([datum.label, list(mu)])
    return CriterionResult(5, "delta sum identity", not bad,
                           {"data": len(DELTA_DATA), "samples": 200 * len(DELTA_DATA), "failures": bad})


def criterion_6(seed: int = 0) -> CriterionResult:
    bad, checked = [], 0
    for n in (2, 3):
        datum = build_root_datum("A", n - 1)
        for mu in itertools.product(range(3, -1, -1), repeat=n):
            if not satake.is_dominant_gl(mu):
                continue
            poly = buildings.sphere_size_polynomial(datum, mu)
            if len(poly) - 1 != star_norm2(datum, mu) or poly[-1] != 1:
                bad.append(["degree", list(mu)])
            for p in (2, 3):
                checked += 1
                if buildings.evaluate_polynomial(poly, p) != sphere_count(n, mu, p):
                    bad.append([list(mu), p])
    return CriterionResult(6, "sphere polynomial vs enumeration", not bad,
                           {"instances": checked, "failures": bad})


def criterion_7(seed: int = 0) -> CriterionResult:
    rng = _rng(seed, 7)
    nonzero, checked = [], 0
    for kind in ("diag-gl2", "diag-pgl2"):
        for nu in ((1, 0), (2, 0), (2, 1), (3, 0)):
            for p in (2, 3):
                twists = [None] + [(buildings.random_twist(rng, p), buildings.random_twist(rng, p))
                                   for _ in range(10)]
                for tw in twists:
                    checked += 1
                    c = buildings.intersection_count(buildings.IntersectionConfig(kind, p, tw), nu)
                    if c:
                        nonzero.append([kind, list(nu), p, c])
    return CriterionResult(7, "diagonal avoidance", not nonzero,
                           {"counts": checked, "nonzero": nonzero})


def _unit_points(rng: random.Random, dim: int, total: int, forced: list) -> list:
    pts = list(forced)
    while len(pts) < total:
        pts.append(charring.unit_torus_point([rng.random() for _ in range(dim)]))
    return pts


def criterion_8(seed: int = 0) -> CriterionResult:
    rng = _rng(seed, 8)
    su2 = build_root_datum("SU2", 1)
    a2 = build_root_datum("A", 2)
    w = cmath.exp(2j * math.pi / 3)
    forced_a1 = [("i",), ("-1",), ("1",), ("-i",), (w,)]
    forced_a2 = [("1", "1", "1"), ("i", "i", "1"), ("1", "-1", "1"), (1, w, w * w),
                 ("i", "-i", "1"), (w, w, 1)]
    mins, failures = {}, []
    for datum, forced in ((su2, forced_a1), (a2, forced_a2)):
        best = math.inf
        for x in _unit_points(rng, datum.ambient_dim, 1000, forced):
            try:
                _, val = charring.nonvanishing_search(datum, x, 4)
            except Exception as exc:  # exhaustion is a failure of the criterion
                failures.append([datum.label, str(exc)])
                continue
            best = min(best, charring.scalar_abs(val))
        mins[datum.label] = round(best, 9)
    ok = not failures and all(v > 1e-3 for v in mins.values())
    return CriterionResult(8, "character non-vanishing", ok,
                           {"points_per_datum": 1000, "min_max_abs_chi": mins, "failures": failures})


def _max_amplifier(n, x, qs, R):
    """max_{mu != 0} |S omega_mu(x)| for each q, sharing character values."""
    datum = satake.gl_datum(n)
    chis = {}
    out = []
    cands = [(mu, satake.satake_omega(n, mu)) for mu in charring.candidate_weights(datum, R)]
    for q in qs:
        best = 0.0
        for mu, V in cands:
            total = 0j
            for lam, c in V.terms.items():
                if lam not in chis:
                    chis[lam] = charring.char_value(datum, lam, x)
                total += chis[lam] * c.evaluate_float(q)
            best = max(best, abs(total))
        out.append(best)
    return out


def criterion_9(seed: int = 0) -> CriterionResult:
    rng = _rng(seed, 9)
    measured, ok = {}, True
    for n in (2, 3):
        m101 = m1009 = math.inf
        for _ in range(500):
            x = charring.unit_torus_point([rng.random() for _ in range(n)])
            a, b = _max_amplifier(n, x, (101, 1009), 3)
            m101, m1009 = min(m101, a), min(m1009, b)
        change = abs(m1009 - m101) / m101 if m101 > 0 else math.inf
        ok = ok and m101 > 0 and change < 0.1
        measured[f"GL{n}"] = {"min_q101": round(m101, 9), "min_q1009": round(m1009, 9),
                              "relative_change": round(change, 9)}
    return CriterionResult(9, "amplifier stability", ok, measured)


CRITERIA: dict[int, Callable[[int], CriterionResult]] = {
    1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4, 5: criterion_5,
    6: criterion_6, 7: criterion_7, 8: criterion_8, 9: criterion_9,
}

GROUPS = {
    "ksmall": (1, 2),
    "satake": (3, 4),
    "buildings": (5, 6, 7),
    "charring": (8,),
    "amplifier": (9,),
}


def select(only: str | None) -> list[int]:
    """Parse --only: group names and/or criterion numbers, comma separated."""
    if not only:
        return sorted(CRITERIA)
    chosen = set()
    for tok in only.split(","):
        tok = tok.strip()
        if tok in GROUPS:
            chosen.update(GROUPS[tok])
        elif tok.isdigit() and int(tok) in CRITERIA:
            chosen.add(int(tok))
        else:
            raise ContractError(f"unknown criterion selector {tok!r}; groups: {sorted(GROUPS)}")
    return sorted(chosen)


def run_acceptance(only: str | None = None, seed: int = 0, echo: Callable | None = None) -> list[CriterionResult]:
    results = []
    for number in select(only):
        start = time.perf_counter()
        res = CRITERIA[number](seed)
        res.seconds = time.perf_counter() - start
        results.append(res)
        if echo:
            echo(res)
    return results
