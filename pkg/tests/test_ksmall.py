import itertools
import random
from fractions import Fraction

import pytest

from supnorm.errors import CapabilityError
from supnorm.ksmall import (
    FAMILIES,
    SECTION7_CASES,
    build_embedding,
    defect2,
    min_lattice_defect,
    verify_ksmall,
)
from supnorm.rootdata import build_root_datum, star_norm2


def sl_norm(v):
    """Independent type-A star norm: sorted coordinates against (n-1, n-3, ...)."""
    n = len(v)
    return sum(a * (n - 1 - 2 * i) for i, a in enumerate(sorted(v, reverse=True)))


def test_iota_examples():
    E = build_embedding("so-sl", 2)
    assert E.apply((3, 5)) == (3, 5, -5, -3)
    assert build_embedding("gl-sp", 2).apply((1, -2)) == (1, -2)
    assert build_embedding("g2").apply((1, 2)) == (1, 2)


def test_defect_examples():
    assert defect2(build_embedding("so-sl", 2), (1, 0)) == 2
    assert defect2(build_embedding("gl-sp", 2), (1, -1)) == 2
    for fam, k in SECTION7_CASES:
        E = build_embedding(fam, k)
        assert defect2(E, (0,) * E.K.ambient_dim) == 0


def test_unsupported_size():
    with pytest.raises(CapabilityError):
        build_embedding("so-sl", 5)
    with pytest.raises(CapabilityError):
        build_embedding("nope", 1)


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_type_a_norm_matches_sorting_oracle(k):
    E = build_embedding("so-sl", k)
    rng = random.Random(k)
    for _ in range(100):
        mu = tuple(rng.randint(-4, 4) for _ in range(k))
        assert star_norm2(E.G, E.apply(mu)) == sl_norm(E.apply(mu))


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_so_sl_closed_form(k):
    E = build_embedding("so-sl", k)
    for mu in itertools.product(range(0, 3), repeat=k):
        if E.K.is_dominant(mu, "coweight") and all(a >= 0 for a in mu):
            assert defect2(E, mu) == 2 * sum(mu)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_so_sl_odd_closed_form(k):
    E = build_embedding("so-sl-odd", k)
    for mu in itertools.product(range(0, 3), repeat=k):
        if E.K.is_dominant(mu, "coweight"):
            assert defect2(E, mu) == 2 * sum(mu)


def test_min_lattice_examples():
    assert min_lattice_defect(build_embedding("so-sl", 2), 2) == (2, (1, 0))
    assert min_lattice_defect(build_embedding("gl-sp", 2), 2) == (2, (1, 0))
    E = build_embedding("gl-sp", 2)
    for mu in itertools.product((-1, 1), repeat=2):
        assert min_lattice_defect(E, 1)[0] <= defect2(E, mu)


@pytest.mark.parametrize("family,k", SECTION7_CASES)
def test_wk_invariance(family, k):
    E = build_embedding(family, k)
    rng = random.Random(0)
    for _ in range(200):
        mu = tuple(rng.randint(-4, 4) for _ in range(E.K.ambient_dim))
        for i in range(E.K.num_simple):
            assert defect2(E, E.K.reflect(mu, i, "coweight")) == defect2(E, mu)


@pytest.fixture(scope="module")
def certificates():
    return {(f, k): verify_ksmall(build_embedding(f, k)) for f, k in SECTION7_CASES}


@pytest.mark.parametrize("family,k", SECTION7_CASES)
def test_certificate_soundness(certificates, family, k):
    cert = certificates[family, k]
    E = build_embedding(family, k)
    assert cert.positive
    assert cert.kappa2_lattice >= cert.kappa2_lower
    for mu in itertools.product(range(-3, 4), repeat=E.K.ambient_dim):
        if any(mu):
            d = defect2(E, mu)
            assert d >= cert.kappa2_lower * max(abs(a) for a in mu)


def test_certificate_values(certificates):
    for key, cert in certificates.items():
        expected = {("so-so-mixed", 2): 1, ("g2", 1): Fraction(4, 3)}.get(key, 2)
        assert cert.kappa2_lower == expected, key
    assert certificates["so-so-even", 2].witness_mu == (1, 0, 1, 0)


def test_k1_degenerate_case():
    cert = verify_ksmall(build_embedding("so-sl", 1))
    assert cert.kappa2_lower == 2 and cert.positive


def test_g2_bound_is_tight_on_a_rational_ray(certificates):
    """The LP optimum 4/3 is attained at (1, 1/3): the lattice point (3, 1) has defect 4."""
    cert = certificates["g2", 1]
    E = build_embedding("g2")
    assert cert.lower_point == (1, Fraction(1, 3))
    assert defect2(E, (3, 1)) == 4 == cert.kappa2_lower * 3
    best = min(Fraction(defect2(E, mu), max(map(abs, mu)))
               for mu in itertools.product(range(-6, 7), repeat=2) if any(mu))
    assert best == cert.kappa2_lower


def test_g2_chamber_bounds():
    g2 = build_root_datum("G2", 2)
    for x1, x2 in itertools.product(range(0, 7), repeat=2):
        n = star_norm2(g2, (x1, x2))
        assert n >= max(6 * x1 + 2 * x2, 4 * x1 + 8 * x2) >= 5 * x1 + 5 * x2


def test_families_registered():
    assert set(FAMILIES) == {"so-sl", "so-sl-odd", "gl-sp", "so-so-even", "so-so-mixed",
                             "so-so-odd", "g2"}
    assert len(SECTION7_CASES) == 12
