import itertools
import random
from fractions import Fraction

import pytest

from supnorm.buildings import (
    IntersectionConfig,
    buildingcount_check,
    delta_profile,
    evaluate_polynomial,
    intersection_count,
    random_twist,
    sphere_size_polynomial,
)
from supnorm.errors import ContractError, ResourceError
from supnorm.lattices import elementary_divisors, hnf_sphere, in_K, sphere_count, vp
from supnorm.rootdata import build_root_datum, star_norm2, weyl_orbit


def test_vp():
    assert vp(12, 2) == 2
    assert vp(Fraction(3, 8), 2) == -3
    assert vp(0, 3) == float("inf")


def test_elementary_divisors():
    assert elementary_divisors([[2, 1], [0, 2]], 2) == (0, 2)
    assert elementary_divisors([[4, 0], [0, 1]], 2) == (0, 2)
    assert elementary_divisors([[Fraction(1, 2), 0], [0, 2]], 2) == (-1, 1)


def test_hnf_examples():
    assert sphere_count(2, (1, 0), 3) == 4
    assert sphere_count(3, (1, 0, 0), 2) == 7
    assert sphere_count(3, (2, 1, 0), 2) == 42
    assert sphere_count(2, (0, -1), 3) == 4
    with pytest.raises(ResourceError):
        sphere_count(3, (3, 0, 0), 3, cap=100)


def test_hnf_representatives_are_distinct_cosets():
    reps = list(hnf_sphere(2, (2, 0), 2))
    for a, b in itertools.combinations(reps, 2):
        inv = [[b[1][1], -b[0][1]], [-b[1][0], b[0][0]]]
        d = b[0][0] * b[1][1] - b[0][1] * b[1][0]
        prod = [[sum(inv[i][k] * a[k][j] for k in range(2)) / d for j in range(2)] for i in range(2)]
        assert not in_K(prod, 2)


def test_delta_examples():
    assert delta_profile(build_root_datum("A", 1), (1, -1)).values == (1, 1)
    prof = delta_profile(build_root_datum("A", 2), (2, 1, 0))
    assert prof.values == (3, 1) and prof.total == 4
    with pytest.raises(ContractError):
        delta_profile(build_root_datum("A", 2), (1, 0))


@pytest.mark.parametrize("family,rank", [("A", 2), ("A", 3), ("B", 2), ("C", 3), ("D", 4), ("G2", 2)])
def test_delta_total_is_star_norm(family, rank):
    d = build_root_datum(family, rank)
    for mu in itertools.product(range(-2, 3), repeat=d.ambient_dim):
        assert delta_profile(d, mu).total == star_norm2(d, mu)


def test_sphere_polynomial_examples():
    assert sphere_size_polynomial(build_root_datum("A", 1), (1, 0)) == [1, 1]
    assert sphere_size_polynomial(build_root_datum("A", 1), (1, -1)) == [0, 1, 1]
    assert sphere_size_polynomial(build_root_datum("A", 1), (1, 1)) == [1]


@pytest.mark.parametrize("mu,p", [((1, 0), 2), ((1, 0), 5), ((2, 0), 3), ((3, 1), 2),
                                  ((1, 0, 0), 3), ((2, 1, 0), 2), ((2, 0, 0), 3), ((1, 1, 0, 0), 2)])
def test_sphere_polynomial_matches_enumeration(mu, p):
    d = build_root_datum("A", len(mu) - 1)
    assert evaluate_polynomial(sphere_size_polynomial(d, mu), p) == sphere_count(len(mu), mu, p)


@pytest.mark.parametrize("family,rank", [("A", 2), ("B", 2), ("G2", 2), ("C", 3)])
def test_sphere_polynomial_degree(family, rank):
    d = build_root_datum(family, rank)
    for mu in itertools.product(range(-1, 2), repeat=d.ambient_dim):
        if not d.is_dominant(mu, "coweight"):
            continue
        poly = sphere_size_polynomial(d, mu)
        assert len(poly) - 1 == star_norm2(d, mu) and poly[-1] == 1


def test_intersection_examples():
    diag = IntersectionConfig("diag-gl2", 3)
    assert intersection_count(diag, (1, 0)) == 0
    assert intersection_count(diag, (0, 0)) == 1
    assert intersection_count(diag, (1, 0, 1, 0)) == 4
    torus = IntersectionConfig("torus-gl2", 3)
    assert intersection_count(torus, (1, 0)) == 2
    rep = buildingcount_check(torus, (2, 0))
    assert (rep.count, rep.bound) == (2, 1)


def test_beyond_desk_scale():
    with pytest.raises(ContractError):
        intersection_count(IntersectionConfig("torus-gl2", 7), (1, 0))
    with pytest.raises(ContractError):
        intersection_count(IntersectionConfig("torus-gl2", 3), (4, 0))
    with pytest.raises(ContractError):
        IntersectionConfig("torus-gl2", 3, ((3, 0), (0, 1)))


@pytest.mark.parametrize("p", [2, 3, 5])
def test_torus_count_is_weyl_orbit(p):
    gl2 = build_root_datum("A", 1)
    rng = random.Random(p)
    for mu in [(1, 0), (2, 0), (2, 1), (1, 1), (3, 0), (0, -2)]:
        expected = len(weyl_orbit(gl2, mu))
        for twist in [None, random_twist(rng, p), random_twist(rng, p)]:
            config = IntersectionConfig("torus-gl2", p, twist)
            assert intersection_count(config, mu) == expected


@pytest.mark.parametrize("mu", [(1, 0), (1, 0, 0), (2, 1, 0), (1, 1, 0)])
def test_full_count_is_sphere(mu):
    n = len(mu)
    config = IntersectionConfig("full", 2, n=n)
    assert intersection_count(config, mu) == sphere_count(n, mu, 2)
    rep = buildingcount_check(config, mu)
    assert rep.ratio <= 4


def test_diagonal_avoidance_under_random_twists():
    rng = random.Random(7)
    for _ in range(10):
        config = IntersectionConfig("diag-gl2", 3, (random_twist(rng, 3), random_twist(rng, 3)))
        for nu in [(1, 0), (2, 0), (1, -1)]:
            rep = buildingcount_check(config, nu)
            assert rep.count == 0 and not rep.in_subgroup


def test_pgl2_diagonal():
    config = IntersectionConfig("diag-pgl2", 2)
    rep = buildingcount_check(config, (1, 0, 1, 0))
    assert rep.count == 3 and rep.ratio <= 4
    # homothetic pairs are allowed in PGL_2
    assert intersection_count(config, (1, 0, 2, 1)) == 3
    assert intersection_count(IntersectionConfig("diag-gl2", 2), (1, 0, 2, 1)) == 0


@pytest.mark.parametrize("kind", ["diag-gl2", "diag-pgl2", "torus-gl2"])
def test_bound_ratio(kind):
    config = IntersectionConfig(kind, 2)
    boxes = itertools.product(range(0, 3), repeat=config.ambient_dim)
    for mu in boxes:
        rep = buildingcount_check(config, mu)
        assert rep.ratio <= 4
