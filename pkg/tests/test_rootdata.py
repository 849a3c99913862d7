from fractions import Fraction
import itertools

import pytest

from supnorm.errors import CapabilityError, ContractError
from supnorm.rootdata import (
    COWEIGHT,
    RootDatum,
    build_root_datum,
    dominance_leq,
    dominant_rep,
    maximizing_functional,
    pair,
    product_datum,
    star_norm2,
    torus_datum,
    weyl_group_order,
    weyl_orbit,
)

CLASSICAL_ORDERS = {
    ("A", 1): 2, ("A", 2): 6, ("A", 3): 24, ("A", 4): 120, ("A", 7): 40320,
    ("B", 2): 8, ("B", 3): 48, ("B", 5): 3840,
    ("C", 2): 8, ("C", 3): 48, ("C", 4): 384,
    ("D", 2): 4, ("D", 3): 24, ("D", 4): 192, ("D", 5): 1920,
    ("G2", 2): 12, ("SU2", 1): 2,
}


@pytest.mark.parametrize("family,rank", sorted(CLASSICAL_ORDERS))
def test_weyl_group_orders(family, rank):
    assert weyl_group_order(build_root_datum(family, rank)) == CLASSICAL_ORDERS[family, rank]


@pytest.mark.parametrize("family,rank", sorted(CLASSICAL_ORDERS))
def test_datum_invariants(family, rank):
    d = build_root_datum(family, rank)
    roots = set(d.roots)
    for a, c in zip(d.roots, d.coroots):
        assert pair(a, c) == 2
    for i in range(d.num_simple):
        assert {d.reflect(a, i) for a in d.roots} == roots
    assert 2 * len(d.positive_roots) == len(d.roots)
    assert d.two_rho == tuple(sum(col) for col in zip(*d.positive_roots))


def test_a1_example():
    d = build_root_datum("A", 1)
    assert set(d.roots) == {(1, -1), (-1, 1)}
    assert d.two_rho == (1, -1)


def test_g2_roots():
    d = build_root_datum("G2", 2)
    expected = {(2, 0), (-2, 0), (0, 2), (0, -2)}
    expected |= {(a, b) for a in (1, -1) for b in (1, -1, 3, -3)}
    assert set(d.roots) == expected
    assert d.two_rho == (6, 2)


def test_d2_is_a1_squared():
    d = build_root_datum("D", 2)
    assert set(d.roots) == {(1, -1), (-1, 1), (1, 1), (-1, -1)}


def test_unsupported_rank():
    with pytest.raises(CapabilityError):
        build_root_datum("A", 9)
    with pytest.raises(CapabilityError):
        build_root_datum("E", 6)


def test_dominant_rep_examples():
    a2 = build_root_datum("A", 2)
    v, word = dominant_rep(a2, (0, 2, 1))
    assert v == (2, 1, 0)
    assert a2.apply_word((0, 2, 1), word, COWEIGHT) == v
    assert dominant_rep(a2, (2, 1, 0)) == ((2, 1, 0), [])
    b2 = build_root_datum("B", 2)
    assert dominant_rep(b2, (-1, 2))[0] == (2, 1)


def test_orbit_sizes():
    a2 = build_root_datum("A", 2)
    assert len(weyl_orbit(a2, (2, 1, 0))) == 6
    assert len(weyl_orbit(a2, (1, 1, 0))) == 3
    g2 = build_root_datum("G2", 2)
    # (1, 0) is fixed by the reflection in the long root (0, 2); its orbit has 6 elements
    assert len(weyl_orbit(g2, (1, 0))) == 6
    assert len(weyl_orbit(g2, (1, 2))) == 12


def test_star_norm_examples():
    assert star_norm2(build_root_datum("A", 3), (1, 0, 0, -1)) == 6
    assert star_norm2(build_root_datum("C", 2), (1, 1)) == 6
    for fam, r in (("A", 3), ("B", 2), ("G2", 2)):
        d = build_root_datum(fam, r)
        assert star_norm2(d, (0,) * d.ambient_dim) == 0


@pytest.mark.parametrize("family,rank", [("A", 2), ("A", 3), ("B", 2), ("C", 3), ("D", 4), ("G2", 2)])
def test_star_norm_is_orbit_max(family, rank):
    d = build_root_datum(family, rank)
    orbit_2rho = weyl_orbit(d, d.two_rho, "weight")
    for mu in itertools.product(range(-2, 3), repeat=d.ambient_dim):
        best = max(pair(mu, g) for g in orbit_2rho)
        assert star_norm2(d, mu) == best
        assert pair(mu, maximizing_functional(d, mu)) == best


def test_star_norm_rational_input():
    d = build_root_datum("A", 2)
    assert star_norm2(d, (Fraction(1, 2), 0, Fraction(-1, 2))) == 2


def test_dominance_examples():
    gl2, gl3 = build_root_datum("A", 1), build_root_datum("A", 2)
    assert dominance_leq(gl2, (1, 1), (2, 0))
    assert dominance_leq(gl3, (1, 1, 1), (2, 1, 0))
    # (2,1,0) <= (2,2,-1): the difference is the simple root e2 - e3
    assert dominance_leq(gl3, (2, 1, 0), (2, 2, -1))
    assert not dominance_leq(gl3, (2, 2, -1), (2, 1, 0))
    assert not dominance_leq(gl3, (4, 1, 1), (3, 3, 0))
    assert not dominance_leq(gl3, (3, 3, 0), (4, 1, 1))
    with pytest.raises(ContractError):
        dominance_leq(gl3, (0, 1, 0), (1, 0, 0))


@pytest.mark.parametrize("family,rank", [("A", 3), ("B", 2), ("G2", 2), ("SU2", 1)])
def test_json_round_trip(family, rank):
    d = build_root_datum(family, rank)
    back = RootDatum.from_json(d.to_json())
    assert back == d


def test_products_and_tori():
    d = product_datum(build_root_datum("D", 2), build_root_datum("B", 2))
    assert d.ambient_dim == 4
    assert weyl_group_order(d) == 4 * 8
    t = torus_datum(2)
    assert t.roots == ()
    assert star_norm2(t, (3, -1)) == 0
