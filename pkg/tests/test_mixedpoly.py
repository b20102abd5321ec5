import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lensroots import mixedpoly as mp
from lensroots.errors import InputError, ZeroPolynomial

from conftest import random_poly
from oracles import jacobian_fd

Z, ZB = mp.Z, mp.ZBAR

F2 = ZB * (Z ** 2 - 0.5) - (Z - 1 / 30)


def test_evaluate_modulus_squared():
    f = Z * ZB
    assert mp.evaluate(f, 3 + 4j) == pytest.approx(25)


def test_evaluate_conjugation():
    f = ZB - Z
    assert mp.evaluate(f, 1j) == pytest.approx(-2j)


def test_arith_builds_degree2_preset():
    assert F2.terms() == {(2, 1): 1 + 0j, (0, 1): -0.5 + 0j,
                          (1, 0): -1 + 0j, (0, 0): (1 / 30) + 0j}


def test_product_and_conjugate():
    assert (Z * ZB).terms() == {(1, 1): 1 + 0j}
    g = (Z ** 2 + 1j * ZB).conjugate()
    assert g.terms() == {(0, 2): 1 + 0j, (1, 0): -1j}


def test_degrees_and_classes():
    d = mp.degrees(F2)
    assert d.astuple() == (2, 1, 3)
    assert d.in_class(2, 1) and d.in_M_shape and d.in_L_shape and d.in_Lhs_shape
    d = mp.degrees(Z ** 3 * ZB ** 2 - 1)
    assert d.astuple() == (3, 2, 5) and d.in_class(3, 2)
    with pytest.raises(ZeroPolynomial):
        mp.degrees(mp.MixedPolynomial({}))


def test_lhs_shape_detection():
    # r(zb) q(z) - p(z) with r of degree 2
    q = Z ** 3 - 0.25
    f = (2 * ZB ** 2 + 0.5 * ZB) * q - (Z - 1)
    d = mp.degrees(f)
    assert d.in_Lhs_shape and not d.in_L_shape
    g = ZB ** 2 * (Z ** 2 - 1) + ZB * (Z ** 3 + 1) - Z
    assert not mp.degrees(g).in_Lhs_shape


def test_realify_examples():
    assert mp.realify(ZB) == mp.RealPair({(1, 0): 1.0}, {(0, 1): -1.0})
    assert mp.realify(Z ** 2) == mp.RealPair({(2, 0): 1.0, (0, 2): -1.0},
                                             {(1, 1): 2.0})
    assert mp.realify(Z * ZB - 1) == mp.RealPair(
        {(2, 0): 1.0, (0, 2): 1.0, (0, 0): -1.0}, {})


def test_substitute_power():
    assert mp.substitute_power(ZB - Z, 2) == ZB ** 2 - Z ** 2
    assert mp.substitute_power(F2, 1) == F2
    f3 = mp.substitute_power(F2, 3)
    d = mp.degrees(f3)
    assert d.astuple() == (6, 3, 9)
    with pytest.raises(InputError):
        mp.substitute_power(F2, 0)


def test_wirtinger_simple_values():
    assert mp.wirtinger_jacobian(Z, 0.3 + 0.1j) == pytest.approx(1.0)
    assert mp.wirtinger_jacobian(ZB, -2 + 1j) == pytest.approx(-1.0)
    assert mp.wirtinger_jacobian(Z ** 2 * ZB, 1.0) == pytest.approx(3.0)


def test_wirtinger_matches_finite_differences(rng):
    for _ in range(25):
        f = random_poly(rng)
        pair = mp.realify(f)
        z = complex(rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5))
        exact = mp.wirtinger_jacobian(f, z)
        approx = jacobian_fd(pair, z.real, z.imag)
        assert exact == pytest.approx(approx, rel=1e-6, abs=1e-6)


def test_realify_agrees_with_evaluate(rng):
    # the spec-level smoke: 1000 random (f, z) pairs
    for _ in range(200):
        f = random_poly(rng)
        pair = mp.realify(f)
        for _ in range(5):
            z = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
            g, h = pair.evaluate(z.real, z.imag)
            v = mp.evaluate(f, z)
            assert abs(complex(g, h) - v) <= 1e-10 * max(1.0, abs(v))


@st.composite
def poly_terms(draw):
    n = draw(st.integers(1, 5))
    terms = {}
    for _ in range(n):
        nu = draw(st.integers(0, 4))
        mu = draw(st.integers(0, 4))
        re = draw(st.floats(-5, 5, allow_nan=False))
        im = draw(st.floats(-5, 5, allow_nan=False))
        if re or im:
            terms[(nu, mu)] = complex(re, im)
    return terms


@settings(max_examples=200, deadline=None)
@given(poly_terms())
def test_conjugate_involution(terms):
    f = mp.MixedPolynomial(terms)
    assert f.conjugate().conjugate() == f
    if not f.is_zero():
        d, dc = mp.degrees(f), mp.degrees(f.conjugate())
        assert (dc.deg_z, dc.deg_zb) == (d.deg_zb, d.deg_z)


@settings(max_examples=100, deadline=None)
@given(poly_terms(), st.floats(-2, 2), st.floats(-2, 2))
def test_conjugate_evaluates_to_conjugate(terms, x, y):
    f = mp.MixedPolynomial(terms)
    z = complex(x, y)
    lhs = mp.evaluate(f.conjugate(), z)
    rhs = mp.evaluate(f, z).conjugate()
    assert abs(lhs - rhs) <= 1e-9 * max(1.0, abs(rhs))


def test_text_round_trip():
    for f in (F2, Z ** 3 * ZB ** 2 - 1, mp.MixedPolynomial({(0, 0): 1j})):
        assert mp.parse_text(mp.to_text(f)) == f
    assert mp.parse_text("(1,0) z + (2,-1) zb^3") == mp.MixedPolynomial(
        {(1, 0): 1.0, (0, 3): 2 - 1j})
    with pytest.raises(InputError):
        mp.parse_text("(1,0) w^2")


def test_json_round_trip():
    for f in (F2, Z * ZB, mp.MixedPolynomial({(5, 3): -2j})):
        assert mp.loads(mp.dumps(f)) == f
    with pytest.raises(InputError):
        mp.from_json_dict({"terms": [{"nu": -1, "mu": 0, "re": 1, "im": 0}]})
    with pytest.raises(InputError):
        mp.loads("not json")


def test_cancellation_drops_phantom_degree():
    f = Z ** 3 + ZB
    g = f - Z ** 3
    assert mp.degrees(g).astuple() == (0, 1, 1)


def test_evaluate_many_matches_scalar(rng):
    f = random_poly(rng)
    zs = rng.normal(size=10) + 1j * rng.normal(size=10)
    vals = mp.evaluate_many(f, zs)
    for z, v in zip(zs, vals):
        assert abs(v - mp.evaluate(f, z)) <= 1e-12 * max(1.0, abs(v))
