import cmath
import math

import pytest

from lensroots import mixedpoly as mp
from lensroots import signed_index as si
from lensroots.errors import CircleThroughZero, NotAdmissible, ZeroPolynomial

from conftest import random_poly

Z, ZB = mp.Z, mp.ZBAR
F2 = ZB * (Z ** 2 - 0.5) - (Z - 1 / 30)


def test_top_factor_monomial_top_part():
    fact = si.top_part_factor(F2)
    assert (fact.coefficient, fact.p, fact.q) == (1 + 0j, 2, 1)
    assert fact.factors == []
    assert fact.mixed_degree == 3 and fact.degree_check()


def test_top_factor_two_linear_factors():
    fact = si.top_part_factor(Z ** 2 - 4 * ZB ** 2 + Z)
    assert (fact.p, fact.q) == (0, 0)
    gammas = sorted((g.real, n) for g, n in fact.factors)
    assert gammas == [pytest.approx((-2.0, 1)), pytest.approx((2.0, 1))]
    assert fact.coefficient == pytest.approx(1.0)


def test_top_factor_mixed_monomial():
    fact = si.top_part_factor(Z * ZB + Z)
    assert (fact.p, fact.q, fact.factors) == (1, 1, [])


def test_top_factor_repeated_factor():
    f = mp.MixedPolynomial({(1, 0): 1.0, (0, 1): 2.0}) ** 3 + Z
    fact = si.top_part_factor(f)
    assert len(fact.factors) == 1
    g, nu = fact.factors[0]
    assert nu == 3 and g == pytest.approx(2.0, abs=1e-6)


def test_expand_reproduces_top_part(rng):
    for _ in range(30):
        f = random_poly(rng)
        fact = si.top_part_factor(f)
        diff = fact.expand() - si.top_part(f)
        scale = si.top_part(f).max_coeff()
        assert all(abs(c) <= 1e-8 * scale for c in diff.terms().values())


def test_is_admissible():
    assert si.is_admissible(Z ** 2 - 4 * ZB ** 2)
    assert not si.is_admissible(Z ** 2 - ZB ** 2)
    assert si.is_admissible(Z * ZB - 1)
    with pytest.raises(ZeroPolynomial):
        si.is_admissible(mp.MixedPolynomial({}))


def test_beta_values():
    assert si.beta(Z ** 3 * ZB - 1) == 2
    assert si.beta(Z ** 2 - 4 * ZB ** 2) == -2
    assert si.beta(F2) == 1
    with pytest.raises(NotAdmissible):
        si.beta(Z ** 2 - ZB ** 2)


def test_winding_beta_examples():
    assert si.winding_beta(Z ** 3 * ZB - 1, 2.0) == 2
    assert si.winding_beta(ZB, 1.0) == -1
    assert si.winding_beta(Z ** 2 - 4 * ZB ** 2, 1.0) == -2


def test_winding_raises_on_circle_through_zero():
    with pytest.raises(CircleThroughZero):
        si.winding_beta(Z - 1, 1.0)


def test_local_multiplicity_examples():
    assert si.local_multiplicity(Z, 0, 0.25) == 1
    assert si.local_multiplicity(ZB ** 2, 0, 0.5) == -2
    assert si.local_multiplicity(Z ** 2 * ZB, 0, 0.5) == 1
    assert si.local_multiplicity(Z - (1 + 1j), 1 + 1j, 0.1) == 1


def test_beta_matches_winding_on_random_admissible(rng):
    from lensroots import solver

    checked = 0
    for _ in range(40):
        f = random_poly(rng)
        if f.is_zero() or not si.is_admissible(f, band=1e-2):
            continue
        radius = solver.root_bound(f)
        assert si.beta(f) == si.winding_beta(f, radius)
        checked += 1
    assert checked >= 10


def test_beta_invariance_under_scaling_and_rotation(rng):
    for _ in range(20):
        f = random_poly(rng)
        if f.is_zero() or not si.is_admissible(f, band=1e-2):
            continue
        b = si.beta(f)
        c = complex(rng.normal(), rng.normal())
        if c == 0:
            continue
        assert si.beta(f * c) == b
        phase = cmath.exp(1j * rng.uniform(0, 2 * math.pi))
        rotated = mp.MixedPolynomial(
            {(nu, mu): cc * phase ** nu * phase.conjugate() ** mu
             for (nu, mu), cc in f.items()})
        assert si.beta(rotated) == b


def test_local_multiplicity_equals_orientation_at_simple_roots():
    from lensroots import solver

    inv = solver.isolate_roots(F2, (-2, 2, -2, 2))
    assert inv.certified
    for root in inv.roots:
        w = si.local_multiplicity(F2, root.center, 1e-3)
        assert w == root.orientation
