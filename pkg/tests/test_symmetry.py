import math

import numpy as np
import pytest

from lensroots import families as fam
from lensroots import solver
from lensroots import symmetry as sym
from lensroots.errors import BadParameters, NotInvariant, NotSquarefree, RayViolation


def test_sturm_counts_paper_examples():
    # three real roots of z^5 - z^3 - a^5 for small a
    assert sym.sturm_count([-(0.1 ** 5), 0, 0, -1, 0, 1]) == 3
    # two real roots of z^4 - z^2 - a^4
    assert sym.sturm_count([-(0.1 ** 4), 0, -1, 0, 1]) == 2
    # four real roots of -u^4 + u^2 - a^4
    assert sym.sturm_count([-(0.1 ** 4), 0, 1, 0, -1]) == 4


def test_sturm_interval_semantics():
    # roots of z^2 - 1 at +-1; interval is (lo, hi]
    p = [-1, 0, 1]
    assert sym.sturm_count(p, (-2, 2)) == 2
    assert sym.sturm_count(p, (-1, 1)) == 1   # -1 excluded, +1 included
    assert sym.sturm_count(p, (0, 0.5)) == 0
    assert sym.sturm_count(p, (0, math.inf)) == 1


def test_sturm_matches_numpy_roots(rng):
    for _ in range(50):
        deg = int(rng.integers(2, 7))
        coeffs = rng.integers(-6, 7, size=deg + 1).astype(float)
        if coeffs[-1] == 0:
            coeffs[-1] = 1.0
        roots = np.roots(coeffs[::-1])
        real = roots[np.abs(roots.imag) < 1e-9].real
        if len(real) and np.min(np.abs(np.subtract.outer(real, real))
                                + np.eye(len(real))) < 1e-6:
            continue  # nearly multiple roots: not squarefree territory
        try:
            count = sym.sturm_count(list(coeffs))
        except NotSquarefree:
            continue
        assert count == len(real)


def test_sturm_rejects_non_squarefree():
    with pytest.raises(NotSquarefree):
        sym.sturm_count([1, 2, 1])  # (x+1)^2


def test_radial_equation_forms():
    eq = sym.radial_equation(5, 1, 0.3, 0, "L")
    assert eq.as_floats() == [-(0.3 ** 5), 0, 0, -1, 0, 1]
    eq = sym.radial_equation(4, 1, 0.3, 0, "Lp")
    assert eq.as_floats() == [0.3 ** 4, 0, -1, 0, 1]
    eq = sym.radial_equation(6, 4, 0.5, 0, "L")
    want = [0.0] * 9
    want[8], want[2], want[0] = 1.0, -(0.5 ** 6), -1.0
    assert eq.as_floats() == want
    eq = sym.radial_equation(5, 1, 0.7, 1e-4, "L")
    want = [0.0] * 8
    want[7], want[5], want[2], want[0] = 1.0, -(1 + 1e-4), -(0.7 ** 5), 0.7 ** 5 * 1e-4
    assert eq.as_floats() == pytest.approx(want)


def test_radial_equation_validation():
    with pytest.raises(BadParameters):
        sym.radial_equation(5, 1, 0.3, 0, "Lp")  # odd n has no separate branch
    with pytest.raises(BadParameters):
        sym.radial_equation(1, 1, 0.3)
    with pytest.raises(BadParameters):
        sym.radial_equation(5, 1, -0.3)
    with pytest.raises(BadParameters):
        sym.radial_equation(5, 1, 0.3, branch="X")


def test_branch_multiplicities():
    assert sym.branch_multiplicity(5, "L") == 5
    assert sym.branch_multiplicity(4, "L") == 2
    assert sym.branch_multiplicity(4, "Lp") == 2
    with pytest.raises(BadParameters):
        sym.branch_multiplicity(5, "Lp")


@pytest.mark.parametrize("n,m,a,eps,expected", [
    (5, 1, 0.7, 0.0, 15),
    (4, 1, 0.5, 0.0, 12),
    (6, 4, 0.5, 0.0, 12),
    (5, 1, 0.7, 1e-4, 25),
    (4, 2, 0.5, 6.3e-4, 12),
])
def test_radial_census_values(n, m, a, eps, expected):
    assert sym.radial_census(n, m, a, eps) == expected


def test_ray_constraint_and_orbits_ell51():
    f = fam.ell(5, 1, 0.7)
    inv = solver.isolate_roots(f, solver.default_box(f))
    cfg = sym.verify_ray_constraint(inv, 5, tol=1e-8)
    assert len(cfg.assignments) == 15  # nonzero roots only
    assert sorted(len(o) for o in cfg.orbits) == [5, 5, 5]
    for idx in cfg.assignments:
        z = inv.roots[idx].center
        assert abs(abs(z) - 1.0) > 1e-3  # off the unit circle
        w = z ** 10
        assert w.real > 0 and abs(w.imag) <= 1e-8 * abs(z) ** 10


def test_ray_branch_split_ell41():
    f = fam.ell(4, 1, 0.5)
    inv = solver.isolate_roots(f, solver.default_box(f))
    cfg = sym.verify_ray_constraint(inv, 4, tol=1e-8)
    assert cfg.count_on_branch("L") == 4
    assert cfg.count_on_branch("Lp") == 8


def test_ray_violation_for_asymmetric_poly():
    from lensroots import mixedpoly as mp

    f = mp.ZBAR * (mp.Z ** 2 - 0.5) - (mp.Z - 1 / 30)
    inv = solver.isolate_roots(f, (-2, 2, -2, 2))
    with pytest.raises(RayViolation):
        sym.verify_ray_constraint(inv, 2, tol=1e-8)


def test_orbit_rotation_recertifies():
    import cmath

    from lensroots import mixedpoly as mp

    f = fam.ell(5, 2, 0.7)
    inv = solver.isolate_roots(f, solver.default_box(f))
    zeta = cmath.exp(2j * math.pi / 5)
    for root in inv.nonzero_roots():
        rotated = root.center * zeta
        residual = abs(mp.evaluate(f, rotated))
        assert residual < 1e-9
        match = min(abs(r.center - rotated) for r in inv.nonzero_roots())
        assert match <= 2 * root.radius + 1e-10


def test_orbit_not_invariant_raises():
    from lensroots import mixedpoly as mp

    f = (mp.Z - 0.5) * (mp.Z * mp.ZBAR * 0 + 1) * (mp.Z - 0.5j) * mp.ZBAR - 0.01
    inv = solver.isolate_roots(f, (-2, 2, -2, 2))
    if inv.rho:
        with pytest.raises(NotInvariant):
            sym.orbit_decompose(inv, 7)


def test_census_matches_solver_across_families():
    for (n, m, a, eps) in [(5, 2, 0.5, 0.0), (7, 3, 0.5, 0.0),
                           (5, 4, 0.5, 0.0), (6, 4, 0.5, 1.6e-4)]:
        f = fam.ell_eps(n, m, a, eps) if eps else fam.ell(n, m, a)
        inv = solver.isolate_roots(f, solver.default_box(f))
        assert not inv.unresolved_boxes
        assert sym.radial_census(n, m, a, eps) == len(inv.nonzero_roots())


def test_orbits_ell64_two_of_size_six():
    f = fam.ell(6, 4, 0.5)
    inv = solver.isolate_roots(f, solver.default_box(f))
    orbits = sym.orbit_decompose(inv, 6)
    assert sorted(len(o) for o in orbits) == [6, 6]


def test_single_root_is_one_orbit_under_trivial_action():
    from lensroots import mixedpoly as mp

    inv = solver.isolate_roots(mp.Z - 1, (-2, 2, -2, 2))
    assert sym.orbit_decompose(inv, 1) == [[0]]


def test_radial_roots_off_unit_circle():
    # no radial root in a band around +-1 for a > 0
    for (n, m, a) in [(5, 1, 0.7), (4, 2, 0.5), (6, 4, 0.5)]:
        for branch in ("L",) if n % 2 else ("L", "Lp"):
            eq = sym.radial_equation(n, m, a, 0.0, branch)
            assert eq.count((1 - 1e-9, 1 + 1e-9)) == 0
            assert eq.count((-1 - 1e-9, -1 + 1e-9)) == 0
