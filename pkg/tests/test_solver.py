import pytest

from lensroots import mixedpoly as mp
from lensroots import signed_index as si
from lensroots import solver
from lensroots.errors import (
    NonIsolatedZeroSet,
    NotAdmissible,
    UncertifiedCount,
    ZeroPolynomial,
)

from oracles import newton_sweep

Z, ZB = mp.Z, mp.ZBAR
F2 = ZB * (Z ** 2 - 0.5) - (Z - 1 / 30)
BOX = (-2.0, 2.0, -2.0, 2.0)


def test_single_root_cube_modulus():
    inv = solver.isolate_roots(Z ** 2 * ZB - 1, BOX)
    assert inv.rho == 1 and inv.certified
    (root,) = inv.roots
    assert root.center == pytest.approx(1.0, abs=1e-9)
    assert root.orientation == 1
    assert root.residual < 1e-10


def test_degree2_preset_has_five_roots():
    inv = solver.isolate_roots(F2, BOX)
    assert inv.rho == 5 and inv.certified
    assert not inv.unresolved_boxes
    assert inv.signed_sum == si.beta(F2) == 1
    for root in inv.roots:
        assert abs(mp.evaluate(F2, root.center)) < 1e-10


def test_unit_circle_zero_set_detected():
    with pytest.raises(NonIsolatedZeroSet):
        solver.isolate_roots(Z * ZB - 1, BOX)


def test_root_bound_examples():
    r = solver.root_bound(Z ** 3 * ZB - 1)
    assert r >= 1.0  # all roots have |z| = 1
    assert solver.root_bound(Z - 5) > 5.0
    with pytest.raises(NotAdmissible):
        solver.root_bound(Z ** 2 - ZB ** 2)


def test_rho_operation():
    assert solver.rho(F2) == 5
    assert solver.rho(Z ** 3 * ZB ** 2 - 1) == 1
    with pytest.raises(UncertifiedCount):
        # multiple root at the origin: rho refuses without simple roots
        solver.rho(Z ** 2 * ZB ** 3, box=BOX)
    with pytest.raises(ZeroPolynomial):
        solver.isolate_roots(mp.MixedPolynomial({}), BOX)


def test_solver_matches_newton_oracle():
    inv = solver.isolate_roots(F2, BOX)
    oracle = newton_sweep(F2.terms(), BOX)
    assert len(oracle) == inv.rho
    for root in inv.roots:
        nearest = min(abs(root.center - w) for w in oracle)
        assert nearest <= root.radius + 1e-6


def test_half_open_boundary_no_double_count():
    # root exactly on the shared edge of the user box: x = 1 is the root
    inv = solver.isolate_roots(Z ** 2 * ZB - 1, (-1.0, 1.0 + 1e-3, -1.0, 1.0))
    assert inv.rho == 1
    # high edge is exclusive: the root at x = 1 is outside [-1, 1) x [-1, 1)
    inv = solver.isolate_roots(Z ** 2 * ZB - 1, (-1.0, 1.0, -1.0, 1.0))
    assert inv.rho == 0 and not inv.unresolved_boxes


def test_stability_under_tol_and_depth():
    base = solver.isolate_roots(F2, BOX)
    deeper = solver.isolate_roots(F2, BOX, max_depth=120)
    tighter = solver.isolate_roots(F2, BOX, tol=5e-11)
    assert base.rho == deeper.rho == tighter.rho == 5


def test_orientation_signs():
    # zbar has one negative root at 0; z has one positive
    inv = solver.isolate_roots(ZB - 0.5, BOX)
    assert inv.rho == 1 and inv.roots[0].orientation == -1
    inv = solver.isolate_roots(Z - 0.5, BOX)
    assert inv.rho == 1 and inv.roots[0].orientation == 1


def test_multiple_point_flagged_with_winding():
    # zbar^2 (z - 1): double anti-holomorphic root at 0 plus a simple one
    f = ZB ** 2 * (Z - 1)
    inv = solver.isolate_roots(f, BOX)
    assert inv.rho == 1
    assert len(inv.multiple_points) == 1
    cluster = inv.multiple_points[0]
    assert abs(cluster.center) < 1e-6
    assert cluster.multiplicity == -2
    assert not cluster.certified and not inv.certified
    assert inv.signed_sum == si.beta(f) == -1


def test_count_multiplicity_flag():
    f = ZB ** 2 * (Z - 1)
    inv = solver.isolate_roots(f, BOX, count_multiplicity=True)
    assert inv.rho == 3  # 1 simple + |-2|


def test_signed_sum_equals_beta_on_admissible_corpus(rng):
    from conftest import random_poly

    checked = 0
    for _ in range(30):
        f = random_poly(rng, max_deg=3, max_terms=4)
        if f.is_zero() or not si.is_admissible(f, band=1e-2):
            continue
        try:
            box = solver.default_box(f)
            inv = solver.isolate_roots(f, box)
        except (UncertifiedCount, NonIsolatedZeroSet):
            continue
        if not inv.certified:
            continue
        assert inv.signed_sum == si.beta(f)
        assert inv.rho >= abs(si.beta(f))
        assert (inv.rho - si.beta(f)) % 2 == 0
        checked += 1
    assert checked >= 8


def test_residuals_and_radii_reported():
    inv = solver.isolate_roots(F2, BOX)
    for root in inv.roots:
        assert root.radius < 1e-8
        assert root.residual < 1e-10
        assert root.multiplicity == 1 and root.certified


def test_json_report_shape():
    inv = solver.isolate_roots(F2, BOX)
    data = inv.to_json_dict()
    assert data["rho"] == 5
    assert len(data["roots"]) == 5
    assert {"re", "im", "radius", "orientation", "residual",
            "multiplicity", "certified"} <= set(data["roots"][0])
