import numpy as np
import pytest
from hypothesis import assume, given, settings

from conicverify.conics import (
    Conic,
    DegeneratePointSet,
    DualConic,
    LineOnConic,
    NotDegenerate,
    PointNotOnConic,
    RankOne,
    SharedComponent,
    SingularConic,
    TangentLineThroughBasePoint,
    InconsistentThroughPoint,
    classify,
    cluster_points,
    codependent,
    conic_4pts_tangent_line,
    conic_double_contact,
    conic_from_line_pair,
    conic_through_5,
    dependent,
    dual,
    evaluate,
    intersect_conic_line,
    intersect_conics,
    line_tangency_residual,
    pencil_member,
    point_on_conic,
    polar,
    pole,
    primal,
    split_degenerate,
    tangent_at,
    tangents_from,
    transform_conic,
    upper_triangle,
)
from conicverify.geom_core import (
    HomLine,
    HomPoint,
    apply_transform,
    incidence_residual,
    normalize,
    proj_equal,
    proj_equal_residual,
)

from conftest import invertible_transforms, nonzero_scalars

UNIT_CIRCLE = Conic(np.diag([1.0, 1.0, -1.0]))
ELLIPSE_41 = Conic(np.diag([0.25, 1.0, -1.0]))  # x^2/4 + y^2 = 1
ELLIPSE_63 = Conic(np.diag([1 / 6, 1 / 3, -1.0]))  # x^2/6 + y^2/3 = 1
HYPERBOLA_21 = Conic(np.diag([0.5, -1.0, -1.0]))  # x^2/2 - y^2 = 1

I_PT = HomPoint(1, 1j, 0)
J_PT = HomPoint(1, -1j, 0)


def conics_equal(c1, c2, tol=1e-9):
    return proj_equal_residual(upper_triangle(c1), upper_triangle(c2)) < tol


# --- evaluate / classify -------------------------------------------------


def test_evaluate_on_circle():
    assert evaluate(UNIT_CIRCLE, HomPoint(1, 0, 1)) == 0.0


def test_evaluate_absolute_points():
    assert evaluate(UNIT_CIRCLE, I_PT) < 1e-15
    assert evaluate(UNIT_CIRCLE, J_PT) < 1e-15


def test_evaluate_off_conic():
    # |4-1| / (5 * sqrt(3)) with the matrix Frobenius-normalized
    r = evaluate(UNIT_CIRCLE, HomPoint(2, 0, 1))
    assert r == pytest.approx(3 / (5 * np.sqrt(3)))


def test_classify_ranks():
    assert classify(UNIT_CIRCLE) == 3
    assert classify(Conic(np.diag([1.0, 0.0, -1.0]))) == 2
    assert classify(Conic(np.diag([1.0, 0.0, 0.0]))) == 1


# --- duality --------------------------------------------------------------


def test_dual_circle_self():
    assert conics_equal(dual(UNIT_CIRCLE), DualConic(np.diag([1, 1, -1])))


def test_dual_tangent_test():
    d = dual(ELLIPSE_41)
    l = HomLine(1, 0, -2).v
    assert abs(l @ d.A @ l) < 1e-12


def test_dual_rank2_supported_on_singular_point():
    d = dual(Conic(np.diag([1.0, 0.0, -1.0])))
    # adjugate of x^2 - z^2 is rank 1, supported on (0,1,0)
    assert classify(d) == 1
    v = np.array([0, 1, 0], dtype=complex)
    assert np.linalg.norm(d.A @ np.array([1, 0, 0])) < 1e-12
    assert abs(v @ d.A @ v) > 0.5


def test_dual_rank1_raises():
    with pytest.raises(RankOne):
        dual(Conic(np.diag([1.0, 0.0, 0.0])))


def test_dual_involution():
    rng = np.random.default_rng(7)
    for _ in range(25):
        C = Conic(rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3)))
        if classify(C) < 3:
            continue
        assert conics_equal(primal(dual(C)), C, tol=1e-10)


# --- polarity and tangency ------------------------------------------------


def test_polar_center_is_line_at_infinity():
    assert proj_equal(polar(UNIT_CIRCLE, HomPoint(0, 0, 1)), HomLine(0, 0, 1))


def test_polar_on_conic_is_tangent():
    assert proj_equal(polar(UNIT_CIRCLE, HomPoint(1, 0, 1)), HomLine(1, 0, -1))


def test_pole_of_line_at_infinity():
    assert proj_equal(pole(UNIT_CIRCLE, HomLine(0, 0, 1)), HomPoint(0, 0, 1))


def test_pole_rank2_raises():
    with pytest.raises(SingularConic):
        pole(Conic(np.diag([1.0, 0.0, -1.0])), HomLine(0, 0, 1))


def test_tangent_at_worked_ellipse():
    # x^2/6 + y^2/3 = 1 at (2,1): x + y = 3
    t = tangent_at(ELLIPSE_63, HomPoint(2, 1, 1))
    assert proj_equal(t, HomLine(1, 1, -3))


def test_tangent_at_vertex():
    t = tangent_at(ELLIPSE_63, HomPoint(0, -np.sqrt(3), 1))
    assert proj_equal(t, HomLine(0, 1, np.sqrt(3)))


def test_tangent_at_rejects_off_conic():
    with pytest.raises(PointNotOnConic):
        tangent_at(UNIT_CIRCLE, HomPoint(2, 0, 1))


def test_tangents_from_outside_axis_point():
    # from (2,1) to x^2/4+y^2=1: x=2 and y=1
    pair = tangents_from(ELLIPSE_41, HomPoint(2, 1, 1))
    expected = [HomLine(1, 0, -2), HomLine(0, 1, -1)]
    for e in expected:
        assert any(proj_equal(l, e) for l in pair)


def test_tangents_from_circle():
    pair = tangents_from(UNIT_CIRCLE, HomPoint(2, 0, 1))
    for e in (HomLine(1, np.sqrt(3), -2), HomLine(1, -np.sqrt(3), -2)):
        assert any(proj_equal(l, e) for l in pair)


def test_tangents_from_interior_conjugate_pair():
    pair = tangents_from(UNIT_CIRCLE, HomPoint(0, 0, 1))
    assert proj_equal(HomLine(np.conj(pair.l1.v)), pair.l2)
    for l in pair:
        assert line_tangency_residual(UNIT_CIRCLE, l) < 1e-12


def test_tangents_from_consistency_random():
    rng = np.random.default_rng(3)
    for _ in range(30):
        p = HomPoint(rng.normal(size=3) + 1j * rng.normal(size=3))
        if evaluate(ELLIPSE_41, p) < 1e-3:
            continue
        pair = tangents_from(ELLIPSE_41, p)
        for l in pair:
            assert line_tangency_residual(ELLIPSE_41, l) < 1e-10
            assert incidence_residual(p, l) < 1e-10


# --- degenerate splitting ---------------------------------------------------


def test_split_two_lines():
    pair = split_degenerate(Conic(np.diag([1.0, 0.0, -1.0])))
    for e in (HomLine(1, 0, -1), HomLine(1, 0, 1)):
        assert any(proj_equal(l, e) for l in pair)


def test_split_double_line():
    pair = split_degenerate(Conic(np.diag([0.0, 1.0, 0.0])))
    assert proj_equal(pair.l1, HomLine(0, 1, 0))
    assert proj_equal(pair.l2, HomLine(0, 1, 0))


def test_split_absolute_point_pair():
    # sym(I J^T) as a dual conic splits into the point pair {I, J}
    M = 0.5 * (np.outer(I_PT.v, J_PT.v) + np.outer(J_PT.v, I_PT.v))
    pair = split_degenerate(Conic(M))
    got = [normalize(HomPoint(l.v)) for l in pair]
    assert any(proj_equal(g, I_PT) for g in got)
    assert any(proj_equal(g, J_PT) for g in got)


def test_split_smooth_raises():
    with pytest.raises(NotDegenerate):
        split_degenerate(UNIT_CIRCLE)


def test_split_reproduces_conic():
    rng = np.random.default_rng(11)
    for _ in range(20):
        l1 = HomLine(rng.normal(size=3) + 1j * rng.normal(size=3))
        l2 = HomLine(rng.normal(size=3) + 1j * rng.normal(size=3))
        C = conic_from_line_pair(l1, l2)
        back = conic_from_line_pair(*split_degenerate(C))
        assert conics_equal(back, C, tol=1e-9)


# --- fitting ---------------------------------------------------------------


def test_conic_through_5_circle():
    s = np.sqrt(0.5)
    pts = [HomPoint(1, 0, 1), HomPoint(-1, 0, 1), HomPoint(0, 1, 1), HomPoint(0, -1, 1), HomPoint(s, s, 1)]
    assert conics_equal(conic_through_5(*pts), UNIT_CIRCLE, tol=1e-10)


def test_conic_through_5_degenerate():
    pts = [HomPoint(t, 0, 1) for t in (0, 1, 2, 3)] + [HomPoint(0, 1, 1)]
    with pytest.raises(DegeneratePointSet):
        conic_through_5(*pts)


def test_conic_through_5_round_trip():
    rng = np.random.default_rng(5)
    seed = HomPoint(2, 0, 1)
    for _ in range(10):
        pts = [point_on_conic(ELLIPSE_41, t, seed=seed) for t in rng.normal(size=5) * 2]
        assert conics_equal(conic_through_5(*pts), ELLIPSE_41, tol=1e-10)


# --- four points + tangent line ---------------------------------------------


SQUARE = [HomPoint(1, 1, 1), HomPoint(1, -1, 1), HomPoint(-1, 1, 1), HomPoint(-1, -1, 1)]


def test_4pts_tangent_line_square():
    sol = conic_4pts_tangent_line(*SQUARE, HomLine(1, 0, -2))
    assert len(sol.smooth) == 1 and len(sol.degenerate) == 1
    assert conics_equal(sol.smooth[0], Conic(np.diag([1, 3, -4])))
    hit = intersect_conic_line(sol.smooth[0], HomLine(1, 0, -2))
    assert hit.tangent and proj_equal(hit.points[0], HomPoint(2, 0, 1))


def test_4pts_tangent_line_through_base_point():
    with pytest.raises(TangentLineThroughBasePoint):
        conic_4pts_tangent_line(*SQUARE, HomLine(1, 0, -1))


def test_4pts_tangent_line_two_solutions():
    # generic line: both roots smooth, at most two, all valid
    rng = np.random.default_rng(13)
    found_two = 0
    for _ in range(20):
        l = HomLine(rng.normal(size=3))
        try:
            sol = conic_4pts_tangent_line(*SQUARE, l)
        except TangentLineThroughBasePoint:
            continue
        assert len(sol.smooth) <= 2
        if len(sol.smooth) == 2:
            found_two += 1
        for c in sol.smooth:
            for p in SQUARE:
                assert evaluate(c, p) < 1e-10
            assert line_tangency_residual(c, l) < 1e-9
    assert found_two > 0


# --- double contact ----------------------------------------------------------


def test_double_contact_unit_circle():
    c = conic_double_contact(HomLine(1, 0, -1), HomPoint(1, 0, 1), HomLine(1, 0, 1), HomPoint(-1, 0, 1), HomPoint(0, 1, 1))
    assert conics_equal(c, UNIT_CIRCLE)


def test_double_contact_scaled():
    c = conic_double_contact(HomLine(1, 0, -1), HomPoint(1, 0, 1), HomLine(1, 0, 1), HomPoint(-1, 0, 1), HomPoint(0, 2, 1))
    assert conics_equal(c, Conic(np.diag([1, 0.25, -1])))


def test_double_contact_point_on_chord():
    with pytest.raises(InconsistentThroughPoint):
        conic_double_contact(HomLine(1, 0, -1), HomPoint(1, 0, 1), HomLine(1, 0, 1), HomPoint(-1, 0, 1), HomPoint(0.3, 0, 1))


def test_double_contact_swap_symmetry():
    rng = np.random.default_rng(23)
    for _ in range(15):
        t1 = HomPoint(rng.normal(size=3))
        t2 = HomPoint(rng.normal(size=3))
        l1 = HomLine(np.cross(t1.v, rng.normal(size=3)))
        l2 = HomLine(np.cross(t2.v, rng.normal(size=3)))
        p = HomPoint(rng.normal(size=3))
        try:
            a = conic_double_contact(l1, t1, l2, t2, p)
            b = conic_double_contact(l2, t2, l1, t1, p)
        except InconsistentThroughPoint:
            continue
        assert conics_equal(a, b, tol=1e-10)


# --- pencils and dependence ---------------------------------------------------


def test_dependent_trivial():
    ok, r = dependent(ELLIPSE_41, ELLIPSE_41, UNIT_CIRCLE)
    assert ok and r < 1e-12


def test_dependent_random_negative():
    ok, r = dependent(ELLIPSE_41, HYPERBOLA_21, UNIT_CIRCLE)
    assert not ok and r > 1e-3


def test_codependent_confocal():
    # confocal pair plus the degenerate dual conic on the absolute points
    absd = DualConic(np.diag([1.0, 1.0, 0.0]))
    ok, r = codependent(ELLIPSE_41, ELLIPSE_63, absd)
    assert ok and r < 1e-12


def test_pencil_members_share_base_points():
    member = pencil_member(ELLIPSE_41, HYPERBOLA_21, 0.37)
    for p in intersect_conics(ELLIPSE_41, HYPERBOLA_21):
        assert evaluate(member, p) < 1e-10


# --- intersections -------------------------------------------------------------


def test_intersect_conic_line_secant():
    hit = intersect_conic_line(UNIT_CIRCLE, HomLine(0, 1, 0))
    assert not hit.tangent
    for e in (HomPoint(1, 0, 1), HomPoint(-1, 0, 1)):
        assert any(proj_equal(p, e) for p in hit.points)


def test_intersect_conic_line_tangent_flag():
    hit = intersect_conic_line(UNIT_CIRCLE, HomLine(1, 0, -1))
    assert hit.tangent
    assert proj_equal(hit.points[0], HomPoint(1, 0, 1))


def test_intersect_conic_line_complex():
    hit = intersect_conic_line(UNIT_CIRCLE, HomLine(1, 0, -2))
    for e in (HomPoint(2, 1j * np.sqrt(3), 1), HomPoint(2, -1j * np.sqrt(3), 1)):
        assert any(proj_equal(p, e) for p in hit.points)


def test_intersect_conic_line_component():
    C = conic_from_line_pair(HomLine(1, 0, -1), HomLine(0, 1, 0))
    with pytest.raises(LineOnConic):
        intersect_conic_line(C, HomLine(1, 0, -1))


def test_intersect_conics_tangential_multiplicity():
    pts = intersect_conics(UNIT_CIRCLE, ELLIPSE_41)
    clusters = cluster_points(pts, tol=1e-5)
    assert sorted(m for _, m in clusters) == [2, 2]
    for p, _ in clusters:
        assert proj_equal(p, HomPoint(0, 1, 1)) or proj_equal(p, HomPoint(0, -1, 1))


def test_intersect_conics_two_circles_absolute_points():
    other = Conic([[1, 0, -1], [0, 1, -1], [-1, -1, 1]])
    pts = intersect_conics(UNIT_CIRCLE, other)
    assert any(proj_equal(p, I_PT) for p in pts)
    assert any(proj_equal(p, J_PT) for p in pts)
    reals = [p for p in pts if p.is_real(1e-7)]
    assert len(reals) == 2


def test_intersect_confocal_four_real():
    pts = intersect_conics(ELLIPSE_41, HYPERBOLA_21)
    assert len(cluster_points(pts, 1e-6)) == 4
    for p in pts:
        assert p.is_real(1e-8)
        assert evaluate(ELLIPSE_41, p) < 1e-12
        assert evaluate(HYPERBOLA_21, p) < 1e-12


def test_intersect_conics_shared_component():
    with pytest.raises(SharedComponent):
        intersect_conics(UNIT_CIRCLE, Conic(np.diag([2.0, 2.0, -2.0])))


def test_intersect_conics_pencil_recombination():
    rng = np.random.default_rng(31)
    pts = intersect_conics(ELLIPSE_41, HYPERBOLA_21)
    extra = point_on_conic(ELLIPSE_41, 0.83, seed=HomPoint(2, 0, 1))
    refit = conic_through_5(*pts[:4], extra)
    ok, r = dependent(ELLIPSE_41, HYPERBOLA_21, refit)
    assert ok, r


# --- parameterization ------------------------------------------------------------


def test_point_on_conic_seed_at_zero():
    seed = HomPoint(1, 0, 1)
    assert proj_equal(point_on_conic(UNIT_CIRCLE, 0.0, seed=seed), seed)


def test_point_on_conic_residuals():
    rng = np.random.default_rng(41)
    seed = HomPoint(1, 0, 1)
    for t in rng.normal(size=100) * 3:
        p = point_on_conic(UNIT_CIRCLE, t, seed=seed)
        assert evaluate(UNIT_CIRCLE, p) < 1e-12


# --- transform equivariance --------------------------------------------------------


@given(invertible_transforms())
@settings(max_examples=40, deadline=None)
def test_transform_equivariance_tangent(T):
    p = HomPoint(2, 1, 1)
    t_then = apply_transform(T, tangent_at(ELLIPSE_63, p))
    then_t = polar(transform_conic(T, ELLIPSE_63), apply_transform(T, p))
    assert proj_equal_residual(t_then, then_t) < 1e-8


@given(invertible_transforms())
@settings(max_examples=40, deadline=None)
def test_transform_equivariance_intersection(T):
    C1t = transform_conic(T, ELLIPSE_41)
    C2t = transform_conic(T, HYPERBOLA_21)
    direct = intersect_conics(C1t, C2t)
    moved = [apply_transform(T, p) for p in intersect_conics(ELLIPSE_41, HYPERBOLA_21)]
    for m in moved:
        assert min(proj_equal_residual(m, d) for d in direct) < 1e-8


@given(nonzero_scalars)
@settings(max_examples=30, deadline=None)
def test_conic_scale_invariance(s):
    C = Conic(np.diag([0.25, 1, -1]) * s)
    assert conics_equal(C, ELLIPSE_41, tol=1e-12)
    assert abs(evaluate(C, HomPoint(2, 1, 1)) - evaluate(ELLIPSE_41, HomPoint(2, 1, 1))) < 1e-12
