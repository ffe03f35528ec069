import math

import numpy as np
import pytest

from app.core.errors import (
    InvalidDirection,
    MaxIterExceeded,
    NotAGeneralizedInverse,
    NotCritical,
    ZeroGradient,
)
from app.services.densela import Tolerances, mp_inverse
from app.services.geometry import Problem, jacobian, tangent_basis
from app.services.gifamily import build_matrix, origin_chart, random_chart
from app.services.paper_suite import problems
from app.services.stationarity import (
    CertificateKind,
    MultiplierCertificate,
    StationarityCheck,
    certify_multiplier,
    check,
    ill_posed_pair,
    multiplier,
    orthogonal_witness,
    solve,
    solve_many,
    tangent_components,
    tangent_residual_with,
)

CRIT = [0.6, 0.8, 0.0]


# ---------- check ----------


@pytest.mark.unit
def test_circle_critical_points(circle, tol):
    c = check(circle, [0.6, 0.8], tol)
    assert c.is_critical
    assert c.constraint_residual < 1e-12 and c.tangent_residual < 1e-12
    assert check(circle, [-0.6, -0.8], tol).is_critical


@pytest.mark.unit
def test_circle_non_critical_point(circle, tol):
    c = check(circle, [1.0, 0.0], tol)
    assert not c.is_critical
    assert c.tangent_residual > 0.1
    assert c.constraint_residual == 0.0


@pytest.mark.unit
def test_check_record_must_be_consistent():
    with pytest.raises(ValueError):
        StationarityCheck(np.zeros(1), 1.0, 0.0, True, 1e-8)


@pytest.mark.unit
def test_criticality_decision_is_the_same_for_every_generalized_inverse(sphere_slice, tol, rng):
    # exactly critical, and at least 10x the tolerance away from critical
    points = [CRIT, [0.8, 0.6, 0.0], [1.0, 0.0, 0.0]]
    for _ in range(50):
        t = rng.uniform(0.0, 2.0 * math.pi)
        points.append([math.cos(t), math.sin(t), 0.0])
    for x in points[:50]:
        jac = jacobian(sphere_slice, x)
        decided = check(sphere_slice, x, tol)
        if not decided.is_critical and decided.tangent_residual < 10 * tol.residual_abs:
            continue
        for _ in range(20):
            b = build_matrix(random_chart(jac, rng))
            r = tangent_residual_with(sphere_slice, x, b)
            assert (r < tol.residual_abs) == decided.is_critical


@pytest.mark.unit
def test_inclusion_and_projected_gradient_agree(sphere_slice, tol):
    for x, expected in ((CRIT, True), ([0.8, 0.6, 0.0], False)):
        comps = tangent_components(sphere_slice, x, tol)
        fp_norm = np.linalg.norm(sphere_slice.objective_gradient(x))
        inclusion = bool(np.all(np.abs(comps) < tol.residual_abs * max(1.0, fp_norm)))
        assert inclusion == check(sphere_slice, x, tol).is_critical == expected


# ---------- multipliers ----------


@pytest.mark.unit
def test_circle_multiplier_is_minus_four(circle, tol):
    x = [0.6, 0.8]
    L = multiplier(circle, x, mp_inverse(jacobian(circle, x)), tol)
    np.testing.assert_allclose(L, [-4.0], atol=1e-10)


@pytest.mark.unit
def test_multiplier_rejects_non_members(circle, tol):
    with pytest.raises(NotAGeneralizedInverse):
        multiplier(circle, [0.6, 0.8], [[1.0], [1.0]], tol)


@pytest.mark.unit
def test_zero_gradient_gives_zero_multiplier(tol):
    p = Problem.from_sources(n=2, f="x1^2 + x2^2", g=["x1 + x2"], y0=[0.0])
    x = [0.0, 0.0]
    np.testing.assert_array_equal(multiplier(p, x, mp_inverse(jacobian(p, x)), tol), [0.0])


def _full_rank_problem(rng):
    """Random quadratic objective on a random affine-plus-quadratic constraint, at a critical point."""
    n, m = 4, 2
    x_star = rng.standard_normal(n)
    a = rng.standard_normal((m, n))
    lam = rng.standard_normal(m)
    g = [
        " + ".join(f"({float(a[i, j])!r})*x{j + 1}" for j in range(n))
        + f" + 0.5*(x1 - ({float(x_star[0])!r}))^2"
        for i in range(m)
    ]
    y0 = a @ x_star
    # f = ½‖x − c‖² with c chosen so that ∇f(x*) = λᵀ g′(x*)
    c = x_star - lam @ a
    f = " + ".join(f"0.5*(x{j + 1} - ({float(c[j])!r}))^2" for j in range(n))
    return Problem.from_sources(n=n, f=f, g=g, y0=y0), x_star


@pytest.mark.unit
def test_multiplier_is_unique_at_regular_points(tol, rng):
    for _ in range(20):
        p, x = _full_rank_problem(rng)
        assert check(p, x, tol).is_critical
        jac = jacobian(p, x)
        values = np.array(
            [multiplier(p, x, build_matrix(random_chart(jac, rng)), tol) for _ in range(20)]
        )
        assert np.max(values.max(axis=0) - values.min(axis=0)) < 1e-10


@pytest.mark.unit
def test_certify_regular_point(circle, tol):
    cert = certify_multiplier(circle, [0.6, 0.8], tol)
    assert cert.kind is CertificateKind.UNIQUE_REGULAR
    np.testing.assert_allclose(cert.L, [-4.0], atol=1e-10)
    assert cert.L1 is None and cert.witness is None


@pytest.mark.unit
def test_worked_ill_posed_pair(sphere_slice, tol):
    cert = ill_posed_pair(sphere_slice, CRIT, [0.0, -7.0, 7.0], [0.0, 7.0, 7.0], tol)
    assert cert.kind is CertificateKind.ILL_POSED
    np.testing.assert_allclose(cert.witness, [0.0, 0.0, 14.0], atol=1e-12)
    lv, l1v = cert.values_at_witness
    assert abs(lv + 98.0) < 1e-8
    assert abs(l1v) < 1e-10
    np.testing.assert_allclose(cert.L, [-4.0, -7.0, -7.0], atol=1e-10)
    # both are multipliers: f'(x) = L g'(x) on the whole domain
    jac = jacobian(sphere_slice, CRIT)
    fp = sphere_slice.objective_gradient(CRIT)
    np.testing.assert_allclose(cert.L @ jac, fp, atol=1e-10)
    np.testing.assert_allclose(cert.L1 @ jac, fp, atol=1e-10)


@pytest.mark.unit
def test_ill_posed_pair_rejects_bad_directions(sphere_slice, circle, tol):
    with pytest.raises(InvalidDirection):
        ill_posed_pair(sphere_slice, CRIT, [1.0, 0.0, 0.0], [0.0, 7.0, 7.0], tol)
    with pytest.raises(InvalidDirection):
        ill_posed_pair(sphere_slice, CRIT, [0.0, -7.0, 7.0], [0.0, 0.0, 1.0], tol)
    with pytest.raises(InvalidDirection):
        ill_posed_pair(circle, [0.6, 0.8], [1.0], [1.0], tol)


@pytest.mark.parametrize("x3", [7.0, 0.0])
@pytest.mark.unit
def test_generic_certificate_gap_is_one(x3, tol):
    p = problems.sphere_slice((3.0, 4.0, x3))
    cert = certify_multiplier(p, CRIT, tol)
    assert cert.kind is CertificateKind.ILL_POSED
    assert cert.gap >= 1.0 - 1e-8
    assert cert.gap == pytest.approx(1.0, abs=1e-8)


@pytest.mark.unit
def test_generic_gap_on_random_rank_deficient_problems(tol, rng):
    # g = (x1²+x2²+x3², x3, x3) rotated in the codomain keeps rank 2 < 3 on S
    for _ in range(10):
        q, _ = np.linalg.qr(rng.standard_normal((3, 3)))
        rows = ["x1^2+x2^2+x3^2", "x3", "x3"]
        g = [" + ".join(f"({float(q[i, k])!r})*({rows[k]})" for k in range(3)) for i in range(3)]
        y0 = q @ np.array([1.0, 0.0, 0.0])
        c = rng.uniform(1.0, 3.0, 3)
        f = " + ".join(f"(x{j + 1} - ({float(c[j])!r}))^2" for j in range(3))
        p = Problem.from_sources(n=3, f=f, g=g, y0=y0)
        r0 = math.hypot(c[0], c[1])
        x = [c[0] / r0, c[1] / r0, 0.0]
        cert = certify_multiplier(p, x, tol)
        assert cert.gap >= 1.0 - 1e-8


@pytest.mark.unit
def test_certify_requires_a_critical_point(circle, tol):
    with pytest.raises(NotCritical):
        certify_multiplier(circle, [1.0, 0.0], tol)


@pytest.mark.unit
def test_certify_with_zero_gradient_on_non_regular_constraint(tol):
    p = problems.sphere_slice((0.6, 0.8, 0.0))
    with pytest.raises(ZeroGradient):
        certify_multiplier(p, CRIT, tol)


@pytest.mark.unit
def test_certificate_invariants():
    with pytest.raises(ValueError):
        MultiplierCertificate(kind=CertificateKind.ILL_POSED, L=np.zeros(2))
    with pytest.raises(ValueError):
        MultiplierCertificate(kind=CertificateKind.UNIQUE_REGULAR, L=np.zeros(2), L1=np.zeros(2))


# ---------- orthogonal witness ----------


@pytest.mark.unit
def test_orthogonal_witness_on_sphere_slice(sphere_slice, tol):
    w = orthogonal_witness(sphere_slice, CRIT, tol)
    expected = np.array([-2.4, -3.2, -7.0]) / np.linalg.norm([-2.4, -3.2, -7.0])
    np.testing.assert_allclose(w.e_star, expected, atol=1e-12)
    assert abs(np.linalg.norm(w.e_star) - 1.0) < 1e-12
    assert w.tangent_overlap < tol.residual_abs
    for v in tangent_basis(sphere_slice, CRIT, tol).vectors.T:
        assert abs(w.e_star @ v) < tol.residual_abs


@pytest.mark.unit
def test_orthogonal_witness_on_circle_is_radial(circle, tol):
    w = orthogonal_witness(circle, [0.6, 0.8], tol)
    assert abs(abs(w.e_star @ np.array([0.6, 0.8])) - 1.0) < 1e-12


@pytest.mark.unit
def test_orthogonal_witness_errors(circle, tol):
    p = Problem.from_sources(n=2, f="(x1-0.6)^2 + (x2-0.8)^2", g=["x1^2+x2^2"], y0=[1.0])
    with pytest.raises(ZeroGradient):
        orthogonal_witness(p, [0.6, 0.8], tol)
    with pytest.raises(NotCritical):
        orthogonal_witness(circle, [1.0, 0.0], tol)


# ---------- solve ----------


@pytest.mark.unit
def test_solve_circle_from_one_zero(circle, tol):
    c = solve(circle, [1.0, 0.0], tol, max_iter=50)
    assert c.is_critical
    np.testing.assert_allclose(c.point, [0.6, 0.8], atol=1e-8)
    assert 1 <= c.iterations <= 20


@pytest.mark.unit
def test_solve_sphere_slice(sphere_slice, tol):
    c = solve(sphere_slice, [1.0, 0.0, 0.0], tol)
    np.testing.assert_allclose(c.point, CRIT, atol=1e-8)
    assert c.iterations <= 20


@pytest.mark.unit
def test_solve_converges_quadratically_near_the_solution(circle, tol):
    # the constraint curvature term makes the step a Newton step: once close,
    # a handful of iterations reach the polishing threshold
    c = solve(circle, [0.61, 0.79], tol, max_iter=8)
    np.testing.assert_allclose(c.point, [0.6, 0.8], atol=1e-10)
    assert c.constraint_residual <= 1e-3 * tol.residual_abs
    assert c.tangent_residual <= 1e-3 * tol.residual_abs


@pytest.mark.unit
def test_solve_next_to_a_domain_boundary(tol):
    # log(x1) has no gradient left of 0; the curvature uses one-sided differences there
    p = Problem.from_sources(n=1, f="log(x1)", g=["x1"], y0=[5e-6])
    c = solve(p, [3e-6], tol)
    assert c.is_critical
    assert c.point[0] == pytest.approx(5e-6, abs=1e-12)


@pytest.mark.unit
def test_solve_at_a_critical_start_takes_no_steps(circle, tol):
    c = solve(circle, [0.6, 0.8], tol)
    assert c.is_critical


@pytest.mark.unit
def test_solve_unreachable_tolerance_raises_with_last_iterate(circle):
    with pytest.raises(MaxIterExceeded) as info:
        solve(circle, [1.0, 0.0], Tolerances(residual_abs=1e-30), max_iter=30)
    last = info.value.last
    assert not last.is_critical
    assert last.constraint_residual < 1e-6
    assert info.value.exit_code == 4


@pytest.mark.unit
def test_solve_requires_an_iteration(circle, tol):
    with pytest.raises(ValueError):
        solve(circle, [1.0, 0.0], tol, max_iter=0)


def _ellipse_residual(x, y, a=2.0, b=1.0, x0=1.0, y0=0.5):
    t = math.atan2(y / b, x / a)
    return (b * b - a * a) * math.sin(t) * math.cos(t) + x0 * a * math.sin(t) - y0 * b * math.cos(t)


@pytest.mark.unit
def test_ellipse_points_satisfy_the_angle_equation(tol, rng):
    p = problems.ellipse(2.0, 1.0, (1.0, 0.5))
    t = rng.uniform(0.0, 2.0 * math.pi, 8)
    starts = [[2.0 * math.cos(s), math.sin(s)] for s in t]
    outcomes = solve_many(p, starts, tol, workers=4)
    assert len(outcomes) == 8
    converged = [o.check for o in outcomes if o.error is None]
    assert converged
    for c in converged:
        assert c.is_critical and c.constraint_residual < tol.residual_abs
        assert abs(_ellipse_residual(*c.point)) < 1e-8


@pytest.mark.unit
def test_solve_many_keeps_start_order(circle, tol):
    starts = [[1.0, 0.0], [0.0, 1.0], [-1.0, 0.1]]
    outcomes = solve_many(circle, starts, tol, workers=3)
    for s, o in zip(starts, outcomes):
        np.testing.assert_array_equal(o.start, s)
    serial = solve_many(circle, starts, tol)
    for a, b in zip(outcomes, serial):
        np.testing.assert_array_equal(a.check.point, b.check.point)


@pytest.mark.unit
def test_origin_chart_is_used_for_the_mp_multiplier(sphere_slice, tol):
    cert = certify_multiplier(sphere_slice, CRIT, tol)
    base = origin_chart(jacobian(sphere_slice, CRIT), tol)
    np.testing.assert_allclose(cert.L, sphere_slice.objective_gradient(CRIT) @ base.base_inverse)
