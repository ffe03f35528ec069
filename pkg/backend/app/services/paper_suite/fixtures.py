from __future__ import annotations

"""
Built-in fixtures: the worked examples with their expected values, and the
GI(A) property sweeps. Each fixture is a pure function of the tolerances.
"""
import math
from dataclasses import dataclass, field
from typing import Callable, Dict, List

import numpy as np

from app.services.densela import Tolerances, fundamental_subspaces, penrose_residuals, same_subspace
from app.services.geometry import VerdictKind, classify
from app.services.gifamily import (
    build,
    build_matrix,
    d2M,
    dM,
    random_chart,
    random_matrix_of_rank,
    recover_chart,
    third_derivative_is_zero,
    with_increment,
)
from app.services.stationarity import (
    CertificateKind,
    certify_multiplier,
    check,
    ill_posed_pair,
    orthogonal_witness,
    solve,
    solve_many,
)

from . import problems

SOLUTION_TOL = 1e-8
MULTIPLIER_TOL = 1e-10


@dataclass(frozen=True)
class FixtureResult:
    name: str
    passed: bool
    detail: str
    observed: Dict[str, float] = field(default_factory=dict)


@dataclass(frozen=True)
class Fixture:
    name: str
    run: Callable[[Tolerances], FixtureResult]


def _result(name: str, passed: bool, detail: str, **observed: float) -> FixtureResult:
    return FixtureResult(name, bool(passed), detail, {k: float(v) for k, v in observed.items()})


def _dist(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.linalg.norm(np.asarray(a) - np.asarray(b)))


# ---------- worked examples ----------


def circle_solve(tol: Tolerances) -> FixtureResult:
    p = problems.circle((3.0, 4.0))
    sol = solve(p, [1.0, 0.0], tol, max_iter=50)
    cert = certify_multiplier(p, sol.point, tol)
    err = _dist(sol.point, [0.6, 0.8])
    l_err = abs(float(cert.L[0]) + 4.0)
    ok = err < SOLUTION_TOL and cert.kind is CertificateKind.UNIQUE_REGULAR and l_err < MULTIPLIER_TOL
    return _result(
        "circle_solve",
        ok,
        f"x={np.round(sol.point, 12).tolist()} after {sol.iterations} iterations, L={float(cert.L[0]):.12g}",
        distance=err,
        multiplier=float(cert.L[0]),
        iterations=sol.iterations,
    )


def circle_antipodal(tol: Tolerances) -> FixtureResult:
    c = check(problems.circle((3.0, 4.0)), [-0.6, -0.8], tol)
    return _result(
        "circle_antipodal",
        c.is_critical,
        f"(-0.6,-0.8) critical={c.is_critical}",
        tangent_residual=c.tangent_residual,
    )


def circle_noncritical(tol: Tolerances) -> FixtureResult:
    c = check(problems.circle((3.0, 4.0)), [1.0, 0.0], tol)
    ok = not c.is_critical and c.tangent_residual > 0.1
    return _result(
        "circle_noncritical",
        ok,
        f"(1,0) tangent residual {c.tangent_residual:.6g}",
        tangent_residual=c.tangent_residual,
    )


def sphere_slice_classify(tol: Tolerances) -> FixtureResult:
    r = classify(problems.sphere_slice(), [0.6, 0.8, 0.0], tol, probes=64, radius=1e-3)
    verdict = r.generalized_regular_verdict.kind
    ok = r.on_constraint and r.rank == 2 and not r.regular and verdict is VerdictKind.CONFIRMED
    return _result(
        "sphere_slice_classify",
        ok,
        f"rank={r.rank} regular={r.regular} verdict={verdict.value}",
        rank=r.rank,
    )


def sphere_slice_solve(tol: Tolerances) -> FixtureResult:
    sol = solve(problems.sphere_slice(), [1.0, 0.0, 0.0], tol)
    err = _dist(sol.point, [0.6, 0.8, 0.0])
    return _result(
        "sphere_slice_solve",
        err < SOLUTION_TOL,
        f"x={np.round(sol.point, 12).tolist()} after {sol.iterations} iterations",
        distance=err,
        iterations=sol.iterations,
    )


def sphere_slice_rank_on_s(tol: Tolerances) -> FixtureResult:
    p = problems.sphere_slice()
    thetas = np.linspace(0.0, 2.0 * math.pi, 50, endpoint=False)
    ranks = {
        classify(p, [math.cos(t), math.sin(t), 0.0], tol, probes=0).rank for t in thetas
    }
    return _result("sphere_slice_rank_on_s", ranks == {2}, f"ranks on S: {sorted(ranks)}")


def orthogonal_witness_direction(tol: Tolerances) -> FixtureResult:
    w = orthogonal_witness(problems.sphere_slice(), [0.6, 0.8, 0.0], tol)
    expected = np.array([-2.4, -3.2, -7.0])
    expected /= np.linalg.norm(expected)
    err = min(_dist(w.e_star, expected), _dist(w.e_star, -expected))
    return _result(
        "orthogonal_witness_direction",
        err < SOLUTION_TOL,
        f"e*={np.round(w.e_star, 10).tolist()}",
        distance=err,
    )


def ellipse_consistency(tol: Tolerances) -> FixtureResult:
    """Solved points satisfy (b²−a²) sinθ cosθ + x₀ a sinθ − y₀ b cosθ = 0."""
    a, b, x0, y0 = 2.0, 1.0, 1.0, 0.5
    p = problems.ellipse(a, b, (x0, y0))
    rng = np.random.default_rng(0)
    angles = rng.uniform(0.0, 2.0 * math.pi, 8)
    radii = rng.uniform(0.5, 2.0, 8)
    starts = [[r * a * math.cos(t), r * b * math.sin(t)] for r, t in zip(radii, angles)]
    outcomes = solve_many(p, starts, tol)
    worst = 0.0
    converged = 0
    for o in outcomes:
        if o.error is not None or o.check is None:
            continue
        converged += 1
        x, y = o.check.point
        theta = math.atan2(y / b, x / a)
        r = (b * b - a * a) * math.sin(theta) * math.cos(theta)
        r += x0 * a * math.sin(theta) - y0 * b * math.cos(theta)
        worst = max(worst, abs(r))
    ok = converged > 0 and worst < SOLUTION_TOL
    return _result(
        "ellipse_consistency",
        ok,
        f"{converged}/8 starts converged, max |residual| {worst:.3e}",
        converged=converged,
        max_residual=worst,
    )


def ill_posed_worked(tol: Tolerances) -> FixtureResult:
    """x⁰ = (3,4,7): y⁺ = −7ε₂+7ε₃, β(y⁺) = 7ε₂+7ε₃, witness 14ε₃."""
    x3 = 7.0
    cert = ill_posed_pair(
        problems.sphere_slice((3.0, 4.0, x3)),
        [0.6, 0.8, 0.0],
        [0.0, -x3, x3],
        [0.0, x3, x3],
        tol,
    )
    at = cert.values_at_witness
    assert at is not None
    lv, l1v = at
    ok = abs(lv + 2.0 * x3 * x3) < SOLUTION_TOL and abs(l1v) < MULTIPLIER_TOL
    return _result(
        "ill_posed_worked",
        ok,
        f"L(v)={lv:.12g} L1(v)={l1v:.3g}",
        L_at_witness=lv,
        L1_at_witness=l1v,
    )


def _generic_gap(name: str, center: tuple[float, float, float], tol: Tolerances) -> FixtureResult:
    cert = certify_multiplier(problems.sphere_slice(center), [0.6, 0.8, 0.0], tol)
    gap = cert.gap or 0.0
    ok = cert.kind is CertificateKind.ILL_POSED and gap >= 1.0 - SOLUTION_TOL
    return _result(name, ok, f"{cert.kind.value} gap={gap:.12g}", gap=gap)


def generic_gap_x3_7(tol: Tolerances) -> FixtureResult:
    return _generic_gap("generic_gap_x3_7", (3.0, 4.0, 7.0), tol)


def generic_gap_x3_0(tol: Tolerances) -> FixtureResult:
    return _generic_gap("generic_gap_x3_0", (3.0, 4.0, 0.0), tol)


def x_squared_refuted(tol: Tolerances) -> FixtureResult:
    r = classify(problems.x_squared(), [0.0], tol, probes=64, radius=1e-3)
    kind = r.generalized_regular_verdict.kind
    return _result(
        "x_squared_refuted",
        r.rank == 0 and kind is VerdictKind.REFUTED,
        f"rank={r.rank} verdict={kind.value}",
    )


# ---------- GI(A) sweeps ----------


def gi_algebra(tol: Tolerances) -> FixtureResult:
    """Penrose 1 and 2, range/null graph formulas and the chart round trip on 100 charts."""
    rng = np.random.default_rng(2024)
    worst_penrose = worst_subspace = worst_roundtrip = 0.0
    failures = 0
    for _ in range(100):
        m, n = (int(v) for v in rng.integers(2, 9, size=2))
        rank = int(rng.integers(1, min(m, n)))
        a = random_matrix_of_rank(rng, m, n, rank)
        chart = random_chart(a, rng, tol, scale=0.5)
        gi = build(chart)
        r = penrose_residuals(a, gi.B)
        worst_penrose = max(worst_penrose, r.aba, r.bab)

        sb = fundamental_subspaces(gi.B, tol)
        if not (
            same_subspace(gi.range_basis, sb.range, 1e-8)
            and same_subspace(gi.null_basis, sb.null, 1e-8)
        ):
            failures += 1
            worst_subspace = 1.0

        back = recover_chart(a, gi.B, tol)
        worst_roundtrip = max(worst_roundtrip, float(np.linalg.norm(build_matrix(back) - gi.B)))
    ok = worst_penrose < 1e-10 and failures == 0 and worst_roundtrip < 1e-10
    return _result(
        "gi_algebra",
        ok,
        f"penrose {worst_penrose:.2e}, subspace mismatches {failures}, round trip {worst_roundtrip:.2e}",
        penrose=worst_penrose,
        subspace=worst_subspace,
        round_trip=worst_roundtrip,
    )


def gi_derivatives(tol: Tolerances) -> FixtureResult:
    """DM against central differences, D²M at two charts, vanishing third differences."""
    rng = np.random.default_rng(7)
    a = random_matrix_of_rank(rng, 5, 4, 2)
    c1 = random_chart(a, rng, tol)
    c2 = random_chart(a, rng, tol)
    da, db = rng.standard_normal(c1.alpha.shape), rng.standard_normal(c1.beta.shape)
    da1, db1 = rng.standard_normal(c1.alpha.shape), rng.standard_normal(c1.beta.shape)

    h = 1e-5
    fd = (build_matrix(with_increment(c1, da, db, h)) - build_matrix(with_increment(c1, da, db, -h))) / (2 * h)
    d1_err = float(np.max(np.abs(dM(c1, da, db) - fd)))
    d2_err = float(np.max(np.abs(d2M(da, db, da1, db1, c1) - d2M(da, db, da1, db1, c2))))
    d3_ok = third_derivative_is_zero(c1, 20, seed=11)
    ok = d1_err < 1e-8 and d2_err < 1e-10 and d3_ok
    return _result(
        "gi_derivatives",
        ok,
        f"DM vs FD {d1_err:.2e}, D2M chart spread {d2_err:.2e}, D3 vanishes={d3_ok}",
        dM_error=d1_err,
        d2M_spread=d2_err,
    )


FIXTURES: List[Fixture] = [
    Fixture("circle_solve", circle_solve),
    Fixture("circle_antipodal", circle_antipodal),
    Fixture("circle_noncritical", circle_noncritical),
    Fixture("sphere_slice_classify", sphere_slice_classify),
    Fixture("sphere_slice_solve", sphere_slice_solve),
    Fixture("sphere_slice_rank_on_s", sphere_slice_rank_on_s),
    Fixture("orthogonal_witness_direction", orthogonal_witness_direction),
    Fixture("ellipse_consistency", ellipse_consistency),
    Fixture("ill_posed_worked", ill_posed_worked),
    Fixture("generic_gap_x3_7", generic_gap_x3_7),
    Fixture("generic_gap_x3_0", generic_gap_x3_0),
    Fixture("x_squared_refuted", x_squared_refuted),
    Fixture("gi_algebra", gi_algebra),
    Fixture("gi_derivatives", gi_derivatives),
]
