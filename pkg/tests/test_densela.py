import numpy as np
import pytest

from app.core.errors import DegenerateSplit, NonFiniteInput
from app.services.densela import (
    SubspaceBasis,
    Tolerances,
    as_mat,
    fundamental_subspaces,
    is_generalized_inverse,
    mp_inverse,
    numerical_rank,
    oblique_projector,
    orthonormalize,
    penrose_residuals,
    same_subspace,
)
from app.services.gifamily import random_matrix_of_rank

from .conftest import SPHERE_SLICE_JACOBIAN

pytestmark = pytest.mark.unit


def _span(*vectors):
    return orthonormalize(np.column_stack(vectors))


def test_rank_of_identity_zero_and_sphere_slice_jacobian():
    assert numerical_rank(np.eye(3)) == 3
    assert numerical_rank(np.zeros((2, 2))) == 0
    assert numerical_rank(SPHERE_SLICE_JACOBIAN) == 2


def test_rank_is_scale_invariant():
    a = SPHERE_SLICE_JACOBIAN
    assert numerical_rank(1e-9 * a) == numerical_rank(1e9 * a) == 2


def test_rank_equals_rank_of_transpose(rng):
    for _ in range(30):
        m, n = rng.integers(1, 9, size=2)
        r = int(rng.integers(0, min(m, n) + 1))
        a = random_matrix_of_rank(rng, int(m), int(n), r)
        assert numerical_rank(a) == numerical_rank(a.T) == r


def test_tolerances_must_be_positive():
    with pytest.raises(ValueError):
        Tolerances(rank_rel=0.0)
    with pytest.raises(ValueError):
        Tolerances(residual_abs=-1.0)
    assert Tolerances().with_overrides(residual_abs=1e-6, ortho=None).residual_abs == 1e-6


def test_non_finite_input_rejected():
    with pytest.raises(NonFiniteInput):
        as_mat([[1.0, np.nan]])


def test_subspaces_of_diagonal_projector():
    s = fundamental_subspaces(np.array([[1.0, 0.0], [0.0, 0.0]]))
    np.testing.assert_allclose(s.null.vectors, [[0.0], [1.0]], atol=1e-15)
    np.testing.assert_allclose(s.range.vectors, [[1.0], [0.0]], atol=1e-15)
    np.testing.assert_allclose(s.null_complement.vectors, [[1.0], [0.0]], atol=1e-15)
    np.testing.assert_allclose(s.range_complement.vectors, [[0.0], [1.0]], atol=1e-15)
    assert s.rank == 1


def test_subspaces_of_sphere_slice_jacobian():
    s = fundamental_subspaces(SPHERE_SLICE_JACOBIAN)
    r2 = 1.0 / np.sqrt(2.0)
    assert same_subspace(s.null, _span([-0.8, 0.6, 0.0]), 1e-12)
    assert same_subspace(s.range, _span([1.0, 0.0, 0.0], [0.0, r2, r2]), 1e-12)
    assert same_subspace(s.range_complement, _span([0.0, -r2, r2]), 1e-12)


def test_subspaces_of_zero_matrix():
    s = fundamental_subspaces(np.zeros((2, 3)))
    assert s.null.dim == 3 and s.range.dim == 0
    assert s.null_complement.dim == 0 and s.range_complement.dim == 2


def test_basis_signs_are_canonical():
    s = fundamental_subspaces(SPHERE_SLICE_JACOBIAN)
    for basis in s[:4]:
        v = basis.vectors
        if v.shape[1]:
            idx = np.argmax(np.abs(v), axis=0)
            assert np.all(v[idx, np.arange(v.shape[1])] > 0)


def test_bases_are_orthonormal(rng):
    a = random_matrix_of_rank(rng, 6, 5, 3)
    for basis in fundamental_subspaces(a)[:4]:
        assert basis.orthonormality_error() < 1e-12


def test_basis_is_read_only():
    b = SubspaceBasis(2, np.eye(2))
    with pytest.raises(ValueError):
        b.vectors[0, 0] = 5.0


@pytest.mark.parametrize(
    "a, expected",
    [
        (np.eye(3), np.eye(3)),
        (np.array([[1.0, 0.0], [0.0, 0.0]]), np.array([[1.0, 0.0], [0.0, 0.0]])),
        (np.array([[1.2, 1.6]]), np.array([[0.3], [0.4]])),
        (np.zeros((2, 3)), np.zeros((3, 2))),
    ],
)
def test_mp_inverse_examples(a, expected):
    np.testing.assert_allclose(mp_inverse(a), expected, atol=1e-14)


def test_mp_inverse_penrose_conditions(rng):
    for _ in range(50):
        m, n = (int(v) for v in rng.integers(1, 9, size=2))
        r = int(rng.integers(0, min(m, n) + 1))
        a = random_matrix_of_rank(rng, m, n, r)
        res = penrose_residuals(a, mp_inverse(a))
        assert max(res) < 1e-8
        assert is_generalized_inverse(a, mp_inverse(a))


def test_oblique_projector_examples():
    e1 = _span([1.0, 0.0])
    np.testing.assert_allclose(oblique_projector(e1, _span([0.0, 1.0])), [[1, 0], [0, 0]], atol=1e-14)
    np.testing.assert_allclose(oblique_projector(e1, _span([1.0, 1.0])), [[1, -1], [0, 0]], atol=1e-14)


def test_oblique_projectors_sum_to_identity(rng):
    u = _span(*rng.standard_normal((2, 4)))
    v = _span(*rng.standard_normal((2, 4)))
    p = oblique_projector(u, v)
    q = oblique_projector(v, u)
    np.testing.assert_allclose(p + q, np.eye(4), atol=1e-10)
    np.testing.assert_allclose(p @ p, p, atol=1e-10)
    np.testing.assert_allclose(p @ u.vectors, u.vectors, atol=1e-10)
    np.testing.assert_allclose(p @ v.vectors, 0.0, atol=1e-10)


def test_projector_onto_range_along_complement_is_a_a_plus(rng):
    for _ in range(10):
        a = random_matrix_of_rank(rng, 4, 3, 2)
        s = fundamental_subspaces(a)
        np.testing.assert_allclose(
            oblique_projector(s.range, s.range_complement), a @ mp_inverse(a), atol=1e-8
        )


def test_degenerate_splits_rejected():
    e1 = _span([1.0, 0.0, 0.0])
    with pytest.raises(DegenerateSplit):
        oblique_projector(e1, _span([0.0, 1.0, 0.0]))  # does not span
    with pytest.raises(DegenerateSplit):
        oblique_projector(_span([1.0, 0.0]), _span([2.0, 0.0]))  # overlaps
    with pytest.raises(DegenerateSplit):
        oblique_projector(e1, _span([0.0, 1.0]))  # ambient mismatch
