import numpy as np
import pytest
from hypothesis import given, seed, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays
from numpy.testing import assert_allclose

from hdsine.exceptions import GeometryInputError, PreconditionError
from hdsine.geometry import (abs_contents, affine_det_identity_check, content, content_product_form,
                             gram_matrix)

from .conftest import random_rotation


def test_gram_matrix_is_the_inner_product_table(rng):
    vs = rng.normal(size=(3, 5))
    G = gram_matrix(vs)
    assert_allclose(G, G.T)
    assert_allclose(G, vs @ vs.T)


def test_content_of_unit_square_in_r3():
    result = content([[1.0, 0.0, 0.0], [1.0, 1.0, 0.0]])
    assert result.value == pytest.approx(1.0)
    assert result.k == 2
    assert not result.signed


def test_full_dimensional_content_is_signed():
    assert content([[1.0, 0.0], [0.0, 1.0]]).value == pytest.approx(1.0)
    assert content([[0.0, 1.0], [1.0, 0.0]]).value == pytest.approx(-1.0)
    assert content([[0.0, 1.0], [1.0, 0.0]]).signed


def test_signed_basis_multiplies_by_its_orientation(rng):
    vs = rng.normal(size=(3, 3))
    phi = random_rotation(rng, 3)
    expected = np.linalg.det(vs) * np.linalg.det(phi)
    assert content(vs, signed_basis=phi).value == pytest.approx(expected, rel=1e-12)


def test_signed_basis_must_be_orthonormal(rng):
    with pytest.raises(GeometryInputError):
        content(rng.normal(size=(2, 2)), signed_basis=[[2.0, 0.0], [0.0, 1.0]])


def test_too_many_vectors_raise():
    with pytest.raises(GeometryInputError):
        content(np.eye(3)[:, :2])


def test_non_finite_coordinates_raise():
    with pytest.raises(GeometryInputError):
        content([[1.0, np.nan, 0.0]])


def test_dependent_vectors_have_zero_content():
    assert content([[1.0, 2.0, 3.0], [2.0, 4.0, 6.0]]).value == pytest.approx(0.0, abs=1e-14)


@seed(1)
@settings(max_examples=50, deadline=None)
@given(vs=arrays(np.float64, (3, 5), elements=st.floats(min_value=-10, max_value=10)))
def test_qr_content_matches_gram_determinant(vs):
    gram = np.linalg.det(vs @ vs.T)
    expected = np.sqrt(max(gram, 0.0))
    assert_allclose(abs_contents(vs), expected, rtol=1e-6, atol=1e-6 * max(1.0, np.abs(vs).max()) ** 3)


def test_batched_contents_match_single_calls(rng):
    batch = rng.normal(size=(4, 2, 3))
    expected = [content(v).value for v in batch]
    assert_allclose(abs_contents(batch), expected, rtol=1e-12)


def test_affine_det_identity_holds_inside_the_affine_hull(rng):
    for _ in range(20):
        vs = rng.normal(size=(4, 4))
        weights = rng.normal(size=4)
        weights /= weights.sum()
        u = weights @ vs
        scale = np.prod(np.linalg.norm(vs, axis=1)) * max(1.0, np.abs(weights).sum()) ** 4
        assert affine_det_identity_check(vs, u) <= 1e-9 * scale


def test_affine_det_identity_rejects_points_off_the_hull(rng):
    vs = rng.normal(size=(3, 3))
    with pytest.raises(PreconditionError):
        affine_det_identity_check(vs, 3 * vs.sum(axis=0))


def test_content_product_form(rng):
    for k in range(2, 5):
        vs = rng.normal(size=(k, 6))
        assert content_product_form(vs) == pytest.approx(float(abs_contents(vs)), rel=1e-9)


def test_gram_matrix_of_a_repeated_vector():
    v = np.array([1.0, -2.0, 2.0])
    G = gram_matrix([v, v])
    assert_allclose(G, np.full((2, 2), 9.0))
    assert np.linalg.matrix_rank(G) == 1


def test_contents_are_invariant_under_householder_reflections(rng):
    for _ in range(100):
        k = int(rng.integers(1, 6))
        vs = rng.normal(size=(k, 6))
        h = rng.normal(size=6)
        H = np.eye(6) - 2.0 * np.outer(h, h) / (h @ h)
        assert_allclose(abs_contents(vs @ H), abs_contents(vs), rtol=1e-9)


def test_contents_scale_with_per_vector_dilations(rng):
    for _ in range(100):
        k = int(rng.integers(1, 6))
        vs = rng.normal(size=(k, 5))
        betas = rng.uniform(0.1, 5.0, size=k) * rng.choice([-1.0, 1.0], size=k)
        scaled = betas[:, None] * vs
        assert_allclose(abs_contents(scaled), np.prod(np.abs(betas)) * abs_contents(vs), rtol=1e-9)
