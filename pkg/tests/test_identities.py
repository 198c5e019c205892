import numpy as np
import pytest
from numpy.testing import assert_allclose

from hdsine.exceptions import GeometryInputError, PreconditionError
from hdsine.geometry import abs_contents
from hdsine.sines import (build_context, det_affine_split, equal_distance_residual, face_contents,
                          hypersine_beta_choice, identity_beta, p_coefficients, polar_uniform_residual,
                          polar_values, q_coefficients, sign_flip_reduction, sine_addition_residual,
                          two_term_residual, uniform_betas)


def draw(rng, d):
    vs = rng.normal(size=(d + 1, d + 1))
    while abs(float(polar_values(vs))) < 1e-2:
        vs = rng.normal(size=(d + 1, d + 1))
    lambdas = rng.uniform(0.1, 1.0, size=d + 1)
    return vs, lambdas @ vs


@pytest.mark.parametrize("d", [1, 2, 3, 4, 5])
def test_identity_residuals(rng, d):
    for _ in range(20):
        vs, u = draw(rng, d)
        betas = rng.uniform(0.5, 2.0, size=d + 1)
        ctx = build_context(vs, u, betas)
        assert ctx.lambdas.sum() > 0
        scale = np.prod(np.linalg.norm(ctx.scaled, axis=1))
        assert det_affine_split(ctx) <= 1e-9 * scale
        p = p_coefficients(ctx)
        assert p.identity_residual <= 1e-9
        assert_allclose(p.sine_ratio, p.norm_ratio, rtol=1e-8)
        assert polar_uniform_residual(vs, u) <= 1e-9


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_hypersine_coefficients(rng, d):
    for _ in range(20):
        vs, u = draw(rng, d)
        betas = hypersine_beta_choice(vs)
        assert equal_distance_residual(vs, betas) <= 1e-8
        q = q_coefficients(build_context(vs, u, betas))
        assert q.identity_residual <= 1e-9
        assert np.all(q.values > 0)
        assert_allclose(q.distance_ratio, q.content_ratio, rtol=1e-8)
        assert_allclose(q.elevation_ratio, q.content_ratio, rtol=1e-8)


def test_q_identity_holds_for_any_scaling(rng):
    vs, u = draw(rng, 3)
    q = q_coefficients(build_context(vs, u, rng.uniform(0.5, 2.0, size=4)))
    assert q.identity_residual <= 1e-9


def test_uniform_betas_make_all_p_equal(rng):
    vs, u = draw(rng, 3)
    p = p_coefficients(build_context(vs, u, uniform_betas(vs)))
    assert_allclose(p.norm_ratio, p.norm_ratio[0], rtol=1e-12)


def test_u_outside_the_cone_is_rejected(rng):
    vs, _ = draw(rng, 2)
    with pytest.raises(PreconditionError):
        build_context(vs, -vs.sum(axis=0) + 0.1 * vs[0])


def test_u_parallel_to_a_vector_is_rejected(rng):
    vs, _ = draw(rng, 2)
    with pytest.raises(PreconditionError):
        build_context(vs, 2.0 * vs[1])


def test_context_needs_a_basis_and_positive_betas(rng):
    with pytest.raises(GeometryInputError):
        build_context(rng.normal(size=(2, 3)), rng.normal(size=3))
    vs, u = draw(rng, 2)
    with pytest.raises(GeometryInputError):
        build_context(vs, u, betas=[1.0, -1.0, 1.0])


def test_sign_flip_moves_u_into_the_cone(rng):
    vs = rng.normal(size=(4, 4))
    u = rng.normal(size=4)
    flipped = sign_flip_reduction(vs, u)
    lambdas = np.linalg.solve(flipped.T, u)
    assert np.all(lambdas >= 0)
    assert_allclose(np.abs(flipped), np.abs(vs))


def test_one_dimensional_trigonometric_identities(rng):
    alpha, beta, delta = rng.uniform(0.1, 1.4, size=(3, 100))
    assert np.all(sine_addition_residual(alpha, beta, delta) <= 1e-12)
    assert np.all(two_term_residual(alpha, beta) <= 1e-9)


def test_face_contents_and_identity_betas(rng):
    vs = rng.normal(size=(4, 4))
    faces = face_contents(vs)
    expected = [float(abs_contents(np.delete(vs, i, axis=0))) for i in range(4)]
    assert_allclose(faces, expected, rtol=1e-12)
    assert_allclose(identity_beta("hyper", vs), hypersine_beta_choice(vs), rtol=1e-12)
    assert_allclose(identity_beta("polar", vs), uniform_betas(vs), rtol=1e-12)
    with pytest.raises(GeometryInputError):
        identity_beta("cosine", vs)
