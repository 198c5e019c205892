import itertools

import numpy as np
import pytest
from numpy.testing import assert_allclose

from hdsine.exceptions import GeometryInputError, PreconditionError
from hdsine.sines import (PointConfig, hyper_values, hypersine, hypersine_product_form,
                          law_of_sines_ratio, polar_sine, polar_sine_product_form, polar_values,
                          sine, substituted)

from .conftest import random_rotation


def test_polar_sine_of_a_planar_angle():
    cfg = PointConfig.at_origin([[1.0, 0.0], [1.0, 1.0]])
    value = polar_sine(cfg)
    assert value.signed
    assert value.value == pytest.approx(np.sqrt(0.5))
    swapped = PointConfig.at_origin([[1.0, 1.0], [1.0, 0.0]])
    assert polar_sine(swapped).value == pytest.approx(-np.sqrt(0.5))


def test_sines_are_unsigned_in_larger_ambient_space():
    cfg = PointConfig.at_origin([[1.0, 0.0, 0.0], [1.0, 1.0, 0.0]])
    assert not polar_sine(cfg).signed
    with pytest.raises(GeometryInputError):
        polar_sine(cfg, signed=True)


def test_one_dimensional_hypersine_is_the_polar_sine(rng):
    for _ in range(10):
        cfg = PointConfig(w=rng.normal(size=3), vs=rng.normal(size=(2, 3)))
        assert hypersine(cfg).value == pytest.approx(polar_sine(cfg).value, rel=1e-12)


def test_orthonormal_frame_has_unit_sines(rng):
    q = random_rotation(rng, 4)
    cfg = PointConfig(w=np.ones(4), vs=np.ones(4) + q)
    assert abs(polar_sine(cfg).value) == pytest.approx(1.0)
    assert abs(hypersine(cfg).value) == pytest.approx(1.0)


def test_sines_are_bounded_and_vanish_on_dependent_vectors(rng):
    vs = rng.normal(size=(500, 3, 5))
    for kind_values in (polar_values(vs), hyper_values(vs)):
        assert np.all(np.abs(kind_values) <= 1.0)
    a, b = rng.normal(size=(2, 4))
    cfg = PointConfig.at_origin([a, b, a + b])
    assert polar_sine(cfg).value == pytest.approx(0.0, abs=1e-12)
    assert hypersine(cfg).value == pytest.approx(0.0, abs=1e-12)


def test_coincident_vertex_gives_zero():
    cfg = PointConfig(w=np.zeros(3), vs=[[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]])
    assert polar_sine(cfg).value == 0.0
    assert hypersine(cfg).value == 0.0


def test_invalid_configurations():
    with pytest.raises(GeometryInputError):
        PointConfig.at_origin([[1.0, 0.0]])
    with pytest.raises(GeometryInputError):
        PointConfig.at_origin(np.eye(3)[:, :2])


@pytest.mark.parametrize("kind", ["polar", "hyper"])
def test_orthogonal_and_dilation_invariance(rng, kind):
    for _ in range(200):
        d = int(rng.integers(1, 5))
        n = d + 1 + int(rng.integers(0, 3))
        cfg = PointConfig(w=rng.normal(size=n), vs=rng.normal(size=(d + 1, n)))
        q = random_rotation(rng, n)
        c = rng.uniform(0.1, 10.0) * rng.choice([-1.0, 1.0])
        moved = PointConfig(w=c * cfg.w @ q.T, vs=c * cfg.vs @ q.T)
        base = abs(sine(kind, cfg).value)
        assert abs(sine(kind, moved).value) == pytest.approx(base, abs=1e-9)


@pytest.mark.parametrize("kind", ["polar", "hyper"])
def test_signed_sine_is_invariant_under_positive_dilations(rng, kind):
    for _ in range(50):
        cfg = PointConfig(w=rng.normal(size=3), vs=rng.normal(size=(3, 3)))
        c = rng.uniform(0.1, 10.0)
        scaled = PointConfig(w=c * cfg.w, vs=c * cfg.vs)
        assert sine(kind, scaled).value == pytest.approx(sine(kind, cfg).value, abs=1e-9)


@pytest.mark.parametrize("kind", ["polar", "hyper"])
def test_absolute_sine_is_symmetric(rng, kind):
    cfg = PointConfig(w=rng.normal(size=5), vs=rng.normal(size=(4, 5)))
    base = abs(sine(kind, cfg).value)
    for perm in itertools.permutations(range(4)):
        permuted = PointConfig(w=cfg.w, vs=cfg.vs[list(perm)])
        assert abs(sine(kind, permuted).value) == pytest.approx(base, abs=1e-10)


def test_polar_product_form(rng):
    for d in (2, 3, 4):
        for _ in range(50):
            cfg = PointConfig(w=rng.normal(size=d + 2), vs=rng.normal(size=(d + 1, d + 2)))
            assert polar_sine_product_form(cfg) == pytest.approx(abs(polar_sine(cfg).value), abs=1e-9)


def test_hypersine_product_form(rng):
    for d in (2, 3, 4):
        for _ in range(50):
            cfg = PointConfig(w=rng.normal(size=d + 1), vs=rng.normal(size=(d + 1, d + 1)))
            assert hypersine_product_form(cfg) == pytest.approx(abs(hypersine(cfg).value), abs=1e-9)


def test_product_forms_need_d_at_least_two(rng):
    cfg = PointConfig.at_origin(rng.normal(size=(2, 3)))
    with pytest.raises(GeometryInputError):
        polar_sine_product_form(cfg)
    a, b = rng.normal(size=(2, 4))
    with pytest.raises(PreconditionError):
        hypersine_product_form(PointConfig.at_origin([a, b, a - b]))


def test_law_of_sines_ratio_is_apex_invariant(rng):
    for d in (2, 3):
        cfg = PointConfig(w=rng.normal(size=d + 2), vs=rng.normal(size=(d + 1, d + 2)))
        base = law_of_sines_ratio(cfg)
        for perm in itertools.permutations(range(d + 2)):
            assert law_of_sines_ratio(cfg, perm) == pytest.approx(base, rel=1e-9)


def test_law_of_sines_for_a_triangle():
    # 3-4-5 直角三角形: sin A / a = 1 / 5
    cfg = PointConfig(w=np.zeros(2), vs=[[3.0, 0.0], [0.0, 4.0]])
    assert law_of_sines_ratio(cfg, [1, 0, 2]) == pytest.approx(0.2)
    with pytest.raises(GeometryInputError):
        law_of_sines_ratio(cfg, [0, 0, 1])


def test_substituted_places_u_on_the_diagonal(rng):
    vs = rng.normal(size=(3, 4))
    u = rng.normal(size=4)
    out = substituted(vs, u)
    for i in range(3):
        assert_allclose(out[i, i], u)
        assert_allclose(np.delete(out[i], i, axis=0), np.delete(vs, i, axis=0))


@pytest.mark.parametrize("kind", ["polar", "hyper"])
def test_absolute_sine_ignores_per_vector_scalings(rng, kind):
    for _ in range(100):
        d = int(rng.integers(1, 5))
        cfg = PointConfig(w=rng.normal(size=d + 2), vs=rng.normal(size=(d + 1, d + 2)))
        betas = rng.uniform(0.1, 10.0, size=d + 1) * rng.choice([-1.0, 1.0], size=d + 1)
        scaled = PointConfig(w=cfg.w, vs=cfg.w + betas[:, None] * cfg.shifted)
        assert abs(sine(kind, scaled).value) == pytest.approx(abs(sine(kind, cfg).value), abs=1e-9)


def test_two_dimensional_sines_match_cross_products(rng):
    for _ in range(100):
        a, b, c = vs = rng.normal(size=(3, 3))
        det = abs(np.linalg.det(vs))
        norms = np.linalg.norm(vs, axis=1).prod()
        assert float(polar_values(vs)) == pytest.approx(det / norms, rel=1e-9)
        faces = np.linalg.norm(np.cross(a, b)) * np.linalg.norm(np.cross(b, c)) * np.linalg.norm(np.cross(a, c))
        assert float(hyper_values(vs)) ** 2 == pytest.approx(det ** 2 / faces, rel=1e-9)


@pytest.mark.parametrize("kind", ["polar", "hyper"])
def test_unit_sine_only_for_orthogonal_vectors(rng, kind):
    q = random_rotation(rng, 4)[:3] * rng.uniform(0.5, 2.0, size=(3, 1))
    assert abs(sine(kind, PointConfig.at_origin(q)).value) == pytest.approx(1.0, abs=1e-12)
    tilted = q.copy()
    tilted[0] += 1e-2 * q[1]
    assert abs(sine(kind, PointConfig.at_origin(tilted)).value) < 1.0 - 1e-8
    for _ in range(100):
        vs = rng.normal(size=(3, 4))
        assert abs(sine(kind, PointConfig.at_origin(vs)).value) < 1.0 - 1e-8
