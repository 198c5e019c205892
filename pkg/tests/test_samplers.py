import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from hdsine.exceptions import GeometryInputError
from hdsine.samplers import (CantorProductSampler, PlaneSampler, cantor_cdf, cantor_quantile,
                             cantor_ratio, estimate_regularity, in_cantor_set, unit_ball_volume)


def test_unit_ball_volumes():
    assert unit_ball_volume(1) == pytest.approx(2.0)
    assert unit_ball_volume(2) == pytest.approx(math.pi)
    assert unit_ball_volume(3) == pytest.approx(4 * math.pi / 3)


def test_plane_samples_stay_on_the_plane_and_in_the_ball(rng):
    sampler = PlaneSampler(dim=2, ambient_dim=4, rotation_seed=3)
    x = sampler.support_point(rng)
    points = sampler.draw(x, 0.5, 1000, rng)
    assert points.shape == (1000, 4)
    assert np.all(sampler.on_support(points))
    assert np.all(np.linalg.norm(points - x, axis=1) <= 0.5)


def test_plane_ball_mass_is_exact():
    sampler = PlaneSampler(dim=2, ambient_dim=3)
    mass, stderr = sampler.ball_mass(np.zeros(3), 0.3)
    assert mass == pytest.approx(math.pi * 0.09)
    assert stderr == 0.0
    assert sampler.c_mu == pytest.approx(math.pi)


def test_plane_regularity_self_test(rng):
    constant, ratios = estimate_regularity(PlaneSampler(dim=2, ambient_dim=2), rng, points=3)
    assert_allclose(ratios, math.pi)
    assert constant == pytest.approx(math.pi)


def test_box_estimate_of_ball_mass(rng):
    sampler = PlaneSampler(dim=3, ambient_dim=3)
    exact, _ = sampler.ball_mass(np.zeros(3), 1.0)
    estimate, stderr = super(PlaneSampler, sampler).ball_mass(np.zeros(3), 1.0, rng=rng, samples=40000)
    assert abs(estimate - exact) <= 5 * stderr


def test_balls_must_be_centered_on_the_support(rng):
    sampler = PlaneSampler(dim=1, ambient_dim=2)
    with pytest.raises(GeometryInputError):
        sampler.draw(np.array([0.0, 1.0]), 0.5, 10, rng)
    with pytest.raises(GeometryInputError):
        sampler.draw(np.zeros(2), -1.0, 10, rng)
    with pytest.raises(GeometryInputError):
        PlaneSampler(dim=3, ambient_dim=2)


def test_cantor_ratio():
    assert cantor_ratio(1.0) == pytest.approx(0.5)
    assert cantor_ratio(math.log(2) / math.log(3)) == pytest.approx(1 / 3)
    with pytest.raises(GeometryInputError):
        cantor_ratio(1.5)


def test_cantor_quantile_inverts_the_cdf(rng):
    ratio = cantor_ratio(0.7)
    p = rng.uniform(size=200)
    x = cantor_quantile(p, ratio)
    assert np.all(in_cantor_set(x, ratio))
    assert_allclose(cantor_cdf(x, ratio), p, atol=1e-9)


def test_cantor_cdf_is_flat_on_the_first_gap():
    ratio = 1 / 3
    assert_allclose(cantor_cdf(np.array([0.34, 0.5, 0.66]), ratio), 0.5)
    assert cantor_cdf(1.0, ratio) == pytest.approx(1.0)
    assert cantor_cdf(0.0, ratio) == pytest.approx(0.0)
    assert not in_cantor_set(0.5, ratio)


def test_cantor_product_samples_lie_on_the_support(rng):
    sampler = CantorProductSampler(d=2, ambient_dim=3, gamma=1.7, c_mu=10.0)
    x = sampler.support_point(rng)
    assert sampler.on_support(x)[0]
    points = sampler.draw(x, 0.2, 500, rng)
    assert np.all(sampler.on_support(points))
    assert np.all(np.linalg.norm(points - x, axis=1) <= 0.2)
    assert np.all(points[:, 2] == 0.0)


def test_cantor_product_regularity_is_finite(rng):
    sampler = CantorProductSampler(d=2, ambient_dim=2, gamma=1.7)
    constant, ratios = estimate_regularity(sampler, rng, points=3, samples=2000)
    assert np.all(ratios > 0)
    assert 1.0 <= constant < 50.0
    assert sampler.c_mu >= 1.0


def test_cantor_product_validation():
    with pytest.raises(GeometryInputError):
        CantorProductSampler(d=2, ambient_dim=3, gamma=2.5)
    with pytest.raises(GeometryInputError):
        CantorProductSampler(d=3, ambient_dim=2, gamma=2.5)
