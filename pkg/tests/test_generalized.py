import numpy as np
import pytest
from hypothesis import given, seed, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from hdsine.exceptions import DomainError
from hdsine.sines import (GeneralizedSine, carmichael_residual, cube_grid, eval_sk,
                          functional_equation_residual, membership_test, named_function)

XS = np.linspace(-3.0, 3.0, 61)


def test_curvature_branches():
    assert_allclose(eval_sk(GeneralizedSine(k=1.0), XS), np.sin(XS))
    assert_allclose(eval_sk(GeneralizedSine(k=4.0), XS), np.sin(2 * XS) / 2)
    assert_allclose(eval_sk(GeneralizedSine(k=0.0), XS), XS)
    assert_allclose(eval_sk(GeneralizedSine(c=3.0, k=-1.0), XS), 3 * np.sinh(XS))


def test_scalar_input_gives_a_float():
    assert isinstance(GeneralizedSine()(0.5), float)


def test_small_curvature_is_continuous_with_the_linear_branch():
    xs = np.linspace(-1.0, 1.0, 41)
    for k in (1e-12, -1e-12):
        assert_allclose(eval_sk(GeneralizedSine(k=k), xs), xs, atol=1e-12)
    xs = np.linspace(-10.0, 10.0, 41)
    k = 1e-12
    assert_allclose(eval_sk(GeneralizedSine(k=k), xs), xs - k * xs ** 3 / 6, atol=1e-12)


def test_square_violates_the_functional_equation():
    square = named_function("square")
    assert functional_equation_residual(square, 1.0, 2.0, 1.0) == pytest.approx(8.0)


def test_zero_set_delta_is_rejected():
    with pytest.raises(DomainError):
        functional_equation_residual(GeneralizedSine(), 0.3, 0.2, 0.0)
    with pytest.raises(DomainError):
        functional_equation_residual(GeneralizedSine(k=1.0), 0.3, 0.2, np.pi)


@seed(7)
@settings(max_examples=200, deadline=None)
@given(alpha=st.floats(-2.0, 2.0), beta=st.floats(-2.0, 2.0), delta=st.floats(0.1, 2.0),
       c=st.floats(0.1, 5.0), k=st.floats(-2.0, 2.0))
def test_generalized_sines_satisfy_the_functional_equation(alpha, beta, delta, c, k):
    f = GeneralizedSine(c=c, k=k)
    scale = max(1.0, abs(f(alpha + beta)))
    assert functional_equation_residual(f, alpha, beta, delta) <= 1e-9 * scale * max(1.0, c)


def test_carmichael_relation_for_members():
    alpha, beta, _ = cube_grid(-1.0, 1.0, 11)
    for f in (GeneralizedSine(c=2.0, k=-1.0), GeneralizedSine(k=0.0), GeneralizedSine(k=3.0)):
        assert np.max(carmichael_residual(f, alpha, beta)) <= 1e-12


@pytest.mark.parametrize("c", [-2.0, 1.0, 0.5])
@pytest.mark.parametrize("k", [-4.0, -1.0, 0.0, 1.0, 9.0])
def test_members_pass_membership(c, k):
    result = membership_test(GeneralizedSine(c=c, k=k), cube_grid(-1.5, 1.5, 40), tol=1e-9)
    assert result.member
    assert result.max_scaled_residual <= 1e-9


@pytest.mark.parametrize("name", ["square", "cos", "perturbed"])
def test_counterexamples_fail_membership(name):
    result = membership_test(named_function(name), cube_grid(-1.0, 1.0, 16), tol=1e-9)
    assert not result.member
    assert result.max_residual > 1e-3


def test_membership_needs_admissible_points():
    with pytest.raises(DomainError):
        membership_test(GeneralizedSine(), (np.zeros(3), np.zeros(3), np.zeros(3)))


def test_unknown_family():
    with pytest.raises(DomainError):
        named_function("tan")


@pytest.mark.parametrize("c,k", [(1.0, 1.0), (-2.0, -4.0), (0.5, 0.0), (3.0, 9.0)])
def test_generalized_sines_are_odd(c, k):
    f = GeneralizedSine(c=c, k=k)
    assert f(0.0) == 0.0
    assert_allclose(f(-XS), -f(XS), atol=1e-14)


def test_absolute_sine_has_period_pi():
    f = GeneralizedSine(k=1.0)
    assert_allclose(np.abs(f(XS + np.pi)), np.abs(f(XS)), atol=1e-14)


def test_cosine_breaks_the_carmichael_relation():
    assert carmichael_residual(np.cos, 0.0, np.pi / 2) == pytest.approx(1.0)
