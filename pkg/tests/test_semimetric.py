import numpy as np
import pytest

from hdsine.exceptions import GeometryInputError
from hdsine.geometry import orthonormal_frame
from hdsine.metrics import (audit_rows, check_chain, check_orthogonal_one_term,
                            check_projection_monotonicity, check_simplex_inequality, draw_trial,
                            identity_path_holds, semimetric_audit)
from hdsine.sines import PointConfig

KINDS = ["polar", "hyper"]


@pytest.mark.parametrize("kind", KINDS)
def test_simplex_inequality_on_random_inputs(rng, kind):
    for _ in range(200):
        d = int(rng.integers(1, 5))
        n = d + 1 + int(rng.integers(0, 3))
        cfg = PointConfig(w=rng.normal(size=n), vs=rng.normal(size=(d + 1, n)))
        report = check_simplex_inequality(kind, cfg, rng.normal(size=n))
        assert report.holds
        assert len(report.rhs_terms) == d + 1


@pytest.mark.parametrize("kind", KINDS)
def test_u_on_a_vertex_vector_gives_an_equal_term(rng, kind):
    cfg = PointConfig(w=np.zeros(3), vs=rng.normal(size=(3, 3)))
    report = check_simplex_inequality(kind, cfg, cfg.vs[1])
    assert report.rhs_terms[1] == pytest.approx(report.lhs)
    assert report.slack >= -1e-12


def test_u_equal_to_w_is_rejected(rng):
    cfg = PointConfig(w=np.ones(3), vs=rng.normal(size=(2, 3)))
    with pytest.raises(GeometryInputError):
        check_simplex_inequality("polar", cfg, np.ones(3))


@pytest.mark.parametrize("kind", KINDS)
def test_projection_monotonicity(rng, kind):
    for d in (1, 2, 3):
        n = d + 3
        V = orthonormal_frame(rng.normal(size=(d + 1, n)))
        vs = rng.normal(size=(d, d + 1)) @ V.basis
        assert check_projection_monotonicity(kind, vs, rng.normal(size=n), V)


def test_projection_monotonicity_checks_membership(rng):
    V = orthonormal_frame(np.eye(4)[:3])
    with pytest.raises(GeometryInputError):
        check_projection_monotonicity("polar", [np.eye(4)[3], np.eye(4)[0]], np.ones(4), V)


@pytest.mark.parametrize("kind", KINDS)
def test_orthogonal_one_term(rng, kind):
    for d in (1, 2, 3):
        n = d + 2
        vs = np.zeros((d + 1, n))
        vs[:, : d + 1] = rng.normal(size=(d + 1, d + 1))
        u = np.zeros(n)
        u[-1] = rng.uniform(0.5, 2.0)
        assert check_orthogonal_one_term(kind, PointConfig.at_origin(vs), u)


def test_orthogonal_one_term_rejects_non_orthogonal_u(rng):
    vs = np.zeros((3, 4))
    vs[:, :3] = rng.normal(size=(3, 3))
    with pytest.raises(GeometryInputError):
        check_orthogonal_one_term("polar", PointConfig.at_origin(vs), np.ones(4))


@pytest.mark.parametrize("kind", KINDS)
def test_chain_through_the_projection(rng, kind):
    for _ in range(50):
        d = int(rng.integers(1, 4))
        n = d + 2 + int(rng.integers(0, 2))
        cfg = PointConfig(w=rng.normal(size=n), vs=rng.normal(size=(d + 1, n)))
        assert check_chain(kind, cfg, rng.normal(size=n))
    with pytest.raises(GeometryInputError):
        check_chain(kind, PointConfig.at_origin(rng.normal(size=(3, 3))), np.ones(3))


@pytest.mark.parametrize("kind", KINDS)
def test_identity_path(rng, kind):
    for _ in range(50):
        d = int(rng.integers(1, 4))
        cfg = PointConfig(w=rng.normal(size=d + 1), vs=rng.normal(size=(d + 1, d + 1)))
        assert identity_path_holds(kind, cfg, rng.normal(size=d + 1))


def test_trials_are_reproducible():
    a = draw_trial(7, 11, 2, 4)
    b = draw_trial(7, 11, 2, 4)
    assert a["family"] == b["family"]
    np.testing.assert_array_equal(a["vs"], b["vs"])
    np.testing.assert_array_equal(a["u"], b["u"])


def test_rows_are_ordered_and_deterministic():
    serial = audit_rows("polar", 2, 3, 300, seed=5, workers=1)
    assert [r["index"] for r in serial] == list(range(300))
    assert serial == audit_rows("polar", 2, 3, 300, seed=5, workers=1)


@pytest.mark.parametrize("kind", KINDS)
@pytest.mark.parametrize("d,n", [(2, 3), (2, 4), (3, 4), (3, 7)])
def test_audit_finds_no_violations(kind, d, n):
    summary = semimetric_audit(kind, d, n, trials=500, seed=7)
    assert summary.failures == 0
    assert summary.symmetry_failures == 0
    assert summary.holds
    assert summary.worst is not None and summary.worst.note == "minimal slack"


def test_audit_validates_dimensions():
    with pytest.raises(GeometryInputError):
        semimetric_audit("polar", 3, 3, trials=10, seed=0)
    with pytest.raises(ValueError):
        semimetric_audit("cosine", 2, 3, trials=10, seed=0)
