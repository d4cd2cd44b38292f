import numpy as np
import pytest

from maxkinetic.kernels import AffineMap
from maxkinetic.models import (as_operator, make_atomic_model, make_model_A,
                               make_model_B, make_model_C, make_multilinear)
from maxkinetic.spectral import lambda_p


def test_model_A_construction():
    m = make_model_A(3, "const")
    assert m.G.mass() == pytest.approx(1.0, abs=1e-12)
    assert m.H.is_empty
    assert m.a(0.5) == pytest.approx(0.5)
    assert m.b(0.5) == pytest.approx(0.5)
    assert m.support_radius() == pytest.approx(1.0)


def test_model_A_d2_singular_kernel():
    m = make_model_A(2, "const")
    assert m.G.alpha_left == pytest.approx(-0.5)
    assert m.G.mass() == pytest.approx(1.0, abs=1e-12)


def test_model_A_rejects_d1():
    with pytest.raises(ValueError):
        make_model_A(1)


def test_model_B_masses_and_map():
    m = make_model_B(3, "const", theta=1.0, m=1.0)
    assert m.G.mass() == pytest.approx(0.5, abs=1e-12)
    assert m.H.mass() == pytest.approx(0.5, abs=1e-12)
    assert m.params["beta"] == pytest.approx(1.0)
    assert m.c(0.0) == pytest.approx(1.0)
    assert m.c(1.0) == pytest.approx(0.0)


def test_model_B_validation():
    with pytest.raises(ValueError):
        make_model_B(theta=-1.0)
    with pytest.raises(ValueError):
        make_model_B(theta=0.0)
    with pytest.raises(ValueError):
        make_model_B(m=-0.5)


def test_model_C_slopes():
    m = make_model_C(3, 0.5)
    assert m.a.c1 == pytest.approx(0.5625)
    assert m.b.c1 == pytest.approx(-0.9375)
    assert m.G.mass() == pytest.approx(1.0, abs=1e-12)


def test_model_C_elastic_limit_matches_model_A():
    c = make_model_C(3, 1.0)
    a = make_model_A(3, "const")
    for p in (0.5, 1.0, 2.0, 3.0):
        assert lambda_p(c, p) == pytest.approx(lambda_p(a, p), abs=1e-12)


def test_model_C_validation():
    with pytest.raises(ValueError):
        make_model_C(3, 0.0)
    with pytest.raises(ValueError):
        make_model_C(3, 1.5)


def test_mass_normalization_invariant():
    for model in (make_model_A(3), make_model_A(2),
                  make_model_B(3, "const", 2.0, 0.5), make_model_C(3, 0.7)):
        assert model.G.mass() + model.H.mass() == pytest.approx(1.0,
                                                                abs=1e-12)


def test_named_model_maps_stay_in_unit_interval():
    s = np.linspace(0.0, 1.0, 257)
    for model in (make_model_A(3), make_model_B(3, "const", 1.0, 0.3),
                  make_model_C(3, 0.5)):
        for mp in (model.a, model.b, model.c):
            vals = mp(s)
            assert np.all(vals >= -1e-15) and np.all(vals <= 1.0 + 1e-15)


def test_to_multilinear_weights():
    op = make_model_A(3).to_multilinear()
    assert [a for a, _ in op.term_weights()] == [2]
    op = make_model_B(3, "const", 1.0, 1.0).to_multilinear()
    weights = dict(op.term_weights())
    assert weights[2] == pytest.approx(0.5, abs=1e-12)
    assert weights[1] == pytest.approx(0.5, abs=1e-12)


def test_lambda_zero_counts_arity():
    # pure binary models average two factors
    assert lambda_p(make_model_A(3), 0.0) == pytest.approx(2.0, abs=1e-12)
    assert lambda_p(make_model_C(3, 0.5), 0.0) == pytest.approx(2.0,
                                                                abs=1e-12)


def test_round_trip_lambda_model_vs_operator():
    for model in (make_model_A(3), make_model_B(3, "const", 1.5, 0.8),
                  make_model_C(3, 0.5)):
        op = model.to_multilinear()
        for p in (0.5, 1.0, 2.0, 3.0):
            assert lambda_p(model, p) == pytest.approx(lambda_p(op, p),
                                                       abs=1e-10)


def test_atomic_model():
    m = make_atomic_model([(0.5, 1.0)], AffineMap(0.7), AffineMap(0.7))
    assert m.support_radius() == pytest.approx(0.7)
    m = make_atomic_model([(0.5, 1.0)], AffineMap(1.2), AffineMap(0.4))
    assert m.support_radius() == pytest.approx(1.2)
    with pytest.raises(ValueError):
        make_atomic_model([], AffineMap(0.5), AffineMap(0.5))
    with pytest.raises(ValueError):
        make_atomic_model([(0.5, -1.0)], AffineMap(0.5), AffineMap(0.5))


def test_multilinear_operator():
    op = make_multilinear([(0.4, (0.9, 0.3, 0.2)), (0.6, (0.5, 0.5))])
    assert op.max_arity == 3
    assert op.total_mass() == pytest.approx(1.0, abs=1e-12)
    with pytest.raises(ValueError):
        make_multilinear([(0.5, (0.5, 0.5))])


def test_as_operator_rejects_junk():
    with pytest.raises(TypeError):
        as_operator("model")
