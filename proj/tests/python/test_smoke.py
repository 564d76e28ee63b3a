import math

import numpy as np
import pytest

amconv = pytest.importorskip("amconv")


def test_two_level_closed_form():
    p = amconv.make_params(0.6, 0.8, 2)
    e = amconv.exact_spectrum(p)
    assert np.allclose(e, [-0.5, 0.5], atol=1e-12)


def test_decoupled_quantisation_is_exact():
    p = amconv.make_params(1.0, 0.0, 100)
    e, _ = amconv.quantize(p)
    assert np.allclose(e, np.arange(51) - 25.0, atol=1e-9)


def test_odd_particle_number_rejected():
    with pytest.raises(ValueError):
        amconv.make_params(1.0, 1.0, 7)


def test_bifurcation_count():
    assert len(amconv.fixed_points(amconv.make_params(1.414, 1, 2))) == 3
    above = amconv.fixed_points(amconv.make_params(1.415, 1, 2))
    assert len(above) == 2
    tip = [f for f in above if abs(f["location"][2] + 0.5) < 1e-12]
    assert tip[0]["stability"] == "elliptic"


def test_tip_period():
    p = amconv.make_params(2.0, 1.0, 2)
    assert abs(amconv.period(-1.0, p) - math.sqrt(2) * math.pi) < 1e-9
    assert abs(amconv.elliptic_k(0.0) - math.pi / 2) < 1e-14


def test_mean_field_trajectory_stays_on_surface():
    p = amconv.make_params(1.0, 1.0, 2)
    sz = 0.1
    s0 = (amconv.teardrop_radius(sz), 0.0, sz)
    t, s = amconv.mf_trajectory(s0, 20.0, 201, p)
    assert s.shape == (201, 3)
    r2 = 0.25 * (1 - 2 * s[:, 2]) * (1 + 2 * s[:, 2]) ** 2
    assert np.max(np.abs(s[:, 0] ** 2 + s[:, 1] ** 2 - r2)) < 1e-8


def test_many_particle_trajectory_and_wkb():
    p = amconv.make_params(1.0, 1.0, 40)
    s = amconv.mp_trajectory((1.0, 0.0, 0.0), [0.0, 1.0, 2.0], p)
    assert s.shape == (3, 3)
    assert s[0, 0] < 0
    m, w = amconv.wkb_state(3, amconv.make_params(0.5, 1.0, 40))
    assert len(m) == 21
    assert abs(np.linalg.norm(w) - 1) < 1e-12


def test_semiclassical_levels_track_exact():
    p = amconv.make_params(2.0, 1.0, 20)
    exact = amconv.exact_spectrum(p)
    semi, _ = amconv.quantize(p)
    mean = (exact[-1] - exact[0]) / (len(exact) - 1)
    assert np.max(np.abs(exact - semi)) / mean < 0.1
