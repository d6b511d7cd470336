"""Atomic measures: construction, ball-mass constants, certificates."""

import math

import numpy as np
import pytest

from scaledim.covers import ScaleWindow
from scaledim.errors import BudgetError, DomainError, InputError
from scaledim.measures import (
    AtomicMeasure,
    ball_to_set_constant,
    build_frostman_measure,
    frostman_levels,
    mass_lower_bound,
    massfrostman_roundtrip,
    natural_cantor_measure,
    verify_ball_mass,
)
from scaledim.scalefun import PowerLaw
from scaledim.setmodels import CantorSchedule

LOG3 = math.log(3.0)


@pytest.fixture(scope="module")
def thirds():
    return CantorSchedule.from_ratios([1.0 / 3.0] * 20)


# --- level selection ------------------------------------------------------


def test_frostman_level_split():
    assert frostman_levels(PowerLaw(0.5), -6 * LOG3, base=3) == (11, 3)
    assert frostman_levels(PowerLaw(0.5), -8 * LOG3, base=3) == (15, 5)


def test_frostman_levels_need_window_headroom():
    with pytest.raises(DomainError):
        frostman_levels(PowerLaw(0.5), -0.5 * LOG3, base=3)


# --- construction -----------------------------------------------------------


def test_frostman_measure_shape_and_meta(thirds):
    mu = build_frostman_measure(thirds, 0.6, -6 * LOG3, PowerLaw(0.5), base=3)
    assert len(mu.locations) == 3968
    assert mu.pre_normalization_total == pytest.approx(1.4713202987796952, rel=1e-12)
    assert mu.masses.sum() == pytest.approx(1.0, abs=1e-12)
    assert mu.meta.base == 3
    assert mu.meta.level_fine == 11
    assert mu.meta.chain_length == 3
    assert len(mu.meta.cube_indices) == len(mu.locations)
    # locations sorted, all inside the unit interval
    assert np.all(np.diff(mu.locations) >= 0)
    assert mu.locations[0] >= 0.0 and mu.locations[-1] <= 1.0


def test_natural_measure_is_uniform(thirds):
    nat = natural_cantor_measure(thirds, 9)
    assert len(nat.locations) == 512
    np.testing.assert_allclose(nat.masses, 1.0 / 512.0, rtol=1e-15)
    assert nat.masses.sum() == pytest.approx(1.0, abs=1e-12)


def test_atomic_measure_validation():
    with pytest.raises(InputError):
        AtomicMeasure(np.array([0.5, 0.2]), np.array([0.5, 0.5]), 1.0, None)
    with pytest.raises(InputError):
        AtomicMeasure(np.array([0.2, 0.5]), np.array([0.5, -0.5]), 1.0, None)


# --- ball mass sweep -----------------------------------------------------------


def test_ball_mass_single_atom_is_exact():
    unit = AtomicMeasure(np.array([0.5]), np.array([1.0]), 1.0, None)
    report = verify_ball_mass(unit, ScaleWindow.from_linear(0.1, 0.5), 1.0)
    # the whole mass sits in a ball of radius 0.1: c = 1 / 0.1^1
    assert report.c_observed == pytest.approx(10.0, abs=1e-12)
    assert report.witness_radius == pytest.approx(0.1)
    assert report.witness_mass == pytest.approx(1.0)


def test_ball_mass_uniform_atoms_have_small_constant():
    n = 257
    uni = AtomicMeasure(np.linspace(0.0, 1.0, n), np.full(n, 1.0 / n), 1.0, None)
    report = verify_ball_mass(uni, ScaleWindow.from_linear(2.0**-8, 2.0**-4), 1.0)
    assert report.c_observed <= 3.0


def test_ball_mass_frostman_reference(thirds):
    mu = build_frostman_measure(thirds, 0.6, -6 * LOG3, PowerLaw(0.5), base=3)
    window = ScaleWindow.from_linear(3.0**-6, 3.0**-3)
    report = verify_ball_mass(mu, window, 0.6)
    assert report.c_observed == pytest.approx(1.4115146778577006, rel=1e-10)
    assert report.witness_mass <= report.c_observed * report.witness_radius**0.6
    assert len(report.radii) == 33


def test_ball_to_set_constant_scales_by_diameter_power():
    assert ball_to_set_constant(1.0, 0.5) == pytest.approx(2.0**0.5, abs=1e-15)
    assert ball_to_set_constant(1.4115146778577006, 0.6) == pytest.approx(
        2.1394561811015045, rel=1e-12
    )


# --- mass certificates -----------------------------------------------------------


def test_mass_certificate_natural_measure(thirds):
    nat = natural_cantor_measure(thirds, 9)
    window = ScaleWindow(-9 * LOG3, -5 * LOG3)
    cert = mass_lower_bound(nat, window, math.log(2.0) / LOG3, 1.0, 2.0)
    assert cert.holds
    assert cert.log_cost_floor == pytest.approx(-math.log(2.0), abs=1e-12)
    assert cert.worst_ratio == pytest.approx(1.2915202343305503, rel=1e-12)


def test_mass_certificate_fails_above_dimension(thirds):
    nat = natural_cantor_measure(thirds, 9)
    window = ScaleWindow(-9 * LOG3, -5 * LOG3)
    cert = mass_lower_bound(nat, window, 0.95, 1.0, 2.0)
    assert not cert.holds


def test_mass_certificate_input_checks(thirds):
    nat = natural_cantor_measure(thirds, 9)
    window = ScaleWindow(-9 * LOG3, -5 * LOG3)
    with pytest.raises(InputError):
        mass_lower_bound(nat, window, 0.6, 5.0, 2.0)  # a above total mass
    with pytest.raises(BudgetError):
        mass_lower_bound(nat, window, 0.6, 0.9, 2.0, pair_budget=10)


# --- roundtrip diagnostic ---------------------------------------------------------


def test_roundtrip_recovers_cantor_dimension(thirds):
    report = massfrostman_roundtrip(
        thirds,
        PowerLaw(0.5),
        [0.45 + 0.05 * k for k in range(8)],
        [-6 * LOG3, -7 * LOG3, -8 * LOG3],
        base=3,
    )
    assert report.estimate == pytest.approx(0.55, abs=1e-12)
    assert report.bracket_lower == pytest.approx(0.560546875, abs=1e-12)
    assert report.bracket_upper == pytest.approx(0.6318359375, abs=1e-12)
    # estimate sits within grid resolution of the certified bracket
    assert report.bracket_lower - report.estimate <= 0.05
    assert len(report.rows) == 8
    slopes = [r.slope for r in report.rows]
    # slope turns from negative to positive as s crosses the dimension
    assert slopes == sorted(slopes)
    assert slopes[0] < 0.0 < slopes[-1]
    passing = [r.s for r in report.rows if r.built and r.slope <= report.beta0]
    assert passing and max(passing) == report.estimate
