"""Acceptance battery: one test per shipped guarantee.

Run with ``pytest -v tests/test_acceptance.py`` to get one pass/fail line
per criterion.  Each test states its tolerance and asserts its runtime
budget, so a slow regression fails just like a wrong number.
"""

import json
import math
import time

import numpy as np
import pytest

from scaledim.bounds import (
    DimInputs,
    continuity_upper_bound,
    general_lower_bound,
)
from scaledim.cli import main
from scaledim.covers import (
    ScaleWindow,
    cover_cost,
    cover_cost_dp,
    cover_cost_exhaustive,
    schedule_mass_constant,
)
from scaledim.estimator import critical_exponent, dimension_profile
from scaledim.interpolation import verify_interpolation
from scaledim.measures import massfrostman_roundtrip
from scaledim.scalefun import LogCorrected, PowerLaw
from scaledim.setmodels import (
    CantorSchedule,
    CarpetParams,
    HolderImage,
    SequenceSet,
    build_stability_pair,
    carpet_dimensions,
    translate,
)

LOG2 = math.log(2.0)
LOG3 = math.log(3.0)
SEED = 20260816


def test_criterion_01_sequence_family_formula():
    # s* at log2 delta = -400 within 0.02 of theta/(p+theta), error
    # nonincreasing (up to one bisection quantum) over the last ten scales
    grid = [-k * LOG2 for k in range(40, 401, 40)]
    tol = 1e-3
    for p in (0.5, 1.0, 2.0):
        for theta in (0.2, 0.5, 0.8):
            start = time.time()
            true = theta / (p + theta)
            prof = dimension_profile(SequenceSet(p), PowerLaw(theta), grid, tol=tol)
            mids = [0.5 * (pt.s_lower + pt.s_upper) for pt in prof.points]
            errors = [abs(m - true) for m in mids]
            assert errors[-1] <= 0.02, (p, theta, errors[-1])
            for before, after in zip(errors[-10:], errors[-9:]):
                assert after <= before + tol, (p, theta, before, after)
            assert time.time() - start < 1.0, (p, theta)


def test_criterion_02_oracle_equivalence():
    start = time.time()
    rng = np.random.default_rng(SEED)
    worst = 0.0
    for _ in range(200):
        n = int(rng.integers(2, 7))
        pts = np.sort(rng.uniform(0.0, 1.0, n))
        hi = float(rng.uniform(0.05, 0.5))
        lo = hi * float(rng.uniform(0.15, 1.0))
        s = float(rng.uniform(0.05, 1.0))
        window = ScaleWindow.from_linear(lo, hi)
        spans = {float(b - a) for a in pts for b in pts if b > a}
        diams = sorted({min(max(sp, lo), hi) for sp in spans} | {lo})
        dp = cover_cost_dp([(float(p), float(p)) for p in pts], window, s)
        ex = cover_cost_exhaustive(pts, window, s, diams)
        worst = max(
            worst, abs(math.exp(dp.log_cost_upper) - math.exp(ex.log_cost_upper))
        )
    assert worst <= 1e-12, worst
    assert time.time() - start < 10.0


def test_criterion_03_box_dimension_degeneration():
    # with the log-corrected window the box estimate (upper certificate)
    # is the convergent quantity; the one-scale lower certificate keeps
    # its usual slack and only brackets the value
    start = time.time()
    thirds = CantorSchedule.from_ratios([1.0 / 3.0] * 30)
    ce = critical_exponent(thirds, LogCorrected(), -24 * LOG3, tol=1e-4)
    assert ce.s_upper == pytest.approx(LOG2 / LOG3, abs=0.01)
    assert ce.s_lower <= LOG2 / LOG3 <= ce.s_upper + 1e-4
    grid = [-k * LOG3 for k in (16, 18, 20, 22, 24)]
    prof = dimension_profile(thirds, LogCorrected(), grid, tol=1e-4)
    assert prof.upper_estimate == pytest.approx(LOG2 / LOG3, abs=0.01)
    assert time.time() - start < 5.0


def test_criterion_04_sharpness_identities():
    start = time.time()
    for p in (0.5, 1.0, 2.0):
        b = 1.0 / (p + 1.0)
        for k in range(1, 101):
            theta = k / 101.0
            d = DimInputs(box_lower=b, box_upper=b, assouad=1.0, theta=theta)
            assert general_lower_bound(d) == pytest.approx(
                theta / (p + theta), abs=1e-12
            )
        theta = 0.4
        d = DimInputs(box_lower=b, box_upper=b, assouad=1.0, theta=theta)
        for k in range(41, 101):
            phi = k / 100.0
            got = continuity_upper_bound(theta / (p + theta), d, phi)
            assert got == pytest.approx(phi / (p + phi), abs=1e-12)
    assert time.time() - start < 1.0


def test_criterion_05_carpet_closed_forms():
    start = time.time()
    from scaledim.bounds import general_lower_bound_derivatives

    dims = carpet_dimensions(CarpetParams(2, 100, (1, 100)))
    assert dims.hausdorff == pytest.approx(LOG3 / LOG2, abs=5e-4)
    assert dims.box == pytest.approx(1.8517, abs=5e-4)
    assert dims.assouad == 2.0
    grad, _ = general_lower_bound_derivatives(
        DimInputs(
            box_lower=dims.box, box_upper=dims.box, assouad=dims.assouad, theta=1.0
        )
    )
    assert grad == pytest.approx(0.1373, abs=5e-4)
    assert time.time() - start < 0.1


def test_criterion_06_finite_stability():
    start = time.time()
    pair = build_stability_pair(PowerLaw(0.5), 3)
    e_set, f_set, union = pair.e_set, pair.f_set, pair.union
    ceiling = 10.0 * LOG2 / (9.0 * math.log(5.0)) + 0.02
    # sparse-end scales: the set that just ran sparse covers cheaply
    for n, log_end in pair.sparse_end_scales():
        member = e_set if n % 2 == 0 else f_set
        level = 10 ** (pair.state.k[n] + 1) - 1
        exponent = level * LOG2 / (-member.log_length(level))
        assert exponent <= ceiling, (n, exponent)
    # checkpoint scales: the union's mass certificate keeps the cost up
    s_cert = 2.0 * LOG2 / math.log(15.0) - 0.02
    for log_r in pair.state.log_r_seq:
        window = ScaleWindow(2.0 * log_r, log_r)
        log_c = np.logaddexp(
            schedule_mass_constant(e_set, window, s_cert),
            schedule_mass_constant(f_set, window, s_cert),
        ) - LOG2
        log_floor = -log_c  # total mass a = 1
        cost = cover_cost(union, window, s_cert)
        assert cost.log_cost_lower >= log_floor - 1e-9, log_r
        assert log_floor > 0.0, log_r  # certificate is far from vacuous
    assert time.time() - start < 30.0


def test_criterion_07_frostman_roundtrip():
    start = time.time()
    thirds = CantorSchedule.from_ratios([1.0 / 3.0] * 20)
    rt = massfrostman_roundtrip(
        thirds,
        PowerLaw(0.5),
        [0.45 + 0.025 * k for k in range(16)],
        [-6 * LOG3, -7 * LOG3, -8 * LOG3],
        base=3,
    )
    assert rt.estimate == pytest.approx(0.575, abs=1e-12)
    assert rt.bracket_lower == pytest.approx(0.561, abs=1e-3)
    assert rt.bracket_upper == pytest.approx(0.632, abs=1e-3)
    assert rt.bracket_lower - 0.05 <= rt.estimate <= rt.bracket_upper + 0.05

    rt2 = massfrostman_roundtrip(
        SequenceSet(1.0),
        PowerLaw(0.5),
        [0.20 + 0.025 * k for k in range(12)],
        [-12 * LOG2, -15 * LOG2, -18 * LOG2],
    )
    assert rt2.estimate == pytest.approx(0.375, abs=1e-12)
    assert rt2.bracket_lower == pytest.approx(0.3447265625, abs=1e-12)
    assert rt2.bracket_upper == pytest.approx(0.37109375, abs=1e-12)
    assert rt2.bracket_lower - 0.05 <= rt2.estimate <= rt2.bracket_upper + 0.05
    assert time.time() - start < 60.0


def test_criterion_08_recovered_interpolation():
    start = time.time()
    pair = build_stability_pair(PowerLaw(0.5), 3)
    f_set = pair.f_set
    grid = [v for _, v in pair.sparse_end_scales()] + list(pair.state.log_r_seq)
    prof = dimension_profile(f_set, PowerLaw(0.5), grid, tol=1e-3)
    lower, upper = prof.lower_estimate, prof.upper_estimate
    assert lower == pytest.approx(0.4443359375, abs=1e-12)
    assert upper == pytest.approx(0.6318359375, abs=1e-12)
    s_values = list(np.linspace(lower + 0.01, upper, 5))
    report = verify_interpolation(f_set, s_values, grid, tol=1e-3, x_tol=0.05)
    for row in report.rows:
        assert row.upper_estimate == pytest.approx(row.s, abs=0.05), row
        assert row.upper_ok
    assert report.monotone_in_s
    assert report.tables_ordered
    assert report.passed
    assert time.time() - start < 300.0


def test_criterion_09_invariant_suites():
    start = time.time()
    rng = np.random.default_rng(SEED)
    thirds = CantorSchedule.from_ratios([1.0 / 3.0] * 40)
    models = [thirds, SequenceSet(1.0)]

    # window monotonicity: widening the window never raises the cost
    for _ in range(20):
        model = models[int(rng.integers(0, 2))]
        log_hi = -float(rng.uniform(2.0, 6.0))
        log_lo = log_hi - float(rng.uniform(0.5, 3.0))
        s = float(rng.uniform(0.2, 0.9))
        narrow = cover_cost(model, ScaleWindow(log_lo, log_hi), s, oracle="dp")
        wide = cover_cost(model, ScaleWindow(log_lo - 1.0, log_hi), s, oracle="dp")
        assert wide.log_cost_upper <= narrow.log_cost_upper + 1e-12

    # s-monotonicity: diameters below one make the cost decrease in s
    for _ in range(20):
        model = models[int(rng.integers(0, 2))]
        log_hi = -float(rng.uniform(2.0, 6.0))
        window = ScaleWindow(log_hi - 2.0, log_hi)
        s = float(rng.uniform(0.1, 0.8))
        low_s = cover_cost(model, window, s, oracle="dp")
        high_s = cover_cost(model, window, s + 0.1, oracle="dp")
        assert high_s.log_cost_upper <= low_s.log_cost_upper + 1e-12

    # translation invariance of the full cost bracket
    for _ in range(20):
        model = models[int(rng.integers(0, 2))]
        shift = float(rng.uniform(-3.0, 3.0))
        log_hi = -float(rng.uniform(2.0, 6.0))
        window = ScaleWindow(log_hi - 2.0, log_hi)
        s = float(rng.uniform(0.2, 0.9))
        here = cover_cost(model, window, s, oracle="dp")
        there = cover_cost(translate(model, shift), window, s, oracle="dp")
        assert abs(here.log_cost_upper - there.log_cost_upper) <= 1e-12
        assert abs(here.log_cost_lower - there.log_cost_lower) <= 1e-12

    # sandwich ordering: cost and exponent brackets are genuinely ordered
    for _ in range(12):
        model = models[int(rng.integers(0, 2))]
        log_delta = -float(rng.uniform(5.0, 18.0))
        s = float(rng.uniform(0.2, 0.9))
        window = ScaleWindow(2.0 * log_delta, log_delta)
        cost = cover_cost(model, window, s)
        assert cost.log_cost_lower <= cost.log_cost_upper + 1e-12
        ce = critical_exponent(model, PowerLaw(0.5), log_delta, tol=1e-3)
        assert ce.s_lower <= ce.s_upper

    # Holder-image consistency: sqrt image of F_1 matches F_0.5 row-wise
    tol = 1e-3
    grid = [-6 * LOG2, -7 * LOG2, -8 * LOG2]
    image = dimension_profile(
        HolderImage(SequenceSet(1.0), 0.5), PowerLaw(0.5), grid, tol=tol, oracle="dp"
    )
    direct = dimension_profile(SequenceSet(0.5), PowerLaw(0.5), grid, tol=tol, oracle="dp")
    for a, b in zip(image.points, direct.points):
        assert abs(a.s_lower - b.s_lower) <= 2.0 * tol
        assert abs(a.s_upper - b.s_upper) <= 2.0 * tol
    assert time.time() - start < 120.0


def test_criterion_10_cli_determinism(tmp_path):
    commands = {
        "estimate.csv": ["estimate", "--grid=-96:-24:4"],
        "bounds.json": [
            "bounds",
            "--formula",
            "general_lower",
            "--inputs",
            '{"box_lower": 0.5, "box_upper": 0.5, "assouad": 1.0, "theta": 0.5}',
        ],
        "phi.csv": ["phi", "--phi", "power_law:0.5", "--phi2", "log_corrected",
                    "--grid=-48:-12:10"],
        "frostman.csv": ["frostman", "--s", "0.5"],
        "interpolate.csv": ["interpolate", "--s-grid", "0.2:0.6:3", "--grid=-36:-12:3"],
        "carpet.json": ["carpet"],
        "verify.json": ["verify"],
    }
    for name, args in commands.items():
        first = tmp_path / ("a_" + name)
        second = tmp_path / ("b_" + name)
        assert main(args + ["--out", str(first)]) == 0, name
        assert main(args + ["--out", str(second)]) == 0, name
        assert first.read_bytes() == second.read_bytes(), name
