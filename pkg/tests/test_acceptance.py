"""Acceptance suite: every guarantee the library claims, at desk scale.

Each criterion prints one pass/fail line (run with ``pytest -s``); the
quantitative tolerances are pinned here and nowhere else.
"""

import json
import math
import subprocess
import sys
import time
from contextlib import contextmanager

import numpy as np
import pytest

from sparsehull import (
    ModulusProfile,
    PointSet,
    SpaceSpec,
    greedy_run,
    lp_norm,
    maurey_sample,
    norming_functional,
    random_instance,
    required_k,
    summarize,
    supporting_deviation_bound,
    theoretical_bound,
)
from sparsehull.harness import fit_loglog_slope
from sparsehull.instances import exact_k_hull_distance, lower_bound_instance
from sparsehull.maurey import ConvexTarget

P_GRID = [1.25, 1.5, 2.0, 3.0, 4.0]
DIMS = [2, 8, 32]
NS = [5, 50, 200]
SEEDS = [0, 1, 2]
K_MAX = 512


@contextmanager
def criterion(num, description):
    try:
        yield
    except BaseException:
        print(f"criterion {num} [{description}]: FAIL")
        raise
    print(f"criterion {num} [{description}]: PASS")


@pytest.fixture(scope="module")
def bound_suite():
    """All greedy traces on the acceptance grid, plus the grid wall time."""
    start = time.perf_counter()
    runs = []
    for p in P_GRID:
        for dim in DIMS:
            for n in NS:
                space = SpaceSpec(p, dim)
                for seed in SEEDS:
                    point_set, target = random_instance(dim, n, seed, space)
                    trace = greedy_run(point_set, target, space, K_MAX)
                    runs.append((p, dim, n, seed, trace))
    return runs, time.perf_counter() - start


def test_criterion_1_theorem_bound_suite(bound_suite):
    runs, elapsed = bound_suite
    with criterion(1, "greedy residuals within the smoothness bound"):
        assert len(runs) == len(P_GRID) * len(DIMS) * len(NS) * len(SEEDS)
        for p, dim, n, seed, trace in runs:
            excess = trace.residual_norms - trace.bounds
            assert excess.max() <= 1e-9, (p, dim, n, seed, excess.max())
        assert elapsed < 60.0, f"grid took {elapsed:.1f}s"


def test_criterion_2_euclidean_folklore_bound(bound_suite):
    runs, _ = bound_suite
    ks = np.arange(1, K_MAX + 1)
    with criterion(2, "p=2 residuals within diam/sqrt(k)"):
        cells = [r for r in runs if r[0] == 2.0]
        assert cells
        for p, dim, n, seed, trace in cells:
            limit = trace.diam / np.sqrt(ks) + 1e-9
            assert (trace.residual_norms <= limit).all(), (dim, n, seed)


def test_criterion_3_supporting_deviation_fuzz():
    with criterion(3, "deviation inequality on 10^4 random pairs per p"):
        gen = np.random.Generator(np.random.PCG64(2718))
        for p in P_GRID:
            space = SpaceSpec(p, 8)
            for i in range(10**4):
                u = gen.standard_normal(8)
                u /= lp_norm(u, space)
                x = gen.standard_normal(8)
                x *= 2.0 * gen.random() / lp_norm(x, space)
                ustar = norming_functional(u, space)
                if i % 2:
                    x = x - (ustar @ x) * u
                    norm_x = lp_norm(x, space)
                    if norm_x > 2.0:
                        x *= 2.0 / norm_x
                elif ustar @ x > 0:
                    x = -x
                lhs, rhs = supporting_deviation_bound(u, x, space)
                assert lhs <= rhs + 1e-9, (p, i, lhs - rhs)


def test_criterion_4_day_nordlander():
    with criterion(4, "modulus dominates the Hilbert modulus, tight only at p=2"):
        taus = np.logspace(-4, 1, 200)
        hilbert = np.sqrt(1.0 + taus**2) - 1.0
        for p in P_GRID:
            profile = ModulusProfile(p)
            gaps = np.array([profile.value(t) for t in taus]) - hilbert
            assert gaps.min() >= -1e-12, p
            if p == 2.0:
                assert gaps.max() < 1e-12
            else:
                assert gaps[taus >= 0.1].min() > 0.0, p


def test_criterion_5_lower_bound_oracle():
    with criterion(5, "tight-instance distance meets floor and symmetry value"):
        start = time.perf_counter()
        for p in [1.25, 1.5, 2.0]:
            for k in [1, 2]:
                inst = lower_bound_instance(k)
                space = SpaceSpec(p, inst.n)
                dist = exact_k_hull_distance(
                    inst.point_set, inst.target.a, space, k
                )
                assert dist >= 0.25 * k ** (1.0 / p - 1.0), (p, k, dist)
                expected = (2.0 * k) ** (1.0 / p - 1.0)
                assert abs(dist - expected) <= 1e-5, (p, k, dist, expected)
        assert time.perf_counter() - start < 30.0


def test_criterion_6_rate_slopes():
    with criterion(6, "bound, greedy, and sampling log-log slopes"):
        ks = [2**i for i in range(4, 13)]  # 16 .. 4096
        for p in P_GRID:
            space = SpaceSpec(p, 1)
            slope = fit_loglog_slope(
                ks, [theoretical_bound(space, k, 1.0) for k in ks]
            )
            target = -(1.0 - 1.0 / min(p, 2.0))
            assert abs(slope - target) <= 0.02, (p, slope, target)

        fit_ks = [2**i for i in range(4, 10)]  # 16 .. 512
        for p in [2.0, 3.0, 4.0]:
            for dim in DIMS:
                for n in NS:
                    space = SpaceSpec(p, dim)
                    point_set, target_pt = random_instance(dim, n, 42, space)
                    trace = greedy_run(point_set, target_pt, space, K_MAX)
                    values = [float(trace.residual_norms[k - 1]) for k in fit_ks]
                    positive = [v for v in values if v > 0]
                    if len(positive) < 4:
                        continue  # residual hit zero: converged faster than any slope
                    slope = fit_loglog_slope(fit_ks, values)
                    assert slope <= -0.4, (p, dim, n, slope)

        ps = PointSet([[-1.0], [1.0]])
        rademacher = ConvexTarget([0.0], weights=[0.5, 0.5])
        report = maurey_sample(
            ps, rademacher, SpaceSpec(2.0, 1), [4, 16, 64, 256], 10**4, 20260810
        )
        medians = [row[1] for row in summarize(report)]
        slope = fit_loglog_slope([4, 16, 64, 256], medians)
        assert -0.65 <= slope <= -0.35, slope


def test_criterion_7_required_k_scaling():
    with criterion(7, "required k scales by 2^(p/(p-1)) under eps halving"):
        eps = 0.025
        for p in [1.5, 2.0]:
            space = SpaceSpec(p, 1)
            ratio = required_k(space, 1.0, eps / 2) / required_k(space, 1.0, eps)
            expected = 2.0 ** (p / (p - 1.0))
            assert abs(ratio / expected - 1.0) <= 0.10, (p, ratio, expected)


def _cli(*args, cwd):
    return subprocess.run(
        [sys.executable, "-m", "sparsehull", *args],
        capture_output=True,
        cwd=cwd,
        timeout=300,
    )


def test_criterion_8_byte_identical_outputs(tmp_path):
    with criterion(8, "solve and compare are byte-identical across reruns"):
        gen = np.random.Generator(np.random.PCG64(31415))
        pts = gen.standard_normal((12, 4))
        weights = gen.random(12)
        weights /= weights.sum()
        (tmp_path / "points.csv").write_text(
            "\n".join(",".join(map(repr, row)) for row in pts) + "\n"
        )
        (tmp_path / "weights.csv").write_text("\n".join(map(repr, weights)) + "\n")

        solve_args = (
            "solve", "--points", "points.csv", "--weights", "weights.csv",
            "--p", "1.5", "--k", "64", "--trace", "trace.csv",
        )
        first = _cli(*solve_args, cwd=tmp_path)
        trace_one = (tmp_path / "trace.csv").read_bytes()
        second = _cli(*solve_args, cwd=tmp_path)
        trace_two = (tmp_path / "trace.csv").read_bytes()
        assert first.returncode == second.returncode == 0, first.stderr
        assert first.stdout == second.stdout
        assert trace_one == trace_two

        config = dict(
            p_grid=[1.5, 2.0], dims=[2, 4], n_points=[6], K_max=32,
            trials=25, seed=777,
        )
        (tmp_path / "config.json").write_text(json.dumps(config))
        compare_args = ("compare", "--config", "config.json")
        out_one = _cli(*compare_args, cwd=tmp_path)
        out_two = _cli(*compare_args, cwd=tmp_path)
        assert out_one.returncode == out_two.returncode == 0, out_one.stderr
        assert out_one.stdout and out_one.stdout == out_two.stdout


def test_criterion_9_membership_certificates(tmp_path):
    with criterion(9, "20 off-hull targets all certified with a separator"):
        gen = np.random.Generator(np.random.PCG64(112358))
        cases = 0
        for trial in range(20):
            dim = [2, 3, 5, 8][trial % 4]
            p = [1.5, 2.0, 3.0][trial % 3]
            pts = gen.standard_normal((6, dim))
            pts[:, 0] = -np.abs(pts[:, 0])  # hull stays in {x_0 <= 0}
            a = gen.standard_normal(dim)
            a[0] = 1.0 + gen.random()  # strictly separated along x_0
            (tmp_path / "points.csv").write_text(
                "\n".join(",".join(map(repr, row)) for row in pts) + "\n"
            )
            (tmp_path / "target.csv").write_text(",".join(map(repr, a)) + "\n")
            result = _cli(
                "solve", "--points", "points.csv", "--target", "target.csv",
                "--p", str(p), "--k", "32",
                cwd=tmp_path,
            )
            assert result.returncode == 2, (trial, result.stdout, result.stderr)
            payload = json.loads(result.stdout)
            phi = np.array(payload["functional"])
            pairings = (pts - a) @ phi
            assert (pairings > 0).all(), (trial, pairings.min())
            cases += 1
        assert cases == 20
