"""Acceptance suite: one test per criterion, each printing a PASS line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
lines and timings.  Tolerances are fixed here, not configurable.
"""

import random
import time
from dataclasses import replace
from fractions import Fraction

from bcsecrecy import fme, leakage
from bcsecrecy.dmbc import (
    info_terms,
    ldbc_as_dmbc,
    region_marton_individual,
    region_marton_joint,
    region_primitive,
    region_superposition,
    region_superposition_lessnoisy,
)
from bcsecrecy.gaussian import (
    GAUSSIAN_PRESETS,
    GaussianBcParams,
    alpha0,
    capacity_condition,
    cell_corners,
    cfun,
    cloud_eavesdropper_rate,
    inner_bound,
    loose_outer_bound,
    uniform_grid,
)
from bcsecrecy.ldbc import (
    CodeInstance,
    DeterministicChannelParams,
    individual_region_membership,
)
from systems_util import load_bundled, random_marton_terms, sample_rate_pairs


def report(criterion, elapsed, budget, detail):
    print(f"ACCEPTANCE {criterion}: PASS - {detail} [{elapsed:.2f}s, budget {budget}s]")
    assert elapsed < budget, f"criterion {criterion} exceeded its {budget}s budget"


def test_criterion_1_exhaustive_zero_error_zero_leakage():
    started = time.perf_counter()
    checked = 0
    for n1 in range(7):
        for n2 in range(n1 + 1):
            for ne in range(7):
                params = DeterministicChannelParams(n1, n2, ne)
                for r1 in range(n1 + 1):
                    for r2 in range(n2 + 1):
                        if not individual_region_membership(r1, r2, params):
                            continue
                        code = CodeInstance(params, r1, r2)
                        rep = leakage.verify_code(code)
                        assert rep["pe1"] == 0 and rep["pe2"] == 0, (params, r1, r2)
                        assert rep["leak1_zero"] and rep["leak2_zero"], (params, r1, r2)
                        checked += 1
    report(1, time.perf_counter() - started, 60, f"{checked} codes, all exact")


def test_criterion_2_individual_joint_separation():
    started = time.perf_counter()
    params = DeterministicChannelParams(4, 4, 1)
    assert individual_region_membership(2, 2, params)
    assert not (2 + 2 <= max(0, params.n1 - params.ne))  # joint sum bound fails
    rep = leakage.verify_code(CodeInstance(params, 2, 2))
    assert rep["leak1_zero"] and rep["leak2_zero"]
    assert rep["joint_bits"] >= 1 - 1e-12
    assert rep["joint_bits"] == 1.0  # frozen regression value
    report(2, time.perf_counter() - started, 60,
           f"individual leakage zero, joint {rep['joint_bits']} bit")


def test_criterion_3_gaussian_anchors():
    started = time.perf_counter()
    remote = GAUSSIAN_PRESETS["fig5d"]
    assert abs(inner_bound(remote, 0.0).r2_bound - 0.7075) < 1e-3
    assert abs(cloud_eavesdropper_rate(remote, 0.0) - 0.2925) < 1e-3
    mid = GAUSSIAN_PRESETS["fig5c"]
    threshold = alpha0(mid)
    assert threshold == Fraction(5, 12)  # exact rational
    span = [inner_bound(mid, a).r2_bound
            for a in uniform_grid(1201) if a >= float(threshold)]
    assert abs(max(span) - 0.2075) < 1e-3 and min(span) < 1e-9
    report(3, time.perf_counter() - started, 1,
           "0.7075 / 0.2925 anchors and alpha0 = 5/12 with 0.2075 endpoint")


def test_criterion_4_constant_gap():
    started = time.perf_counter()
    rng = random.Random(2024)
    grid = uniform_grid(1000)
    worst = 0.0
    for _ in range(100):
        variances = sorted(rng.uniform(0.05, 8.0) for _ in range(3))
        params = GaussianBcParams(rng.uniform(0.1, 8.0), *variances)
        threshold = alpha0(params)
        sum_always_binds = params.se >= params.power + 2 * params.s2
        for a in grid:
            gap = (loose_outer_bound(params, a).sum_bound
                   - inner_bound(params, a).sum_bound)
            assert abs(gap - cfun(a * params.power / params.se)) <= 1e-9
            if sum_always_binds or a < threshold:
                assert gap <= 0.5 + 1e-9, (params, a, gap)
                worst = max(worst, gap)
    report(4, time.perf_counter() - started, 10,
           f"identity to 1e-9 on 100x1000 grid, in-regime max gap {worst:.4f}")


def test_criterion_5_capacity_regime_coincidence():
    started = time.perf_counter()
    rng = random.Random(2025)
    grid = uniform_grid(256)
    for _ in range(100):
        s1, s2 = sorted(rng.uniform(0.05, 2.0) for _ in range(2))
        se = rng.uniform(s2, 4 * s2)
        power = max(se * (se - 2 * s2) / s2, 0.0) * (1 + rng.random()) + rng.uniform(0.1, 1.0)
        params = GaussianBcParams(power, s1, s2, se)
        assert capacity_condition(params)
        for a in grid:
            inner_corners = cell_corners(inner_bound(params, a))
            outer_corners = cell_corners(loose_outer_bound(params, a))
            assert len(inner_corners) == len(outer_corners)
            for (x1, y1), (x2, y2) in zip(inner_corners, outer_corners):
                assert abs(x1 - x2) <= 1e-9 and abs(y1 - y2) <= 1e-9
    report(5, time.perf_counter() - started, 10,
           "inner = loose outer at all 100x256 grid splits")


def test_criterion_6_projection_rederives_regions():
    started = time.perf_counter()
    rng = random.Random(2026)
    cases = [
        ("appendix_b", region_primitive),
        ("appendix_c", region_superposition),
        ("appendix_e", region_marton_individual),
    ]
    systems = {name: load_bundled(name) for name, _ in cases}
    for name, evaluator in cases:
        for _ in range(20):
            terms = random_marton_terms(rng)
            numeric = systems[name].instantiate(fme.params_from_info_terms(terms))
            projected = fme.project_to_rates(numeric)
            region = evaluator(terms)
            assert region.certified
            for r1, r2 in sample_rate_pairs(rng, region, 500):
                inside = projected.membership({"R1": r1, "R2": r2})
                assert inside == region.contains(r1, r2), (name, terms, r1, r2)
    report(6, time.perf_counter() - started, 30,
           "3 systems x 20 instantiations x 500 exact rational points")


def test_criterion_7_cross_model_consistency():
    started = time.perf_counter()
    anchor = region_superposition_lessnoisy(
        info_terms(ldbc_as_dmbc(DeterministicChannelParams(3, 2, 1)))
    )
    assert anchor.canonical() == {(0, 1): 1.0, (1, 0): 2.0, (1, 1): 3.0}
    channels = 0
    for n1 in range(7):
        for n2 in range(n1 + 1):
            for ne in range(n2 + 1):
                if not (ne <= n2 <= 2 * ne):
                    continue
                params = DeterministicChannelParams(n1, n2, ne)
                region = region_superposition_lessnoisy(info_terms(ldbc_as_dmbc(params)))
                channels += 1
                for r1 in range(n1 + 2):
                    for r2 in range(n2 + 2):
                        assert region.contains(r1, r2, tol=1e-9) == \
                            individual_region_membership(r1, r2, params), (params, r1, r2)
    report(7, time.perf_counter() - started, 30,
           f"exact half-planes at (3,2,1); grid agreement on {channels} channels")


def test_criterion_8_region_ordering_and_reductions():
    started = time.perf_counter()
    rng = random.Random(2027)
    for _ in range(1000):
        terms = random_marton_terms(rng)
        joint = region_marton_joint(terms).canonical()
        individual = region_marton_individual(terms).half_planes
        # each individual plane is implied by a joint plane, exactly
        assert joint[(0, 1)] <= individual[0][2]
        assert joint[(1, 1)] <= individual[1][2]
        assert joint[(1, 0)] <= individual[2][2]
        assert joint[(1, 1)] <= individual[3][2]
        assert joint[(1, 1)] <= individual[4][2]

        collapsed_all = replace(
            terms, i_v1_y1_g_u=Fraction(0), i_v1_z_g_u=Fraction(0),
            i_v2_y2_g_u=Fraction(0), i_v2_z_g_u=Fraction(0),
            i_v1_v2_g_u=Fraction(0), i_v12_z_g_u=Fraction(0),
        )
        assert region_marton_individual(collapsed_all).canonical() == \
            region_primitive(collapsed_all).canonical()

        collapsed_v2 = replace(
            terms, i_v2_y2_g_u=Fraction(0), i_v2_z_g_u=Fraction(0),
            i_v1_v2_g_u=Fraction(0), i_v12_z_g_u=terms.i_v1_z_g_u,
        )
        assert region_marton_individual(collapsed_v2).canonical() == \
            region_superposition(collapsed_v2).canonical()
    report(8, time.perf_counter() - started, 60,
           "1000 random term vectors: containment and both collapses exact")
