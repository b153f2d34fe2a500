import pytest

from pch.constructions import monochromatic, rainbow, random_bounded_colouring
from pch.ec_graph import max_mono_degree, induced_subgraph, verify_certificate
from pch.exact import exact_pc_ham_cycle
from pch.pipeline import PipelineConfig, check_constants, run_pipeline


def test_rainbow_succeeds_and_verifies():
    res = run_pipeline(rainbow(30))
    assert res.success
    assert res.certificate.valid
    assert res.certificate.covered_vertices() == set(range(30))


def test_monochromatic_fails_with_exact_fallback():
    res = run_pipeline(monochromatic(30), PipelineConfig(fallback="exact", seed=1))
    assert not res.success
    assert res.failure.stage == "absorbing_cycle"
    assert res.fallback_result is not None
    assert not res.fallback_result.exists


def test_random_instances_successes_verify():
    successes = 0
    for seed in range(6):
        g = random_bounded_colouring(36, 13, seed)
        res = run_pipeline(g, PipelineConfig(seed=seed))
        if res.success:
            successes += 1
            cert = verify_certificate(g, res.certificate)
            assert cert.valid
            assert cert.covered_vertices() == set(range(36))
    assert successes >= 3  # colour-rich instances should mostly go through


def test_verdict_agreement_with_exact_small_n():
    for seed in range(8):
        g = random_bounded_colouring(10, 4, seed, colours=5)
        res = run_pipeline(g, PipelineConfig(seed=seed, fallback="exact"))
        verdict = res.success or (res.fallback_result is not None and res.fallback_result.exists)
        assert verdict == exact_pc_ham_cycle(g).exists


def test_restriction_mono_degree_monotone():
    for seed in range(5):
        g = random_bounded_colouring(20, 8, seed)
        sub, _ = induced_subgraph(g, range(5, 20))
        assert max_mono_degree(sub) <= max_mono_degree(g)


def test_pipeline_rejects_tiny_n():
    with pytest.raises(ValueError):
        run_pipeline(rainbow(7))


def test_check_constants_examples():
    out = check_constants(0.1)
    assert out["endpoint_depth_cap"] == 9
    assert out["join_order_cap"] == pytest.approx(200.0)
    # eps' formula: (2 eps - gamma) / (2 - 2 gamma); gamma underflows at 0.1
    assert out["eps_prime"] == pytest.approx(0.1)
    assert out["gamma_log10"] < -400
    assert out["two_factor_n1"] >= out["rotation_expansion_n0"]


def test_check_constants_gamma_formula():
    # at eps = 0.2 the float survives: 2^-5 * 0.2^(4 * 25 + 2)
    out = check_constants(0.2)
    assert out["gamma"] == pytest.approx(2.0 ** -5 * 0.2 ** 102)
    # the quarter-threshold value itself is outside the domain but its formula
    # value is astronomically small
    assert 2.0 ** -5 * 0.25 ** 66 < 1e-40


def test_check_constants_domain():
    for bad in (0.0, 0.25, 0.3, -0.1):
        with pytest.raises(ValueError):
            check_constants(bad)


def test_report_contains_stage_records():
    res = run_pipeline(rainbow(30), PipelineConfig(seed=3))
    assert res.success
    stages = res.report["stages"]
    for name in ("absorbing_cycle", "restriction", "two_factor", "ham_path", "absorb"):
        assert name in stages
