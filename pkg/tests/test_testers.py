import math

import numpy as np
import pytest

from junta_lab.boolean import BooleanFunction
from junta_lab.errors import BudgetExceededError, CapacityError, ParameterError
from junta_lab.extractors import ExtractorConfig
from junta_lab.generators import (
    far_instance,
    perturbed_junta_boolean,
    random_k_junta_boolean,
    random_k_junta_unitary,
)
from junta_lab.linalg import Unitary, haar_random_unitary
from junta_lab.pauli import dist_to_junta_on, influence_set
from junta_lab.samplers import QueryLedger, make_rng
from junta_lab.testers import (
    GaplessConfig,
    check_gap,
    estimation_rounds,
    gapless_tolerant_junta_tester,
    projected_gapless_cost,
    run_tester,
    tolerant_boolean_junta_tester,
    tolerant_boolean_junta_tester_local,
    tolerant_junta_tester,
    tolerant_junta_tester_local,
    warmup_cost,
    warmup_estimator,
    warmup_rounds,
    warmup_shots,
)


def success(tester, make, want, trials=50, seed=0, **kw):
    gen = make_rng(seed)
    wins = 0
    for t in range(trials):
        obj = make(gen)
        wins += tester(obj, rng=make_rng(seed * 1000 + t), **kw).verdict == want
    return wins


# --- parameter validation --------------------------------------------------

@pytest.mark.parametrize("name,eps1,eps2", [
    ("alg3", 0.1, 2 * math.sqrt(2) * 0.1),
    ("alg3-bool", 0.1, 0.4),
    ("alg7", 0.1, 2 * math.sqrt(3) * 0.1),
    ("alg7-bool", 0.05, 0.3),
    ("alg8", 0.5, 0.5),
])
def test_gap_boundary_rejected(name, eps1, eps2):
    with pytest.raises(ParameterError):
        check_gap(name, eps1, eps2)


def test_testers_raise_on_gap_violation(rng):
    u = haar_random_unitary(8, rng)
    f = BooleanFunction(rng.choice([-1, 1], size=8))
    with pytest.raises(ParameterError):
        tolerant_junta_tester(u, 1, 0.1, 2 * math.sqrt(2) * 0.1, rng)
    with pytest.raises(ParameterError):
        tolerant_boolean_junta_tester_local(f, 1, 0.05, 0.3, rng)
    with pytest.raises(ParameterError):
        gapless_tolerant_junta_tester(u, 1, 0.5, 0.4, rng)
    with pytest.raises(ParameterError):
        run_tester("alg3", f, 1, 0.05, 0.9, rng)
    with pytest.raises(ParameterError):
        run_tester("alg9", u, 1, 0.05, 0.9, rng)


def test_gapless_accepts_narrow_gap_that_alg3_rejects(rng):
    with pytest.raises(ParameterError):
        check_gap("alg3", 0.4, 0.5)
    check_gap("alg8", 0.4, 0.5)


def test_capacity_limits(rng):
    with pytest.raises(CapacityError):
        tolerant_junta_tester(Unitary(np.eye(2**9)), 1, 0.05, 0.9, rng)
    with pytest.raises(CapacityError):
        gapless_tolerant_junta_tester(Unitary(np.eye(16)), 4, 0.3, 0.6, rng)


# --- verdict invariants and ledger accounting --------------------------------

@pytest.mark.parametrize("name", ["alg3", "alg7"])
def test_verdict_matches_threshold_and_ledger(name, rng):
    for seed in range(10):
        u, _ = random_k_junta_unitary(5, 2, rng) if seed % 2 else (haar_random_unitary(32, rng), None)
        ledger = QueryLedger()
        v = run_tester(name, u, 2, 0.05, 0.9, make_rng(seed), ledger)
        assert v.accepted == (v.statistic <= v.threshold)
        cfg = ExtractorConfig(2, math.sqrt(v.params["delta"]))
        m = estimation_rounds(len(v.candidates), 2, v.params["delta"])
        total = ledger.fourier_sample_calls + ledger.influence_sample_calls
        assert total == cfg.rounds + m
        assert (v.params["T_rounds"], v.params["M"]) == (cfg.rounds, m)
        if name == "alg7":
            assert ledger.fourier_sample_calls == 0


def test_samples_drawn_before_subset_loop(rng):
    ledger = QueryLedger()
    tolerant_junta_tester(haar_random_unitary(16, rng), 2, 0.05, 0.9, rng, ledger)
    labels = [lab for lab, _ in ledger.marks]
    assert labels == ["start", "extractor", "estimation", "subset_loop"]
    snaps = dict(ledger.marks)
    assert snaps["estimation"] == snaps["subset_loop"]


def test_parameter_echo(rng):
    v = tolerant_junta_tester(haar_random_unitary(16, rng), 1, 0.1, 0.8, rng)
    delta = (0.8**2 / 4 - 2 * 0.01) / 3
    assert v.params["delta"] == pytest.approx(delta)
    assert v.params["tau"] == pytest.approx(math.sqrt(delta))
    assert v.threshold == pytest.approx(2 * 0.01 + 2 * delta)
    f = BooleanFunction(rng.choice([-1, 1], size=64))
    v = tolerant_boolean_junta_tester_local(f, 1, 0.05, 0.5, rng)
    delta = (2 * 0.5 / 3 - 0.2) / 3
    assert v.params["delta"] == pytest.approx(delta)
    assert v.threshold == pytest.approx(0.2 + 2 * delta)


def test_statistic_separation_uses_exact_influence(rng):
    # on YES instances min_T s_T̄ tracks the exact outside influence within delta
    for _ in range(10):
        u, t = random_k_junta_unitary(5, 2, rng)
        v = tolerant_junta_tester(u, 2, 0.05, 0.9, rng)
        assert v.statistic <= influence_set(u, [q for q in range(1, 6) if q not in t]) + v.params["delta"]


# --- success rates on certified instances -----------------------------------

def test_alg3_completeness_exact_junta():
    wins = success(tolerant_junta_tester, lambda g: random_k_junta_unitary(6, 2, g)[0], "Yes",
                   k=2, eps1=0.1, eps2=0.9)
    assert wins >= 45


def test_alg3_soundness_far_haar():
    wins = success(tolerant_junta_tester, lambda g: far_instance(6, 1, 0.9, g).obj, "No",
                   k=1, eps1=0.05, eps2=0.9)
    assert wins >= 45


def test_alg3_bool_completeness_flipped_junta():
    wins = success(tolerant_boolean_junta_tester, lambda g: perturbed_junta_boolean(8, 2, 0.05, g)[0], "Yes",
                   k=2, eps1=0.05, eps2=0.9)
    assert wins >= 45


def test_alg3_bool_soundness_random_function():
    wins = success(tolerant_boolean_junta_tester, lambda g: far_instance(8, 1, 0.3, g, kind="boolean").obj, "No",
                   k=1, eps1=0.05, eps2=0.3)
    assert wins >= 45


def test_alg3_bool_exact_junta():
    wins = success(tolerant_boolean_junta_tester, lambda g: random_k_junta_boolean(8, 2, g)[0], "Yes",
                   k=2, eps1=0.01, eps2=0.9)
    assert wins >= 45


def test_alg7_completeness_and_soundness():
    yes = success(tolerant_junta_tester_local, lambda g: random_k_junta_unitary(5, 1, g)[0], "Yes",
                  k=1, eps1=0.05, eps2=0.9)
    no = success(tolerant_junta_tester_local, lambda g: far_instance(5, 1, 0.9, g).obj, "No",
                 k=1, eps1=0.05, eps2=0.9)
    assert yes >= 45 and no >= 45


def test_alg7_bool_completeness_and_soundness():
    # Boolean distance to a junta never exceeds 1/2, so the far side uses eps2 = 0.4
    yes = success(tolerant_boolean_junta_tester_local, lambda g: random_k_junta_boolean(8, 1, g)[0], "Yes",
                  k=1, eps1=0.05, eps2=0.4)
    no = success(tolerant_boolean_junta_tester_local, lambda g: far_instance(8, 1, 0.4, g, kind="boolean").obj,
                 "No", k=1, eps1=0.05, eps2=0.4)
    assert yes >= 45 and no >= 45


# --- warmup estimator ---------------------------------------------------------

def test_warmup_formulas():
    k, tau, delta = 2, 0.05, 0.1
    m = warmup_rounds(k, tau, delta)
    assert m == math.ceil(8 / tau**2 * math.log(40))
    assert warmup_cost(k, tau, delta) == m * 16 * 2 * warmup_shots(k, tau, delta)


def test_warmup_exact_junta(rng):
    tau = 0.02
    for _ in range(5):
        u, t = random_k_junta_unitary(4, 2, rng)
        assert warmup_estimator(u, t, tau, 0.05, rng) <= math.sqrt(tau)


def test_warmup_swap(gates):
    hits = 0
    for s in range(20):
        est = warmup_estimator(gates["SWAP"], [1], 0.01, 0.05, make_rng(s))
        hits += abs(est - math.sqrt(0.5)) <= 0.1
    assert hits >= 19


def test_warmup_ledger(rng):
    u = haar_random_unitary(16, rng)
    ledger = QueryLedger()
    warmup_estimator(u, [2, 3], 0.1, 0.1, rng, ledger)
    m, shots = warmup_rounds(2, 0.1, 0.1), warmup_shots(2, 0.1, 0.1)
    assert ledger.controlled_U_applications == m * 4**2 * 2 * shots


# --- gapless tester -----------------------------------------------------------

def test_gapless_config():
    cfg = GaplessConfig(0.3, 0.6, 1)
    assert cfg.eps == pytest.approx(0.3)
    assert cfg.tau == pytest.approx(0.09 / 16)
    assert cfg.threshold == pytest.approx(0.45)
    assert cfg.delta_prime(4) == pytest.approx(0.0025)


def test_gapless_budget_abort(rng):
    u = haar_random_unitary(16, rng)
    ledger = QueryLedger()
    with pytest.raises(BudgetExceededError) as info:
        gapless_tolerant_junta_tester(u, 1, 0.3, 0.6, rng, ledger, budget_ceiling=1e6)
    assert info.value.estimate == projected_gapless_cost(4, 1, 0.3, 0.6)
    assert ledger.snapshot() == QueryLedger().snapshot()


def test_gapless_pads_small_candidate_sets(rng):
    v = gapless_tolerant_junta_tester(Unitary(np.eye(16)), 2, 0.1, 0.6, rng)
    assert v.candidates == ()
    assert v.params["padded_S"] == (1, 2)
    assert v.verdict == "Yes"


@pytest.mark.slow
def test_gapless_completeness_exact_junta():
    wins = success(gapless_tolerant_junta_tester, lambda g: random_k_junta_unitary(4, 1, g)[0], "Yes",
                   trials=30, k=1, eps1=0.3, eps2=0.5, budget_ceiling=None)
    assert wins >= 27


@pytest.mark.slow
def test_gapless_soundness_far():
    wins = success(gapless_tolerant_junta_tester, lambda g: far_instance(4, 1, 0.6, g).obj, "No",
                   trials=30, k=1, eps1=0.1, eps2=0.6)
    assert wins >= 27


def test_gapless_error_chain(rng):
    # |estimate - dist(U, J_k)| <= 2 sqrt(tau) on a handful of runs
    for _ in range(3):
        u = haar_random_unitary(16, rng)
        v = gapless_tolerant_junta_tester(u, 1, 0.1, 0.6, rng)
        exact = min(dist_to_junta_on(u, [i]) for i in range(1, 5))
        assert abs(v.statistic - exact) <= 2 * math.sqrt(v.params["tau"])
