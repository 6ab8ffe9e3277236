"""Tolerant k-junta testers for unitaries and Boolean functions.

Constant-gap testers (Fourier and Influence-Sample variants) estimate the
outside influence of every size-k subset of the extracted coordinates. The
gapless tester estimates the distance to each J_T directly from Hadamard-test
amplitude estimates and a nuclear norm.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels, subsets
from .boolean import BooleanFunction, embed_unitary
from .errors import BudgetExceededError, CapacityError, ParameterError
from .extractors import ExtractorConfig, extract_from_masks
from .linalg import Unitary, nuclear_norm
from .pauli import MAX_SPECTRUM_QUBITS
from .samplers import (
    QueryLedger,
    fourier_sample_masks,
    hadamard_estimates,
    hadamard_shots,
    influence_sample_masks,
)

SQRT2 = math.sqrt(2)
SQRT3 = math.sqrt(3)
MAX_LOCAL_QUBITS = 10
MAX_WARMUP_K = 4
MAX_GAPLESS_K = 3
MAX_GAPLESS_QUBITS = 6
GAPLESS_DELTA = 0.01
DEFAULT_BUDGET = 10**16


@dataclass(frozen=True)
class TesterVerdict:
    verdict: str
    statistic: float
    threshold: float
    witness_T: tuple = None
    candidates: tuple = ()
    queries: dict = field(default_factory=dict)
    params: dict = field(default_factory=dict)

    @property
    def accepted(self):
        return self.verdict == "Yes"


def estimation_rounds(s, k, delta):
    """M = ceil(ln(200 (C(s, k) + 1)) / (2 delta^2))."""
    return math.ceil(math.log(200 * (math.comb(s, k) + 1)) / (2 * delta**2))


def candidate_subsets(s, k):
    """Size-k subsets of ``s`` in lexicographic order, or ``[s]`` when |s| < k."""
    if len(s) < k:
        return [tuple(sorted(s))]
    return subsets.k_subsets(s, k)


def _check_k(k, n, n_max):
    if n > n_max:
        raise CapacityError(f"n={n} exceeds the limit {n_max} for this tester")
    if not 1 <= k < n:
        raise ParameterError(f"need 1 <= k < n, got k={k}, n={n}")


def _constant_gap(u, k, delta, threshold, rng, ledger, draw, normalized, params):
    n = u.n
    cfg = ExtractorConfig(k, math.sqrt(delta))
    ledger.mark("start")
    masks = draw(u, cfg.rounds, rng, ledger)
    s = extract_from_masks(masks, n, cfg, normalized)
    ledger.mark("extractor")
    m = estimation_rounds(len(s), k, delta)
    # all estimation samples are drawn before any subset consumes them
    samples = draw(u, m, rng, ledger)
    ledger.mark("estimation")
    sets = candidate_subsets(s, k)
    full = 2**n - 1
    outside = np.array([full ^ subsets.to_mask(t, n) for t in sets], dtype=np.int64)
    counts = kernels.support_counts(np.ascontiguousarray(samples, dtype=np.int64), outside)
    stats = counts / m
    j = int(np.argmin(stats))
    stat = float(stats[j])
    ledger.mark("subset_loop")
    params = dict(params, k=k, delta=delta, tau=cfg.tau, T_rounds=cfg.rounds, M=m)
    return TesterVerdict(
        verdict="Yes" if stat <= threshold else "No",
        statistic=stat,
        threshold=threshold,
        witness_T=sets[j],
        candidates=tuple(sorted(s)),
        queries=ledger.snapshot(),
        params=params,
    )


def _fourier_draw(u, m, rng, ledger):
    return fourier_sample_masks(u, m, rng, ledger)


def _influence_draw(u, m, rng, ledger):
    return influence_sample_masks(u, m, rng, ledger)


def _unitary(u):
    return u if isinstance(u, Unitary) else Unitary(u)


GAP_FACTORS = {
    "alg3": (2 * SQRT2, "2*sqrt(2)"),
    "alg3-bool": (4.0, "4"),
    "alg7": (2 * SQRT3, "2*sqrt(3)"),
    "alg7-bool": (6.0, "6"),
    "alg8": (1.0, "1"),
}


def check_gap(name, eps1, eps2):
    """Raise ``ParameterError`` unless (eps1, eps2) meets the tester's gap condition."""
    if name not in GAP_FACTORS:
        raise ParameterError(f"unknown tester {name!r}")
    if not (0 < eps1 and eps2 < 1):
        raise ParameterError(f"need 0 < eps1 and eps2 < 1, got ({eps1}, {eps2})")
    factor, text = GAP_FACTORS[name]
    if not factor * eps1 < eps2:
        raise ParameterError(f"gap condition eps2 > {text}*eps1 violated: ({eps1}, {eps2})")


def tolerant_junta_tester(u, k, eps1, eps2, rng, ledger=None):
    """Constant-gap tester for unitaries (requires eps2 > 2√2 eps1)."""
    check_gap("alg3", eps1, eps2)
    u = _unitary(u)
    _check_k(k, u.n, MAX_SPECTRUM_QUBITS)
    delta = (eps2**2 / 4 - 2 * eps1**2) / 3
    return _constant_gap(
        u, k, delta, 2 * eps1**2 + 2 * delta, rng, ledger or QueryLedger(),
        _fourier_draw, False, {"tester": "alg3", "eps1": eps1, "eps2": eps2},
    )


def tolerant_boolean_junta_tester(f, k, eps1, eps2, rng, ledger=None):
    """Constant-gap tester for Boolean functions via U_f (requires eps2 > 4 eps1)."""
    check_gap("alg3-bool", eps1, eps2)
    _check_k(k, f.n, MAX_SPECTRUM_QUBITS)
    delta = (eps2 - 4 * eps1) / 3
    return _constant_gap(
        embed_unitary(f), k, delta, 4 * eps1 + 2 * delta, rng, ledger or QueryLedger(),
        _fourier_draw, False, {"tester": "alg3-bool", "eps1": eps1, "eps2": eps2},
    )


def tolerant_junta_tester_local(u, k, eps1, eps2, rng, ledger=None):
    """Single-qubit-operation tester for unitaries (requires eps2 > 2√3 eps1)."""
    check_gap("alg7", eps1, eps2)
    u = _unitary(u)
    _check_k(k, u.n, MAX_LOCAL_QUBITS)
    delta = (eps2**2 / 6 - 2 * eps1**2) / 3
    return _constant_gap(
        u, k, delta, 2 * eps1**2 + 2 * delta, rng, ledger or QueryLedger(),
        _influence_draw, True, {"tester": "alg7", "eps1": eps1, "eps2": eps2},
    )


def tolerant_boolean_junta_tester_local(f, k, eps1, eps2, rng, ledger=None):
    """Single-qubit-operation tester for Boolean functions (requires eps2 > 6 eps1)."""
    check_gap("alg7-bool", eps1, eps2)
    _check_k(k, f.n, MAX_LOCAL_QUBITS)
    delta = (2 * eps2 / 3 - 4 * eps1) / 3
    return _constant_gap(
        embed_unitary(f), k, delta, 4 * eps1 + 2 * delta, rng, ledger or QueryLedger(),
        _influence_draw, True, {"tester": "alg7-bool", "eps1": eps1, "eps2": eps2},
    )


# --- distance estimation --------------------------------------------------

def warmup_rounds(k, tau, delta):
    """M = ceil((2^{k+1} / tau^2) ln(4 / delta))."""
    return math.ceil((2 ** (k + 1) / tau**2) * math.log(4 / delta))


def entry_precision(k, tau):
    return tau / 2 ** (k / 2 + 1)


def warmup_shots(k, tau, delta):
    """Hadamard shots per quadrature for one entry estimate.

    Each of the M * 4^k estimates gets failure budget delta / (2 M 4^k).
    """
    m = warmup_rounds(k, tau, delta)
    return hadamard_shots(entry_precision(k, tau), delta / (2 * m * 4**k))


def warmup_cost(k, tau, delta):
    """Controlled-U applications of one estimator call: M * 4^k * 2 * shots."""
    return warmup_rounds(k, tau, delta) * 4**k * 2 * warmup_shots(k, tau, delta)


def _placement(positions, n):
    """Basis-index contribution of each assignment to ``positions``."""
    k = len(positions)
    vals = np.arange(2**k, dtype=np.int64)
    out = np.zeros(2**k, dtype=np.int64)
    for j, q in enumerate(positions):
        out |= ((vals >> (k - 1 - j)) & 1) << (n - q)
    return out


def warmup_matrix(u, subset, tau, delta, rng, ledger=None):
    """Estimate of Tr_{T̄}(U) assembled from Hadamard-test amplitude estimates."""
    u = _unitary(u)
    t = subsets.normalize(subset, u.n)
    k = len(t)
    if k > MAX_WARMUP_K:
        raise CapacityError(f"|T|={k} exceeds the estimator limit {MAX_WARMUP_K}")
    m = warmup_rounds(k, tau, delta)
    shots = warmup_shots(k, tau, delta)
    inside = _placement(t, u.n)
    outside = _placement(subsets.complement(t, u.n), u.n)
    acc = np.zeros((2**k, 2**k), dtype=complex)
    chunk = max(1, (1 << 20) // 4**k)
    for start in range(0, m, chunk):
        c = min(chunk, m - start)
        ls = outside[rng.integers(0, outside.shape[0], size=c)]
        rows = inside[:, None] + ls[None, :]
        amps = u.matrix[rows[:, None, :], rows[None, :, :]]
        acc += hadamard_estimates(amps, shots, rng).sum(axis=2)
    if ledger is not None:
        ledger.controlled_U_applications += m * 4**k * 2 * shots
    return acc * (2 ** (u.n - k) / m)


def warmup_estimator(u, subset, tau, delta, rng, ledger=None):
    """Estimate dist(U, J_T) as sqrt(1 - ||Ũ_T||_* / N), radicand floored at 0."""
    u = _unitary(u)
    est = warmup_matrix(u, subset, tau, delta, rng, ledger)
    return float(np.sqrt(max(0.0, 1.0 - nuclear_norm(est) / u.dim)))


@dataclass(frozen=True)
class GaplessConfig:
    eps1: float
    eps2: float
    k: int
    delta: float = GAPLESS_DELTA

    @property
    def eps(self):
        return self.eps2 - self.eps1

    @property
    def tau(self):
        return self.eps**2 / 16

    @property
    def threshold(self):
        return self.eps1 + self.eps / 2

    def delta_prime(self, s):
        return self.delta / math.comb(max(s, self.k), self.k)

    def rounds(self, s):
        return warmup_rounds(self.k, self.tau, self.delta_prime(s))

    def entry_precision(self):
        return entry_precision(self.k, self.tau)


def projected_gapless_cost(n, k, eps1, eps2, delta=GAPLESS_DELTA):
    """Worst-case query cost of the gapless tester before it runs.

    Uses |S| <= min(n, 2k^2/tau^2) candidate coordinates.
    """
    cfg = GaplessConfig(eps1, eps2, k, delta)
    s_max = max(k, min(n, math.floor(2 * k**2 / cfg.tau**2)))
    n_sets = math.comb(s_max, k)
    dp = cfg.delta_prime(s_max)
    per_set = warmup_cost(k, cfg.tau, dp)
    return {
        "fourier_sample_calls": ExtractorConfig(k, cfg.tau).rounds,
        "max_candidate_sets": n_sets,
        "warmup_rounds_per_set": warmup_rounds(k, cfg.tau, dp),
        "shots_per_quadrature": warmup_shots(k, cfg.tau, dp),
        "controlled_U_applications": n_sets * per_set,
    }


def _pad(s, k, n):
    s = sorted(s)
    for i in range(1, n + 1):
        if len(s) >= k:
            break
        if i not in s:
            s.append(i)
    return tuple(sorted(s))


def gapless_tolerant_junta_tester(u, k, eps1, eps2, rng, ledger=None, budget_ceiling=DEFAULT_BUDGET):
    """Tolerant tester for any 0 < eps1 < eps2 < 1 via nuclear-norm estimates.

    Raises ``BudgetExceededError`` before any query if the projected number
    of controlled-U applications exceeds ``budget_ceiling``.
    """
    check_gap("alg8", eps1, eps2)
    u = _unitary(u)
    if k > MAX_GAPLESS_K:
        raise CapacityError(f"k={k} exceeds the gapless limit {MAX_GAPLESS_K}")
    _check_k(k, u.n, MAX_GAPLESS_QUBITS)
    cost = projected_gapless_cost(u.n, k, eps1, eps2)
    if budget_ceiling is not None and cost["controlled_U_applications"] > budget_ceiling:
        raise BudgetExceededError(
            f"projected {cost['controlled_U_applications']:.3e} controlled-U applications "
            f"exceed the ceiling {budget_ceiling:.3e}",
            cost,
        )
    ledger = ledger or QueryLedger()
    cfg = GaplessConfig(eps1, eps2, k)
    ecfg = ExtractorConfig(k, cfg.tau)
    ledger.mark("start")
    masks = fourier_sample_masks(u, ecfg.rounds, rng, ledger)
    s = extract_from_masks(masks, u.n, ecfg)
    ledger.mark("extractor")
    padded = _pad(s, k, u.n)
    sets = subsets.k_subsets(padded, k)
    dp = cfg.delta_prime(len(padded))
    estimates = [warmup_estimator(u, t, cfg.tau, dp, rng, ledger) for t in sets]
    ledger.mark("estimation")
    j = int(np.argmin(estimates))
    stat = float(estimates[j])
    return TesterVerdict(
        verdict="Yes" if stat <= cfg.threshold else "No",
        statistic=stat,
        threshold=cfg.threshold,
        witness_T=sets[j],
        candidates=tuple(sorted(s)),
        queries=ledger.snapshot(),
        params={
            "tester": "alg8", "k": k, "eps1": eps1, "eps2": eps2, "eps": cfg.eps,
            "tau": cfg.tau, "delta": cfg.delta, "delta_prime": dp,
            "T_rounds": ecfg.rounds, "M": cfg.rounds(len(padded)),
            "shots": warmup_shots(k, cfg.tau, dp), "padded_S": padded,
        },
    )


TESTERS = {
    "alg3": tolerant_junta_tester,
    "alg3-bool": tolerant_boolean_junta_tester,
    "alg7": tolerant_junta_tester_local,
    "alg7-bool": tolerant_boolean_junta_tester_local,
    "alg8": gapless_tolerant_junta_tester,
}

BOOLEAN_TESTERS = {"alg3-bool", "alg7-bool"}


def run_tester(name, instance, k, eps1, eps2, rng, ledger=None, **kwargs):
    """Dispatch by tester name; Boolean testers expect a ``BooleanFunction``."""
    if name not in TESTERS:
        raise ParameterError(f"unknown tester {name!r}")
    if (name in BOOLEAN_TESTERS) != isinstance(instance, BooleanFunction):
        raise ParameterError(f"tester {name} got the wrong instance type {type(instance).__name__}")
    return TESTERS[name](instance, k, eps1, eps2, rng, ledger, **kwargs)
