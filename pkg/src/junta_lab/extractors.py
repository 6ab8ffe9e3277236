"""High-influence coordinate extraction from Fourier or Influence samples."""

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import ParameterError
from .linalg import Unitary
from .samplers import fourier_sample_masks, influence_sample_masks

EPS = 0.5
DELTA = 0.01


@dataclass(frozen=True)
class ExtractorConfig:
    k: int
    tau: float
    eps: float = EPS
    delta: float = DELTA

    def __post_init__(self):
        if self.k < 1:
            raise ParameterError(f"k must be >= 1, got {self.k}")
        if not 0 < self.tau < 1:
            raise ParameterError(f"tau must lie in (0, 1), got {self.tau}")

    @property
    def rounds(self):
        """T = ceil((2k / (eps^2 tau^2)) ln(k^2 / (delta tau^2)))."""
        k, tau, eps, delta = self.k, self.tau, self.eps, self.delta
        return math.ceil((2 * k / (eps**2 * tau**2)) * math.log(k**2 / (delta * tau**2)))

    @property
    def size_bound(self):
        return 2 * self.k**2 / self.tau**2


def _check(u, k):
    if not isinstance(u, Unitary):
        u = Unitary(u)
    if not 1 <= k < u.n:
        raise ParameterError(f"need 1 <= k < n, got k={k}, n={u.n}")
    return u


def select_from_counts(counts, cfg, normalized=False):
    """Threshold the per-coordinate counts.

    With raw counts (Fourier variant) the cut is e_i >= (1-eps) T tau^2 / k.
    With ``normalized=True`` (local variant) e_i is divided by T first and
    compared with (1-eps) tau^2 / k.
    """
    t = cfg.rounds
    if normalized:
        e = counts / t
        cut = (1 - cfg.eps) * cfg.tau**2 / cfg.k
    else:
        e = counts
        cut = (1 - cfg.eps) * t * cfg.tau**2 / cfg.k
    return frozenset(int(i) + 1 for i in np.nonzero(e >= cut)[0])


def extract_from_masks(masks, n, cfg, normalized=False):
    counts = kernels.extractor_counts(np.ascontiguousarray(masks, dtype=np.int64), n, cfg.k)
    return select_from_counts(counts, cfg, normalized)


def coordinate_extractor(u, k, tau, rng, ledger=None):
    """High degree-k influence coordinates from T Fourier samples.

    Every sample with |x| <= k votes for each qubit in its support.
    """
    u = _check(u, k)
    cfg = ExtractorConfig(k, tau)
    masks = fourier_sample_masks(u, cfg.rounds, rng, ledger)
    return extract_from_masks(masks, u.n, cfg)


def coordinate_extractor_local(u, k, tau, rng, ledger=None, gates="IHR"):
    """Same vote, fed by Influence-Sample outcomes; counts are normalised by T."""
    u = _check(u, k)
    cfg = ExtractorConfig(k, tau)
    masks = influence_sample_masks(u, cfg.rounds, rng, ledger, gates)
    return extract_from_masks(masks, u.n, cfg, normalized=True)


def local_vote_probabilities(law, n, k):
    """p_i = Pr[|x| <= k, x_i != 0] under an exact Influence-Sample law."""
    xs = np.arange(2**n)
    weight = np.array([bin(int(x)).count("1") for x in xs])
    low = (weight >= 1) & (weight <= k)
    return np.array([law[low & (((xs >> (n - i)) & 1) == 1)].sum() for i in range(1, n + 1)])


__all__ = [
    "ExtractorConfig",
    "coordinate_extractor",
    "coordinate_extractor_local",
    "extract_from_masks",
    "select_from_counts",
    "local_vote_probabilities",
]
