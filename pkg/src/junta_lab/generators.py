"""Certified instance construction for tester experiments."""

import math
from dataclasses import dataclass, field

import numpy as np

from . import subsets
from .boolean import BooleanFunction, dist_to_k_junta_bool
from .errors import CapacityError, GenerationError, ParameterError
from .linalg import Unitary, embed_operator, haar_random_unitary, hermitian_exp
from .oracles import NO, certify
from .pauli import dist_to_k_junta

MAX_ATTEMPTS = 100
BISECTION_STEPS = 40
MAX_PERTURB_QUBITS = 6


@dataclass(frozen=True)
class Instance:
    """A generated object with its exact distance to the k-junta class."""

    obj: object
    distance: float
    junta_set: tuple = None
    info: dict = field(default_factory=dict)


def _random_subset(n, k, rng):
    return tuple(sorted(int(i) + 1 for i in rng.choice(n, size=k, replace=False)))


def random_k_junta_unitary(n, k, rng):
    """Haar unitary on a uniformly random k-subset T, identity elsewhere."""
    if not 1 <= k <= n:
        raise ParameterError(f"need 1 <= k <= n, got k={k}, n={n}")
    t = _random_subset(n, k, rng)
    core = haar_random_unitary(2**k, rng)
    return Unitary(embed_operator(core.matrix, t, n)), t


def hermitian_direction(dim, rng):
    """GUE-style Hermitian matrix scaled to unit operator norm."""
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    g = (z + z.conj().T) / 2
    return g / np.max(np.abs(np.linalg.eigvalsh(g)))


def perturbed_junta_unitary(n, k, eps_target, rng):
    """A k-junta rotated by exp(i theta G) until its distance lands in [eps/2, eps].

    theta is bisected on the exact oracle distance. Attempts whose distance
    never enters the band (non-monotone or saturating sweeps) are resampled.
    Returns ``(Unitary, certified distance)``.
    """
    if n > MAX_PERTURB_QUBITS:
        raise CapacityError(f"perturbation limited to n <= {MAX_PERTURB_QUBITS}")
    if not 0 <= eps_target < 1:
        raise ParameterError(f"eps_target must lie in [0, 1), got {eps_target}")
    w, _ = random_k_junta_unitary(n, k, rng)
    if eps_target == 0:
        return w, 0.0
    lo_band, hi_band = eps_target / 2, eps_target
    for _ in range(MAX_ATTEMPTS):
        g = hermitian_direction(2**n, rng)

        def at(theta):
            u = Unitary(w.matrix @ hermitian_exp(g, theta))
            return u, dist_to_k_junta(u, k)[0]

        lo, hi = 0.0, math.pi
        for _ in range(BISECTION_STEPS):
            mid = (lo + hi) / 2
            u, d = at(mid)
            if lo_band <= d <= hi_band:
                return u, d
            if d > hi_band:
                hi = mid
            else:
                lo = mid
        w, _ = random_k_junta_unitary(n, k, rng)
    raise GenerationError(f"bisection failed to reach [{lo_band}, {hi_band}] after {MAX_ATTEMPTS} resamples")


def random_k_junta_boolean(n, k, rng):
    """Uniformly random function of the variables in a random k-subset T."""
    if not 1 <= k <= n:
        raise ParameterError(f"need 1 <= k <= n, got k={k}, n={n}")
    t = _random_subset(n, k, rng)
    core = 1 - 2 * rng.integers(0, 2, size=2**k)
    idx = np.arange(2**n)
    z = np.zeros(2**n, dtype=np.int64)
    for pos, i in enumerate(t):
        z |= ((idx >> (n - i)) & 1) << (k - 1 - pos)
    return BooleanFunction(core[z]), t


def perturbed_junta_boolean(n, k, eps, rng):
    """A random k-junta with floor(eps 2^n) outputs flipped; returns (f, exact distance)."""
    g, _ = random_k_junta_boolean(n, k, rng)
    flips = int(math.floor(eps * 2**n))
    table = g.table.astype(np.int64)
    pos = rng.choice(2**n, size=flips, replace=False)
    table[pos] *= -1
    f = BooleanFunction(table)
    return f, dist_to_k_junta_bool(f, k)[0]


def far_instance(n, k, eps2, rng, kind="unitary"):
    """Rejection-sample Haar unitaries or uniform functions until certified NO.

    Returns an ``Instance`` whose ``info`` records attempts and acceptance rate.
    """
    if kind not in ("unitary", "boolean"):
        raise ParameterError(f"kind must be 'unitary' or 'boolean', got {kind!r}")
    best = 0.0
    for attempt in range(1, MAX_ATTEMPTS + 1):
        if kind == "unitary":
            obj = haar_random_unitary(2**n, rng)
        else:
            obj = BooleanFunction(1 - 2 * rng.integers(0, 2, size=2**n))
        cert = certify(obj, k, 0.0, eps2)
        best = max(best, cert.distance)
        if cert.classification == NO:
            return Instance(obj, cert.distance, cert.witness,
                            {"attempts": attempt, "acceptance_rate": 1 / attempt})
    raise GenerationError(
        f"no {kind} instance reached distance {eps2} from {k}-juntas in {MAX_ATTEMPTS} draws "
        f"(max observed {best:.4f})"
    )


# --- hard Boolean instances ------------------------------------------------

def appendix_h(a, c1, sign, bit):
    """Band function on {0,1}^a selected by (sign, bit), returned in ±1 form.

    Bands: |x| > a/2 + c1, a/2 - c1 <= |x| <= a/2 + c1, |x| < a/2 - c1.
    Output 0 maps to +1 and 1 maps to -1.
    """
    if not 1 <= a <= 14:
        raise ParameterError(f"a must lie in [1, 14], got {a}")
    if not 0 < c1 <= 0.1 * math.sqrt(a):
        raise ParameterError(f"c1 must lie in (0, 0.1*sqrt(a)], got {c1}")
    if sign not in ("+", "-") or bit not in (0, 1):
        raise ParameterError(f"bad selector ({sign!r}, {bit!r})")
    weight = np.array([bin(x).count("1") for x in range(2**a)])
    high = weight > a / 2 + c1
    low = weight < a / 2 - c1
    if sign == "+":
        out = (high | low) if bit == 1 else np.zeros(2**a, dtype=bool)
    else:
        out = high if bit == 0 else low
    return BooleanFunction.from_bits(out.astype(np.int64))


def appendix_preset(k):
    """a = k, n = 2k, c1 = 0.005 sqrt(k)."""
    return {"k": k, "a": k, "n": 2 * k, "c1": 0.005 * math.sqrt(k)}


@dataclass(frozen=True)
class AppendixDraw:
    f: BooleanFunction
    action: tuple
    control: tuple
    r: np.ndarray


def sample_dyes_dno(k, a, c1, rng, which):
    """Draw f_yes or f_no on n = k + a variables with its hidden (A, r)."""
    if which not in ("yes", "no"):
        raise ParameterError(f"which must be 'yes' or 'no', got {which!r}")
    n = k + a
    if n > 14:
        raise CapacityError(f"n = k + a = {n} exceeds 14")
    sign = "+" if which == "yes" else "-"
    h0 = appendix_h(a, c1, sign, 0).table
    h1 = appendix_h(a, c1, sign, 1).table
    action = _random_subset(n, a, rng)
    control = subsets.complement(action, n)
    r = rng.integers(0, 2, size=2 ** len(control))
    idx = np.arange(2**n)
    xa = np.zeros(2**n, dtype=np.int64)
    xc = np.zeros(2**n, dtype=np.int64)
    for pos, i in enumerate(action):
        xa |= ((idx >> (n - i)) & 1) << (a - 1 - pos)
    for pos, i in enumerate(control):
        xc |= ((idx >> (n - i)) & 1) << (len(control) - 1 - pos)
    table = np.where(r[xc] == 0, h0[xa], h1[xa])
    return AppendixDraw(BooleanFunction(table), action, control, r)
