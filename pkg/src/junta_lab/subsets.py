"""Helpers for subsets of [n] (1-based) and their bit masks.

Qubit/variable ``i`` maps to bit ``n - i`` so that variable 1 is the most
significant bit of a basis index, the ordering used throughout the package.
"""

from itertools import combinations

from .errors import ParameterError


def normalize(subset, n):
    """Validate ``subset`` against [n] and return it as a sorted tuple."""
    items = sorted(set(int(i) for i in subset))
    if items and (items[0] < 1 or items[-1] > n):
        raise ParameterError(f"subset {items} is not contained in [1, {n}]")
    return tuple(items)


def to_mask(subset, n):
    mask = 0
    for i in subset:
        mask |= 1 << (n - i)
    return mask


def from_mask(mask, n):
    return tuple(i for i in range(1, n + 1) if (mask >> (n - i)) & 1)


def complement(subset, n):
    s = set(subset)
    return tuple(i for i in range(1, n + 1) if i not in s)


def k_subsets(pool, k):
    """All size-k subsets of ``pool`` in lexicographic order."""
    return list(combinations(sorted(pool), k))
