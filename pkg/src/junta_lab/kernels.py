"""Backend selection for the hot loops.

The compiled ``_kernels`` extension is used when it imports; otherwise the
numpy versions in ``_fallback`` take over. Set ``JUNTA_LAB_PURE=1`` to force
the fallback.
"""

import os

from . import _fallback

if os.environ.get("JUNTA_LAB_PURE", "") not in ("", "0"):
    _impl = _fallback
else:
    try:
        from . import _kernels as _impl
    except ImportError:  # extension not built
        _impl = _fallback

BACKEND = _impl.BACKEND

fwht = _impl.fwht
pauli_butterfly = _impl.pauli_butterfly
support_counts = _impl.support_counts
extractor_counts = _impl.extractor_counts
xor_diagonal_sums = _impl.xor_diagonal_sums


def backends():
    """Return every importable backend module, fallback first."""
    found = [_fallback]
    try:
        from . import _kernels
    except ImportError:
        pass
    else:
        found.append(_kernels)
    return found
