"""Kernel selection: compiled extension when importable, pure Python otherwise.

Set ``COMPDIFF_PURE=1`` in the environment to force the fallback.
"""

from __future__ import annotations

import os

from compdiff import _pure

NEUTRAL = _pure.NEUTRAL
UNDOMINATED = _pure.UNDOMINATED

_impl = _pure
if os.environ.get("COMPDIFF_PURE", "") not in ("1", "true", "yes"):
    try:
        from compdiff import _kernels as _impl  # type: ignore[no-redef]
    except ImportError:  # extension not built
        _impl = _pure

BACKEND = "compiled" if _impl is not _pure else "pure"

simulate = _impl.simulate
deviation_utility = _impl.deviation_utility
first_improvement = _impl.first_improvement
extra_potential = _impl.extra_potential
