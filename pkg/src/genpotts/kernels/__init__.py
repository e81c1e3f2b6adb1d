"""Backend selection for the heat-bath chain kernel.

The compiled extension is preferred when importable; the pure-Python twin is
the fallback.  Setting the environment variable GENPOTTS_PURE to a nonempty
value (other than "0") forces the fallback.  Both backends consume the same
uniform variates in the same order, so chains are bit-identical either way.
"""

from __future__ import annotations

import os

if os.environ.get("GENPOTTS_PURE", "0") not in ("", "0"):
    from . import _heatbath_py as _impl

    BACKEND = "python"
else:
    try:
        from . import _heatbath as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        from . import _heatbath_py as _impl

        BACKEND = "python"

run_sweeps = _impl.run_sweeps


def available_backends() -> dict:
    """Every importable backend, keyed by name (for benchmarks and tests)."""
    from . import _heatbath_py

    found = {"python": _heatbath_py}
    try:
        from . import _heatbath  # type: ignore[attr-defined]

        found["cython"] = _heatbath
    except ImportError:
        pass
    return found
