"""Selects the orbit-sweep kernel at import time.

The compiled extension is used when it was built; setting
``RACKENUM_PURE_PYTHON=1`` forces the pure-Python fallback.
"""

import os

from . import _sweep_py

try:
    if os.environ.get("RACKENUM_PURE_PYTHON"):
        raise ImportError("pure Python requested")
    from . import _sweep as _compiled
except ImportError:
    _compiled = None

BACKENDS = {"python": _sweep_py.orbit_minima}
if _compiled is not None:
    BACKENDS["compiled"] = _compiled.orbit_minima

BACKEND = "compiled" if _compiled is not None else "python"
orbit_minima = BACKENDS[BACKEND]
