"""Selects the generation core at import time.

The compiled extension is preferred; the pure-NumPy core is the fallback.
Set FRACCOUPLE_BACKEND=python (or =compiled) to force a choice, e.g. for
the backend benchmark or to debug a build.
"""

import os

_choice = os.environ.get("FRACCOUPLE_BACKEND", "auto").strip().lower()

if _choice in ("", "auto"):
    try:
        from . import _core as core
    except ImportError:
        from . import _core_py as core
elif _choice in ("compiled", "c"):
    from . import _core as core
elif _choice in ("python", "numpy"):
    from . import _core_py as core
else:
    raise ImportError(
        f"FRACCOUPLE_BACKEND={_choice!r}: expected auto, compiled, or python"
    )


def backend_name() -> str:
    """Name of the active core: 'compiled' or 'python'."""
    return core.backend_name()
