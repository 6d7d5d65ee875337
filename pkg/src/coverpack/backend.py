"""Backend selection for the distance core.

The hot inner loops (capped BFS variants) exist twice: a Cython extension
``_ckern`` and a pure-Python twin ``_pykern`` with the same call surface.
``COVERPACK_BACKEND`` forces the choice (``c`` or ``python``); the default
``auto`` prefers the compiled module and silently falls back.
"""

import os

_choice = os.environ.get("COVERPACK_BACKEND", "auto").lower()

if _choice not in ("auto", "c", "python"):
    raise RuntimeError(f"unknown COVERPACK_BACKEND value: {_choice!r}")

if _choice in ("auto", "c"):
    try:
        from . import _ckern as _impl

        BACKEND = "c"
    except ImportError:
        if _choice == "c":
            raise
        from . import _pykern as _impl

        BACKEND = "python"
else:
    from . import _pykern as _impl

    BACKEND = "python"

bfs_limited = _impl.bfs_limited
bfs_avoiding = _impl.bfs_avoiding
ball_of = _impl.ball_of
ball_multi = _impl.ball_multi
