"""Backend selection for the tracing kernels.

The compiled ``_ctrace`` extension is used when it imports; otherwise, or when
the environment variable ``KBSM_PURE_PYTHON`` is set to a non-empty value other
than ``0``, the pure-Python ``_pytrace`` twin is used.  Both expose ``trace``
and ``state_sum`` with identical results.
"""

import os

from . import _pytrace

CUP, CAP, OVER, UNDER, PUNCT = _pytrace.CUP, _pytrace.CAP, _pytrace.OVER, _pytrace.UNDER, _pytrace.PUNCT

_impl = _pytrace
BACKEND = "python"
if os.environ.get("KBSM_PURE_PYTHON", "0") in ("", "0"):
    try:
        from . import _ctrace as _impl  # noqa: F811
        BACKEND = "cython"
    except ImportError:
        pass

trace = _impl.trace
state_sum = _impl.state_sum
KernelError = (_pytrace.KernelError,) if _impl is _pytrace else (_pytrace.KernelError, _impl.KernelError)


def backends():
    """Map backend name to module for every importable backend."""
    out = {"python": _pytrace}
    try:
        from . import _ctrace
        out["cython"] = _ctrace
    except ImportError:
        pass
    return out
