"""Backend selection for the hot kernels.

The compiled ``_ckernels`` extension is used when it imports; otherwise the
pure-Python ``_pykernels`` module.  Setting ``NSEMIGROUP_PURE_PYTHON=1``
forces the fallback.
"""
import os

from . import _pykernels as python_backend

compiled_backend = None
if not os.environ.get("NSEMIGROUP_PURE_PYTHON"):
    try:
        from . import _ckernels as compiled_backend
    except ImportError:
        compiled_backend = None

_impl = compiled_backend or python_backend

BACKEND = _impl.BACKEND
table_is_associative = _impl.table_is_associative
scan_tables = _impl.scan_tables
poly_is_associative = _impl.poly_is_associative
scan_polys = _impl.scan_polys


def available_backends():
    """Backends importable in this process, compiled first."""
    return [b for b in (compiled_backend, python_backend) if b is not None]
