"""Hot numeric kernels with two interchangeable backends.

The numba backend compiles the per-box interval arithmetic loops; the
numpy backend vectorizes the same operations across the box batch.  Both
produce identical certificates (outward-rounded double intervals), so the
solver logic upstream never needs to know which one is active.

Selection: environment variable ``LENSROOTS_KERNELS`` set to ``numba``,
``numpy`` or ``auto`` (default; numba when importable).
"""

import os

_requested = os.environ.get("LENSROOTS_KERNELS", "auto").strip().lower()
if _requested not in {"auto", "numba", "numpy"}:
    raise RuntimeError(
        f"LENSROOTS_KERNELS={_requested!r}: expected 'auto', 'numba' or 'numpy'")

impl = None
if _requested in ("auto", "numba"):
    try:
        from . import numba_impl as impl  # noqa: F811
    except ImportError:
        if _requested == "numba":
            raise
        impl = None
if impl is None:
    from . import numpy_impl as impl  # noqa: F811

BACKEND = impl.NAME

eval_points = impl.eval_points
enclose = impl.enclose
enclose_taylor = impl.enclose_taylor
krawczyk = impl.krawczyk
jacobian_range = impl.jacobian_range


def backend_name() -> str:
    return BACKEND
