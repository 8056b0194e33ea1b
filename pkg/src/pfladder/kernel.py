"""Backend selection for the hot kernels.

The compiled extension ``_kernel_c`` is used when it was built; otherwise
the pure-Python module ``_kernel_py`` provides the same functions.
"""

from . import _kernel_py

try:
    from . import _kernel_c
except ImportError:  # extension not built
    _kernel_c = None

BACKENDS = {"python": _kernel_py}
if _kernel_c is not None:
    BACKENDS["cython"] = _kernel_c

_active = _kernel_c if _kernel_c is not None else _kernel_py


def backend_name() -> str:
    return "cython" if _active is _kernel_c and _kernel_c is not None else "python"


def get():
    return _active


def use_backend(name: str):
    """Switch the active backend; returns the previous backend name."""
    global _active
    if name not in BACKENDS:
        raise ValueError(f"backend {name!r} is not available; have {sorted(BACKENDS)}")
    prev = backend_name()
    _active = BACKENDS[name]
    return prev


def clear_caches():
    """Drop the Python kernel's step cache, for cold timings."""
    _kernel_py.choose.cache_clear()
