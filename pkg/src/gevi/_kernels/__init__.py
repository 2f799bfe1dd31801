"""Hot numeric kernels with two interchangeable backends.

The two inner loops that dominate pipeline runtime are k-clique
enumeration (community extraction) and inversion counting (crossing
counts during layout sweeps).  Both exist twice:

* ``numba_backend``: @njit-compiled, the default when numba imports.
* ``python_backend``: pure numpy/python, always available.

Selection happens once at import via the ``GEVI_KERNELS`` env var:
``auto`` (default), ``numba``, or ``python``.  Both backends are pure
integer code, so every downstream float (measures, coordinates) is
bit-identical regardless of backend.

``benchmarks/bench_kernels.py`` compares the two.
"""

import os

_requested = os.environ.get("GEVI_KERNELS", "auto").strip().lower()
if _requested not in ("auto", "numba", "python"):
    raise RuntimeError(
        f"GEVI_KERNELS={_requested!r}: expected 'auto', 'numba' or 'python'"
    )

if _requested == "python":
    _impl_name = "python"
else:
    try:
        from gevi._kernels import numba_backend as _impl  # noqa: F401

        _impl_name = "numba"
    except ImportError:
        if _requested == "numba":
            raise
        _impl_name = "python"

if _impl_name == "python":
    from gevi._kernels import python_backend as _impl  # noqa: F811


def backend_name() -> str:
    """Name of the active kernel backend ('numba' or 'python')."""
    return _impl_name


enumerate_k_cliques_ids = _impl.enumerate_k_cliques_ids
count_inversions = _impl.count_inversions

__all__ = ["backend_name", "enumerate_k_cliques_ids", "count_inversions"]
