"""Backend selection for the word sweeps.

The compiled extension is used when it imports; otherwise the pure-Python
reference runs.  Set ``PARTIALGROUPS_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os

from . import _kernels_py

try:
    if os.environ.get("PARTIALGROUPS_PURE_PYTHON"):
        raise ImportError("pure Python requested")
    from . import _kernels as _compiled
except ImportError:
    _compiled = None

MAX_SWEEP_LEN = 10


def available_backends() -> list[str]:
    return ["compiled", "python"] if _compiled is not None else ["python"]


def get_backend(name: str | None = None):
    """Return the kernel module called ``name`` (default: the fastest available)."""
    if name is None:
        return _compiled or _kernels_py
    if name == "python":
        return _kernels_py
    if name == "compiled":
        if _compiled is None:
            raise RuntimeError("compiled kernels are not built")
        return _compiled
    raise ValueError(f"unknown backend {name!r}")


BACKEND = "compiled" if _compiled is not None else "python"


def tables(L, backend: str | None = None):
    """Table arguments for ``L`` in the representation the backend expects."""
    a = L.automaton
    if (backend or BACKEND) == "python":
        return L.inv_list, L.binary_rows, a.rows, a.unknown_list
    return L.inv, L.binary, a.trans, a.unknown


def axiom_sweep(L, max_len: int, backend: str | None = None):
    _check_len(max_len)
    inv, binary, trans, unknown = tables(L, backend)
    return get_backend(backend).axiom_sweep(inv, binary, trans, unknown, L.e, max_len)


def lemma_sweep(L, max_len: int, words=None, powers: int = 3, backend: str | None = None):
    _check_len(max_len)
    inv, binary, trans, unknown = tables(L, backend)
    return get_backend(backend).lemma_sweep(inv, binary, trans, unknown, L.e, max_len, words, powers)


def sd3_sweep(L, dec_x, dec_n, max_len: int, backend: str | None = None):
    _check_len(max_len)
    _, binary, trans, unknown = tables(L, backend)
    conj = L.conj_table
    if (backend or BACKEND) == "python":
        conj = conj.tolist()
    return get_backend(backend).sd3_sweep(binary, trans, unknown, conj, list(dec_x), list(dec_n), L.e, max_len)


def _check_len(max_len: int) -> None:
    if not 0 <= max_len <= MAX_SWEEP_LEN:
        raise ValueError(f"sweep length must lie in 0..{MAX_SWEEP_LEN}")
