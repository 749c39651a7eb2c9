"""Backend selection for the enumeration kernels.

The compiled module ``_ckernels`` is used when it was built; otherwise the
pure-Python ``_pykernels`` module is used.  Setting the environment variable
``BRUHATSTRATA_BACKEND=python`` forces the fallback.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from types import ModuleType

import numpy as np

from . import _pykernels


def _load() -> ModuleType:
    if os.environ.get("BRUHATSTRATA_BACKEND", "").lower() == "python":
        return _pykernels
    try:
        from . import _ckernels
    except ImportError:
        return _pykernels
    return _ckernels


_impl = _load()
BACKEND: str = _impl.BACKEND


def backend_module(name: str | None = None) -> ModuleType:
    """The kernel module for ``name`` ("python" or "cython"), or the active one."""
    if name is None:
        return _impl
    if name == "python":
        return _pykernels
    if name == "cython":
        from . import _ckernels

        return _ckernels
    raise ValueError(f"unknown backend {name!r}")


def available_backends() -> list[str]:
    names = ["python"]
    try:
        from . import _ckernels  # noqa: F401
    except ImportError:
        return names
    return names + ["cython"]


def lift_one(letters, n: int, v: int, backend: str | None = None):
    return backend_module(backend).lift_one(letters, n, v)


def _shard(args):
    letters, n, prefix_len, prefix, backend = args
    return backend_module(backend).lift_table(letters, n, prefix_len, prefix)


def lift_table(letters, n: int, threads: int = 1, backend: str | None = None):
    """``(ids, elements)`` over all sign vectors; see ``_pykernels.lift_table``.

    With ``threads > 1`` the vectors are split by their first few signs and the
    shards run in worker processes, merged in shard order.  Bucket numbering
    then differs from a serial run by a relabeling; callers that need a
    canonical order sort the elements.
    """
    letters = [int(i) for i in letters]
    ell = len(letters)
    mod = backend_module(backend)
    if threads <= 1 or ell < 8:
        return mod.lift_table(letters, n)

    prefix_len = min(ell - 1, max(1, (threads - 1).bit_length() + 1))
    jobs = [(letters, n, prefix_len, p, mod.BACKEND) for p in range(1 << prefix_len)]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        shards = list(pool.map(_shard, jobs))

    ids = np.empty(1 << ell, dtype=np.int32)
    index: dict = {}
    elements: list = []
    shard_maps = []
    for _, shard_elements in shards:
        remap = np.empty(len(shard_elements), dtype=np.int32)
        for j, key in enumerate(shard_elements):
            g = index.get(key)
            if g is None:
                g = index[key] = len(elements)
                elements.append(key)
            remap[j] = g
        shard_maps.append(remap)
    for p, ((shard_ids, _), remap) in enumerate(zip(shards, shard_maps)):
        # vector v = (r << prefix_len) | p
        ids[p :: 1 << prefix_len] = remap[shard_ids]

    return ids, elements


def click_components(ids, faces, ell: int, backend: str | None = None):
    """``(roots, degree, n_edges)``; see ``_pykernels.click_components``."""
    return backend_module(backend).click_components(ids, faces, ell)
