"""Pure-Python versions of the enumeration kernels.

Elements of the finite lift group are handled in a dense form
``(halfexp, mantissas)`` where ``mantissas[blade]`` is an integer and the
coefficient of ``blade`` is ``mantissas[blade] * 2**(-halfexp/2)``.  The form
is canonical: ``halfexp`` is as small as possible, so equal elements have
equal dense forms.

Sign vectors are bitmasks: bit k set means the sign at 1-indexed position
k + 1 is -1.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .clifford import blade_product_sign

BACKEND = "python"


@lru_cache(maxsize=None)
def _generator_tables(n: int) -> tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]:
    """Per generator i: partner blade index and sign for right multiplication by a^_i."""
    size = 1 << (n + 1)
    tables = []
    for i in range(n):
        m = (1 << i) | (1 << (i + 1))
        partner = tuple(b ^ m for b in range(size))
        sign = tuple(blade_product_sign(b ^ m, m) for b in range(size))
        tables.append((partner, sign))
    return tuple(tables)


def _step(x: list[int], h: int, partner, sign, s: int) -> tuple[list[int], int]:
    # x * (1 + s a^_i) / sqrt2
    y = [xb + s * sb * x[pb] for xb, sb, pb in zip(x, sign, partner)]
    h += 1
    while h >= 2 and not any(v & 1 for v in y):
        y = [v >> 1 for v in y]
        h -= 2
    return y, h


def lift_one(letters, n: int, v: int) -> tuple[int, tuple[int, ...]]:
    """Dense form of the lift of a single sign vector."""
    tables = _generator_tables(n)
    x = [0] * (1 << (n + 1))
    x[0] = 1
    h = 0
    for k, i in enumerate(letters):
        partner, sign = tables[i - 1]
        x, h = _step(x, h, partner, sign, -1 if v >> k & 1 else 1)
    return h, tuple(x)


def lift_table(letters, n: int, prefix_len: int = 0, prefix: int = 0):
    """Bucket every sign vector of ``letters`` by the value of its lift.

    Only vectors whose low ``prefix_len`` bits equal ``prefix`` are visited.
    Returns ``(ids, elements)``: ``ids[v >> prefix_len]`` indexes ``elements``,
    the distinct dense forms in first-seen order.
    """
    letters = [int(i) for i in letters]
    ell = len(letters)
    tables = _generator_tables(n)
    x = [0] * (1 << (n + 1))
    x[0] = 1
    h = 0
    for k in range(prefix_len):
        partner, sign = tables[letters[k] - 1]
        x, h = _step(x, h, partner, sign, -1 if prefix >> k & 1 else 1)

    free = ell - prefix_len
    ids = np.empty(1 << free, dtype=np.int32)
    index: dict[tuple[int, tuple[int, ...]], int] = {}
    elements: list[tuple[int, tuple[int, ...]]] = []

    def visit(depth: int, v: int, x: list[int], h: int) -> None:
        if depth == ell:
            key = (h, tuple(x))
            j = index.get(key)
            if j is None:
                j = index[key] = len(elements)
                elements.append(key)
            ids[v] = j
            return
        partner, sign = tables[letters[depth] - 1]
        bit = 1 << (depth - prefix_len)
        y, hy = _step(x, h, partner, sign, 1)
        visit(depth + 1, v, y, hy)
        y, hy = _step(x, h, partner, sign, -1)
        visit(depth + 1, v | bit, y, hy)

    visit(prefix_len, 0, x, h)
    return ids, elements


def click_components(ids, faces, ell: int):
    """Union the endpoints of every click move over all 2**ell sign vectors.

    ``faces`` is a sequence of ``(k1, k2, mask)`` with 0-indexed corner
    positions and the boundary bitmask.  Returns ``(roots, degree, n_edges)``.
    Raises ValueError when a click leaves its bucket.
    """
    size = 1 << ell
    ids = [int(j) for j in ids]
    parent = list(range(size))
    degree = [0] * size
    n_edges = 0

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for k1, k2, mask in faces:
        b1 = 1 << k1
        b2 = 1 << k2
        for v in range(size):
            # corner k1 negative, corner k2 positive: one generator per edge
            if v & b1 and not v & b2:
                u = v ^ mask
                if ids[u] != ids[v]:
                    raise ValueError(f"click of vector {v} leaves its bucket")
                degree[v] += 1
                degree[u] += 1
                n_edges += 1
                ra, rb = find(v), find(u)
                if ra != rb:
                    if ra < rb:
                        parent[rb] = ra
                    else:
                        parent[ra] = rb
    roots = np.fromiter((find(v) for v in range(size)), dtype=np.int64, count=size)
    return roots, np.asarray(degree, dtype=np.int32), n_edges
