# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled enumeration kernels; same interface and results as ``_pykernels``."""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int8_t, int32_t, int64_t
from libc.stdlib cimport malloc, free
from libc.string cimport memcpy
from cpython.bytes cimport PyBytes_FromStringAndSize

from ._pykernels import _generator_tables

cnp.import_array()

BACKEND = "cython"

# dense mantissas stay far below this for every element of the lift group
cdef enum:
    MAX_MANTISSA = 127


cdef struct Walk:
    int n
    int size
    int ell
    int prefix_len
    int32_t *letters
    int32_t *partner      # [n][size]
    int32_t *sign         # [n][size]
    int64_t *stack        # [(ell + 1)][size]
    int *h                # [ell + 1]
    char *keybuf          # size + 1


cdef inline void step(Walk *w, int depth, int s):
    cdef int size = w.size
    cdef int gen = w.letters[depth] - 1
    cdef int64_t *x = w.stack + depth * size
    cdef int64_t *y = x + size
    cdef int32_t *partner = w.partner + gen * size
    cdef int32_t *sgn = w.sign + gen * size
    cdef int b
    cdef int64_t odd = 0
    for b in range(size):
        y[b] = x[b] + s * sgn[b] * x[partner[b]]
        odd |= y[b] & 1
    cdef int h = w.h[depth] + 1
    while h >= 2 and odd == 0:
        odd = 0
        for b in range(size):
            y[b] >>= 1
            odd |= y[b] & 1
        h -= 2
    w.h[depth + 1] = h


cdef object leaf_key(Walk *w):
    cdef int size = w.size
    cdef int64_t *x = w.stack + w.ell * size
    cdef int b
    w.keybuf[0] = <char>w.h[w.ell]
    for b in range(size):
        if x[b] > MAX_MANTISSA or x[b] < -MAX_MANTISSA:
            raise OverflowError("mantissa exceeds the dense key range")
        w.keybuf[b + 1] = <char><int8_t>x[b]
    return PyBytes_FromStringAndSize(w.keybuf, size + 1)


cdef int visit(Walk *w, int depth, int64_t v, int32_t[::1] ids, dict index, list elements) except -1:
    cdef object key
    cdef object j
    if depth == w.ell:
        key = leaf_key(w)
        j = index.get(key)
        if j is None:
            j = len(elements)
            index[key] = j
            elements.append(key)
        ids[v] = j
        return 0
    cdef int64_t bit = (<int64_t>1) << (depth - w.prefix_len)
    step(w, depth, 1)
    visit(w, depth + 1, v, ids, index, elements)
    step(w, depth, -1)
    visit(w, depth + 1, v | bit, ids, index, elements)
    return 0


cdef tuple decode(bytes key, int size):
    cdef const char *p = key
    cdef int b
    return (<int>p[0], tuple([<int><int8_t>p[b + 1] for b in range(size)]))


cdef void setup(Walk *w, letters, int n, int prefix_len):
    cdef int i, b
    w.n = n
    w.size = 1 << (n + 1)
    w.ell = len(letters)
    w.prefix_len = prefix_len
    w.letters = <int32_t *>malloc(max(w.ell, 1) * sizeof(int32_t))
    w.partner = <int32_t *>malloc(n * w.size * sizeof(int32_t))
    w.sign = <int32_t *>malloc(n * w.size * sizeof(int32_t))
    w.stack = <int64_t *>malloc((w.ell + 1) * w.size * sizeof(int64_t))
    w.h = <int *>malloc((w.ell + 1) * sizeof(int))
    w.keybuf = <char *>malloc(w.size + 1)
    for i in range(w.ell):
        w.letters[i] = letters[i]
    tables = _generator_tables(n)
    for i in range(n):
        partner, sign = tables[i]
        for b in range(w.size):
            w.partner[i * w.size + b] = partner[b]
            w.sign[i * w.size + b] = sign[b]
    for b in range(w.size):
        w.stack[b] = 0
    w.stack[0] = 1
    w.h[0] = 0


cdef void teardown(Walk *w):
    free(w.letters)
    free(w.partner)
    free(w.sign)
    free(w.stack)
    free(w.h)
    free(w.keybuf)


def lift_one(letters, int n, long long v):
    cdef Walk w
    cdef int k
    letters = [int(i) for i in letters]
    setup(&w, letters, n, 0)
    try:
        for k in range(w.ell):
            step(&w, k, -1 if (v >> k) & 1 else 1)
        key = leaf_key(&w)
        return decode(key, w.size)
    finally:
        teardown(&w)


def lift_table(letters, int n, int prefix_len=0, long long prefix=0):
    cdef Walk w
    cdef int k
    letters = [int(i) for i in letters]
    setup(&w, letters, n, prefix_len)
    try:
        for k in range(prefix_len):
            step(&w, k, -1 if (prefix >> k) & 1 else 1)
        ids = np.empty((<int64_t>1) << (w.ell - prefix_len), dtype=np.int32)
        index = {}
        elements = []
        # the prefix product sits at stack level prefix_len
        if prefix_len:
            memcpy(w.stack, w.stack + prefix_len * w.size, w.size * sizeof(int64_t))
            w.h[0] = w.h[prefix_len]
            for k in range(w.ell - prefix_len):
                w.letters[k] = w.letters[k + prefix_len]
            w.ell -= prefix_len
            w.prefix_len = 0
        visit(&w, 0, 0, ids, index, elements)
        return ids, [decode(key, w.size) for key in elements]
    finally:
        teardown(&w)


cdef inline int64_t find(int64_t[::1] parent, int64_t a) nogil:
    while parent[a] != a:
        parent[a] = parent[parent[a]]
        a = parent[a]
    return a


def click_components(ids_in, faces, int ell):
    cdef int64_t size = (<int64_t>1) << ell
    cdef int32_t[::1] ids = np.ascontiguousarray(ids_in, dtype=np.int32)
    roots = np.arange(size, dtype=np.int64)
    degree_arr = np.zeros(size, dtype=np.int32)
    cdef int64_t[::1] parent = roots
    cdef int32_t[::1] degree = degree_arr
    cdef int64_t v, u, ra, rb, b1, b2, mask
    cdef int64_t n_edges = 0
    cdef int64_t bad = -1
    for k1, k2, m in faces:
        b1 = (<int64_t>1) << k1
        b2 = (<int64_t>1) << k2
        mask = m
        with nogil:
            for v in range(size):
                if (v & b1) and not (v & b2):
                    u = v ^ mask
                    if ids[u] != ids[v]:
                        bad = v
                        break
                    degree[v] += 1
                    degree[u] += 1
                    n_edges += 1
                    ra = find(parent, v)
                    rb = find(parent, u)
                    if ra != rb:
                        if ra < rb:
                            parent[rb] = ra
                        else:
                            parent[ra] = rb
        if bad >= 0:
            raise ValueError(f"click of vector {bad} leaves its bucket")
    for v in range(size):
        parent[v] = find(parent, v)
    return roots, degree_arr, n_edges
