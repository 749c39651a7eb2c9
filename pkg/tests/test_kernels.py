from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings

from bruhatstrata import kernels
from bruhatstrata.combinatorics import faces, longest_word
from bruhatstrata.spinweyl import element_from_dense, lift_word

from .strategies import reduced_words

BACKENDS = kernels.available_backends()


def bits_to_signs(v: int, ell: int) -> tuple[int, ...]:
    return tuple(-1 if v >> k & 1 else 1 for k in range(ell))


def face_triples(word):
    return [(f.k1 - 1, f.k2 - 1, f.mask()) for f in faces(word)]


def test_python_backend_always_available():
    assert "python" in BACKENDS
    assert kernels.backend_module("python").BACKEND == "python"
    with pytest.raises(ValueError):
        kernels.backend_module("fortran")


@pytest.mark.parametrize("backend", BACKENDS)
@given(word=reduced_words(max_n=4))
@settings(max_examples=25)
def test_lift_one_matches_generic_product(backend, word):
    ell = len(word)
    for v in range(min(1 << ell, 16)):
        h, mantissas = kernels.lift_one(word.letters, word.n, v, backend=backend)
        assert element_from_dense(h, mantissas, word.n) == lift_word(word, bits_to_signs(v, ell))


@pytest.mark.parametrize("backend", BACKENDS)
@given(word=reduced_words(max_n=4))
@settings(max_examples=25)
def test_lift_table_buckets_agree_with_lift_one(backend, word):
    ids, elements = kernels.lift_table(word.letters, word.n, backend=backend)
    assert len(ids) == 1 << len(word)
    for v, j in enumerate(ids):
        assert tuple(elements[j][1]) == tuple(kernels.lift_one(word.letters, word.n, v, "python")[1])


@pytest.mark.skipif("cython" not in BACKENDS, reason="compiled kernels not built")
@pytest.mark.parametrize("n", [3, 4])
def test_backends_agree_on_longest_word(n):
    word = longest_word(n)
    ids_py, el_py = kernels.lift_table(word.letters, n, backend="python")
    ids_c, el_c = kernels.lift_table(word.letters, n, backend="cython")
    assert [(h, tuple(m)) for h, m in el_py] == [(h, tuple(m)) for h, m in el_c]
    assert np.array_equal(np.asarray(ids_py), np.asarray(ids_c))
    r_py = kernels.click_components(ids_py, face_triples(word), len(word), backend="python")
    r_c = kernels.click_components(ids_c, face_triples(word), len(word), backend="cython")
    assert np.array_equal(np.asarray(r_py[0]), np.asarray(r_c[0]))
    assert np.array_equal(np.asarray(r_py[1]), np.asarray(r_c[1]))
    assert r_py[2] == r_c[2]


def test_sharded_table_is_a_relabeling():
    word = longest_word(4)
    ids1, el1 = kernels.lift_table(word.letters, 4)
    ids2, el2 = kernels.lift_table(word.letters, 4, threads=3)
    key1 = [tuple(el1[j][1]) + (el1[j][0],) for j in ids1]
    key2 = [tuple(el2[j][1]) + (el2[j][0],) for j in ids2]
    assert key1 == key2
    assert len(el1) == len(el2)


@pytest.mark.parametrize("backend", BACKENDS)
def test_click_components_degree_sum(backend):
    word = longest_word(3)
    ids, _ = kernels.lift_table(word.letters, 3, backend=backend)
    roots, degree, n_edges = kernels.click_components(ids, face_triples(word), len(word), backend=backend)
    assert int(np.sum(degree)) == 2 * n_edges
    # every face contributes one edge per vertex with the right corner pattern
    assert n_edges == len(faces(word)) * (1 << (len(word) - 2))
    for v, r in enumerate(roots):
        assert ids[v] == ids[r]


def test_environment_forces_python_backend():
    import os
    import subprocess
    import sys

    env = dict(os.environ, BRUHATSTRATA_BACKEND="python")
    proc = subprocess.run(
        [sys.executable, "-c", "from bruhatstrata import kernels; print(kernels.BACKEND)"],
        capture_output=True,
        text=True,
        env=env,
        check=True,
    )
    assert proc.stdout.strip() == "python"
