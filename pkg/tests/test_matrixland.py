from __future__ import annotations

import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bruhatstrata.combinatorics import ReducedWord, canonical_word, parse_permutation
from bruhatstrata.errors import NotFactorizableError, RankMismatchError
from bruhatstrata.matrixland import (
    TRANSVERSAL,
    Polynomial2,
    RationalMatrix,
    bruhat_perm,
    factor,
    lambda_gen,
    p_values,
    product_from,
    symbolic_product,
    transversal_z7,
    zeta,
)

from .strategies import nonzero_rationals, rationals, reduced_words

W45132 = ReducedWord((2, 3, 1, 2, 4, 3, 2), 4)
L0_ROWS = [
    [1, 0, 0, 0, 0],
    [-3, 1, 0, 0, 0],
    [-3, Fraction(-3, 2), 1, 0, 0],
    [0, -7, 3, 1, 0],
    [0, 4, -2, -2, 1],
]
T0 = (1, 2, -3, Fraction(-1, 2), -2, 1, -2)


def evaluate(poly: dict, t: dict[int, Fraction]) -> Fraction:
    total = Fraction(0)
    for mono, coef in poly.items():
        term = Fraction(coef)
        for k in mono:
            term *= t[k]
        total += term
    return total


def oracle_factor(word: ReducedWord, L: RationalMatrix) -> tuple[Fraction, ...]:
    """Solve entry equations one unknown at a time, scanning entries in row order."""
    polys = symbolic_product(word)
    size = word.n + 1
    known: dict[int, Fraction] = {}
    progress = True
    while progress and len(known) < len(word):
        progress = False
        for r, c in itertools.product(range(size), repeat=2):
            poly = polys[r][c]
            unknown = {k for mono in poly for k in mono} - set(known)
            if len(unknown) != 1:
                continue
            (k,) = unknown
            lin = {m - {k}: v for m, v in poly.items() if k in m}
            const = {m: v for m, v in poly.items() if k not in m}
            a = evaluate(lin, known)
            if a == 0:
                continue
            known[k] = (L[r + 1, c + 1] - evaluate(const, known)) / a
            progress = True
    return tuple(known[k] for k in range(len(word)))


class TestRationalMatrix:
    def test_basic(self):
        m = RationalMatrix.from_rows([[1, 2], [3, 4]])
        assert m.shape == (2, 2)
        assert m[2, 1] == 3
        assert m.det() == -2
        assert m.rank() == 2
        assert m.transpose()[1, 2] == 3
        assert (m @ RationalMatrix.identity(2)) == m

    def test_rank(self):
        assert RationalMatrix.from_rows([[1, 2, 3], [2, 4, 6], [0, 0, 1]]).rank() == 2
        assert RationalMatrix.from_rows([["1/2", "1/3"], ["3/2", 1]]).rank() == 1

    def test_shape_mismatch(self):
        with pytest.raises(RankMismatchError):
            RationalMatrix.identity(2) @ RationalMatrix.identity(3)

    @given(st.lists(rationals, min_size=9, max_size=9))
    def test_det_multiplicative_and_rank(self, xs):
        a = RationalMatrix.from_rows([xs[0:3], xs[3:6], xs[6:9]])
        b = a.transpose()
        assert (a @ b).det() == a.det() * b.det()
        assert (a.rank() == 3) == (a.det() != 0)
        assert a.rank() == b.rank()

    def test_serialization(self):
        m = RationalMatrix.from_rows(L0_ROWS)
        assert RationalMatrix.from_json(m.to_json()) == m
        assert m.to_json()[2][1] == "-3/2"
        csv_text = "\n".join(",".join(str(Fraction(x)) for x in row) for row in L0_ROWS)
        assert RationalMatrix.from_csv(csv_text) == m


class TestProducts:
    def test_lambda(self):
        m = lambda_gen(2, 5, 3)
        assert m[3, 2] == 5 and m.is_unit_lower_triangular()

    @given(reduced_words(max_n=4), st.data())
    @settings(max_examples=30)
    def test_product_matches_generator_chain(self, word, data):
        t = data.draw(st.lists(rationals, min_size=len(word), max_size=len(word)))
        chain = RationalMatrix.identity(word.n + 1)
        for i, tk in zip(word.letters, t):
            chain = chain @ lambda_gen(i, tk, word.n)
        assert product_from(word, t) == chain

    def test_symbolic_product_agrees(self):
        t = dict(enumerate(Fraction(x) for x in T0))
        polys = symbolic_product(W45132)
        m = product_from(W45132, T0)
        for r, c in itertools.product(range(5), repeat=2):
            assert evaluate(polys[r][c], t) == m[r + 1, c + 1]


class TestFactor:
    def test_reference_matrix(self):
        L0 = RationalMatrix.from_rows(L0_ROWS)
        assert factor(W45132, L0) == tuple(Fraction(x) for x in T0)
        assert oracle_factor(W45132, L0) == tuple(Fraction(x) for x in T0)
        assert bruhat_perm(L0) == parse_permutation("45132")

    @given(reduced_words(max_n=4), st.data())
    @settings(max_examples=60)
    def test_round_trip(self, word, data):
        t = tuple(data.draw(st.lists(nonzero_rationals, min_size=len(word), max_size=len(word))))
        L = product_from(word, t)
        assert factor(word, L) == t
        assert bruhat_perm(L) == word.permutation

    def test_words_where_greedy_elimination_stalls(self):
        word = ReducedWord((1, 2, 3, 2, 1, 2), 3)
        t = (2, -1, 3, Fraction(1, 2), -4, 5)
        assert factor(word, product_from(word, t)) == tuple(Fraction(x) for x in t)

    def test_vanishing_parameter_rejected(self):
        word = canonical_word(parse_permutation("4312"))
        with pytest.raises(NotFactorizableError):
            factor(word, product_from(word, (1, 0, 1, 1, 1)))

    def test_not_triangular_rejected(self):
        upper = [[int(r == c) for c in range(5)] for r in range(5)]
        upper[0][1] = 1
        with pytest.raises(NotFactorizableError):
            factor(W45132, RationalMatrix.from_rows(upper))

    def test_shape_rejected(self):
        with pytest.raises(RankMismatchError):
            factor(W45132, RationalMatrix.identity(3))


class TestBruhat:
    def test_identity_and_antidiagonal(self):
        assert bruhat_perm(RationalMatrix.identity(3)) == parse_permutation("123")
        anti = RationalMatrix.from_rows([[0, 0, 1], [0, 1, 0], [1, 0, 0]])
        assert bruhat_perm(anti) == parse_permutation("321")

    def test_singular_rejected(self):
        with pytest.raises(RankMismatchError):
            bruhat_perm(RationalMatrix.from_rows([[1, 1], [1, 1]]))


class TestRotations:
    @given(rationals)
    def test_zeta_orthogonal(self, t):
        assert zeta(2, t, 3).is_orthogonal()

    def test_transversal_orthogonal(self):
        assert transversal_z7(0, 0).is_orthogonal()
        assert transversal_z7(Fraction(1, 3), -2).is_orthogonal()


class TestPolynomials:
    def test_derivative(self):
        p = Polynomial2.of({(2, 1): 3, (0, 1): -1})
        assert p.derivative(0) == Polynomial2.of({(1, 1): 6})
        assert p.derivative(1) == Polynomial2.of({(2, 0): 3, (0, 0): -1})
        assert p(2, 3) == 33

    def test_transversal_at_origin(self):
        assert p_values(0, 0) == (0, 0, 0)
        assert TRANSVERSAL.gradients(0, 0) == ((1, 0), (0, 1), (-20, 16))
        assert TRANSVERSAL.pairwise_independent()
