"""Exact rational matrices: unipotent lower-triangular products, their factorization,
Bruhat permutations by rank jumps, and the rational rotations ``zeta_i(t)``.

No floating point is used anywhere here; every entry is a ``Fraction``.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .combinatorics import Permutation, ReducedWord
from .errors import InvalidWordError, NotFactorizableError, RankMismatchError

__all__ = [
    "RationalMatrix",
    "TransversalPolynomials",
    "lambda_gen",
    "product_from",
    "symbolic_product",
    "factor",
    "bruhat_perm",
    "rank_profile",
    "zeta",
    "transversal_z7",
    "p_values",
    "TRANSVERSAL",
]

Rational = Fraction | int


def _frac(x: Rational | str) -> Fraction:
    return Fraction(x)


@dataclass(frozen=True)
class RationalMatrix:
    """Square or rectangular matrix of exact rationals, rows as tuples."""

    rows: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        rows = tuple(tuple(_frac(x) for x in r) for r in self.rows)
        if rows and len({len(r) for r in rows}) != 1:
            raise ValueError("ragged matrix")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def identity(cls, size: int) -> RationalMatrix:
        return cls(tuple(tuple(int(i == j) for j in range(size)) for i in range(size)))

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[Rational | str]]) -> RationalMatrix:
        return cls(tuple(tuple(r) for r in rows))

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.rows[0]) if self.rows else 0

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        """1-indexed entry access."""
        i, j = ij
        return self.rows[i - 1][j - 1]

    def __matmul__(self, other: RationalMatrix) -> RationalMatrix:
        if self.shape[1] != other.shape[0]:
            raise RankMismatchError(f"cannot multiply {self.shape} by {other.shape}")
        cols = list(zip(*other.rows))
        return RationalMatrix(
            tuple(tuple(sum(a * b for a, b in zip(r, c)) for c in cols) for r in self.rows)
        )

    def transpose(self) -> RationalMatrix:
        return RationalMatrix(tuple(zip(*self.rows)))

    def submatrix(self, rows: Iterable[int], cols: Iterable[int]) -> RationalMatrix:
        """Rows and columns given as 1-indexed iterables."""
        cols = list(cols)
        return RationalMatrix(tuple(tuple(self.rows[i - 1][j - 1] for j in cols) for i in rows))

    def _integer_rows(self) -> list[list[int]]:
        out = []
        for r in self.rows:
            d = 1
            for x in r:
                d = d * x.denominator // _gcd(d, x.denominator)
            out.append([int(x * d) for x in r])
        return out

    def rank(self) -> int:
        """Rank by fraction-free (Bareiss) elimination on integer-scaled rows."""
        a = self._integer_rows()
        if not a:
            return 0
        m, n = len(a), len(a[0])
        rank, prev = 0, 1
        for col in range(n):
            pivot = next((r for r in range(rank, m) if a[r][col]), None)
            if pivot is None:
                continue
            a[rank], a[pivot] = a[pivot], a[rank]
            for r in range(rank + 1, m):
                for c in range(col + 1, n):
                    a[r][c] = (a[r][c] * a[rank][col] - a[rank][c] * a[r][col]) // prev
                a[r][col] = 0
            prev = a[rank][col]
            rank += 1
            if rank == m:
                break
        return rank

    def det(self) -> Fraction:
        m, n = self.shape
        if m != n:
            raise RankMismatchError("determinant of a non-square matrix")
        a = [list(r) for r in self.rows]
        det = Fraction(1)
        for col in range(n):
            pivot = next((r for r in range(col, n) if a[r][col]), None)
            if pivot is None:
                return Fraction(0)
            if pivot != col:
                a[col], a[pivot] = a[pivot], a[col]
                det = -det
            p = a[col][col]
            det *= p
            for r in range(col + 1, n):
                f = a[r][col] / p
                if f:
                    for c in range(col, n):
                        a[r][c] -= f * a[col][c]
        return det

    def is_unit_lower_triangular(self) -> bool:
        m, n = self.shape
        return m == n and all(
            self.rows[i][j] == (i == j) for i in range(n) for j in range(i, n)
        )

    def is_orthogonal(self) -> bool:
        return self @ self.transpose() == RationalMatrix.identity(self.shape[0])

    # ------------------------------------------------------------------ io

    def to_json(self) -> list[list[str]]:
        return [[_frac_str(x) for x in r] for r in self.rows]

    @classmethod
    def from_json(cls, data: Sequence[Sequence[str | int]]) -> RationalMatrix:
        return cls(tuple(tuple(Fraction(x) for x in r) for r in data))

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_csv(cls, text: str) -> RationalMatrix:
        rows = [r for r in csv.reader(io.StringIO(text)) if any(c.strip() for c in r)]
        return cls(tuple(tuple(Fraction(c.strip()) for c in r) for r in rows))

    def __str__(self) -> str:
        return "\n".join(" ".join(_frac_str(x) for x in r) for r in self.rows)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


# ------------------------------------------------------------------ lower triangular


def _check_gen(j: int, n: int) -> None:
    if not 1 <= j <= n:
        raise IndexError(f"generator index {j} outside 1..{n}")


def lambda_gen(j: int, t: Rational, n: int) -> RationalMatrix:
    """Identity of size n+1 plus ``t`` at entry (j+1, j)."""
    _check_gen(j, n)
    rows = [[int(r == c) for c in range(n + 1)] for r in range(n + 1)]
    rows[j][j - 1] = _frac(t)
    return RationalMatrix.from_rows(rows)


def product_from(word: ReducedWord, t: Sequence[Rational]) -> RationalMatrix:
    if len(t) != len(word):
        raise InvalidWordError(f"{len(t)} parameters for a word of length {len(word)}")
    m = [[Fraction(int(r == c)) for c in range(word.n + 1)] for r in range(word.n + 1)]
    for i, tk in zip(word.letters, t):
        tk = _frac(tk)
        # right multiplication by lambda_i(t): column i += t * column i+1
        for row in m:
            row[i - 1] += tk * row[i]
    return RationalMatrix.from_rows(m)


# multilinear polynomial in t_1..t_l: frozenset of variable indices -> integer coefficient
Poly = dict[frozenset[int], int]


def symbolic_product(word: ReducedWord) -> list[list[Poly]]:
    """Entries of ``product_from(word, t)`` as polynomials in the t's (0-indexed variables)."""
    size = word.n + 1
    m: list[list[Poly]] = [
        [({frozenset(): 1} if r == c else {}) for c in range(size)] for r in range(size)
    ]
    for k, i in enumerate(word.letters):
        for row in m:
            target = dict(row[i - 1])
            for mono, coef in row[i].items():
                key = mono | {k}
                target[key] = target.get(key, 0) + coef
                if target[key] == 0:
                    del target[key]
            row[i - 1] = target
    return m


def _peel_parameter(L: list[list[Fraction]], i: int) -> Fraction | None:
    """The t with ``L * lambda_i(-t)`` in the next smaller cell, or None.

    For each block of rows r..n+1, column i minus t times column i+1 must fall
    into the span of columns 1..i-1 of the block at the right t.  Elimination
    against those columns leaves residual equations ``a_k - t * b_k = 0``.
    """
    size = len(L)
    for r in range(size):
        rows = [row[: i - 1] + [row[i - 1], row[i]] for row in L[r:]]
        width = i - 1
        pivot_row = 0
        for c in range(width):
            p = next((q for q in range(pivot_row, len(rows)) if rows[q][c]), None)
            if p is None:
                continue
            rows[pivot_row], rows[p] = rows[p], rows[pivot_row]
            for q in range(len(rows)):
                if q != pivot_row and rows[q][c]:
                    f = rows[q][c] / rows[pivot_row][c]
                    rows[q] = [x - f * y for x, y in zip(rows[q], rows[pivot_row])]
            pivot_row += 1
        residual = [(row[width], row[width + 1]) for row in rows[pivot_row:]]
        candidates = {a / b for a, b in residual if b}
        if len(candidates) != 1:
            continue
        (t,) = candidates
        if all(a == t * b for a, b in residual):
            return t
    return None


def factor(word: ReducedWord, L: RationalMatrix) -> tuple[Fraction, ...]:
    """The unique parameters t, all nonzero, with ``product_from(word, t) == L``.

    Factors are peeled off from the right: the last parameter is the value at
    which removing it drops the matrix into the cell of the shortened word.
    """
    size = word.n + 1
    if L.shape != (size, size):
        raise RankMismatchError(f"matrix shape {L.shape} does not match rank {word.n}")
    if not L.is_unit_lower_triangular():
        raise NotFactorizableError("matrix is not unit lower triangular")
    m = [list(row) for row in L.rows]
    t: list[Fraction] = []
    for k in range(len(word) - 1, -1, -1):
        i = word.letters[k]
        tk = _peel_parameter(m, i)
        if tk is None:
            raise NotFactorizableError(f"no parameter found at position {k + 1}")
        if tk == 0:
            raise NotFactorizableError(f"parameter t_{k + 1} would vanish")
        for row in m:
            row[i - 1] -= tk * row[i]
        t.append(tk)
    t.reverse()
    if product_from(word, t) != L:
        raise NotFactorizableError("matrix is not in the image of the word's product map")
    return tuple(t)


def rank_profile(M: RationalMatrix) -> list[list[int]]:
    """``r[i][j]`` = rank of rows >= i, columns <= j (1-indexed, zero-padded borders)."""
    size = M.shape[0]
    r = [[0] * (size + 2) for _ in range(size + 2)]
    for i in range(1, size + 1):
        for j in range(1, size + 1):
            r[i][j] = M.submatrix(range(i, size + 1), range(1, j + 1)).rank()
    return r


def bruhat_perm(M: RationalMatrix) -> Permutation:
    """The permutation sigma with M in U_0 P_sigma U_1, read off from rank jumps."""
    size, cols = M.shape
    if size != cols or M.det() == 0:
        raise RankMismatchError("Bruhat permutation needs an invertible square matrix")
    r = rank_profile(M)
    images = [0] * size
    for i in range(1, size + 1):
        for j in range(1, size + 1):
            if r[i][j] - r[i + 1][j] - r[i][j - 1] + r[i + 1][j - 1]:
                images[i - 1] = j
    return Permutation(tuple(images))


# ------------------------------------------------------------------ rotations


def zeta(i: int, t: Rational, n: int) -> RationalMatrix:
    """Rotation by 2*arctan(t) in the (i, i+1) plane, with rational entries."""
    _check_gen(i, n)
    t = _frac(t)
    c = (1 - t * t) / (1 + t * t)
    s = 2 * t / (1 + t * t)
    rows = [[Fraction(int(r == q)) for q in range(n + 1)] for r in range(n + 1)]
    rows[i - 1][i - 1], rows[i - 1][i] = c, -s
    rows[i][i - 1], rows[i][i] = s, c
    return RationalMatrix.from_rows(rows)


_Z7_TAIL = ((1, Fraction(-1, 2)), (2, Fraction(-1, 2)), (4, Fraction(1, 2)), (3, Fraction(1, 2)), (2, Fraction(1, 2)))


def transversal_z7(x1: Rational, x2: Rational) -> RationalMatrix:
    """The 5x5 rotation product through the dimension-2 stratum of [45132]."""
    factors = [(2, -1 + _frac(x1)), (3, -1 + _frac(x2)), *_Z7_TAIL]
    m = RationalMatrix.identity(5)
    for i, t in factors:
        m = m @ zeta(i, t, 4)
    return m


# ------------------------------------------------------------------ polynomials


@dataclass(frozen=True)
class Polynomial2:
    """Bivariate integer polynomial as ``{(a, b): coeff}`` for ``x1**a * x2**b``."""

    terms: tuple[tuple[tuple[int, int], int], ...]

    @classmethod
    def of(cls, terms: Mapping[tuple[int, int], int]) -> Polynomial2:
        return cls(tuple(sorted((k, v) for k, v in terms.items() if v)))

    def __call__(self, x1: Rational, x2: Rational) -> Fraction:
        x1, x2 = _frac(x1), _frac(x2)
        return sum((c * x1**a * x2**b for (a, b), c in self.terms), Fraction(0))

    def derivative(self, var: int) -> Polynomial2:
        out: dict[tuple[int, int], int] = {}
        for (a, b), c in self.terms:
            e = (a, b)[var]
            if e:
                key = (a - 1, b) if var == 0 else (a, b - 1)
                out[key] = out.get(key, 0) + c * e
        return Polynomial2.of(out)

    def gradient(self, x1: Rational, x2: Rational) -> tuple[Fraction, Fraction]:
        return self.derivative(0)(x1, x2), self.derivative(1)(x1, x2)


@dataclass(frozen=True)
class TransversalPolynomials:
    p1: Polynomial2
    p2: Polynomial2
    p3: Polynomial2

    def __call__(self, x1: Rational, x2: Rational) -> tuple[Fraction, Fraction, Fraction]:
        return self.p1(x1, x2), self.p2(x1, x2), self.p3(x1, x2)

    def gradients(self, x1: Rational, x2: Rational) -> tuple[tuple[Fraction, Fraction], ...]:
        return tuple(p.gradient(x1, x2) for p in (self.p1, self.p2, self.p3))

    def pairwise_independent(self, x1: Rational = 0, x2: Rational = 0) -> bool:
        g = self.gradients(x1, x2)
        return all(
            g[a][0] * g[b][1] - g[a][1] * g[b][0] != 0 for a in range(3) for b in range(a + 1, 3)
        )


TRANSVERSAL = TransversalPolynomials(
    Polynomial2.of({(1, 0): 1}),
    Polynomial2.of({(0, 1): 1}),
    Polynomial2.of(
        {
            (2, 2): 5,
            (2, 1): -10,
            (1, 2): -2,
            (2, 0): 10,
            (1, 1): 4,
            (0, 2): -8,
            (1, 0): -20,
            (0, 1): 16,
        }
    ),
)


def p_values(x1: Rational, x2: Rational) -> tuple[Fraction, Fraction, Fraction]:
    return TRANSVERSAL(x1, x2)
