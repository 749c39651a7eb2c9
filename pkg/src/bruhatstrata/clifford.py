"""Exact Clifford algebra Cl_{n+1} with e_i^2 = -1, and its even part.

A basis blade ``e_{j_1} ... e_{j_k}`` (j_1 < ... < j_k) is encoded as the
bitmask with bits ``j - 1`` set.  The generators of the even part are
``a^_i = e_i e_{i+1}``; the sign ``e_i^2 = -1`` makes
``alpha_i(theta) = cos(theta/2) + sin(theta/2) a^_i`` project to the rotation
with ``sin(theta)`` in entry ``(i+1, i)``.
"""

from __future__ import annotations

from functools import lru_cache
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Sequence, Union

from .dyadic import INV_SQRT2, ONE, ZERO, ScaledDyadic
from .errors import NotInGroupError, RankMismatchError

__all__ = [
    "CliffordElement",
    "blade_product_sign",
    "generator_ahat",
    "generator_acute",
    "mul",
    "reversal",
    "real_part",
    "sign_conjugate",
    "lift_sign_vector",
    "pi_matrix",
    "ahat_monomial",
    "to_ahat_string",
]

Scalar = Union[ScaledDyadic, int]


@lru_cache(maxsize=None)
def blade_product_sign(a: int, b: int) -> int:
    """Sign s with ``e_A e_B = s e_{A xor B}`` under e_i^2 = -1."""
    swaps = 0
    x = a >> 1
    while x:
        swaps += (x & b).bit_count()
        x >>= 1
    swaps += (a & b).bit_count()
    return -1 if swaps & 1 else 1


def _mask_to_set(mask: int) -> frozenset[int]:
    return frozenset(j + 1 for j in range(mask.bit_length()) if mask >> j & 1)


def _set_to_mask(indices: Iterable[int]) -> int:
    m = 0
    for j in indices:
        m |= 1 << (j - 1)
    return m


class CliffordElement:
    """Immutable element of Cl_{n+1} with exact coefficients."""

    __slots__ = ("_n", "_coeffs", "_hash")

    def __init__(self, coeffs: Mapping[int, Scalar], n: int) -> None:
        if n < 1:
            raise ValueError("rank must be positive")
        top = 1 << (n + 1)
        clean = {}
        for mask, c in coeffs.items():
            if not 0 <= mask < top:
                raise ValueError(f"blade {mask:b} outside Cl_{n + 1}")
            c = ScaledDyadic.coerce(c)
            if c:
                clean[mask] = c
        self._n = n
        self._coeffs = dict(sorted(clean.items()))
        self._hash: int | None = None

    # ---------------------------------------------------------------- builders

    @classmethod
    def scalar(cls, c: Scalar, n: int) -> CliffordElement:
        return cls({0: c}, n)

    @classmethod
    def one(cls, n: int) -> CliffordElement:
        return cls({0: ONE}, n)

    @classmethod
    def blade(cls, indices: Iterable[int], n: int, coeff: Scalar = 1) -> CliffordElement:
        """``coeff * e_{j_1} ... e_{j_k}`` with the indices taken in increasing order."""
        return cls({_set_to_mask(indices): coeff}, n)

    # ------------------------------------------------------------------ views

    @property
    def n(self) -> int:
        return self._n

    @property
    def coeffs(self) -> Mapping[int, ScaledDyadic]:
        return MappingProxyType(self._coeffs)

    def items(self) -> Iterator[tuple[frozenset[int], ScaledDyadic]]:
        for mask, c in self._coeffs.items():
            yield _mask_to_set(mask), c

    def coefficient(self, blade: Iterable[int] | int) -> ScaledDyadic:
        mask = blade if isinstance(blade, int) else _set_to_mask(blade)
        return self._coeffs.get(mask, ZERO)

    def is_even(self) -> bool:
        return all(m.bit_count() % 2 == 0 for m in self._coeffs)

    def norm2(self) -> ScaledDyadic:
        out = ZERO
        for c in self._coeffs.values():
            out = out + c * c
        return out

    def is_unit(self) -> bool:
        return self * self.reversal() == CliffordElement.one(self._n)

    def sort_key(self) -> tuple:
        """Total order used to pick deterministic representatives."""
        return tuple((m, float(c), c.parts) for m, c in self._coeffs.items())

    # ------------------------------------------------------------- arithmetic

    def _check(self, other: CliffordElement) -> None:
        if other._n != self._n:
            raise RankMismatchError(f"rank {self._n} vs {other._n}")

    def __add__(self, other: CliffordElement) -> CliffordElement:
        if not isinstance(other, CliffordElement):
            return NotImplemented
        self._check(other)
        out = dict(self._coeffs)
        for m, c in other._coeffs.items():
            out[m] = out.get(m, ZERO) + c
        return CliffordElement(out, self._n)

    def __neg__(self) -> CliffordElement:
        return CliffordElement({m: -c for m, c in self._coeffs.items()}, self._n)

    def __sub__(self, other: CliffordElement) -> CliffordElement:
        return self + (-other)

    def scale(self, c: Scalar) -> CliffordElement:
        c = ScaledDyadic.coerce(c)
        return CliffordElement({m: c * v for m, v in self._coeffs.items()}, self._n)

    def __mul__(self, other: CliffordElement | Scalar) -> CliffordElement:
        if isinstance(other, (int, ScaledDyadic)):
            return self.scale(other)
        if not isinstance(other, CliffordElement):
            return NotImplemented
        self._check(other)
        out: dict[int, ScaledDyadic] = {}
        sign = blade_product_sign
        for a, ca in self._coeffs.items():
            for b, cb in other._coeffs.items():
                term = ca * cb
                if sign(a, b) < 0:
                    term = -term
                key = a ^ b
                prev = out.get(key)
                out[key] = term if prev is None else prev + term
        return CliffordElement(out, self._n)

    def __rmul__(self, other: Scalar) -> CliffordElement:
        if isinstance(other, (int, ScaledDyadic)):
            return self.scale(other)
        return NotImplemented

    def reversal(self) -> CliffordElement:
        out = {}
        for m, c in self._coeffs.items():
            k = m.bit_count()
            out[m] = -c if (k * (k - 1) // 2) % 2 else c
        return CliffordElement(out, self._n)

    def real_part(self) -> ScaledDyadic:
        return self._coeffs.get(0, ZERO)

    # ------------------------------------------------------------ comparisons

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CliffordElement):
            return NotImplemented
        return self._n == other._n and self._coeffs == other._coeffs

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._n, tuple(self._coeffs.items())))
        return self._hash

    def __repr__(self) -> str:
        body = ", ".join(f"{sorted(_mask_to_set(m))}: {c}" for m, c in self._coeffs.items())
        return f"CliffordElement(n={self._n}, {{{body}}})"

    def __str__(self) -> str:
        if self.is_even():
            return to_ahat_string(self)
        return repr(self)

    # ------------------------------------------------------------------- json

    def to_json(self) -> list[list]:
        """List of ``[blade, mantissa, halfexp]`` with the blade as a sorted index list."""
        out = []
        for m, c in self._coeffs.items():
            out.append([sorted(_mask_to_set(m)), c.mantissa, c.halfexp])
        return out

    @classmethod
    def from_json(cls, data: Sequence[Sequence], n: int) -> CliffordElement:
        return cls(
            {_set_to_mask(blade): ScaledDyadic.from_mantissa(m, h) for blade, m, h in data}, n
        )


# --------------------------------------------------------------------- generators


def _check_index(i: int, n: int) -> None:
    if not 1 <= i <= n:
        raise IndexError(f"generator index {i} outside 1..{n}")


@lru_cache(maxsize=None)
def generator_ahat(i: int, n: int) -> CliffordElement:
    """``a^_i = e_i e_{i+1}``."""
    _check_index(i, n)
    return CliffordElement({(1 << (i - 1)) | (1 << i): ONE}, n)


@lru_cache(maxsize=None)
def generator_acute(i: int, n: int, sign: int = 1) -> CliffordElement:
    """``(1 + sign * a^_i) / sqrt2``: the acute generator for sign +1, its inverse for -1."""
    _check_index(i, n)
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    return CliffordElement({0: INV_SQRT2, (1 << (i - 1)) | (1 << i): INV_SQRT2 * sign}, n)


def mul(x: CliffordElement, y: CliffordElement) -> CliffordElement:
    return x * y


def reversal(x: CliffordElement) -> CliffordElement:
    return x.reversal()


def real_part(x: CliffordElement) -> ScaledDyadic:
    return x.real_part()


# ------------------------------------------------------------- sign conjugation


def lift_sign_vector(E: Sequence[int], n: int) -> tuple[int, ...]:
    """A diagonal d in {+-1}^{n+1} with d_i d_{i+1} = E_i (the lift with d_1 = +1).

    A sequence of length n+1 is taken to be a diagonal already.
    """
    E = tuple(E)
    if any(e not in (1, -1) for e in E):
        raise ValueError("sign entries must be +1 or -1")
    if len(E) == n + 1:
        return E
    if len(E) != n:
        raise RankMismatchError(f"sign vector of length {len(E)} for rank {n}")
    d = [1]
    for e in E:
        d.append(d[-1] * e)
    return tuple(d)


def sign_conjugate(E: Sequence[int], x: CliffordElement) -> CliffordElement:
    """Apply the automorphism with ``a^_i -> E_i a^_i`` (conjugation by a sign diagonal)."""
    d = lift_sign_vector(E, x.n)
    neg = 0
    for j, dj in enumerate(d):
        if dj < 0:
            neg |= 1 << j
    out = {}
    for m, c in x.coeffs.items():
        out[m] = -c if (m & neg).bit_count() % 2 else c
    return CliffordElement(out, x.n)


# ---------------------------------------------------------------- projection


@lru_cache(maxsize=4096)
def pi_matrix(z: CliffordElement) -> tuple[tuple[ScaledDyadic, ...], ...]:
    """Orthogonal matrix of ``v -> z v z~``; column i is the image of e_i."""
    n = z.n
    if not z.is_even():
        raise NotInGroupError("projection needs an even element")
    zr = z.reversal()
    if z * zr != CliffordElement.one(n):
        raise NotInGroupError("element is not a unit of the spin group")
    size = n + 1
    cols = []
    for i in range(size):
        image = z * CliffordElement({1 << i: ONE}, n) * zr
        col = [ZERO] * size
        for m, c in image.coeffs.items():
            if m.bit_count() != 1:
                raise NotInGroupError("conjugation does not preserve vectors")
            col[m.bit_length() - 1] = c
        cols.append(col)
    return tuple(tuple(cols[j][i] for j in range(size)) for i in range(size))


# ------------------------------------------------------------------- display


@lru_cache(maxsize=None)
def ahat_monomial(S: int, n: int) -> tuple[int, int]:
    """Blade and sign of ``a^_S``, the product of a^_i over the bits of S in increasing order."""
    blade, sign = 0, 1
    for i in range(n):
        if S >> i & 1:
            g = (1 << i) | (1 << (i + 1))
            sign *= blade_product_sign(blade, g)
            blade ^= g
    return blade, sign


_SUB = str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉")


def _monomial_text(S: int, n: int, ascii_: bool) -> str:
    idx = [i + 1 for i in range(n) if S >> i & 1]
    if not idx:
        return "1"
    if ascii_:
        return " ".join(f"a^{i}" for i in idx)
    return "".join("â" + str(i).translate(_SUB) for i in idx)


def to_ahat_string(z: CliffordElement, style: str = "unicode") -> str:
    """Expansion of an even element over the monomials a^_S, in binary-counting order of S.

    When every coefficient has the same magnitude it is factored out, e.g.
    ``(−1+â₁â₂+â₃)/(2√2)``.
    """
    if style not in ("unicode", "ascii"):
        raise ValueError(f"unknown style {style!r}")
    if not z.is_even():
        raise ValueError("only even elements have an a^-expansion")
    ascii_ = style == "ascii"
    minus = "-" if ascii_ else "−"
    root = "sqrt2" if ascii_ else "√2"
    n = z.n
    terms: list[tuple[int, ScaledDyadic]] = []
    for S in range(1 << n):
        blade, sign = ahat_monomial(S, n)
        c = z.coefficient(blade)
        if c:
            terms.append((S, c if sign > 0 else -c))
    if not terms:
        return "0"

    def joined(pieces: list[tuple[bool, str]]) -> str:
        out = ""
        for idx, (neg, text) in enumerate(pieces):
            if idx == 0:
                out += (minus if neg else "") + text
            elif ascii_:
                out += (" - " if neg else " + ") + text
            else:
                out += (minus if neg else "+") + text
        return out

    mags = {_abs(c) for _, c in terms}
    if len(mags) == 1 and next(iter(mags)).is_monomial():
        mag = next(iter(mags))
        m, h = mag.mantissa, mag.halfexp
        if m == 1:
            body = joined([(c.sign() < 0, _monomial_text(S, n, ascii_)) for S, c in terms])
            if h == 0:
                return body
            if h % 2 == 0:
                den = str(1 << (h // 2))
            else:
                pre = 1 << ((h - 1) // 2)
                den = root if pre == 1 else f"({pre}{'*' if ascii_ else ''}{root})"
            return f"({body})/{den}"

    pieces = []
    for S, c in terms:
        coeff = str(_abs(c)).replace("√2", root)
        if S == 0:
            text = coeff
        elif coeff == "1":
            text = _monomial_text(S, n, ascii_)
        else:
            text = coeff + ("*" if ascii_ else "·") + _monomial_text(S, n, ascii_)
        pieces.append((c.sign() < 0, text))
    return joined(pieces)


def _abs(c: ScaledDyadic) -> ScaledDyadic:
    return -c if c.sign() < 0 else c
