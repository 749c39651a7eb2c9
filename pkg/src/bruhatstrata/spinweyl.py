"""The finite groups Quat_{n+1} and the spin lift of the even signed permutations.

Elements are :class:`~bruhatstrata.clifford.CliffordElement` values; the
group they live in is checked where it matters rather than carried as a
separate type.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from .clifford import (
    CliffordElement,
    generator_acute,
    generator_ahat,
    pi_matrix,
    sign_conjugate,
    to_ahat_string,
)
from .combinatorics import Permutation, ReducedWord, block_set
from .dyadic import ScaledDyadic
from .errors import InvalidWordError, NotInCosetError, NotInGroupError

__all__ = [
    "SpinWeylElement",
    "OrbitReport",
    "lift_word",
    "acute_of",
    "element_from_dense",
    "quat_elements",
    "coset",
    "perm_of_spin",
    "in_tilde_H",
    "n_of_z",
    "orbit",
    "orbit_decomposition",
    "sign_vectors",
    "orbit_size_law",
]

SpinWeylElement = CliffordElement


def lift_word(word: ReducedWord, signs: Sequence[int]) -> CliffordElement:
    """Left-to-right product of ``acute(i_k) ** signs[k]``."""
    if len(signs) != len(word):
        raise InvalidWordError(f"{len(signs)} signs for a word of length {len(word)}")
    z = CliffordElement.one(word.n)
    for i, s in zip(word.letters, signs):
        if s not in (1, -1):
            raise ValueError(f"sign {s} is not +-1")
        z = z * generator_acute(i, word.n, s)
    return z


def acute_of(word: ReducedWord) -> CliffordElement:
    """The all-plus lift of ``word``."""
    return lift_word(word, (1,) * len(word))


def element_from_dense(h: int, mantissas: Sequence[int], n: int) -> CliffordElement:
    """Convert the kernels' dense ``(halfexp, mantissas)`` form."""
    return CliffordElement(
        {b: ScaledDyadic.from_mantissa(m, h) for b, m in enumerate(mantissas) if m}, n
    )


@lru_cache(maxsize=None)
def quat_elements(n: int) -> frozenset[CliffordElement]:
    gens = [generator_ahat(i, n) for i in range(1, n + 1)]
    gens.append(-CliffordElement.one(n))
    return _closure(gens, n)


def _closure(gens: Iterable[CliffordElement], n: int) -> frozenset[CliffordElement]:
    gens = list(gens)
    one = CliffordElement.one(n)
    seen = {one}
    frontier = [one]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x * g
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(seen)


def coset(word: ReducedWord) -> list[CliffordElement]:
    """``acute_of(word) * q`` over q in Quat_{n+1}, in canonical order."""
    a = acute_of(word)
    return sorted((a * q for q in quat_elements(word.n)), key=CliffordElement.sort_key)


def _signed_permutation(z: CliffordElement) -> list[tuple[int, int]]:
    """Column and sign of the nonzero entry of each row of the projection."""
    rows = []
    for row in pi_matrix(z):
        nz = [(j, c) for j, c in enumerate(row) if c]
        if len(nz) != 1 or nz[0][1] not in (1, -1):
            raise NotInGroupError("projection is not a signed permutation matrix")
        j, c = nz[0]
        rows.append((j + 1, 1 if c == 1 else -1))
    return rows


def perm_of_spin(z: CliffordElement) -> Permutation:
    """The permutation whose matrix has the nonzero pattern of the projection of z."""
    return Permutation(tuple(j for j, _ in _signed_permutation(z)))


@lru_cache(maxsize=None)
def _tilde_H(n: int, B: frozenset[int]) -> frozenset[CliffordElement]:
    gens = [generator_acute(i, n) for i in range(1, n + 1) if i not in B]
    return _closure(gens, n)


def in_tilde_H(z: CliffordElement, B: Iterable[int]) -> bool:
    """Membership in the subgroup generated by the acute generators with index outside B."""
    B = frozenset(B)
    if not B:
        return True
    sigma = perm_of_spin(z)
    if not B <= block_set(sigma):
        return False
    return z in _tilde_H(z.n, B)


def n_of_z(word: ReducedWord, z: CliffordElement) -> int:
    """Number of dimension-0 strata whose lift is z, by the closed formula."""
    sigma = word.permutation
    if z.n != word.n or perm_of_spin(z) != sigma:
        raise NotInCosetError("z is not in the coset of the word")
    B = block_set(sigma)
    if not in_tilde_H(z, B):
        return 0
    ell, n, b = len(word), word.n, len(B)
    # 2^(l-n+b-1) + 2^(l/2-1) Re(z), with 2^(e/2) = sqrt2^e
    value = ScaledDyadic.pow_sqrt2(2 * (ell - n + b - 1)) + ScaledDyadic.pow_sqrt2(
        ell - 2
    ) * z.real_part()
    if not value.is_integer():
        raise ArithmeticError(f"count formula gave non-integer {value}")
    return value.to_int()


def sign_vectors(n: int) -> list[tuple[int, ...]]:
    return list(itertools.product((1, -1), repeat=n))


@dataclass
class OrbitReport:
    representative: CliffordElement
    members: frozenset[CliffordElement]
    re_value: ScaledDyadic
    c_anti: int
    n_value: int | None = None
    isolated_count: int | None = None
    components: int | None = field(default=None, compare=False)

    @property
    def size(self) -> int:
        return len(self.members)

    def to_json(self) -> dict:
        out = {
            "representative": to_ahat_string(self.representative),
            "size": self.size,
            "Re": self.re_value.to_json_string(),
            "N": self.n_value,
            "c_anti": self.c_anti,
        }
        if self.isolated_count is not None:
            out["isolated"] = self.isolated_count
        if self.components is not None:
            out["components"] = self.components
        return out


def orbit(z: CliffordElement, word: ReducedWord | None = None) -> OrbitReport:
    """Orbit of z under conjugation by sign diagonals.

    With ``word`` given the count N is filled in for the orbit (it is constant
    on orbits because the real part is).
    """
    members = frozenset(sign_conjugate(E, z) for E in sign_vectors(z.n))
    rep = min(members, key=CliffordElement.sort_key)
    c_anti = int(-z in members)
    report = OrbitReport(rep, members, z.real_part(), c_anti)
    if word is not None:
        report.n_value = n_of_z(word, rep)
    return report


def orbit_decomposition(word: ReducedWord) -> list[OrbitReport]:
    """Partition of the coset into orbits, ordered by real part then representative."""
    remaining = set(coset(word))
    reports = []
    while remaining:
        z = min(remaining, key=CliffordElement.sort_key)
        rep = orbit(z, word)
        remaining -= rep.members
        reports.append(rep)
    reports.sort(key=lambda r: (float(r.re_value), r.representative.sort_key()))
    return reports


def orbit_size_law(n: int, c: int, c_anti: int) -> int:
    """Orbit size predicted from the cycle count: 2^(n-c+1), doubled when the orbit splits."""
    return 1 << (n - c + 1 + c_anti)
