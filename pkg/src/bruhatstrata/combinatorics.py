"""Permutations, reduced words and the bounded faces of their wiring diagrams.

Conventions
-----------
A permutation is stored in one-line notation: ``images[i - 1] == i^sigma``.
Permutations act on the right, so ``i^(sigma tau) = (i^sigma)^tau`` and the
product ``a_{i_1} ... a_{i_l}`` of adjacent transpositions ``a_i = (i, i+1)``
is applied left to right.  With this convention the word ``2,1,3,2,4,3,2``
gives ``[45132]``.

Word positions are 1-indexed everywhere they are reported (faces,
preancestries, JSON output).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .errors import InvalidPermutationError, InvalidWordError

__all__ = [
    "Permutation",
    "ReducedWord",
    "Face",
    "perm_from_word",
    "inversions",
    "is_reduced",
    "cycle_count",
    "block_set",
    "faces",
    "canonical_word",
    "reduced_words",
    "all_permutations",
    "longest_element",
    "longest_word",
    "parse_word",
    "parse_permutation",
]


@dataclass(frozen=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self) -> None:
        images = tuple(int(x) for x in self.images)
        object.__setattr__(self, "images", images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise InvalidPermutationError(f"not a bijection of 1..{len(images)}: {images}")

    @classmethod
    def identity(cls, size: int) -> Permutation:
        return cls(tuple(range(1, size + 1)))

    @property
    def size(self) -> int:
        """Number of points moved, i.e. n + 1."""
        return len(self.images)

    @property
    def rank(self) -> int:
        """The n in S_{n+1}."""
        return len(self.images) - 1

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: Permutation) -> Permutation:
        # right action: first self, then other
        if self.size != other.size:
            raise InvalidPermutationError("size mismatch")
        return Permutation(tuple(other(x) for x in self.images))

    def inverse(self) -> Permutation:
        inv = [0] * self.size
        for i, x in enumerate(self.images, start=1):
            inv[x - 1] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return self.images == tuple(range(1, self.size + 1))

    def matrix(self) -> list[list[int]]:
        """Permutation matrix with a 1 at (i, i^sigma)."""
        m = [[0] * self.size for _ in range(self.size)]
        for i, x in enumerate(self.images):
            m[i][x - 1] = 1
        return m

    def __str__(self) -> str:
        if self.size <= 9:
            return "[" + "".join(map(str, self.images)) + "]"
        return "[" + ",".join(map(str, self.images)) + "]"


@dataclass(frozen=True)
class ReducedWord:
    """A reduced word ``a_{i_1} ... a_{i_l}`` for a permutation of S_{n+1}."""

    letters: tuple[int, ...]
    n: int

    def __post_init__(self) -> None:
        letters = tuple(int(x) for x in self.letters)
        object.__setattr__(self, "letters", letters)
        if self.n < 1:
            raise InvalidWordError(f"rank must be positive, got {self.n}")
        _check_letters(letters, self.n)
        if inversions(_product(letters, self.n)) != len(letters):
            raise InvalidWordError(f"word {letters} is not reduced")

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[int]:
        return iter(self.letters)

    def __getitem__(self, k: int) -> int:
        return self.letters[k]

    @cached_property
    def permutation(self) -> Permutation:
        return _product(self.letters, self.n)

    def __str__(self) -> str:
        return ",".join(map(str, self.letters))


@dataclass(frozen=True, order=True)
class Face:
    """Bounded face of a wiring diagram, between consecutive crossings k1 < k2 on one row.

    ``boundary`` holds the 1-indexed positions whose signs a click toggles.
    """

    k1: int
    k2: int
    boundary: tuple[int, ...]

    def mask(self) -> int:
        """Bitmask over 0-indexed positions of the boundary."""
        m = 0
        for k in self.boundary:
            m |= 1 << (k - 1)
        return m


def _check_letters(letters: Sequence[int], n: int) -> None:
    for x in letters:
        if not 1 <= x <= n:
            raise InvalidWordError(f"letter {x} outside 1..{n}")


def _product(letters: Sequence[int], n: int) -> Permutation:
    images = list(range(1, n + 2))
    # right action: each a_i swaps the values i and i+1 in the one-line notation
    for i in letters:
        for j, x in enumerate(images):
            if x == i:
                images[j] = i + 1
            elif x == i + 1:
                images[j] = i
    return Permutation(tuple(images))


def perm_from_word(word: ReducedWord | Sequence[int], n: int | None = None) -> Permutation:
    """Product of the adjacent transpositions along ``word``, composed left to right."""
    if isinstance(word, ReducedWord):
        return word.permutation
    if n is None:
        raise InvalidWordError("rank n is required for a bare letter sequence")
    letters = tuple(word)
    _check_letters(letters, n)
    return _product(letters, n)


def inversions(p: Permutation) -> int:
    im = p.images
    return sum(1 for i in range(len(im)) for j in range(i + 1, len(im)) if im[i] > im[j])


def is_reduced(letters: Sequence[int], n: int) -> bool:
    return inversions(perm_from_word(letters, n)) == len(letters)


def cycle_count(p: Permutation) -> int:
    """Number of cycles, fixed points included."""
    seen = [False] * p.size
    count = 0
    for start in range(1, p.size + 1):
        if seen[start - 1]:
            continue
        count += 1
        i = start
        while not seen[i - 1]:
            seen[i - 1] = True
            i = p(i)
    return count


def block_set(p: Permutation) -> frozenset[int]:
    """Entries k in 1..n at which p blocks: j <= k implies j^p <= k."""
    out = set()
    running_max = 0
    for k in range(1, p.size):
        running_max = max(running_max, p(k))
        if running_max <= k:
            out.add(k)
    return frozenset(out)


def faces(word: ReducedWord) -> list[Face]:
    """Bounded faces of the wiring diagram of ``word``, sorted by (k1, k2)."""
    if not isinstance(word, ReducedWord):
        raise InvalidWordError("faces() needs a ReducedWord")
    letters = word.letters
    last: dict[int, int] = {}
    found = []
    for k, x in enumerate(letters, start=1):
        if x in last:
            k1 = last[x]
            boundary = [k1]
            boundary += [j for j in range(k1 + 1, k) if abs(letters[j - 1] - x) == 1]
            boundary.append(k)
            found.append(Face(k1, k, tuple(boundary)))
        last[x] = k
    found.sort()
    return found


def canonical_word(p: Permutation) -> ReducedWord:
    """Reduced word obtained by repeatedly extracting the smallest (left) descent."""
    images = list(p.images)
    letters = []
    while True:
        for i in range(len(images) - 1):
            if images[i] > images[i + 1]:
                letters.append(i + 1)
                images[i], images[i + 1] = images[i + 1], images[i]
                break
        else:
            break
    return ReducedWord(tuple(letters), max(p.rank, 1))


def reduced_words(p: Permutation) -> Iterator[ReducedWord]:
    """All reduced words of p, in lexicographic order."""
    n = max(p.rank, 1)

    def rec(images: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
        descents = [i for i in range(len(images) - 1) if images[i] > images[i + 1]]
        if not descents:
            yield ()
            return
        for i in descents:
            swapped = list(images)
            swapped[i], swapped[i + 1] = swapped[i + 1], swapped[i]
            for rest in rec(tuple(swapped)):
                yield (i + 1,) + rest

    for letters in rec(p.images):
        yield ReducedWord(letters, n)


def all_permutations(n: int) -> Iterator[Permutation]:
    for images in itertools.permutations(range(1, n + 2)):
        yield Permutation(images)


def longest_element(n: int) -> Permutation:
    return Permutation(tuple(range(n + 1, 0, -1)))


def longest_word(n: int) -> ReducedWord:
    """The word a_1 a_2 a_1 a_3 a_2 a_1 ... a_n ... a_1 for the longest element."""
    return ReducedWord(tuple(j for m in range(1, n + 1) for j in range(m, 0, -1)), n)


def parse_word(text: str, n: int | None = None) -> tuple[tuple[int, ...], int]:
    """Parse ``"2,3,1,2"``; the rank defaults to the largest letter."""
    text = text.strip()
    if not text:
        return (), n or 1
    try:
        letters = tuple(int(tok) for tok in text.split(","))
    except ValueError as exc:
        raise ValueError(f"cannot parse word {text!r}") from exc
    if n is None:
        n = max(max(letters), 1)
    _check_letters(letters, n)
    return letters, n


def parse_permutation(text: str) -> Permutation:
    """Parse ``"45132"`` or ``"10,2,3,..."``."""
    text = text.strip().strip("[]")
    try:
        if "," in text:
            images: Iterable[int] = (int(tok) for tok in text.split(","))
        else:
            images = (int(ch) for ch in text)
        return Permutation(tuple(images))
    except ValueError as exc:
        raise InvalidPermutationError(f"cannot parse permutation {text!r}") from exc
