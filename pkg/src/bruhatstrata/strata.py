"""Dimension-0 strata as sign vectors, click moves and the 1-skeleton per spin element.

The heavy lifting (bucketing all 2**l sign vectors by their lift and the
union-find over click edges) happens in :mod:`bruhatstrata.kernels`; this
module turns those arrays into labelled graphs and counts.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import kernels
from .clifford import CliffordElement, to_ahat_string
from .combinatorics import Face, Permutation, ReducedWord, faces, inversions
from .errors import (
    InconsistencyError,
    MalformedPreancestryError,
    NotClickableError,
    NotInCosetError,
)
from .spinweyl import element_from_dense

__all__ = [
    "AncestryVector",
    "Edge",
    "Preancestry2",
    "StrataGraph",
    "enumerate_dim0",
    "click",
    "edge_label",
    "strata_graph",
    "components",
    "components_total",
    "component_table",
    "isolated_count",
    "classify_d2",
    "enumerate_d2_preancestries",
    "d2_ancestries",
    "euler_summary",
]


class AncestryVector(tuple):
    """Entries in {-2, -1, +1, +2} with as many -2 as +2 entries."""

    __slots__ = ()

    def __new__(cls, entries: Iterable[int]) -> AncestryVector:
        entries = tuple(int(x) for x in entries)
        for x in entries:
            if x not in (-2, -1, 1, 2):
                raise ValueError(f"ancestry entry {x} not in {{-2,-1,1,2}}")
        if entries.count(-2) != entries.count(2):
            raise ValueError(f"unbalanced ancestry {entries}")
        return super().__new__(cls, entries)

    @classmethod
    def from_bits(cls, v: int, ell: int) -> AncestryVector:
        """Sign vector with bit k of v set meaning -1 at position k + 1."""
        return cls(-1 if v >> k & 1 else 1 for k in range(ell))

    @classmethod
    def parse(cls, text: str) -> AncestryVector:
        """Accepts "+-+" sign strings and "(-1,-2,+1)" style tuples."""
        text = text.strip()
        if text and set(text) <= {"+", "-"}:
            return cls(1 if c == "+" else -1 for c in text)
        body = text.strip("()[] ")
        if not body:
            return cls(())
        return cls(int(x) for x in body.split(","))

    @property
    def dim(self) -> int:
        return self.count(-2)

    def signs(self) -> tuple[int, ...]:
        return tuple(1 if x > 0 else -1 for x in self)

    def bits(self) -> int:
        return sum(1 << k for k, x in enumerate(self) if x < 0)

    def sign_string(self) -> str:
        if self.dim:
            raise ValueError("sign strings are only defined for dimension 0")
        return "".join("+" if x > 0 else "-" for x in self)

    def __str__(self) -> str:
        return "(" + ",".join(f"{x:+d}" for x in self) + ")"

    def __repr__(self) -> str:
        return f"AncestryVector({str(self)})"


# ------------------------------------------------------------------ enumeration


@dataclass(frozen=True)
class _Enumeration:
    """Kernel output for one word, with per-bucket statistics."""

    word: ReducedWord
    ids: np.ndarray
    elements: tuple[CliffordElement, ...]
    faces: tuple[Face, ...]
    roots: np.ndarray
    degree: np.ndarray
    n_edges: int

    @cached_property
    def bucket_of(self) -> dict[CliffordElement, int]:
        return {z: j for j, z in enumerate(self.elements)}

    def members(self, j: int) -> np.ndarray:
        return np.flatnonzero(self.ids == j)

    def sizes(self) -> np.ndarray:
        return np.bincount(self.ids, minlength=len(self.elements))

    def component_counts(self) -> np.ndarray:
        is_root = self.roots == np.arange(len(self.roots))
        return np.bincount(self.ids[is_root], minlength=len(self.elements))

    def isolated_counts(self) -> np.ndarray:
        return np.bincount(self.ids[self.degree == 0], minlength=len(self.elements))


_enum_cache: dict[tuple[tuple[int, ...], int], _Enumeration] = {}


def _enumerate(word: ReducedWord, threads: int = 1) -> _Enumeration:
    key = (word.letters, word.n)
    hit = _enum_cache.get(key)
    if hit is not None:
        return hit
    ids, dense = kernels.lift_table(word.letters, word.n, threads=threads)
    fs = tuple(faces(word))
    face_data = [(f.k1 - 1, f.k2 - 1, f.mask()) for f in fs]
    roots, degree, n_edges = kernels.click_components(ids, face_data, len(word))
    elements = tuple(element_from_dense(h, m, word.n) for h, m in dense)
    result = _Enumeration(word, ids, elements, fs, roots, degree, int(n_edges))
    if len(_enum_cache) > 64:
        _enum_cache.clear()
    _enum_cache[key] = result
    return result


def enumerate_dim0(word: ReducedWord, threads: int = 1) -> dict[CliffordElement, list[AncestryVector]]:
    """All 2**l sign vectors of ``word`` bucketed by their lift, each bucket sorted."""
    e = _enumerate(word, threads)
    ell = len(word)
    out: dict[CliffordElement, list[AncestryVector]] = {}
    for j, z in sorted(enumerate(e.elements), key=lambda p: p[1].sort_key()):
        out[z] = sorted(AncestryVector.from_bits(int(v), ell) for v in e.members(j))
    return out


def _bucket(word: ReducedWord, z: CliffordElement) -> tuple[_Enumeration, int | None]:
    if z.n != word.n:
        raise NotInCosetError("rank of z does not match the word")
    e = _enumerate(word)
    return e, e.bucket_of.get(z)


# ------------------------------------------------------------------ clicks


def click(eps: Sequence[int], f: Face) -> AncestryVector:
    """Negate every boundary sign of ``f``; corners must carry opposite signs."""
    eps = AncestryVector(eps)
    if eps.dim:
        raise NotClickableError("clicks act on sign vectors only")
    if eps[f.k1 - 1] != -eps[f.k2 - 1]:
        raise NotClickableError(f"equal signs at corners {f.k1}, {f.k2}")
    out = list(eps)
    for k in f.boundary:
        out[k - 1] = -out[k - 1]
    return AncestryVector(out)


def edge_label(eps: Sequence[int], f: Face) -> AncestryVector:
    """Dimension-1 ancestry of the click edge generated at ``eps`` (which has -1 at k1)."""
    eps = AncestryVector(eps)
    if eps.dim or eps[f.k1 - 1] != -1 or eps[f.k2 - 1] != 1:
        raise NotClickableError(f"edge labels need -1 at {f.k1} and +1 at {f.k2}")
    out = list(eps)
    out[f.k1 - 1] = -2
    out[f.k2 - 1] = 2
    return AncestryVector(out)


# ------------------------------------------------------------------ graphs


@dataclass(frozen=True, order=True)
class Edge:
    endpoints: tuple[AncestryVector, AncestryVector]
    face: tuple[int, int]
    label: AncestryVector

    def to_json(self) -> dict:
        return {
            "face": list(self.face),
            "endpoints": [v.sign_string() for v in self.endpoints],
            "label": str(self.label),
        }

    @classmethod
    def from_json(cls, data: Mapping) -> Edge:
        a, b = (AncestryVector.parse(s) for s in data["endpoints"])
        return cls((a, b), tuple(data["face"]), AncestryVector.parse(data["label"]))


@dataclass(frozen=True)
class Preancestry2:
    """Four positions carrying -2/+2 entries of a dimension-2 preancestry."""

    positions: tuple[int, int, int, int]
    signs: tuple[int, int, int, int]
    type: str

    def to_json(self) -> dict:
        return {"positions": list(self.positions), "signs": list(self.signs), "type": self.type}


def _union_find_components(vertices: Sequence, edges: Iterable[tuple]) -> int:
    parent = {v: v for v in vertices}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    count = len(parent)
    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
            count -= 1
    return count


@dataclass
class StrataGraph:
    """The 1-skeleton of the complex attached to one spin element ``z``."""

    word: ReducedWord
    z: CliffordElement
    vertices: list[AncestryVector]
    edges: list[Edge]
    d2_ancestries: list[tuple[Preancestry2, AncestryVector]] = field(default_factory=list)

    @property
    def components(self) -> int:
        return _union_find_components(self.vertices, (e.endpoints for e in self.edges))

    @property
    def isolated(self) -> int:
        touched = {v for e in self.edges for v in e.endpoints}
        return sum(v not in touched for v in self.vertices)

    def to_json(self) -> dict:
        return {
            "word": list(self.word.letters),
            "n": self.word.n,
            "z": to_ahat_string(self.z),
            "z_blades": self.z.to_json(),
            "vertices": [v.sign_string() for v in self.vertices],
            "edges": [e.to_json() for e in self.edges],
            "d2_preancestries": [
                dict(p.to_json(), ancestry=str(a)) for p, a in self.d2_ancestries
            ],
            "components": self.components,
            "isolated": self.isolated,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, ensure_ascii=False) + "\n"

    @classmethod
    def from_json(cls, data: Mapping) -> StrataGraph:
        word = ReducedWord(tuple(data["word"]), data["n"])
        z = CliffordElement.from_json(data["z_blades"], word.n)
        d2 = [
            (
                Preancestry2(tuple(p["positions"]), tuple(p["signs"]), p["type"]),
                AncestryVector.parse(p["ancestry"]),
            )
            for p in data.get("d2_preancestries", [])
        ]
        return cls(
            word,
            z,
            [AncestryVector.parse(s) for s in data["vertices"]],
            [Edge.from_json(e) for e in data["edges"]],
            d2,
        )

    def to_dot(self) -> str:
        name = "z" if not self.word.letters else "w_" + "_".join(map(str, self.word))
        lines = [f"graph {name} {{", f'  label="{to_ahat_string(self.z, "ascii")}";']
        index = {v: i for i, v in enumerate(self.vertices)}
        for v, i in index.items():
            lines.append(f'  v{i} [label="{v.sign_string()}"];')
        for e in self.edges:
            a, b = (index[v] for v in e.endpoints)
            lines.append(f'  v{a} -- v{b} [label="{e.label}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def strata_graph(word: ReducedWord, z: CliffordElement, with_d2: bool = True) -> StrataGraph:
    e, j = _bucket(word, z)
    if j is None:
        _require_in_coset(word, z)
        return StrataGraph(word, z, [], [], [])
    ell = len(word)
    vertices = sorted(AncestryVector.from_bits(int(v), ell) for v in e.members(j))
    edges = []
    for f in e.faces:
        for eps in vertices:
            if eps[f.k1 - 1] == -1 and eps[f.k2 - 1] == 1:
                other = click(eps, f)
                a, b = sorted((eps, other))
                edges.append(Edge((a, b), (f.k1, f.k2), edge_label(eps, f)))
    edges.sort()
    d2 = d2_ancestries(word, z) if with_d2 else []
    return StrataGraph(word, z, vertices, edges, d2)


def _require_in_coset(word: ReducedWord, z: CliffordElement) -> None:
    from .spinweyl import perm_of_spin

    if perm_of_spin(z) != word.permutation:
        raise NotInCosetError("z is not in the coset of the word")


def components(word: ReducedWord, z: CliffordElement) -> int:
    e, j = _bucket(word, z)
    if j is None:
        _require_in_coset(word, z)
        return 0
    return int(e.component_counts()[j])


def isolated_count(word: ReducedWord, z: CliffordElement) -> int:
    e, j = _bucket(word, z)
    if j is None:
        _require_in_coset(word, z)
        return 0
    return int(e.isolated_counts()[j])


def components_total(word: ReducedWord, threads: int = 1) -> int:
    e = _enumerate(word, threads)
    return int(np.count_nonzero(e.roots == np.arange(len(e.roots))))


@dataclass(frozen=True)
class BucketStats:
    z: CliffordElement
    vertices: int
    edges: int
    components: int
    isolated: int


def component_table(word: ReducedWord, threads: int = 1) -> list[BucketStats]:
    """Per-element vertex, edge, component and isolated counts, in canonical order."""
    e = _enumerate(word, threads)
    sizes = e.sizes()
    comps = e.component_counts()
    iso = e.isolated_counts()
    # each edge has its generator in the bucket; count generators per bucket
    edges = np.zeros(len(e.elements), dtype=np.int64)
    v = np.arange(1 << len(word), dtype=np.int64)
    for f in e.faces:
        gen = ((v >> (f.k1 - 1)) & 1).astype(bool) & ~((v >> (f.k2 - 1)) & 1).astype(bool)
        edges += np.bincount(e.ids[gen], minlength=len(e.elements))
    rows = [
        BucketStats(z, int(sizes[j]), int(edges[j]), int(comps[j]), int(iso[j]))
        for j, z in enumerate(e.elements)
    ]
    return sorted(rows, key=lambda r: r.z.sort_key())


# ------------------------------------------------------------------ dimension 2


def classify_d2(
    positions: Sequence[int], signs: Sequence[int], word: ReducedWord
) -> str:
    """"I", "II" or "invalid" for four positions carrying the given -2/+2 entries."""
    positions = tuple(positions)
    signs = tuple(signs)
    ell = len(word)
    if len(positions) != 4 or len(signs) != 4:
        raise MalformedPreancestryError("need exactly four positions and four signs")
    if any(s not in (-2, 2) for s in signs):
        raise MalformedPreancestryError(f"signs {signs} must be -2 or +2")
    if not all(1 <= k <= ell for k in positions) or list(positions) != sorted(set(positions)):
        raise MalformedPreancestryError(f"positions {positions} not strictly increasing in 1..{ell}")
    if signs.count(-2) != 2 or signs[0] != -2 or signs[3] != 2:
        return "invalid"
    i1, i2, i3, i4 = (word[k - 1] for k in positions)
    if signs[1] == 2:
        return "I" if i1 == i2 and i3 == i4 else "invalid"
    if {i3, i4} != {i1, i2}:
        return "invalid"
    if abs(i1 - i2) > 1:
        return "I"
    if abs(i1 - i2) == 1 and i1 == i4 and i2 == i3:
        return "II"
    return "invalid"


def _is_descent(w: Permutation, i: int) -> bool:
    """True when multiplying by a_i on the right shortens w."""
    return inversions(w * _adjacent(w.rank, i)) < inversions(w)


def _walk_entries(word: ReducedWord, positions: Sequence[int], signs: Sequence[int]):
    """Admissible ancestry entries per position for a fixed set of +-2 positions.

    The walk starts at the identity; a -2 entry multiplies by the letter where
    it is not a descent, a +2 entry multiplies where it is one, and every
    other position must not be a descent (its entry is then a free sign).
    Returns the per-position choices or None when the walk is blocked or does
    not return to the identity.
    """
    w = Permutation.identity(word.n + 1)
    marks = dict(zip(positions, signs))
    choices = []
    for k, i in enumerate(word.letters, start=1):
        a = _adjacent(word.n, i)
        down = _is_descent(w, i)
        s = marks.get(k)
        if s is None:
            if down:
                return None
            choices.append((-1, 1))
        elif (s == 2) != down:
            return None
        else:
            choices.append((s,))
            w = w * a
    return choices if w.is_identity() else None


@lru_cache(maxsize=None)
def _adjacent(n: int, i: int) -> Permutation:
    images = list(range(1, n + 2))
    images[i - 1], images[i] = images[i], images[i - 1]
    return Permutation(tuple(images))


def enumerate_d2_preancestries(word: ReducedWord) -> list[Preancestry2]:
    """Every admissible placement of two -2 and two +2 entries, sorted by positions."""
    out = []
    for positions in itertools.combinations(range(1, len(word) + 1), 4):
        for middle in ((2, -2), (-2, 2)):
            signs = (-2, *middle, 2)
            kind = classify_d2(positions, signs, word)
            if kind == "invalid":
                continue
            if _walk_entries(word, positions, signs) is not None:
                out.append(Preancestry2(positions, signs, kind))
    return out


def d2_ancestries(word: ReducedWord, z: CliffordElement) -> list[tuple[Preancestry2, AncestryVector]]:
    """Dimension-2 preancestries filled with free signs whose sign lift equals z."""
    e, j = _bucket(word, z)
    if j is None:
        return []
    out = []
    for p in enumerate_d2_preancestries(word):
        for entries in itertools.product(*_walk_entries(word, p.positions, p.signs)):
            eps = AncestryVector(entries)
            if e.ids[eps.bits()] == j:
                out.append((p, eps))
    return out


def euler_summary(word: ReducedWord, z: CliffordElement, external_counts: Sequence[int]) -> int:
    """Alternating sum of per-dimension stratum counts, checked against the 1-skeleton."""
    g = strata_graph(word, z, with_d2=False)
    counts = list(external_counts)
    computed = [len(g.vertices), len(g.edges)]
    for d, (given, ours) in enumerate(zip(counts, computed)):
        if given != ours:
            raise InconsistencyError(f"dimension {d}: given {given}, computed {ours}")
    if len(counts) < 2 and len(g.edges):
        raise InconsistencyError(f"dimension 1 count missing, computed {len(g.edges)}")
    return sum((-1) ** d * c for d, c in enumerate(counts))

