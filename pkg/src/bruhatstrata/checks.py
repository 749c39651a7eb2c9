"""Acceptance checks shared by ``bruhatstrata check`` and the test suite.

Each check returns a one-line summary on success and raises
:class:`CheckFailure` otherwise.  The ``fast`` level keeps to n <= 3 (plus the
small matrix and transversal data); ``full`` adds the n = 4 examples and the
n = 5 longest element.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from . import kernels
from .clifford import (
    CliffordElement,
    generator_acute,
    generator_ahat,
    pi_matrix,
    sign_conjugate,
    to_ahat_string,
)
from .combinatorics import (
    Permutation,
    ReducedWord,
    all_permutations,
    canonical_word,
    cycle_count,
    faces,
    inversions,
    longest_word,
    parse_permutation,
    reduced_words,
)
from .dyadic import ONE, ZERO, ScaledDyadic
from .matrixland import (
    TRANSVERSAL,
    RationalMatrix,
    bruhat_perm,
    factor,
    product_from,
    transversal_z7,
)
from .spinweyl import (
    acute_of,
    coset,
    lift_word,
    n_of_z,
    orbit,
    orbit_decomposition,
    orbit_size_law,
)
from .strata import (
    AncestryVector,
    click,
    components,
    components_total,
    enumerate_dim0,
    euler_summary,
    strata_graph,
)


class CheckFailure(AssertionError):
    pass


def expect(cond: bool, message: str) -> None:
    if not cond:
        raise CheckFailure(message)


def expect_equal(got, want, what: str) -> None:
    if got != want:
        raise CheckFailure(f"{what}: got {got!r}, expected {want!r}")


@dataclass(frozen=True)
class Criterion:
    number: int
    title: str
    run: Callable[[str], str]


@dataclass(frozen=True)
class Outcome:
    criterion: Criterion
    passed: bool
    detail: str
    seconds: float

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.criterion.number:2d}. {self.criterion.title}: {self.detail} ({self.seconds:.2f}s)"


# ------------------------------------------------------------------ golden data

WORD_4312 = ReducedWord((1, 2, 3, 1, 2), 3)
WORD_45132 = ReducedWord((2, 3, 1, 2, 4, 3, 2), 4)
WORD_43521 = ReducedWord((1, 3, 2, 1, 4, 3, 2, 1), 4)
WORD_ETA4 = longest_word(4)
Z1_SIGNS = (1, 1, -1, 1, -1)
Z1_LISTED = ((-1, -1, 1, -1, 1), (-1, 1, -1, 1, -1), (1, -1, -1, -1, -1))

GOLDEN_EXPANSIONS = {
    "[4312] all-plus": (WORD_4312, None, "(−1+â₁+â₂+â₁â₂+â₃+â₁â₃+â₂â₃−â₁â₂â₃)/(2√2)"),
    "[45132] all-plus": (
        WORD_45132,
        None,
        "(−1+â₁â₂+â₃−â₁â₂â₃+â₁â₄+â₂â₄−â₁â₃â₄−â₂â₃â₄)/(2√2)",
    ),
    "[43521] all-plus": (
        WORD_43521,
        None,
        "(−1−â₁+â₂−â₁â₂−â₃+â₁â₃−â₂â₃−â₁â₂â₃−â₄+â₁â₄+â₂â₄+â₁â₂â₄−â₃â₄−â₁â₃â₄−â₂â₃â₄+â₁â₂â₃â₄)/4",
    ),
    "z1": (WORD_4312, Z1_SIGNS, "(1+â₁+â₂−â₁â₂+â₃−â₁â₃−â₂â₃−â₁â₂â₃)/(2√2)"),
}

# the four sign-pattern families of the longest element of S_5, each over 1/2
ETA_COSET_FAMILIES = (
    ((), (2, 3), (1, 4), (1, 2, 3, 4)),
    ((1,), (1, 2, 3), (4,), (2, 3, 4)),
    ((1, 2), (1, 3), (2, 4), (3, 4)),
    ((2,), (3,), (1, 2, 4), (1, 3, 4)),
)


def _ahat_product(S: Sequence[int], n: int) -> CliffordElement:
    z = CliffordElement.one(n)
    for i in S:
        z = z * generator_ahat(i, n)
    return z


def eta_coset_listing() -> set[CliffordElement]:
    """The 32 elements (sum of +-monomials)/2 with an even number of minus signs."""
    half = ScaledDyadic(1, 0, 1)
    out = set()
    for family in ETA_COSET_FAMILIES:
        monomials = [_ahat_product(S, 4) for S in family]
        for signs in itertools.product((1, -1), repeat=4):
            if signs.count(-1) % 2:
                continue
            z = CliffordElement({}, 4)
            for s, m in zip(signs, monomials):
                z = z + m.scale(s)
            out.add(z.scale(half))
    return out


# ------------------------------------------------------------------ 1. algebra


def _matmul(a, b):
    return tuple(
        tuple(sum((x * y for x, y in zip(row, col)), ZERO) for col in zip(*b)) for row in a
    )


def check_algebra(level: str) -> str:
    ns = (1, 2, 3) if level == "fast" else (1, 2, 3, 4)
    checked = 0
    for n in ns:
        one = CliffordElement.one(n)
        hats = [generator_ahat(i, n) for i in range(1, n + 1)]
        for i, a in enumerate(hats, start=1):
            expect_equal(a * a, -one, f"a^{i} squared (n={n})")
            for j, b in enumerate(hats, start=1):
                if abs(i - j) == 1:
                    expect_equal(a * b, -(b * a), f"a^{i} a^{j} anticommute (n={n})")
                elif abs(i - j) >= 2:
                    expect_equal(a * b, b * a, f"a^{i} a^{j} commute (n={n})")
        gens = [generator_acute(i, n, s) for i in range(1, n + 1) for s in (1, -1)]
        gen_pi = [pi_matrix(g) for g in gens]
        layer = [(one, pi_matrix(one))]
        for _ in range(4):
            nxt = []
            for x, px in layer:
                for g, pg in zip(gens, gen_pi):
                    y = x * g
                    expect(y.norm2() == ONE, f"unit norm fails for {y!r}")
                    expect(y * y.reversal() == one, f"z rev(z) != 1 for {y!r}")
                    py = pi_matrix(y)
                    expect(py == _matmul(px, pg), f"projection not multiplicative at {y!r}")
                    nxt.append((y, py))
                    checked += 1
            layer = nxt
    return f"{checked} products of length <= 4 over n in {list(ns)}"


# ------------------------------------------------------------------ 2. braid


def check_braid(level: str) -> str:
    words = 0
    for p in all_permutations(3):
        lifts = set()
        for w in reduced_words(p):
            lifts.add(acute_of(w))
            words += 1
        expect(len(lifts) == 1, f"{p}: {len(lifts)} distinct all-plus lifts")
    return f"all 24 permutations of S_4, {words} reduced words, one lift each"


# ------------------------------------------------------------------ 3. golden


def check_golden(level: str) -> str:
    for name, (word, signs, text) in GOLDEN_EXPANSIONS.items():
        z = acute_of(word) if signs is None else lift_word(word, signs)
        expect_equal(to_ahat_string(z), text, name)
    listing = eta_coset_listing()
    expect_equal(len(listing), 32, "size of the listed coset")
    expect(set(coset(WORD_ETA4)) == listing, "coset of the longest element differs from the listing")
    return "4 expansions and the 32-element coset match"


# ------------------------------------------------------------------ 4. N(z)


def _check_counts(word: ReducedWord) -> int:
    buckets = enumerate_dim0(word)
    total = 0
    for z in coset(word):
        got = len(buckets.get(z, ()))
        expect_equal(got, n_of_z(word, z), f"bucket size for {word} at {z!r}")
        total += got
    expect_equal(total, 1 << len(word), f"total count for {word}")
    expect_equal(sum(len(v) for v in buckets.values()), 1 << len(word), "enumerated vectors")
    return total


def check_counts(level: str) -> str:
    perms = 0
    for n in (1, 2, 3):
        for p in all_permutations(n):
            _check_counts(canonical_word(p))
            perms += 1
    if level == "full":
        for word in (WORD_45132, WORD_43521, WORD_ETA4):
            _check_counts(word)
            perms += 1
    word = ReducedWord((1,), 2)
    z = generator_ahat(2, 2) * generator_acute(1, 2)
    expect_equal(n_of_z(word, z), 0, "membership branch for [213]")
    expect(z not in enumerate_dim0(word), "no sign vector should lift to a^2 a'1")
    return f"{perms} permutations, bucket sizes equal the formula"


# ------------------------------------------------------------------ 5. orbits


def _orbit_rows(word: ReducedWord) -> list[tuple]:
    return [(r.size, r.re_value, r.n_value, r.c_anti) for r in orbit_decomposition(word)]


def check_orbits(level: str) -> str:
    if level == "fast":
        rows = _orbit_rows(WORD_4312)
        expect_equal(sum(r[0] for r in rows), 16, "coset size for [4312]")
        return "fast level: [4312] coset partition only"
    r24 = ScaledDyadic(0, 1, 2)
    want_45132 = [(8, -r24, 2, 0), (16, ZERO, 4, 1), (8, r24, 6, 0)]
    expect_equal(_orbit_rows(WORD_45132), want_45132, "[45132] orbits")
    q = ScaledDyadic(1, 0, 2)
    expect_equal(_orbit_rows(WORD_43521), [(16, -q, 6, 0), (16, q, 10, 0)], "[43521] orbits")

    a = acute_of(WORD_ETA4)
    a1, a2 = generator_ahat(1, 4), generator_ahat(2, 4)
    named = [(a, 8, 32), (a1 * a, 4, 40), (-(a1 * a), 4, 24), (a2 * a, 8, 32), (a1 * a2 * a, 8, 32)]
    reports = [orbit(z, WORD_ETA4) for z, _, _ in named]
    expect_equal(
        [(r.size, r.n_value) for r in reports],
        [(s, nv) for _, s, nv in named],
        "longest element orbits (size, N)",
    )
    members = [r.members for r in reports]
    expect(
        sum(len(m) for m in members) == 32 and len(frozenset().union(*members)) == 32,
        "the five named orbits should partition the coset",
    )
    for r in reports:
        expect_equal(r.c_anti, int(r.re_value == 0), "c_anti for the longest element")

    for word in (WORD_45132, WORD_43521, WORD_ETA4):
        c = cycle_count(word.permutation)
        for r in orbit_decomposition(word):
            expect_equal(r.size, orbit_size_law(word.n, c, r.c_anti), f"orbit size law for {word}")
    return "[45132], [43521] and the longest element of S_5 match"


# ------------------------------------------------------------------ 6. skeleta


def _skeleton(word: ReducedWord, z: CliffordElement):
    g = strata_graph(word, z)
    return len(g.vertices), len(g.edges), g.components, g


def check_skeleta(level: str) -> str:
    z1 = lift_word(WORD_4312, Z1_SIGNS)
    expect_equal(_skeleton(WORD_4312, z1)[:3], (3, 2, 1), "([4312], z1) counts")
    # the listed strata lift to the conjugate of z1 by the all-minus sign vector
    listed = lift_word(WORD_4312, Z1_LISTED[0])
    expect_equal(listed, sign_conjugate((-1, -1, -1), z1), "bucket of the listed z1 strata")
    v, e, c, g = _skeleton(WORD_4312, listed)
    expect_equal((v, e, c), (3, 2, 1), "([4312], listed z1 strata) counts")
    expect_equal(
        {str(edge.label) for edge in g.edges},
        {"(-1,-2,+1,-1,+2)", "(-2,+1,-1,+2,-1)"},
        "([4312], z1) edge labels",
    )
    expect_equal(g.vertices, sorted(AncestryVector(x) for x in Z1_LISTED), "([4312], z1) vertices")
    if level == "fast":
        return "fast level: ([4312], z1) only"

    a = acute_of(WORD_45132)
    a1 = generator_ahat(1, 4)
    expect_equal(_skeleton(WORD_45132, a1 * a)[:3], (4, 3, 1), "([45132], a^1 a) counts")
    v, e, c, g = _skeleton(WORD_45132, -a)
    expect_equal((v, e, c), (6, 6, 1), "([45132], -a) counts")
    d2 = [(p.positions, p.type) for p, _ in g.d2_ancestries]
    expect_equal(d2, [((1, 2, 6, 7), "II")], "([45132], -a) dimension-2 preancestries")
    v, e, c, g = _skeleton(WORD_45132, a)
    expect_equal((v, e, c), (2, 0, 2), "([45132], a) counts")

    b = acute_of(WORD_ETA4)
    v, e, c, g = _skeleton(WORD_ETA4, b)
    expect_equal((v, e, g.isolated, c), (32, 48, 2, 3), "(eta, a) vertices/edges/isolated/components")
    expect_equal(_skeleton(WORD_ETA4, a1 * b)[:3], (40, 72, 1), "(eta, a^1 a) counts")
    v, e, c, g = _skeleton(WORD_ETA4, -(a1 * b))
    expect_equal((v, c), (24, 2), "(eta, -a^1 a) vertices/components")
    return "7 skeleta match"


# ------------------------------------------------------------------ 7. totals


def check_totals(level: str, threads: int = 1) -> str:
    want = {1: 2, 2: 6, 3: 20, 4: 52, 5: 96}
    ns = (1, 2, 3) if level == "fast" else (1, 2, 3, 4, 5)
    timings = []
    for n in ns:
        start = time.perf_counter()
        got = components_total(longest_word(n), threads=threads)
        elapsed = time.perf_counter() - start
        expect_equal(got, want[n], f"components for the longest element, n={n}")
        timings.append(f"n={n}:{elapsed:.2f}s")
        if n == 4:
            expect(elapsed < 5.0, f"n=4 took {elapsed:.1f}s")
        if n == 5:
            expect(elapsed < 60.0, f"n=5 took {elapsed:.1f}s")
    if level == "full":
        expect_equal(components_total(WORD_45132), 40, "components of [45132]")
        expect_equal(components_total(WORD_43521), 48, "components of [43521]")
    return f"backend {kernels.BACKEND}; " + " ".join(timings)


# ------------------------------------------------------------------ 8. euler


def check_euler(level: str) -> str:
    z1 = lift_word(WORD_4312, Z1_SIGNS)
    expect_equal(euler_summary(WORD_4312, z1, (3, 2)), 1, "Euler sum for z1")
    expect_equal(components(WORD_4312, z1), 1, "components for z1")
    if level == "fast":
        return "fast level: z1 only"
    b = acute_of(WORD_ETA4)
    a1b = generator_ahat(1, 4) * b
    chi = euler_summary(WORD_ETA4, b, (32, 48, 22, 3))
    expect_equal(chi, 3, "Euler sum for a")
    expect_equal(chi, components(WORD_ETA4, b), "Euler sum vs components for a")
    chi = euler_summary(WORD_ETA4, a1b, (40, 72, 42, 10, 1))
    expect_equal(chi, 1, "Euler sum for a^1 a")
    expect_equal(chi, components(WORD_ETA4, a1b), "Euler sum vs components for a^1 a")
    return "3 alternating sums equal the component counts"


# ------------------------------------------------------------------ 9. matrices

L0 = RationalMatrix.from_rows(
    [
        [1, 0, 0, 0, 0],
        [-3, 1, 0, 0, 0],
        [-3, Fraction(-3, 2), 1, 0, 0],
        [0, -7, 3, 1, 0],
        [0, 4, -2, -2, 1],
    ]
)
T0 = (1, 2, -3, Fraction(-1, 2), -2, 1, -2)
EPS0 = (1, 1, -1, -1, -1, 1, -1)
P4312 = parse_permutation("4312")


def _random_rational(rng: random.Random) -> Fraction:
    return Fraction(rng.choice((-1, 1)) * rng.randint(1, 12), rng.randint(1, 7))


def _sample_4312(rng: random.Random, pattern: tuple[bool, bool, bool]) -> list[Fraction]:
    while True:
        zero = [rng.random() < 0.3 for _ in range(5)]
        nz = [not x for x in zero]
        got = (nz[0] and nz[1] and nz[2], nz[1] and nz[3], nz[2] and nz[4])
        if got == pattern:
            return [Fraction(0) if z else _random_rational(rng) for z in zero]


def check_matrices(level: str, samples: int | None = None) -> str:
    expect_equal(bruhat_perm(L0), parse_permutation("45132"), "Bruhat permutation of L0")
    t = factor(WORD_45132, L0)
    expect_equal(t, tuple(Fraction(x) for x in T0), "factorization of L0")
    expect_equal(tuple(1 if x > 0 else -1 for x in t), EPS0, "signs of the parameters")
    expect_equal(product_from(WORD_45132, T0), L0, "product of the parameters")

    samples = samples or (1000 if level == "full" else 100)
    rng = random.Random(20240611)
    for pattern in itertools.product((True, False), repeat=3):
        for _ in range(samples):
            t = _sample_4312(rng, pattern)
            inside = bruhat_perm(product_from(WORD_4312, t)) == P4312
            expect(inside == all(pattern), f"membership mismatch for t={t}")
    return f"L0 data match; {samples} samples for each of 8 sign cases"


# ------------------------------------------------------------------ 10. transversal


def check_transversal(level: str) -> str:
    expect_equal(TRANSVERSAL(0, 0), (0, 0, 0), "polynomials at the origin")
    grads = TRANSVERSAL.gradients(0, 0)
    expect_equal(grads[2], (-20, 16), "gradient of p3 at the origin")
    expect(TRANSVERSAL.pairwise_independent(0, 0), "gradients are not pairwise independent")
    grid = [Fraction(-2), Fraction(-1, 2), Fraction(0), Fraction(1, 3), Fraction(1)]
    for x1 in grid:
        for x2 in grid:
            m = transversal_z7(x1, x2)
            expect(m.is_orthogonal(), f"z7({x1},{x2}) not orthogonal")
            expect_equal(m.det(), 1, f"det z7({x1},{x2})")
    return "polynomial data match; 25 grid points orthogonal with determinant 1"


# ------------------------------------------------------------------ 11. clicks


def _clicks_exhaustive(word: ReducedWord) -> int:
    ell = len(word)
    ids, _ = kernels.lift_table(word.letters, word.n)
    v = np.arange(1 << ell, dtype=np.int64)
    checked = 0
    for f in faces(word):
        b1 = (v >> (f.k1 - 1)) & 1
        b2 = (v >> (f.k2 - 1)) & 1
        src = v[b1 != b2]
        dst = src ^ f.mask()
        expect(bool(np.all(((dst >> (f.k1 - 1)) & 1) != ((dst >> (f.k2 - 1)) & 1))), "click image not clickable")
        expect(bool(np.all((dst ^ f.mask()) == src)), "click is not an involution")
        expect(bool(np.all(ids[dst] == ids[src])), f"click changes the lift for {word}")
        for x in src[:8]:
            eps = AncestryVector.from_bits(int(x), ell)
            once = click(eps, f)
            expect_equal(once.bits(), int(x) ^ f.mask(), "click disagrees with the boundary mask")
            expect_equal(click(once, f), eps, "click is not an involution")
        checked += len(src)
    return checked


def _random_reduced_word(rng: random.Random, n: int) -> ReducedWord:
    """Canonical word of a random permutation, shuffled by random commutation and braid moves."""
    images = list(range(1, n + 2))
    rng.shuffle(images)
    letters = list(canonical_word(Permutation(tuple(images))).letters)
    for _ in range(3 * len(letters)):
        if len(letters) < 2:
            break
        k = rng.randrange(len(letters) - 1)
        if abs(letters[k] - letters[k + 1]) >= 2:
            letters[k], letters[k + 1] = letters[k + 1], letters[k]
        elif k + 2 < len(letters) and letters[k] == letters[k + 2]:
            letters[k : k + 3] = [letters[k + 1], letters[k], letters[k + 1]]
    return ReducedWord(tuple(letters), n)


def check_clicks(level: str, samples: int | None = None) -> str:
    ns = (1, 2, 3) if level == "fast" else (1, 2, 3, 4)
    words = pairs = 0
    for n in ns:
        for p in all_permutations(n):
            if inversions(p) > 8:
                continue
            for w in reduced_words(p):
                pairs += _clicks_exhaustive(w)
                words += 1
    samples = samples or (10_000 if level == "full" else 500)
    rng = random.Random(7)
    done = 0
    while done < samples:
        n = rng.randint(2, 5)
        w = _random_reduced_word(rng, n)
        fs = faces(w)
        if not fs:
            continue
        f = rng.choice(fs)
        eps = [rng.choice((1, -1)) for _ in w]
        if eps[f.k1 - 1] == eps[f.k2 - 1]:
            eps[f.k2 - 1] = -eps[f.k2 - 1]
        eps = AncestryVector(eps)
        other = click(eps, f)
        expect_equal(click(other, f), eps, "sampled click involution")
        expect_equal(
            kernels.lift_one(w.letters, n, other.bits()),
            kernels.lift_one(w.letters, n, eps.bits()),
            f"sampled click changes the lift for {w}",
        )
        done += 1
    return f"{words} words ({pairs} clicks) exhaustive; {samples} sampled up to length 15"


CRITERIA: tuple[Criterion, ...] = (
    Criterion(1, "algebra relations, unit norm, projection homomorphism", check_algebra),
    Criterion(2, "all-plus lift independent of the reduced word", check_braid),
    Criterion(3, "golden expansions and the longest-element coset", check_golden),
    Criterion(4, "dimension-0 counts equal the closed formula", check_counts),
    Criterion(5, "orbit tables", check_orbits),
    Criterion(6, "per-element 1-skeleta", check_skeleta),
    Criterion(7, "component totals", check_totals),
    Criterion(8, "Euler cross-checks", check_euler),
    Criterion(9, "matrix factorization and Bruhat cells", check_matrices),
    Criterion(10, "transversal data", check_transversal),
    Criterion(11, "click involution and lift invariance", check_clicks),
)


def run_criterion(c: Criterion, level: str) -> Outcome:
    start = time.perf_counter()
    try:
        detail = c.run(level)
        passed = True
    except Exception as exc:  # a crash counts as a failure of that criterion
        detail = f"{type(exc).__name__}: {exc}"
        passed = False
    return Outcome(c, passed, detail, time.perf_counter() - start)


def run_all(level: str = "full", only: Sequence[int] | None = None) -> list[Outcome]:
    if level not in ("fast", "full"):
        raise ValueError(f"unknown level {level!r}")
    return [run_criterion(c, level) for c in CRITERIA if not only or c.number in only]
