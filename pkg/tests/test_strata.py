from __future__ import annotations

import itertools
import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bruhatstrata.combinatorics import Face, ReducedWord, faces, longest_word
from bruhatstrata.errors import (
    InconsistencyError,
    MalformedPreancestryError,
    NotClickableError,
    NotInCosetError,
)
from bruhatstrata.clifford import CliffordElement, generator_ahat
from bruhatstrata.spinweyl import acute_of, coset, lift_word, n_of_z
from bruhatstrata.strata import (
    AncestryVector,
    StrataGraph,
    classify_d2,
    click,
    component_table,
    components,
    components_total,
    d2_ancestries,
    edge_label,
    enumerate_d2_preancestries,
    enumerate_dim0,
    euler_summary,
    isolated_count,
    strata_graph,
)

from .strategies import reduced_words

W45132 = ReducedWord((2, 3, 1, 2, 4, 3, 2), 4)
W45132_ALT = ReducedWord((2, 1, 3, 2, 4, 3, 2), 4)
W4312 = ReducedWord((1, 2, 3, 1, 2), 3)


class TestAncestryVector:
    def test_validation(self):
        with pytest.raises(ValueError):
            AncestryVector((0, 1))
        with pytest.raises(ValueError):
            AncestryVector((-2, 1))

    def test_parse_and_print(self):
        v = AncestryVector.parse("(-1,-2,+1,-1,+2)")
        assert v.dim == 1
        assert str(v) == "(-1,-2,+1,-1,+2)"
        assert AncestryVector.parse("+-+") == (1, -1, 1)
        assert AncestryVector.parse("()") == ()
        with pytest.raises(ValueError):
            v.sign_string()

    @given(st.integers(0, 255))
    def test_bits_round_trip(self, v):
        eps = AncestryVector.from_bits(v, 8)
        assert eps.bits() == v
        assert AncestryVector.parse(eps.sign_string()) == eps


class TestDimensionZero:
    @given(reduced_words(max_n=4))
    @settings(max_examples=30)
    def test_buckets_match_generic_lift(self, word):
        buckets = enumerate_dim0(word)
        assert sum(len(vs) for vs in buckets.values()) == 1 << len(word)
        for z, vs in buckets.items():
            assert len(vs) == n_of_z(word, z)
            for eps in vs[:3]:
                assert lift_word(word, eps.signs()) == z


class TestClicks:
    face = Face(1, 4, (1, 2, 4))

    def test_click_negates_boundary(self):
        assert click((-1, 1, 1, 1, 1), self.face) == (1, -1, 1, -1, 1)

    def test_click_needs_opposite_corners(self):
        with pytest.raises(NotClickableError):
            click((1, 1, 1, 1, 1), self.face)

    def test_edge_label(self):
        assert edge_label((-1, 1, -1, 1, 1), self.face) == (-2, 1, -1, 2, 1)
        with pytest.raises(NotClickableError):
            edge_label((1, 1, -1, -1, 1), self.face)

    @given(reduced_words(max_n=4), st.data())
    @settings(max_examples=40)
    def test_click_preserves_lift(self, word, data):
        fs = faces(word)
        if not fs:
            return
        f = data.draw(st.sampled_from(fs))
        eps = list(data.draw(st.lists(st.sampled_from((1, -1)), min_size=len(word), max_size=len(word))))
        eps[f.k1 - 1], eps[f.k2 - 1] = -1, 1
        clicked = click(eps, f)
        assert click(clicked, f) == tuple(eps)
        assert lift_word(word, clicked.signs()) == lift_word(word, tuple(eps))


class TestGraphs:
    @given(reduced_words(max_n=4))
    @settings(max_examples=25)
    def test_component_table_matches_graphs(self, word):
        rows = component_table(word)
        assert sum(r.components for r in rows) == components_total(word)
        for r in rows[:4]:
            g = strata_graph(word, r.z, with_d2=False)
            assert (len(g.vertices), len(g.edges)) == (r.vertices, r.edges)
            assert g.components == r.components == components(word, r.z)
            assert g.isolated == r.isolated == isolated_count(word, r.z)

    def test_edge_endpoints_share_lift(self):
        z = acute_of(W45132)
        g = strata_graph(W45132, z)
        for e in g.edges:
            for v in e.endpoints:
                assert v in g.vertices
            assert e.label.dim == 1

    def test_empty_bucket_in_coset(self):
        empty = [z for z in coset(W45132) if n_of_z(W45132, z) == 0]
        for z in empty:
            assert strata_graph(W45132, z).vertices == []

    def test_outside_coset_rejected(self):
        with pytest.raises(NotInCosetError):
            strata_graph(W45132, CliffordElement.one(4))
        with pytest.raises(NotInCosetError):
            strata_graph(W45132, CliffordElement.one(3))

    def test_json_round_trip(self):
        g = strata_graph(W45132, -acute_of(W45132))
        data = json.loads(g.dumps())
        back = StrataGraph.from_json(data)
        assert back.z == g.z and back.vertices == g.vertices and back.edges == g.edges
        assert back.d2_ancestries == g.d2_ancestries
        assert data["components"] == g.components

    def test_dot(self):
        g = strata_graph(W4312, acute_of(W4312))
        dot = g.to_dot()
        assert dot.startswith("graph w_1_2_3_1_2 {")
        assert dot.count(" -- ") == len(g.edges)
        assert dot.rstrip().endswith("}")

    @pytest.mark.parametrize("n, total", [(1, 2), (2, 6), (3, 20), (4, 52)])
    def test_longest_word_component_totals(self, n, total):
        assert components_total(longest_word(n)) == total

    def test_threaded_totals(self):
        assert components_total(longest_word(4), threads=2) == 52


def _descent_by_one_line(images: list[int], i: int) -> bool:
    # right multiplication by a_i swaps the values i and i+1
    return images.index(i + 1) < images.index(i)


def oracle_d2(word: ReducedWord) -> set[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Brute force over full ancestry vectors, walking on one-line lists."""
    found = set()
    for entries in itertools.product((-2, -1, 1, 2), repeat=len(word)):
        if entries.count(-2) != 2 or entries.count(2) != 2:
            continue
        images = list(range(1, word.n + 2))
        ok = True
        for x, i in zip(entries, word.letters):
            down = _descent_by_one_line(images, i)
            if abs(x) == 1:
                if down:
                    ok = False
                    break
                continue
            if (x == 2) != down:
                ok = False
                break
            a, b = images.index(i), images.index(i + 1)
            images[a], images[b] = images[b], images[a]
        if not ok or images != sorted(images):
            continue
        positions = tuple(k + 1 for k, x in enumerate(entries) if abs(x) == 2)
        signs = tuple(x for x in entries if abs(x) == 2)
        if classify_d2(positions, signs, word) != "invalid":
            found.add((positions, signs))
    return found


class TestDimensionTwo:
    def test_classifier(self):
        assert classify_d2((1, 2, 6, 7), (-2, -2, 2, 2), W45132) == "II"
        assert classify_d2((1, 2, 4, 5), (-2, -2, 2, 2), ReducedWord((1, 3, 2, 1, 3), 3)) == "I"
        assert classify_d2((1, 2, 4, 5), (-2, -2, 2, 2), W4312) == "invalid"
        with pytest.raises(MalformedPreancestryError):
            classify_d2((1, 2, 3), (-2, -2, 2), W45132)
        with pytest.raises(MalformedPreancestryError):
            classify_d2((2, 1, 6, 7), (-2, -2, 2, 2), W45132)
        with pytest.raises(MalformedPreancestryError):
            classify_d2((1, 2, 6, 7), (-2, -1, 2, 2), W45132)
        assert classify_d2((1, 2, 6, 7), (2, -2, -2, 2), W45132) == "invalid"

    def test_single_preancestry_of_seven_letter_word(self):
        found = enumerate_d2_preancestries(W45132)
        assert [(p.positions, p.signs, p.type) for p in found] == [
            ((1, 2, 6, 7), (-2, -2, 2, 2), "II")
        ]

    def test_its_ancestry_lands_on_minus_acute(self):
        anc = d2_ancestries(W45132, -acute_of(W45132))
        assert [str(a) for _, a in anc] == ["(-2,-2,-1,-1,+1,+2,+2)"]
        assert d2_ancestries(W45132, acute_of(W45132)) == []

    def test_five_letter_word_has_none(self):
        assert enumerate_d2_preancestries(W4312) == []

    @pytest.mark.parametrize(
        "prefix, count", [(None, 22), (1, 42)]
    )
    def test_longest_word_of_s5(self, prefix, count):
        eta = longest_word(4)
        z = acute_of(eta)
        if prefix is not None:
            z = generator_ahat(prefix, 4) * z
        assert len(d2_ancestries(eta, z)) == count

    @given(reduced_words(max_n=4))
    @settings(max_examples=25)
    def test_matches_brute_force_oracle(self, word):
        if len(word) > 8:
            return
        ours = {(p.positions, p.signs) for p in enumerate_d2_preancestries(word)}
        assert ours == oracle_d2(word)

    def test_matches_oracle_on_fixed_words(self):
        for word in (W45132, W45132_ALT, longest_word(3)):
            ours = {(p.positions, p.signs) for p in enumerate_d2_preancestries(word)}
            assert ours == oracle_d2(word)


class TestEuler:
    def test_consistent_counts(self):
        z = acute_of(W45132)
        g = strata_graph(W45132, z, with_d2=False)
        assert euler_summary(W45132, z, [len(g.vertices), len(g.edges)]) == len(g.vertices) - len(g.edges)

    def test_inconsistent_counts(self):
        z = acute_of(W45132)
        g = strata_graph(W45132, z, with_d2=False)
        with pytest.raises(InconsistencyError):
            euler_summary(W45132, z, [len(g.vertices) + 1, len(g.edges)])
        if g.edges:
            with pytest.raises(InconsistencyError):
                euler_summary(W45132, z, [len(g.vertices)])
