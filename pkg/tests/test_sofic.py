from fractions import Fraction
from itertools import product

import pytest

from shiftpress.core import Alphabet, LocallyConstantPotential, word
from shiftpress.enclosure import WeightedMatrix, perron_enclosure
from shiftpress.families import beta_graph
from shiftpress.sft import enumerate_language
from shiftpress.sofic import (
    LabeledGraph,
    bouquet,
    edge_shift_lift,
    graph_from_vertex_shift,
    is_essential,
    make_essential,
    right_resolve,
    sofic_language,
    sofic_language_oracle,
)

from _oracles import GOLDEN_HI, GOLDEN_LO, labeled_graph_isomorphic

F = Fraction
BIN = Alphabet(2)


def golden_presentation():
    return LabeledGraph.from_named_edges(
        BIN, [("a", "a", 0), ("a", "b", 1), ("b", "a", 0)]
    )


class TestLabeledGraph:
    def test_make_essential_strips_stranded(self):
        g = LabeledGraph.from_named_edges(
            BIN, [("a", "a", 0), ("a", "x", 1)]  # x has no way back
        )
        ess = make_essential(g)
        assert ess.vertices == ("a",)
        assert not is_essential(g) and is_essential(ess)

    def test_right_resolving_detection(self):
        assert golden_presentation().is_right_resolving()
        g = LabeledGraph.from_named_edges(BIN, [("a", "a", 0), ("a", "b", 0), ("b", "a", 1)])
        assert not g.is_right_resolving()


class TestBouquet:
    def test_two_generators(self):
        g = bouquet([word("1"), word("01")])
        assert len(g.edges) == 3
        labels = sorted(lab for _, _, lab in g.edges)
        assert labels == [0, 1, 1]

    def test_single_zero_loop(self):
        g = bouquet([word("0")])
        assert len(g.vertices) == 1 and len(g.edges) == 1
        assert sofic_language(g, 4) == {(0, 0, 0, 0)}

    def test_edge_count_is_total_length(self):
        words = [word("0001"), word("00000011")]
        assert len(bouquet(words).edges) == 12

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            bouquet([])
        with pytest.raises(ValueError):
            bouquet([word("")])

    def test_language_contains_concatenation_windows(self):
        words = [word("1"), word("001")]
        g = bouquet(words)
        # every window of every concatenation with total length <= 8
        for reps in range(1, 5):
            for combo in product(words, repeat=reps):
                cat = sum(combo, ())
                if len(cat) > 8:
                    continue
                for n in range(1, len(cat) + 1):
                    lang = sofic_language(g, n)
                    for i in range(len(cat) - n + 1):
                        assert cat[i : i + n] in lang


class TestSoficLanguage:
    def test_golden_bouquet_length_2(self):
        assert sofic_language(bouquet([word("1"), word("01")]), 2) == {
            (1, 1),
            (0, 1),
            (1, 0),
        }

    def test_full_shift_bouquet(self):
        g = bouquet([word("0"), word("1")])
        assert len(sofic_language(g, 3)) == 8

    def test_beta_graph_truncation(self):
        from shiftpress.families import BetaNumber, beta_expansion

        prefix = beta_expansion(BetaNumber.rational(F(3, 2)), 6)
        g = beta_graph(prefix, 6)
        assert sofic_language(g, 2) == {(0, 0), (0, 1), (1, 0)}

    def test_oracle_is_valid(self):
        sofic_language_oracle(golden_presentation()).check_valid(8)


class TestRightResolve:
    def test_fixed_point_on_resolving_input(self):
        g = golden_presentation()
        rr = right_resolve(g)
        assert rr.is_right_resolving()
        assert labeled_graph_isomorphic(g, rr)

    def test_merges_ambiguous_starts(self):
        g = LabeledGraph.from_named_edges(
            BIN,
            [("v", "a", 0), ("v", "b", 0), ("a", "v", 1), ("b", "v", 0)],
        )
        rr = right_resolve(g)
        assert rr.is_right_resolving()
        for n in range(1, 9):
            assert sofic_language(rr, n) == sofic_language(g, n)

    def test_bouquet_golden_language(self):
        rr = right_resolve(bouquet([word("1"), word("01")]))
        assert rr.is_right_resolving()
        # the golden-mean shift with the two symbols exchanged
        from shiftpress.catalog import golden_mean_sft
        from shiftpress.sft import language_oracle

        golden = language_oracle(golden_mean_sft())
        swap = lambda w: tuple(1 - s for s in w)
        for n in range(1, 9):
            assert sofic_language(rr, n) == {swap(w) for w in golden.words(n)}

    def test_language_preserved_on_shipped_graphs(self):
        graphs = [
            golden_presentation(),
            bouquet([word("1"), word("001")]),
            bouquet([word("0001"), word("00000011")]),
            beta_graph((1, 0, 1, 0, 0, 0), 6),
        ]
        for g in graphs:
            rr = right_resolve(g, verify_depth=8)
            assert rr.is_right_resolving()


class TestEdgeShiftLift:
    def test_two_loops_full_shift(self):
        g = LabeledGraph.from_named_edges(BIN, [("v", "v", 0), ("v", "v", 1)])
        shift, lifted = edge_shift_lift(g, LocallyConstantPotential.zero(BIN))
        assert shift.size == 2
        assert all(len(s) == 2 for s in shift.succ)
        assert all(lifted.window((e,)) == 0 for e in range(2))

    def test_golden_edge_shift_perron(self):
        g = golden_presentation()
        shift, _ = edge_shift_lift(g, LocallyConstantPotential.zero(BIN))
        assert shift.size == 3
        rows = [
            [F(1) if j in shift.succ[i] else F(0) for j in range(3)]
            for i in range(3)
        ]
        res = perron_enclosure(WeightedMatrix.from_dense(rows), 24)
        assert res.interval.lo <= GOLDEN_HI and GOLDEN_LO <= res.interval.hi

    def test_label_indicator_lifts_to_edge_indicator(self):
        g = golden_presentation()
        phi = LocallyConstantPotential.indicator_of_symbol(BIN, 1)
        shift, lifted = edge_shift_lift(g, phi)
        hits = [e for e in range(3) if lifted.window((e,)) == 1]
        assert len(hits) == 1
        assert g.edges[hits[0]][2] == 1

    def test_needs_essential_graph(self):
        g = LabeledGraph.from_named_edges(BIN, [("a", "a", 0), ("a", "x", 1)])
        with pytest.raises(ValueError):
            edge_shift_lift(g, LocallyConstantPotential.zero(BIN))

    def test_counting_inequality(self):
        # the label map sends edge words onto label words, so edge counts
        # dominate; equality needs the labeling injective on paths, as in
        # the two-loop presentation of the full shift
        for g in (bouquet([word("1"), word("01")]), golden_presentation()):
            shift, _ = edge_shift_lift(
                make_essential(g), LocallyConstantPotential.zero(BIN)
            )
            for n in range(1, 6):
                assert len(enumerate_language(shift, n)) >= len(
                    sofic_language(g, n)
                )
        two_loops = LabeledGraph.from_named_edges(
            BIN, [("v", "v", 0), ("v", "v", 1)]
        )
        shift, _ = edge_shift_lift(two_loops, LocallyConstantPotential.zero(BIN))
        for n in range(1, 6):
            assert len(enumerate_language(shift, n)) == len(
                sofic_language(two_loops, n)
            )


def test_graph_from_vertex_shift_round_trip():
    from shiftpress.catalog import golden_mean_sft
    from shiftpress.sft import language_oracle

    v = golden_mean_sft()
    g = graph_from_vertex_shift(v)
    lang = language_oracle(v)
    for n in range(1, 7):
        assert sofic_language(g, n) == lang.words(n)
