import random
from fractions import Fraction

import pytest

from shiftpress.core import Alphabet, word
from shiftpress.errors import NotStronglyConnectedError
from shiftpress.sft import (
    VertexShift,
    enumerate_language,
    language_oracle,
    min_mean_cycle,
    sft_from_forbidden,
    transitive_components,
    trim,
    vertex_shift_from_language,
)

from _oracles import brute_simple_cycles, brute_words_avoiding, vertex_shift_isomorphic

F = Fraction
BIN = Alphabet(2)


class TestSftFromForbidden:
    def test_golden_mean(self):
        v = sft_from_forbidden(BIN, [word("11")])
        assert v.states == ((0,), (1,))
        assert v.succ == ((0, 1), (0,))

    def test_empty_forbidden_is_full_shift(self):
        v = sft_from_forbidden(BIN, [])
        assert v.states == ((0,), (1,))
        assert v.succ == ((0, 1), (0, 1))

    def test_all_symbols_forbidden_is_empty(self):
        v = sft_from_forbidden(BIN, [word("0"), word("1")])
        assert v.is_empty()

    def test_single_symbol_restriction(self):
        v = sft_from_forbidden(BIN, [word("1")])
        assert v.states == ((0,),)

    def test_trimming_removes_dead_words(self):
        # forbidding 00 and 11 leaves only the alternating orbit
        v = sft_from_forbidden(BIN, [word("00"), word("11")])
        assert v.states == ((0,), (1,))
        assert v.succ == ((1,), (0,))

    def test_longer_memory(self):
        forbidden = [word("111"), word("00")]
        v = sft_from_forbidden(BIN, forbidden)
        # for this shift every avoiding word is extendable, so the
        # enumerated language equals the brute-force filter
        assert enumerate_language(v, 5) == brute_words_avoiding(2, forbidden, 5)
        language_oracle(v).check_valid(6)

    def test_idempotent_under_recoding(self):
        for forbidden in ([word("11")], [word("101")], [word("0011")]):
            v = sft_from_forbidden(BIN, forbidden)
            k = max(len(f) for f in forbidden)
            rebuilt = vertex_shift_from_language(language_oracle(v), k)
            assert vertex_shift_isomorphic(v, rebuilt)


class TestTransitiveComponents:
    def test_golden_is_transitive(self):
        comps = transitive_components(sft_from_forbidden(BIN, [word("11")]))
        assert len(comps) == 1
        assert comps[0].members == (0, 1)

    def test_two_fixed_points(self):
        v = sft_from_forbidden(BIN, [word("01"), word("10")])
        comps = transitive_components(v)
        assert len(comps) == 2
        assert [c.least_word() for c in comps] == [(0,), (1,)]

    def test_chain_keeps_wandering_edge_out(self):
        v = sft_from_forbidden(BIN, [word("10")])
        comps = transitive_components(v)
        assert len(comps) == 2
        # the 0 -> 1 edge belongs to no component
        members = [set(c.members) for c in comps]
        assert all(len(m) == 1 for m in members)

    def test_component_order_deterministic(self):
        v = sft_from_forbidden(BIN, [word("01"), word("10")])
        comps = transitive_components(v)
        assert comps[0].least_word() <= comps[1].least_word()


class TestEnumerateLanguage:
    def test_golden_length_2(self):
        v = sft_from_forbidden(BIN, [word("11")])
        assert enumerate_language(v, 2) == {(0, 0), (0, 1), (1, 0)}

    def test_golden_length_4_count(self):
        v = sft_from_forbidden(BIN, [word("11")])
        assert len(enumerate_language(v, 4)) == 8

    def test_full_shift_length_3(self):
        v = sft_from_forbidden(BIN, [])
        assert len(enumerate_language(v, 3)) == 8

    def test_fibonacci_counts(self):
        v = sft_from_forbidden(BIN, [word("11")])
        counts = [len(enumerate_language(v, n)) for n in range(1, 13)]
        assert counts[0] == 2 and counts[1] == 3
        for i in range(2, 12):
            assert counts[i] == counts[i - 1] + counts[i - 2]

    def test_against_brute_force(self):
        for forbidden in ([word("11")], [word("111")], [word("010")]):
            v = sft_from_forbidden(BIN, forbidden)
            for n in range(7):
                assert enumerate_language(v, n) == brute_words_avoiding(
                    2, forbidden, n
                ) | (set() if n else {()})

    def test_empty_shift_language(self):
        v = sft_from_forbidden(BIN, [word("0"), word("1")])
        assert enumerate_language(v, 0) == frozenset()
        assert enumerate_language(v, 3) == frozenset()

    def test_block_shift_deblocks(self):
        v = vertex_shift_from_language(
            language_oracle(sft_from_forbidden(BIN, [word("11")])), 3
        )
        assert v.block_length == 2
        assert enumerate_language(v, 2) == {(0, 0), (0, 1), (1, 0)}


class TestMinMeanCycle:
    def test_golden_target_weight(self):
        v = sft_from_forbidden(BIN, [word("11")])
        weights = {
            (i, j): F(1) if v.states[j] == (1,) else F(0) for i, j in v.edges()
        }
        cycle, mean = min_mean_cycle(v, weights)
        assert mean == 0
        assert [v.states[i] for i in cycle] == [(0,)]

    def test_single_loop(self):
        v = VertexShift(BIN, ((0,),), ((0,),))
        cycle, mean = min_mean_cycle(v, lambda i, j: F(5))
        assert mean == 5 and cycle == (0,)

    def test_tie_breaks_toward_shorter(self):
        # 3-cycle with mean 2 ties a self-loop of weight 2
        a3 = Alphabet(3)
        v = VertexShift(a3, ((0,), (1,), (2,)), ((0, 1), (2,), (0,)))
        weights = {(0, 0): F(2), (0, 1): F(1), (1, 2): F(2), (2, 0): F(3)}
        cycle, mean = min_mean_cycle(v, weights)
        assert mean == 2
        assert cycle == (0,)

    def test_not_strongly_connected_rejected(self):
        v = sft_from_forbidden(BIN, [word("10")])
        with pytest.raises(NotStronglyConnectedError):
            min_mean_cycle(v, lambda i, j: F(0))

    def test_below_all_short_cycles(self):
        rng = random.Random(99)
        for _ in range(20):
            v = sft_from_forbidden(BIN, [word("11")])
            w = vertex_shift_from_language(language_oracle(v), 3)
            weights = {
                (i, j): F(rng.randint(-5, 5), rng.randint(1, 4))
                for i, j in w.edges()
            }
            cycle, mean = min_mean_cycle(w, weights)
            for c in brute_simple_cycles([list(s) for s in w.succ], 6):
                total = sum(
                    weights[(c[t], c[(t + 1) % len(c)])] for t in range(len(c))
                )
                assert mean <= F(total, len(c))
            # the reported cycle achieves the mean
            total = sum(
                weights[(cycle[t], cycle[(t + 1) % len(cycle)])]
                for t in range(len(cycle))
            )
            assert F(total, len(cycle)) == mean


def test_trim_is_idempotent():
    v = sft_from_forbidden(BIN, [word("11")])
    assert trim(v) == v
