import random
from fractions import Fraction
from itertools import product

import pytest

from shiftpress.catalog import full_shift, golden_mean_sft, no_111_sft
from shiftpress.core import (
    Alphabet,
    LanguageOracle,
    LocallyConstantPotential,
    PotentialOracle,
    cylinder_sups,
    format_potential,
    language_distance,
    parse_potential,
    sup_birkhoff_on_cylinder,
    sup_norm_distance,
    word,
    word_str,
)
from shiftpress.errors import (
    AlphabetMismatchError,
    NotAdmissibleError,
    ParseError,
)
from shiftpress.sft import language_oracle

F = Fraction
BIN = Alphabet(2)


def test_word_roundtrip():
    assert word("0110") == (0, 1, 1, 0)
    assert word_str((1, 0, 2)) == "102"
    assert word("") == ()


def test_alphabet_rejects_bad_words():
    with pytest.raises(ValueError):
        BIN.check_word((0, 2))


class TestLanguageOracle:
    def test_memoizes(self):
        calls = []

        def fn(n):
            calls.append(n)
            return {(0,) * n}

        oracle = LanguageOracle(Alphabet(1), fn)
        oracle.words(3)
        oracle.words(3)
        assert calls == [3]

    def test_validity_of_shipped(self, shipped_oracles):
        for name, oracle in shipped_oracles.items():
            oracle.check_valid(8)

    def test_invalid_oracle_caught(self):
        # drops a word's one-shorter factor
        oracle = LanguageOracle(
            BIN, lambda n: {(0,) * n, (1,) + (0,) * (n - 1)} if n == 3 else {(0,) * n}
        )
        with pytest.raises(AssertionError):
            oracle.check_valid(4)


class TestLanguageDistance:
    def test_full_vs_golden(self):
        a = language_oracle(full_shift(2))
        b = language_oracle(golden_mean_sft())
        # languages first differ at length 2 (the word 11)
        assert language_distance(a, b, 4) == F(1, 4)

    def test_identity_is_indistinguishable(self):
        a = language_oracle(golden_mean_sft())
        b = language_oracle(golden_mean_sft())
        assert language_distance(a, b, 6) is None

    def test_golden_vs_no111(self):
        # brute force: no-111 admits the word 11 at length 2, golden does not
        a = language_oracle(golden_mean_sft())
        b = language_oracle(no_111_sft())
        k = next(n for n in range(5) if a.words(n) != b.words(n))
        assert k == 2
        assert language_distance(a, b, 4) == F(1, 1 << k) == F(1, 4)

    def test_alphabet_mismatch(self):
        a = language_oracle(full_shift(2))
        b = language_oracle(full_shift(3))
        with pytest.raises(AlphabetMismatchError):
            language_distance(a, b, 3)

    def test_symmetry_and_ultrametric(self, shipped_oracles):
        names = ["full2", "golden", "no111", "sgap-evens", "beta3/2"]
        oracles = [shipped_oracles[n] for n in names]

        def dist(a, b):
            d = language_distance(a, b, 6)
            return F(1, 1 << 7) if d is None else d

        for a, b in product(oracles, repeat=2):
            assert dist(a, b) == dist(b, a)
        for a, b, c in product(oracles, repeat=3):
            assert dist(a, c) <= max(dist(a, b), dist(b, c))


class TestPotentials:
    def test_window_lookup_and_default(self):
        phi = LocallyConstantPotential(BIN, 1, {word("010"): F(7, 2)}, F(-1))
        assert phi.window(word("010")) == F(7, 2)
        assert phi.window(word("000")) == F(-1)
        assert phi.sup_norm() == F(7, 2)

    def test_bad_table_word_rejected(self):
        with pytest.raises(ValueError):
            LocallyConstantPotential(BIN, 1, {word("01"): 1})

    def test_widen_preserves_values(self):
        phi = LocallyConstantPotential.single_site(BIN, [2, 5])
        wide = phi.widen_to(1)
        for w in product(range(2), repeat=3):
            assert wide.window(w) == phi.window((w[1],))

    def test_add_and_constant(self):
        a = LocallyConstantPotential.single_site(BIN, [0, 1])
        b = a.add_constant(F(1, 3))
        assert b.window((1,)) == F(4, 3)
        both = a + b
        assert both.window((0,)) == F(1, 3)
        assert sup_norm_distance(a, b) == F(1, 3)

    def test_potential_file_roundtrip(self):
        phi = LocallyConstantPotential(
            BIN, 1, {word("111"): F(1), word("010"): F(-2, 3)}, F(1, 7)
        )
        text = format_potential(phi)
        back = parse_potential(text, BIN)
        assert back == phi

    def test_potential_parse_errors(self):
        with pytest.raises(ParseError):
            parse_potential("radius x\ndefault 0\n", BIN)
        with pytest.raises(ParseError):
            parse_potential("radius 0\ndefault 1/0\n", BIN)
        with pytest.raises(ParseError):
            parse_potential("radius 0\ndefault 0\n2 1\n", BIN)
        with pytest.raises(ParseError):
            parse_potential("radius 1\ndefault 0\n01 1\n", BIN)


class TestSupBirkhoff:
    def test_indicator_counts_ones(self):
        lang = language_oracle(full_shift(2))
        phi = LocallyConstantPotential.indicator_of_symbol(BIN, 1)
        assert sup_birkhoff_on_cylinder(lang, phi, word("101")) == 2

    def test_golden_single_site(self):
        lang = language_oracle(golden_mean_sft())
        phi = LocallyConstantPotential.single_site(BIN, [0, 1])
        assert sup_birkhoff_on_cylinder(lang, phi, word("010")) == 1

    def test_radius_one_window(self):
        # brute force over all length-4 extensions of 11 at offset 1:
        # the sum of two window hits is maximized at 1111, giving 2
        lang = language_oracle(full_shift(2))
        phi = LocallyConstantPotential(BIN, 1, {word("111"): F(1)})
        best = max(
            phi.window((a, 1, 1)) + phi.window((1, 1, b))
            for a in range(2)
            for b in range(2)
        )
        assert best == 2
        assert sup_birkhoff_on_cylinder(lang, phi, word("11")) == 2

    def test_inadmissible_rejected(self):
        lang = language_oracle(golden_mean_sft())
        phi = LocallyConstantPotential.zero(BIN)
        with pytest.raises(NotAdmissibleError):
            sup_birkhoff_on_cylinder(lang, phi, word("11"))

    @pytest.mark.parametrize("shift_name", ["golden", "no111", "full2"])
    def test_matches_exhaustive_maximization(self, shift_name, shipped_oracles):
        lang = shipped_oracles[shift_name]
        rng = random.Random(hash(shift_name) & 0xFFFF)
        for k in range(3):
            table = {
                w: F(rng.randint(-4, 4), rng.randint(1, 3))
                for w in product(range(2), repeat=2 * k + 1)
                if rng.random() < 0.8
            }
            phi = LocallyConstantPotential(BIN, k, table, F(rng.randint(-2, 2)))
            for n in range(1, 7):
                for tau in sorted(lang.words(n))[:20]:
                    brute = max(
                        sum(
                            phi.window(w[j : j + 2 * k + 1])
                            for j in range(n)
                        )
                        for w in lang.words(n + 2 * k)
                        if w[k : k + n] == tau
                    )
                    assert sup_birkhoff_on_cylinder(lang, phi, tau) == brute

    def test_cylinder_sups_consistent(self, shipped_oracles):
        lang = shipped_oracles["golden"]
        phi = LocallyConstantPotential.single_site(BIN, [0, 1])
        sups = cylinder_sups(lang, phi, 3)
        assert set(sups) == lang.words(3)
        for tau, val in sups.items():
            assert val == sup_birkhoff_on_cylinder(lang, phi, tau)


class TestPotentialOracle:
    def test_exact_oracle(self):
        phi = LocallyConstantPotential.single_site(BIN, [0, 1])
        oracle = PotentialOracle.from_exact(phi)
        assert oracle.exact
        assert oracle.approx(5) is phi

    def test_consecutive_approximants(self):
        # radius-p truncations of a geometric tail potential
        def approx(p):
            k = max(1, (p + 1) // 2)
            table = {}
            for w in product(range(2), repeat=2 * k + 1):
                val = sum(F(w[k + i] + w[k - i], 4**i) for i in range(k + 1))
                table[w] = val
            return LocallyConstantPotential(BIN, k, table)

        oracle = PotentialOracle(approx)
        for p in range(1, 6):
            a, b = oracle.approx(p), oracle.approx(p + 1)
            bound = F(1, 1 << p) + F(1, 1 << (p + 1))
            assert sup_norm_distance(a, b) <= bound
