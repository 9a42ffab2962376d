"""Ready-made example systems used by the documentation and test suite."""

from __future__ import annotations

from fractions import Fraction

from .coded import CodedShift, GeneratorStream
from .core import Alphabet, LanguageOracle, LocallyConstantPotential, word
from .families import (
    BetaNumber,
    SSet,
    beta_shift,
    generalized_gap_shift,
    power_pair_shift,
    s_gap_shift,
)
from .sft import VertexShift, language_oracle, sft_from_forbidden
from .sofic import LabeledGraph, bouquet, sofic_language_oracle

BINARY = Alphabet(2)


def golden_mean_sft() -> VertexShift:
    """Binary shift forbidding 11."""
    return sft_from_forbidden(BINARY, [word("11")])


def full_shift(d: int = 2) -> VertexShift:
    return sft_from_forbidden(Alphabet(d), [])


def no_111_sft() -> VertexShift:
    return sft_from_forbidden(BINARY, [word("111")])


def chain_sft() -> VertexShift:
    """Two fixed points joined by a wandering transition (forbids 10)."""
    return sft_from_forbidden(BINARY, [word("10")])


def even_gap_shift() -> CodedShift:
    return s_gap_shift(SSet.evens())


def sgap_01_shift() -> CodedShift:
    return s_gap_shift(SSet.explicit([0, 1]))


def sgap_02_shift() -> CodedShift:
    return s_gap_shift(SSet.explicit([0, 2]))


def golden_bouquet() -> LabeledGraph:
    return bouquet([word("1"), word("01")])


def triple_zero_ones_shift() -> CodedShift:
    """Coded shift generated by (000)^k 1^k."""
    return power_pair_shift(word("000"), word("1"))


def beta_three_halves() -> CodedShift:
    return beta_shift(BetaNumber.rational(Fraction(3, 2)))


def ggap_sample_shift() -> CodedShift:
    return generalized_gap_shift(
        [SSet.explicit([0, 1]), SSet.explicit([0])], [(0, 1)]
    )


def renewal_golden() -> CodedShift:
    """Finite generating set {1, 01} (a renewal presentation)."""
    stream = GeneratorStream.from_words(
        BINARY,
        [word("1"), word("01")],
        asserted_fssp=True,
        asserted_unique_representation=True,
    )
    oracle = sofic_language_oracle(bouquet(stream.first(2)), name="renewal{1,01}")
    return CodedShift(BINARY, stream, oracle, name="renewal{1,01}")


def single_site(values) -> LocallyConstantPotential:
    return LocallyConstantPotential.single_site(BINARY, values)


def shipped_language_oracles() -> dict:
    """Named language oracles used across the property suites."""
    out = {
        "full2": language_oracle(full_shift(2), name="full2"),
        "golden": language_oracle(golden_mean_sft(), name="golden"),
        "no111": language_oracle(no_111_sft(), name="no111"),
        "chain": language_oracle(chain_sft(), name="chain"),
        "bouquet{1,01}": sofic_language_oracle(golden_bouquet(), name="bouquet{1,01}"),
    }
    out["sgap-evens"] = even_gap_shift().language
    out["sgap{0,1}"] = sgap_01_shift().language
    out["ggap"] = ggap_sample_shift().language
    out["beta3/2"] = beta_three_halves().language
    out["powerpair"] = triple_zero_ones_shift().language
    return out


def shipped_sfts() -> dict:
    return {
        "golden": golden_mean_sft(),
        "full2": full_shift(2),
        "no111": no_111_sft(),
        "chain": chain_sft(),
    }
