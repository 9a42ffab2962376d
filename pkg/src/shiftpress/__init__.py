"""Certified enclosures of topological entropy and pressure for shifts.

All certified results are rational intervals guaranteed to contain the
true value; arithmetic on certified paths is exact.
"""

from .coded import (
    CodedShift,
    GeneratorStream,
    coded_pressure,
    sardinas_patterson,
    sofic_approximation,
)
from .core import (
    Alphabet,
    LanguageOracle,
    LocallyConstantPotential,
    PotentialOracle,
    language_distance,
    parse_potential,
    sup_birkhoff_on_cylinder,
    word,
    word_str,
)
from .enclosure import (
    PerronResult,
    RationalInterval,
    WeightedMatrix,
    exp_enclosure,
    log_enclosure,
    perron_enclosure,
)
from .families import (
    BetaExpansion,
    BetaNumber,
    SSet,
    beta_expansion,
    beta_generators,
    beta_graph,
    beta_shift,
    chain_check,
    generalized_gap_stream,
    power_pair_shift,
    s_gap_stream,
    s_gap_shift,
)
from .pressure import (
    PressureEnclosure,
    entropy_upper_trace,
    partition_upper,
    periodic_lower,
    recode_centered,
    sft_pressure,
    sofic_pressure,
)
from .sft import (
    VertexShift,
    enumerate_language,
    language_oracle,
    min_mean_cycle,
    sft_from_forbidden,
    transitive_components,
    vertex_shift_from_language,
)
from .sofic import (
    LabeledGraph,
    bouquet,
    edge_shift_lift,
    right_resolve,
    sofic_language,
)
from .witness import WitnessReport, build_witness

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
