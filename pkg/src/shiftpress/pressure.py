"""Certified pressure computations.

Upper bounds come from partition functions: for any shift, (1/n) log Z_n
is at least the pressure, and the sequence decreases to it.  Exact values
for finite presentations come from the Perron root of the transfer matrix
with entries e^(potential on the edge window), computed per transitive
component; the pressure of the whole shift is the maximum over components
because wandering parts carry none.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import (
    LanguageOracle,
    LocallyConstantPotential,
    Word,
    cylinder_sups,
)
from .enclosure import (
    RationalInterval,
    WeightedMatrix,
    exp_enclosure,
    log_enclosure,
    log_interval,
    perron_enclosure,
)
from .errors import EmptyShiftError, MembershipError
from .sft import (
    VertexShift,
    language_oracle,
    transitive_components,
    vertex_shift_from_language,
)
from . import sofic as _sofic


def partition_upper(
    lang: LanguageOracle, phi: LocallyConstantPotential, n: int, p: int
) -> RationalInterval:
    """Enclosure of (1/n) log Z_n, the n-th partition-function bound.

    Z_n sums exp(sup of the n-step Birkhoff sum over the cylinder) across
    the admissible words of length n; the sups are exact rationals, the
    exponentials are certified enclosures, and the log is certified, so
    the true pressure is at most the returned upper endpoint.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    sups = cylinder_sups(lang, phi, n)
    if not sups:
        raise EmptyShiftError("empty language")
    counts: dict[Fraction, int] = {}
    for val in sups.values():
        counts[val] = counts.get(val, 0) + 1
    q = p + 4
    z_lo = Fraction(0)
    z_hi = Fraction(0)
    for val, c in counts.items():
        e = exp_enclosure(val, q)
        z_lo += c * e.lo
        z_hi += c * e.hi
    pl = p + 4 + max(1, n).bit_length()
    return log_interval(RationalInterval(z_lo, z_hi), pl).scale(Fraction(1, n))


def recode_centered(phi: LocallyConstantPotential) -> LocallyConstantPotential:
    """Read a centered table as one-sided windows starting at the cursor.

    The table is unchanged; only the reading convention moves, which
    composes the potential with a power of the shift and therefore leaves
    the pressure alone (invariant measures do not see the time shift).
    All transfer-matrix weights in this module use the one-sided reading.
    """
    return phi


def _weighted_component_matrix(w: VertexShift, members, phi, q):
    exp_cache: dict[Fraction, RationalInterval] = {}
    k = phi.radius
    index = {s: t for t, s in enumerate(members)}
    rows = []
    for i in members:
        row = []
        for j in w.succ[i]:
            t = index.get(j)
            if t is None:
                continue
            val = phi.window(w.edge_word(i, j)[: 2 * k + 1])
            cell = exp_cache.get(val)
            if cell is None:
                cell = exp_enclosure(val, q)
                exp_cache[val] = cell
            row.append((t, cell))
        rows.append(tuple(row))
    return WeightedMatrix(len(members), tuple(rows))


def sft_pressure(
    v: VertexShift,
    phi: LocallyConstantPotential,
    p: int,
    perron_budget: int = 20000,
) -> RationalInterval:
    """Certified pressure enclosure for a vertex shift, width <= 2**-p.

    The shift is refined until one edge determines a full potential
    window, each transitive component gets a transfer matrix weighted by
    exp enclosures, and the pressure is the max over components of the
    log of the Perron enclosure.  Wandering states contribute nothing.
    """
    if v.is_empty():
        raise EmptyShiftError("pressure of the empty shift is undefined")
    k = phi.radius
    w = v
    if v.block_length < max(2 * k, 1):
        w = vertex_shift_from_language(
            language_oracle(v), max(2 * k + 1, v.block_length + 1)
        )
    comps = transitive_components(w)
    if not comps:
        raise EmptyShiftError("trimmed shift has no transitive component")

    q = p + 4
    budget = perron_budget
    for _round in range(12):
        total = None
        widest = Fraction(0)
        for comp in comps:
            mat = _weighted_component_matrix(w, comp.members, phi, q)
            res = perron_enclosure(mat, q, budget)
            piv = log_interval(res.interval, p + 4)
            total = piv if total is None else total.max_with(piv)
            widest = max(widest, piv.width)
        if total.width <= Fraction(1, 1 << p):
            return total
        q += 6
        budget *= 2
    raise RuntimeError("pressure enclosure did not reach the requested width")


def sofic_pressure(g, phi: LocallyConstantPotential, p: int) -> RationalInterval:
    """Pressure of a sofic shift given by a labeled graph.

    Right-resolves first so the labeling is a finite-to-one factor of the
    edge shift (pressure-preserving), lifts the potential through the
    labels, then defers to the SFT route.
    """
    ess = _sofic.make_essential(g)
    if not ess.vertices:
        raise EmptyShiftError("labeled graph presents the empty shift")
    rr = _sofic.right_resolve(ess)
    edge_shift, lifted = _sofic.edge_shift_lift(rr, phi)
    return sft_pressure(edge_shift, lifted, p)


# ---------------------------------------------------------------------------
# Periodic-orbit lower bounds


@dataclass(frozen=True)
class GeneratorConcatenation:
    """Membership evidence: the word is a concatenation of generators."""

    parts: tuple

    def verifies(self, w: Word) -> bool:
        if not self.parts or any(len(pc) == 0 for pc in self.parts):
            return False
        cat = ()
        for part in self.parts:
            cat = cat + tuple(part)
        return cat == tuple(w)


@dataclass(frozen=True)
class GraphCycleEvidence:
    """Membership evidence: a closed labeled path in a presentation."""

    graph: object  # LabeledGraph
    edge_indices: tuple

    def verifies(self, w: Word) -> bool:
        g = self.graph
        idx = self.edge_indices
        if len(idx) != len(w) or not idx:
            return False
        for t, e in enumerate(idx):
            src, dst, label = g.edges[e]
            if label != w[t]:
                return False
            nsrc = g.edges[idx[(t + 1) % len(idx)]][0]
            if dst != nsrc:
                return False
        return True


@dataclass(frozen=True)
class VertexCycleEvidence:
    """Membership evidence: a closed walk in a vertex shift."""

    shift: VertexShift
    cycle: tuple

    def verifies(self, w: Word) -> bool:
        v = self.shift
        cyc = self.cycle
        if len(cyc) != len(w) or not cyc:
            return False
        if v.cycle_word(cyc) != tuple(w):
            return False
        for t, i in enumerate(cyc):
            if cyc[(t + 1) % len(cyc)] not in v.succ[i]:
                return False
        return True


def periodic_average(w: Word, phi: LocallyConstantPotential) -> Fraction:
    """Exact Birkhoff average of phi on the periodic orbit of w."""
    w = tuple(w)
    if not w:
        raise ValueError("periodic word must be nonempty")
    k = phi.radius
    L = len(w)
    total = Fraction(0)
    for j in range(L):
        window = tuple(w[(j + t) % L] for t in range(-k, k + 1))
        total += phi.window(window)
    return total / L


def periodic_lower(w: Word, phi: LocallyConstantPotential, evidence) -> Fraction:
    """Exact cycle average of phi on the orbit of w, a valid lower bound
    for the pressure of any shift containing that orbit.

    ``evidence`` must witness that the periodic point lives in the shift:
    a concatenation of generators, or a closed path in a presentation.
    """
    if evidence is None or not evidence.verifies(w):
        raise MembershipError(f"no membership evidence for the orbit of {w}")
    return periodic_average(w, phi)


def entropy_upper_trace(lang: LanguageOracle, m: int, p: int = 24) -> list:
    """Enclosures of h_k = min_{j<=k} (1/j) log |L(j)| for k = 1..m.

    The minimizing index is selected exactly by comparing integer powers
    (c_a^b vs c_b^a), so the trace is genuinely nonincreasing before any
    rounding; enclosures are then intersected downward to keep the
    monotonicity visible in the endpoints.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    best_j = None
    best_c = None
    out = []
    prev = None
    for j in range(1, m + 1):
        c = lang.count(j)
        if c == 0:
            raise EmptyShiftError("empty language")
        if best_j is None or c**best_j < best_c**j:
            best_j, best_c = j, c
        iv = log_enclosure(best_c, p + best_j.bit_length()).scale(
            Fraction(1, best_j)
        )
        prev = iv if prev is None else prev.min_with(iv)
        out.append(prev)
    return out


@dataclass
class PressureEnclosure:
    """Result of the convergence driver.

    ``interval`` is [best lower bound, best upper bound]; ``upper_trace``
    holds (n, enclosure-after-stage) rows with nonincreasing upper
    endpoints, ``lower_trace`` holds (stage, bound) rows nondecreasing,
    and ``status`` is 'converged' or 'budget-exhausted'.
    """

    interval: RationalInterval
    upper_trace: tuple
    lower_trace: tuple
    status: str

    @property
    def converged(self) -> bool:
        return self.status == "converged"
