"""Coded shifts: generator streams, sofic approximations, and the
two-sided convergence driver.

The driver squeezes the pressure between certified bounds: from below,
pressures of the sofic shifts generated by finite generator prefixes
(these increase to the pressure when the sequential-pressure assertion
holds) plus periodic-orbit averages; from above, partition-function
bounds and the pressures of the n-block SFT approximations built from
the language oracle (the shift sits inside each of them, so their
pressures decrease toward the truth and typically much faster than the
raw partition bounds).
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction

from .core import LanguageOracle, PotentialOracle, Word
from .enclosure import RationalInterval
from .errors import StreamExhaustedError
from .pressure import (
    GeneratorConcatenation,
    PressureEnclosure,
    partition_upper,
    periodic_lower,
    sft_pressure,
    sofic_pressure,
)
from .sft import vertex_shift_from_language
from .sofic import LabeledGraph, bouquet, sofic_language


class GeneratorStream:
    """Deterministic enumeration of the generating words of a coded shift.

    ``generator(m)`` returns the m-th generator (1-based).  ``size`` is
    None for infinite streams.  The two assertion flags record properties
    the stream's constructor can vouch for; soundness of computed bounds
    never depends on them, only termination guarantees do.
    """

    def __init__(
        self,
        alphabet,
        fn,
        size=None,
        asserted_fssp=False,
        asserted_unique_representation=False,
        name="",
    ):
        self.alphabet = alphabet
        self._fn = fn
        self.size = size
        self.asserted_fssp = asserted_fssp
        self.asserted_unique_representation = asserted_unique_representation
        self.name = name
        self._memo: dict[int, Word] = {}

    def generator(self, m: int) -> Word:
        if m < 1:
            raise ValueError("generator indices start at 1")
        if self.size is not None and m > self.size:
            raise StreamExhaustedError(
                f"stream {self.name or ''} has only {self.size} generators"
            )
        got = self._memo.get(m)
        if got is None:
            got = self.alphabet.check_word(tuple(self._fn(m)))
            if not got:
                raise ValueError("generators must be nonempty")
            self._memo[m] = got
        return got

    def first(self, m: int) -> tuple:
        if self.size is not None:
            m = min(m, self.size)
        return tuple(self.generator(i) for i in range(1, m + 1))

    @classmethod
    def from_words(cls, alphabet, words, **flags) -> "GeneratorStream":
        words = [tuple(w) for w in words]
        return cls(alphabet, lambda m: words[m - 1], size=len(words), **flags)


@dataclass
class CodedShift:
    """A coded shift given by a generator stream and a language oracle."""

    alphabet: object
    generators: GeneratorStream
    language: LanguageOracle
    name: str = ""

    def __post_init__(self):
        if self.language.alphabet != self.alphabet:
            raise ValueError("language oracle alphabet mismatch")

    def spot_check(self, max_m: int = 2, max_len: int = 4) -> None:
        """Verify the approximants sit inside the language at small sizes."""
        for m in range(1, max_m + 1):
            gens = self.generators.first(m)
            if not gens:
                continue
            g = bouquet(gens)
            for ln in range(1, max_len + 1):
                inner = sofic_language(g, ln)
                if not inner <= self.language.words(ln):
                    missing = sorted(inner - self.language.words(ln))[:3]
                    raise AssertionError(
                        f"{self.name}: approximation words escape the "
                        f"language at length {ln}: {missing}"
                    )


def sofic_approximation(c: CodedShift, m: int) -> LabeledGraph:
    """Bouquet presentation of the shift generated by the first m words."""
    if m < 1:
        raise ValueError("m must be >= 1")
    return bouquet(c.generators.first(m))


def coded_pressure(
    c: CodedShift,
    phi_oracle: PotentialOracle,
    p: int,
    budgets,
    *,
    partition_word_cap: int = 150_000,
    hull_state_cap: int = 60_000,
    seed_count: int = 3,
) -> PressureEnclosure:
    """Certified pressure enclosure for a coded shift.

    Interleaves lower stages (pressure of the m-generator sofic
    approximation, seeded by single-generator orbit averages) with upper
    stages (partition-function bounds and n-block SFT approximations of
    the language).  The potential is replaced by a locally constant
    approximant at precision tied to the target; its sup-norm error
    widens both sides because pressure is 1-Lipschitz in the potential.

    Returns as converged when the bound gap is at most 2**-p; otherwise
    exhausts ``budgets = (n_max, m_max)`` and reports the best enclosure.
    """
    n_max, m_max = budgets
    if n_max < 1 or m_max < 1:
        raise ValueError("budgets must be at least 1")
    tol = Fraction(1, 1 << p)
    q = p + 3
    phi = phi_oracle.approx(q)
    slack = Fraction(0) if phi_oracle.exact else Fraction(1, 1 << q)
    inner_p = p + 2
    k = phi.radius

    lower_trace = []
    upper_trace = []
    lower_best = None
    upper_best = None

    gens_available = c.generators.size if c.generators.size is not None else m_max
    for i in range(1, min(seed_count, gens_available) + 1):
        g = c.generators.generator(i)
        val = periodic_lower(g, phi, GeneratorConcatenation((g,))) - slack
        if lower_best is None or val > lower_best:
            lower_best = val

    finite_size = c.generators.size
    m = 0
    n = 0
    hull_n = 4
    partition_done = False
    hull_done = False
    upper_flip = True  # alternate partition and hull stages
    status = None

    def record_upper(index, iv):
        nonlocal upper_best
        bound = iv.hi + slack
        if upper_best is None or bound < upper_best:
            upper_best = bound
        upper_trace.append(
            (index, RationalInterval(min(iv.lo, upper_best), upper_best))
        )

    def record_lower(index, bound):
        nonlocal lower_best
        if lower_best is None or bound > lower_best:
            lower_best = bound
        lower_trace.append((index, lower_best))

    def gap_small():
        return (
            lower_best is not None
            and upper_best is not None
            and upper_best - lower_best <= tol
        )

    while True:
        if gap_small():
            status = "converged"
            break

        progressed = False

        # lower stage
        if m < m_max and (finite_size is None or m < finite_size):
            m += 1
            graph = sofic_approximation(c, m)
            iv = sofic_pressure(graph, phi, inner_p)
            record_lower(m, iv.lo - slack)
            if finite_size is not None and m >= finite_size:
                # the full bouquet presents the shift itself
                record_upper(m, iv)
            progressed = True
            if gap_small():
                status = "converged"
                break

        # upper stage: alternate partition bounds and n-block SFTs
        for _attempt in (0, 1):
            did = False
            if upper_flip and not partition_done:
                nxt = n + 1
                if nxt > n_max or _too_many_words(c.language, nxt + 2 * k, partition_word_cap):
                    partition_done = True
                else:
                    n = nxt
                    iv = partition_upper(c.language, phi, n, inner_p)
                    record_upper(n, iv)
                    did = True
            elif not hull_done:
                if hull_n > n_max or _too_many_words(
                    c.language, hull_n - 1, hull_state_cap
                ):
                    hull_done = True
                else:
                    hull = vertex_shift_from_language(c.language, hull_n)
                    iv = sft_pressure(hull, phi, inner_p)
                    record_upper(hull_n, iv)
                    hull_n += max(2, hull_n // 3)
                    did = True
            upper_flip = not upper_flip
            if did:
                progressed = True
                break

        if gap_small():
            status = "converged"
            break
        if not progressed:
            status = "budget-exhausted"
            break

    if lower_best is None:
        raise StreamExhaustedError("no generators available for lower bounds")
    if upper_best is None:
        iv = partition_upper(c.language, phi, 1, inner_p)
        record_upper(1, iv)
    interval = RationalInterval(lower_best, max(upper_best, lower_best))
    return PressureEnclosure(interval, tuple(upper_trace), tuple(lower_trace), status)


def _too_many_words(lang: LanguageOracle, length: int, cap: int) -> bool:
    """Predict-then-check word-count guard that avoids huge enumerations."""
    known = [n for n in getattr(lang, "_memo", {}) if n > 0]
    if known:
        top = max(known)
        if top >= length:
            return lang.count(length) > cap
        est = lang.count(top)
        if top >= 2 and lang.count(top - 1) > 0:
            ratio = lang.count(top) / lang.count(top - 1)
            est = lang.count(top) * ratio ** (length - top)
        if est > 4 * cap:
            return True
    return lang.count(length) > cap


# ---------------------------------------------------------------------------
# Unique decipherability


@dataclass(frozen=True)
class SardinasPattersonResult:
    uniquely_decipherable: bool
    witness: Word | None = None
    factorizations: tuple | None = None


def sardinas_patterson(words) -> SardinasPattersonResult:
    """Decide unique decipherability of a finite code.

    Runs the dangling-suffix construction as a shortest-path search over
    overhang states, so a negative answer comes with a shortest ambiguous
    word and its two distinct factorizations.  This is a property of
    finite concatenations only; it is necessary, not sufficient, for
    unique representation of bi-infinite points.
    """
    code = sorted({tuple(w) for w in words})
    if any(len(w) == 0 for w in code):
        raise ValueError("code words must be nonempty")

    # state: overhang s owed by the side that is ahead; reaching the empty
    # overhang closes an ambiguous word.  Parents reconstruct factorizations.
    start_items = []
    for u in code:
        for v in code:
            if u != v and len(u) < len(v) and v[: len(u)] == u:
                start_items.append((v[len(u):], u, v))

    best: dict = {}
    parents: dict = {}
    heap = []
    counter = 0
    for s, u, v in sorted(start_items):
        if s not in best or len(v) < best[s]:
            best[s] = len(v)
            parents[s] = (None, u, v, "start")
            heapq.heappush(heap, (len(v), counter, s))
            counter += 1

    goal = None
    while heap:
        dist, _, s = heapq.heappop(heap)
        if dist != best.get(s):
            continue
        if s == ():
            goal = s
            break
        for c in code:
            if len(c) <= len(s):
                if s[: len(c)] == c:
                    t = s[len(c):]
                    nd = dist
                    if t not in best or nd < best[t]:
                        best[t] = nd
                        parents[t] = (s, c, None, "short-consumes")
                        heapq.heappush(heap, (nd, counter, t))
                        counter += 1
            else:
                if c[: len(s)] == s:
                    t = c[len(s):]
                    nd = dist + len(c) - len(s)
                    if t not in best or nd < best[t]:
                        best[t] = nd
                        parents[t] = (s, c, None, "short-overtakes")
                        heapq.heappush(heap, (nd, counter, t))
                        counter += 1

    if goal is None:
        return SardinasPattersonResult(True)

    # Walk parents back to the start, replaying both factorizations.
    steps = []
    s = goal
    while True:
        prev, a, b, kind = parents[s]
        steps.append((prev, a, b, kind))
        if kind == "start":
            break
        s = prev
    steps.reverse()
    _, u0, v0, _ = steps[0]
    long_fact = [v0]  # side currently ahead
    short_fact = [u0]
    ahead_is_long = True
    for prev, c, _, kind in steps[1:]:
        short_fact.append(c)
        if kind == "short-overtakes":
            short_fact, long_fact = long_fact, short_fact
    word = ()
    for part in long_fact:
        word = word + part
    return SardinasPattersonResult(
        False, word, (tuple(short_fact), tuple(long_fact))
    )
