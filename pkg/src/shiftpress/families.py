"""Concrete coded-shift families.

S-gap shifts, generalized gap shifts over larger alphabets, beta-shifts
(greedy expansion digits, the truncated digit graph, the generator
stream, and the chain diagnostic), and the power-pair family a^k b^k.
Each constructor returns a generator stream together with a language
oracle, bundled into a :class:`~shiftpress.coded.CodedShift`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .coded import CodedShift, GeneratorStream
from .core import Alphabet, LanguageOracle, Word
from .enclosure import RationalInterval
from .errors import (
    ExpansionIsEventuallyPeriodicError,
    PrecisionExhaustedError,
)
from .errors import StreamExhaustedError
from .sofic import LabeledGraph, bouquet, make_essential, sofic_language_oracle


@dataclass(frozen=True)
class SSet:
    """A nonempty subset of the nonnegative integers, strictly increasing.

    ``element(i)`` is the i-th element (0-based).  ``size`` is None when
    the set is infinite.
    """

    element_fn: object
    size: int | None = None
    name: str = ""

    def element(self, i: int) -> int:
        if i < 0 or (self.size is not None and i >= self.size):
            raise IndexError(f"{self.name or 'S'} has no element {i}")
        val = self.element_fn(i)
        if i > 0 and self.element_fn(i - 1) >= val:
            raise ValueError("S must be strictly increasing")
        return val

    @property
    def bounded(self) -> bool:
        return self.size is not None

    def maximum(self) -> int:
        if self.size is None:
            raise ValueError("infinite set has no maximum")
        return self.element(self.size - 1)

    def contains(self, value: int) -> bool:
        if value < 0:
            return False
        i = 0
        while self.size is None or i < self.size:
            e = self.element(i)
            if e == value:
                return True
            if e > value:
                return False
            i += 1
        return False

    def has_element_at_least(self, value: int) -> bool:
        if self.size is None:
            return True
        return self.maximum() >= value

    def elements_below(self, bound: int) -> list:
        out = []
        i = 0
        while self.size is None or i < self.size:
            e = self.element(i)
            if e > bound:
                break
            out.append(e)
            i += 1
        return out

    @classmethod
    def explicit(cls, values) -> "SSet":
        vals = sorted(set(int(v) for v in values))
        if not vals or vals[0] < 0:
            raise ValueError("S must be a nonempty set of nonnegative integers")
        return cls(lambda i: vals[i], size=len(vals), name=f"{{{','.join(map(str, vals))}}}")

    @classmethod
    def evens(cls) -> "SSet":
        return cls(lambda i: 2 * i, size=None, name="evens")

    @classmethod
    def odds(cls) -> "SSet":
        return cls(lambda i: 2 * i + 1, size=None, name="odds")


BINARY = Alphabet(2)


def _sgap_admissible(s: SSet, w: Word) -> bool:
    # interior 0-gaps between 1s must lie in S; boundary gaps only need an
    # element of S at least as long (the run continues off the window).
    ones = [i for i, sym in enumerate(w) if sym == 1]
    if not ones:
        return s.has_element_at_least(len(w))
    lead = ones[0]
    trail = len(w) - 1 - ones[-1]
    if not (s.has_element_at_least(lead) and s.has_element_at_least(trail)):
        return False
    for a, b in zip(ones, ones[1:]):
        if not s.contains(b - a - 1):
            return False
    return True


def _sgap_words(s: SSet, length: int):
    if length == 0:
        yield ()
        return

    def extend(prefix, last_one):
        if len(prefix) == length:
            lead = prefix.index(1) if 1 in prefix else length
            if 1 in prefix:
                trail = length - 1 - last_one
            else:
                trail = length
            if s.has_element_at_least(lead) and s.has_element_at_least(trail):
                yield tuple(prefix)
            return
        # append 0: kill the branch early if the trailing gap can never
        # close inside S nor escape off the end
        prefix.append(0)
        gap = len(prefix) - 1 - last_one if last_one >= 0 else len(prefix)
        if s.has_element_at_least(gap):
            yield from extend(prefix, last_one)
        prefix.pop()
        # append 1: closes an interior gap if a 1 was seen
        gap = len(prefix) - 1 - last_one if last_one >= 0 else None
        if gap is None or s.contains(gap):
            prefix.append(1)
            yield from extend(prefix, len(prefix) - 1)
            prefix.pop()

    yield from extend([], -1)


def s_gap_stream(s: SSet):
    """Generator stream and language oracle of the S-gap shift.

    Generators are 0^s 1 in S order.  Every sequential point parses
    uniquely (a 1 always ends a generator), and the pressure of every
    continuous potential is reached through the finite approximations, so
    both assertions are set.
    """
    stream = GeneratorStream(
        BINARY,
        lambda m: (0,) * s.element(m - 1) + (1,),
        size=s.size,
        asserted_fssp=True,
        asserted_unique_representation=True,
        name=f"sgap[{s.name}]",
    )
    oracle = LanguageOracle(
        BINARY, lambda n: _sgap_words(s, n), name=f"sgap[{s.name}]"
    )
    return stream, oracle


def s_gap_shift(s: SSet) -> CodedShift:
    stream, oracle = s_gap_stream(s)
    return CodedShift(BINARY, stream, oracle, name=stream.name)


# ---------------------------------------------------------------------------
# Generalized gap shifts


def _ggap_tuples(d: int):
    """Index tuples (i_0..i_{d-1}) in diagonal (total, lex) order."""
    total = 0
    while True:
        for combo in _compositions(total, d):
            yield combo
        total += 1


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in _compositions(total - head, parts - 1):
            yield (head,) + rest


def _ggap_word(sets, sigma, s_values, d: int) -> Word:
    w = []
    for pos in range(d):
        sym = sigma[pos]
        w.extend([sym] * s_values[sym])
    w.append(d)
    return tuple(w)


def generalized_gap_stream(sets, perms):
    """Stream and oracle of the gap shift with per-symbol gap sets.

    Generators run through sigma(0)^{s_{sigma(0)}} ... sigma(d-1)^{...} d
    for sigma in the permutation set; the separator symbol d closes every
    generator, which is what makes representations unique.  Enumeration is
    diagonal over (sigma, index tuples) with duplicates dropped.
    """
    d = len(sets)
    if d < 1 or not perms:
        raise ValueError("need at least one gap set and one permutation")
    perms = sorted({tuple(p) for p in perms})
    for p in perms:
        if sorted(p) != list(range(d)):
            raise ValueError(f"{p} is not a permutation of 0..{d-1}")
    alphabet = Alphabet(d + 1)

    seen: dict[Word, int] = {}
    order: list[Word] = []
    tuple_iter = _ggap_tuples(d)

    def ensure(count: int):
        while len(order) < count:
            combo = next(tuple_iter)
            for sigma in perms:
                try:
                    values = tuple(sets[j].element(combo[j]) for j in range(d))
                except IndexError:
                    continue
                w = _ggap_word(sets, sigma, values, d)
                if w not in seen:
                    seen[w] = len(order)
                    order.append(w)

    finite = all(s.size is not None for s in sets)
    size = None
    if finite:
        total = 0
        combos = itertools.product(*[range(s.size) for s in sets])
        words = set()
        for combo in combos:
            for sigma in perms:
                values = tuple(sets[j].element(combo[j]) for j in range(d))
                words.add(_ggap_word(sets, sigma, values, d))
        size = len(words)

    def gen(m):
        ensure(m)
        return order[m - 1]

    stream = GeneratorStream(
        alphabet,
        gen,
        size=size,
        asserted_fssp=True,
        asserted_unique_representation=True,
        name="ggap",
    )

    def needed_generators(n: int):
        """Generators whose visible block lengths cover every n-window.

        For each gap set take all elements up to n plus one representative
        beyond (a longer block looks identical through an n-window), and
        combine with every permutation.
        """
        per_set = []
        for s in sets:
            vals = s.elements_below(n)
            idx = len(vals)
            if s.size is None or idx < s.size:
                vals = vals + [s.element(idx)]
            per_set.append(vals)
        gens = set()
        for sigma in perms:
            for values in itertools.product(*per_set):
                gens.add(_ggap_word(sets, sigma, tuple(values), d))
        return sorted(gens)

    hull_oracles: dict[int, LanguageOracle] = {}

    def words(n):
        if n == 0:
            return {()}
        gens = needed_generators(n)
        key = len(gens)
        oracle = hull_oracles.get(key)
        if oracle is None:
            oracle = sofic_language_oracle(bouquet(gens))
            hull_oracles[key] = oracle
        return oracle.words(n)

    oracle = LanguageOracle(alphabet, words, name="ggap")
    return stream, oracle


def generalized_gap_shift(sets, perms) -> CodedShift:
    stream, oracle = generalized_gap_stream(sets, perms)
    return CodedShift(stream.alphabet, stream, oracle, name="ggap")


# ---------------------------------------------------------------------------
# Power-pair family a^k b^k (the standard source of non-sequential pressure)


def power_pair_stream(a: Word, b: Word):
    """Stream and oracle for the coded shift generated by {a^k b^k}."""
    a = tuple(a)
    b = tuple(b)
    if not a or not b:
        raise ValueError("blocks must be nonempty")
    top = max(max(a), max(b))
    alphabet = Alphabet(top + 1)

    def gen(m):
        return a * m + b * m

    stream = GeneratorStream(alphabet, gen, size=None, name="powerpair")

    hull_oracles: dict[int, LanguageOracle] = {}

    def words(n):
        if n == 0:
            return {()}
        # windows never need generators beyond index ~n: a window sees at
        # most n symbols of any block, and a longer block looks the same
        m = n + 2
        oracle = hull_oracles.get(m)
        if oracle is None:
            oracle = sofic_language_oracle(bouquet([gen(i) for i in range(1, m + 1)]))
            hull_oracles[m] = oracle
        return oracle.words(n)

    oracle = LanguageOracle(alphabet, words, name="powerpair")
    return stream, oracle


def power_pair_shift(a: Word, b: Word) -> CodedShift:
    stream, oracle = power_pair_stream(a, b)
    return CodedShift(stream.alphabet, stream, oracle, name="powerpair")


# ---------------------------------------------------------------------------
# Beta numbers and the greedy expansion of 1


class BetaNumber:
    """A real beta > 1: exact rational, algebraic, or oracle-approximated.

    Algebraic betas carry an integer-coefficient polynomial (low-to-high
    coefficients) and an isolating rational interval containing exactly
    one root; arithmetic on expansion remainders then happens exactly in
    the number field, and digit decisions refine the isolating interval.
    """

    def __init__(self, kind, **data):
        self.kind = kind
        self.__dict__.update(data)

    @classmethod
    def rational(cls, q) -> "BetaNumber":
        q = Fraction(q)
        if q <= 1:
            raise ValueError("beta must exceed 1")
        return cls("rational", value=q)

    @classmethod
    def algebraic(cls, coeffs, isolating) -> "BetaNumber":
        coeffs = [Fraction(c) for c in coeffs]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        if len(coeffs) < 2:
            raise ValueError("polynomial must be nonconstant")
        lead = coeffs[-1]
        monic = tuple(c / lead for c in coeffs)
        lo, hi = Fraction(isolating[0]), Fraction(isolating[1])
        if not 1 < lo < hi:
            raise ValueError("isolating interval must sit above 1")
        if _poly_eval(monic, lo) == 0 or _poly_eval(monic, hi) == 0:
            raise ValueError("isolating interval endpoints must not be roots")
        if (_poly_eval(monic, lo) > 0) == (_poly_eval(monic, hi) > 0):
            raise ValueError("no sign change on the isolating interval")
        return cls("algebraic", monic=monic, lo=lo, hi=hi)

    @classmethod
    def from_oracle(cls, approx_fn) -> "BetaNumber":
        """approx_fn(p) returns a rational within 2**-p of beta."""
        return cls("oracle", approx_fn=approx_fn)

    def interval(self, p: int) -> RationalInterval:
        """Enclosure of beta with width <= 2**-p."""
        if self.kind == "rational":
            return RationalInterval.point(self.value)
        if self.kind == "oracle":
            q = Fraction(self.approx_fn(p + 1))
            r = Fraction(1, 1 << (p + 1))
            return RationalInterval(q - r, q + r)
        lo, hi = self.lo, self.hi
        sign_hi = _poly_eval(self.monic, hi) > 0
        while hi - lo > Fraction(1, 1 << p):
            mid = (lo + hi) / 2
            val = _poly_eval(self.monic, mid)
            if val == 0:
                lo = hi = mid
                break
            if (val > 0) == sign_hi:
                hi = mid
            else:
                lo = mid
        self.lo, self.hi = lo, hi
        return RationalInterval(lo, hi)


def _poly_eval(coeffs, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _interval_mul(a: RationalInterval, b: RationalInterval) -> RationalInterval:
    corners = (a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi)
    return RationalInterval(min(corners), max(corners))


class _FieldElement:
    """Element of Q(beta) for algebraic beta, as a coefficient vector."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        self.coeffs = tuple(coeffs)

    def key(self):
        return self.coeffs

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def exact_integer(self):
        if all(c == 0 for c in self.coeffs[1:]) and self.coeffs[0].denominator == 1:
            return int(self.coeffs[0])
        return None

    def interval(self, beta_iv: RationalInterval) -> RationalInterval:
        acc = RationalInterval.point(Fraction(0))
        for c in reversed(self.coeffs):
            acc = _interval_mul(acc, beta_iv) + c
        return acc


class BetaExpansion:
    """Digits of the greedy expansion of 1 in base beta, produced on demand.

    b_1 = floor(beta); thereafter b_{j+1} = floor(beta r_j) with the
    remainder r_{j+1} = beta r_j - b_{j+1} kept exactly (rational or
    number-field arithmetic).  Remainders stay in [0, 1); a remainder of
    zero or a repeat means the expansion terminates or becomes periodic,
    which is reported via :class:`ExpansionIsEventuallyPeriodicError`
    since such betas get a finite sofic presentation instead.  Oracle
    betas whose digit cannot be separated from an integer at the
    precision cap raise :class:`PrecisionExhaustedError`.
    """

    def __init__(self, beta: BetaNumber, precision_cap: int = 512):
        self.beta = beta
        self.cap = precision_cap
        self._digits: list[int] = []
        self._seen: dict = {}
        if beta.kind == "algebraic":
            self._deg = len(beta.monic) - 1
            if self._deg == 1:
                raise ValueError("degree-1 polynomial: use a rational beta")
        self._state = None
        self._bootstrap()

    def _floor_rational(self, q: Fraction) -> int:
        return q.numerator // q.denominator

    def _bootstrap(self):
        b = self.beta
        if b.kind == "rational":
            if b.value.denominator == 1:
                raise ValueError("beta must not be an integer")
            b1 = self._floor_rational(b.value)
            self._digits.append(b1)
            self._state = b.value - b1
            self._seen[self._state] = 1
        elif b.kind == "algebraic":
            x = [Fraction(0)] * self._deg
            x[1 % self._deg] = Fraction(1)
            elem = _FieldElement(x)
            b1 = self._floor_field(elem)
            self._state = self._field_sub_int(elem, b1)
            if self._state.is_zero():
                raise ValueError("beta must not be an integer")
            self._digits.append(b1)
            self._seen[self._state.key()] = 1
        else:
            b1 = self._floor_oracle_initial()
            self._digits.append(b1)
            self._state = None  # oracle remainders recomputed by refinement

    # -- rational route -----------------------------------------------------

    def _next_rational(self):
        prod = self.beta.value * self._state
        d = self._floor_rational(prod)
        r = prod - d
        if r == 0:
            digits = self._digits + [d]
            raise ExpansionIsEventuallyPeriodicError(
                (), _quasi_greedy(digits)
            )
        self._digits.append(d)
        self._state = r
        j = self._seen.get(r)
        if j is not None:
            raise ExpansionIsEventuallyPeriodicError(
                tuple(self._digits[: j]), tuple(self._digits[j:])
            )
        self._seen[r] = len(self._digits)

    # -- algebraic route ----------------------------------------------------

    def _field_mul_beta(self, elem: _FieldElement) -> _FieldElement:
        deg = self._deg
        monic = self.beta.monic
        shifted = [Fraction(0)] + list(elem.coeffs)
        top = shifted.pop()
        if top != 0:
            for i in range(deg):
                shifted[i] -= top * monic[i]
        return _FieldElement(shifted)

    def _field_sub_int(self, elem: _FieldElement, n: int) -> _FieldElement:
        coeffs = list(elem.coeffs)
        coeffs[0] -= n
        return _FieldElement(coeffs)

    def _floor_field(self, elem: _FieldElement) -> int:
        p = 8
        while p <= self.cap:
            iv = elem.interval(self.beta.interval(p))
            lo_f = iv.lo.numerator // iv.lo.denominator
            hi_f = iv.hi.numerator // iv.hi.denominator
            if lo_f == hi_f:
                return lo_f
            exact = elem.exact_integer()
            if exact is not None and iv.contains(exact):
                # the value IS an integer: greedy expansion terminates here
                digits = self._digits + [exact]
                raise ExpansionIsEventuallyPeriodicError((), _quasi_greedy(digits))
            p *= 2
        raise PrecisionExhaustedError(
            "cannot separate a digit from an integer at the precision cap"
        )

    def _next_algebraic(self):
        prod = self._field_mul_beta(self._state)
        d = self._floor_field(prod)
        r = self._field_sub_int(prod, d)
        if r.is_zero():
            digits = self._digits + [d]
            raise ExpansionIsEventuallyPeriodicError((), _quasi_greedy(digits))
        self._digits.append(d)
        self._state = r
        j = self._seen.get(r.key())
        if j is not None:
            raise ExpansionIsEventuallyPeriodicError(
                tuple(self._digits[: j]), tuple(self._digits[j:])
            )
        self._seen[r.key()] = len(self._digits)

    # -- oracle route ---------------------------------------------------------

    def _floor_oracle_initial(self):
        p = 8
        while p <= self.cap:
            iv = self.beta.interval(p)
            lo_f = iv.lo.numerator // iv.lo.denominator
            hi_f = iv.hi.numerator // iv.hi.denominator
            if lo_f == hi_f:
                return lo_f
            p *= 2
        raise PrecisionExhaustedError("cannot decide floor(beta) at the cap")

    def _next_oracle(self):
        # the remainder after the emitted digits is the fold r -> beta*r - d
        # starting from 1; evaluate it through a beta interval at growing
        # precision until the next floor separates
        j = len(self._digits)
        p = 16
        while p <= self.cap:
            biv = self.beta.interval(p)
            r_iv = RationalInterval.point(Fraction(1))
            for d in self._digits:
                r_iv = _interval_mul(r_iv, biv) - d
            prod = _interval_mul(r_iv, biv)
            lo_f = prod.lo.numerator // prod.lo.denominator
            hi_f = prod.hi.numerator // prod.hi.denominator
            if lo_f == hi_f:
                self._digits.append(lo_f)
                return
            p *= 2
        raise PrecisionExhaustedError(
            f"digit {j + 1} sits at an integer boundary at the precision cap"
        )

    def digits(self, count: int) -> tuple:
        while len(self._digits) < count:
            if self.beta.kind == "rational":
                self._next_rational()
            elif self.beta.kind == "algebraic":
                self._next_algebraic()
            else:
                self._next_oracle()
        return tuple(self._digits[:count])

    def digit(self, j: int) -> int:
        """1-based digit access."""
        return self.digits(j)[j - 1]


def _quasi_greedy(digits) -> tuple:
    digits = list(digits)
    if digits[-1] < 1:
        raise ValueError("terminating expansion must end in a positive digit")
    digits[-1] -= 1
    return tuple(digits)


def beta_expansion(beta: BetaNumber, count: int) -> tuple:
    """First ``count`` digits of the greedy expansion of 1."""
    return BetaExpansion(beta).digits(count)


def beta_graph(prefix, depth: int) -> LabeledGraph:
    """Truncation of the digit graph to its first ``depth`` vertices.

    Spine edges carry the successive digits; every vertex sends back
    edges to the start labeled with each smaller digit.  The spine is cut
    after the last vertex, so the result presents a subshift of the full
    beta-shift and is safe for lower bounds only.
    """
    prefix = tuple(prefix)
    if depth < 1:
        raise ValueError("depth must be >= 1")
    if len(prefix) < depth:
        raise ValueError("digit prefix shorter than the requested depth")
    alphabet = Alphabet(max(prefix[:depth]) + 1)
    edges = []
    for k in range(1, depth + 1):
        b_k = prefix[k - 1]
        if k < depth:
            edges.append((f"v{k}", f"v{k+1}", b_k))
        for i in range(b_k):
            edges.append((f"v{k}", "v1", i))
    return make_graph(alphabet, edges)


def make_graph(alphabet, edges) -> LabeledGraph:
    return make_essential(LabeledGraph.from_named_edges(alphabet, edges))


def beta_generators(prefix, *, asserted_fssp: bool = False) -> GeneratorStream:
    """Generator stream of the beta-shift from a digit prefix.

    Backward generators come first (single digits below b_1), then the
    forward generators b_1..b_j i for each i below b_{j+1}, ordered by j
    then i.  The stream is exhausted when the prefix runs out; wire a
    :class:`BetaExpansion` in via :func:`beta_shift` for a live stream.
    Representations are unique by construction; the no-infinite-chain
    hypothesis behind full sequential pressure is an infinite condition,
    so ``asserted_fssp`` stays False unless the caller vouches for it.
    """
    prefix = tuple(prefix)
    if not prefix:
        raise ValueError("need at least one digit")
    gens = _beta_generator_list(prefix)
    alphabet = Alphabet(max(prefix) + 1)
    return GeneratorStream(
        alphabet,
        lambda m: gens[m - 1],
        size=len(gens),
        asserted_fssp=asserted_fssp,
        asserted_unique_representation=True,
        name="beta",
    )


def _beta_generator_list(prefix) -> list:
    gens = [(i,) for i in range(prefix[0])]
    for j in range(1, len(prefix)):
        nxt = prefix[j]  # this is b_{j+1}
        for i in range(nxt):
            gens.append(tuple(prefix[:j]) + (i,))
    return gens


def chain_check(generators, depth: int) -> list:
    """Chains g_1 -> g_2 -> ... where each sits inside the next's interior.

    The interior of a forward generator b_1..b_j i is b_2..b_j; backward
    generators have empty interiors.  Returns every chain of length 2 up
    to ``depth`` among the given words (an empty list is evidence, not
    proof, that no infinite chain exists).
    """
    gens = [tuple(g) for g in generators]
    if not gens:
        raise ValueError("need at least one generator")

    def interior(g):
        return g[1:-1]

    def occurs(needle, hay):
        if not needle or len(needle) > len(hay):
            return False
        return any(
            hay[i : i + len(needle)] == needle
            for i in range(len(hay) - len(needle) + 1)
        )

    edges = {
        g: [h for h in gens if h != g and occurs(g, interior(h))] for g in gens
    }
    chains = []

    def extend(chain):
        if len(chain) >= 2:
            chains.append(tuple(chain))
        if len(chain) >= depth:
            return
        for h in edges[chain[-1]]:
            extend(chain + [h])

    for g in sorted(gens):
        extend([g])
    return chains


def beta_sofic_graph(preperiod, period) -> LabeledGraph:
    """Finite digit graph for an eventually periodic expansion of 1.

    The spine runs through the preperiod then cycles through the period;
    back edges to the start carry the smaller digits, exactly as in the
    truncated graph but with the spine closed instead of cut.
    """
    preperiod = tuple(preperiod)
    period = tuple(period)
    if not period:
        raise ValueError("period must be nonempty")
    digits = preperiod + period
    alphabet = Alphabet(max(max(digits), 1) + 1)
    total = len(digits)
    edges = []
    for k in range(1, total + 1):
        b_k = digits[k - 1]
        target = k + 1 if k < total else len(preperiod) + 1
        edges.append((f"v{k}", f"v{target}", b_k))
        for i in range(b_k):
            edges.append((f"v{k}", "v1", i))
    return make_graph(alphabet, edges)


def _beta_admissible_enumerator(expansion: BetaExpansion):
    """Language oracle body: lexicographic test against the digit prefix.

    A word is admissible iff every suffix is lexicographically at most
    the digit prefix of its length; enumeration tracks the set of active
    run lengths where a suffix currently ties the prefix, so branches die
    as soon as a suffix would exceed it.
    """

    def words(n):
        if n == 0:
            return {()}
        prefix = expansion.digits(n)
        alphabet_size = prefix[0] + 1
        out = []

        def extend(w, active):
            if len(w) == n:
                out.append(tuple(w))
                return
            for a in range(alphabet_size):
                new_active = [1] if a == prefix[0] else []
                ok = True
                for run in active:
                    nxt = prefix[run]  # b_{run+1}
                    if a > nxt:
                        ok = False
                        break
                    if a == nxt:
                        new_active.append(run + 1)
                if not ok:
                    continue
                w.append(a)
                extend(w, new_active)
                w.pop()

        extend([], [])
        return out

    return words


def beta_shift(
    beta: BetaNumber, *, generator_depth: int = 160, probe_depth: int = 64
) -> CodedShift:
    """Coded-shift bundle for a beta-shift with non-periodic expansion.

    Raises :class:`ExpansionIsEventuallyPeriodicError` when the expansion
    terminates or repeats within the probed depth; route those betas to
    :func:`beta_sofic_graph` instead.
    """
    expansion = BetaExpansion(beta)
    expansion.digits(probe_depth)  # surface early termination/periodicity
    b1 = expansion.digit(1)
    alphabet = Alphabet(b1 + 1)

    gen_cache: list = []

    def gen(m):
        depth = max(8, len(expansion._digits))
        gen_cache[:] = _beta_generator_list(expansion.digits(depth))
        while len(gen_cache) < m:
            if depth > generator_depth:
                raise StreamExhaustedError(
                    f"fewer than {m} generators within the first "
                    f"{generator_depth} digits"
                )
            depth += 8
            gen_cache[:] = _beta_generator_list(expansion.digits(depth))
        return gen_cache[m - 1]

    stream = GeneratorStream(
        alphabet,
        gen,
        size=None,
        asserted_unique_representation=True,
        name=f"beta[{getattr(beta, 'value', beta.kind)}]",
    )
    oracle = LanguageOracle(
        alphabet, _beta_admissible_enumerator(expansion), name="beta"
    )
    return CodedShift(alphabet, stream, oracle, name=stream.name)
