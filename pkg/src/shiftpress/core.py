"""Alphabets, words, language oracles, and locally constant potentials.

Words are plain tuples of small ints over an :class:`Alphabet`; languages
are exposed through :class:`LanguageOracle`, a memoized length-indexed
enumerator of admissible words.  Potentials are rational-valued tables
over fixed-radius windows (:class:`LocallyConstantPotential`), with
:class:`PotentialOracle` supplying precision-indexed approximants for
merely continuous potentials.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import AlphabetMismatchError, NotAdmissibleError, ParseError

Word = tuple  # tuple of ints


@dataclass(frozen=True)
class Alphabet:
    """Symbols 0..size-1."""

    size: int

    def __post_init__(self):
        if self.size < 1:
            raise ValueError("alphabet needs at least one symbol")

    def valid_word(self, w: Word) -> bool:
        return all(isinstance(s, int) and 0 <= s < self.size for s in w)

    def check_word(self, w: Word) -> Word:
        if not self.valid_word(w):
            raise ValueError(f"word {w} uses symbols outside alphabet of size {self.size}")
        return tuple(w)

    def all_words(self, length: int):
        """All words of the given length, lexicographic order."""
        if length == 0:
            yield ()
            return
        for w in self.all_words(length - 1):
            for s in range(self.size):
                yield w + (s,)


def word(text: str) -> Word:
    """Parse a digit string like '0110' into a word."""
    return tuple(int(c) for c in text)


def word_str(w: Word) -> str:
    return "".join(str(s) for s in w)


class LanguageOracle:
    """Length-indexed enumeration of the admissible words of a shift.

    ``words(n)`` returns the full set of admissible words of length n as a
    frozenset; results are memoized.  A valid oracle is factor-closed
    (subwords of admissible words are admissible) and extendable (every
    admissible word occurs inside a longer one), which :meth:`check_valid`
    verifies by brute force up to a given length.
    """

    def __init__(self, alphabet: Alphabet, enumerate_fn, name: str = ""):
        self.alphabet = alphabet
        self._fn = enumerate_fn
        self.name = name
        self._memo: dict[int, frozenset] = {}

    def words(self, length: int) -> frozenset:
        if length < 0:
            raise ValueError("length must be nonnegative")
        got = self._memo.get(length)
        if got is None:
            got = frozenset(tuple(w) for w in self._fn(length))
            self._memo[length] = got
        return got

    def count(self, length: int) -> int:
        return len(self.words(length))

    def sorted_words(self, length: int) -> list:
        return sorted(self.words(length))

    def is_empty(self) -> bool:
        return not self.words(1)

    def check_valid(self, max_length: int) -> None:
        """Assert factor-closure and extendability for lengths <= max_length."""
        if self.words(0) != (frozenset({()}) if self.words(1) else frozenset()):
            raise AssertionError(f"{self.name}: words(0) inconsistent with words(1)")
        for n in range(1, max_length + 1):
            here = self.words(n)
            below = self.words(n - 1)
            for w in here:
                for i in range(2):
                    sub = w[i : i + n - 1]
                    if len(sub) == n - 1 and sub not in below:
                        raise AssertionError(
                            f"{self.name}: {sub} missing at length {n-1} "
                            f"though {w} is admissible"
                        )
            above = self.words(n + 1)
            extendable = set()
            for w in above:
                extendable.add(w[:n])
                extendable.add(w[1:])
            for w in here:
                if w not in extendable:
                    raise AssertionError(
                        f"{self.name}: {w} has no extension at length {n+1}"
                    )

    def __repr__(self):
        return f"LanguageOracle({self.name or hex(id(self))})"


def language_distance(a: LanguageOracle, b: LanguageOracle, depth: int):
    """2**-k for the least k <= depth where the languages differ, else None.

    None means the two languages are indistinguishable at every length up
    to ``depth``.
    """
    if a.alphabet != b.alphabet:
        raise AlphabetMismatchError("language distance needs a common alphabet")
    for k in range(depth + 1):
        if a.words(k) != b.words(k):
            return Fraction(1, 1 << k)
    return None


@dataclass(frozen=True)
class LocallyConstantPotential:
    """Rational potential depending on a window of radius k.

    The value at a point is looked up from ``table`` by the word
    x_{-k}..x_{k} (equivalently, after recoding, by the window starting at
    the current position); windows absent from the table take ``default``.
    A finite table therefore defines the potential on the full shift, and
    restriction to any subshift is just ignoring windows that never occur.
    """

    alphabet: Alphabet
    radius: int
    table: dict = field(default_factory=dict)
    default: Fraction = Fraction(0)

    def __post_init__(self):
        if self.radius < 0:
            raise ValueError("radius must be nonnegative")
        clean = {}
        for w, v in self.table.items():
            w = tuple(w)
            if len(w) != self.window_length:
                raise ValueError(
                    f"table word {w} must have length {self.window_length}"
                )
            self.alphabet.check_word(w)
            clean[w] = Fraction(v)
        object.__setattr__(self, "table", clean)
        object.__setattr__(self, "default", Fraction(self.default))

    @property
    def window_length(self) -> int:
        return 2 * self.radius + 1

    def window(self, w: Word) -> Fraction:
        """Value on a window of length 2k+1."""
        if len(w) != self.window_length:
            raise ValueError(
                f"window {w} must have length {self.window_length}"
            )
        return self.table.get(tuple(w), self.default)

    def sup_norm(self) -> Fraction:
        """Exact sup of |phi| over the full shift."""
        vals = [abs(self.default)] + [abs(v) for v in self.table.values()]
        return max(vals)

    def add_constant(self, c) -> "LocallyConstantPotential":
        c = Fraction(c)
        return LocallyConstantPotential(
            self.alphabet,
            self.radius,
            {w: v + c for w, v in self.table.items()},
            self.default + c,
        )

    def __add__(self, other: "LocallyConstantPotential"):
        if self.alphabet != other.alphabet:
            raise AlphabetMismatchError("potentials over different alphabets")
        k = max(self.radius, other.radius)
        a = self.widen_to(k)
        b = other.widen_to(k)
        words = set(a.table) | set(b.table)
        table = {w: a.window(w) + b.window(w) for w in words}
        return LocallyConstantPotential(self.alphabet, k, table, a.default + b.default)

    def widen_to(self, k: int) -> "LocallyConstantPotential":
        """Re-express with a larger radius (same function)."""
        if k < self.radius:
            raise ValueError("cannot shrink the radius")
        if k == self.radius:
            return self
        pad = k - self.radius
        table = {}
        for w, v in self.table.items():
            for left in self.alphabet.all_words(pad):
                for right in self.alphabet.all_words(pad):
                    table[left + w + right] = v
        return LocallyConstantPotential(self.alphabet, k, table, self.default)

    @classmethod
    def zero(cls, alphabet: Alphabet) -> "LocallyConstantPotential":
        return cls(alphabet, 0)

    @classmethod
    def single_site(cls, alphabet: Alphabet, values) -> "LocallyConstantPotential":
        """Radius-0 potential from per-symbol values (list or dict)."""
        if isinstance(values, dict):
            table = {(s,): Fraction(v) for s, v in values.items()}
        else:
            table = {(s,): Fraction(v) for s, v in enumerate(values)}
        return cls(alphabet, 0, table)

    @classmethod
    def indicator_of_symbol(cls, alphabet: Alphabet, symbol: int):
        return cls(alphabet, 0, {(symbol,): Fraction(1)})


def birkhoff_windows(w: Word, n: int, k: int):
    """The n windows of length 2k+1 read along w (len(w) == n + 2k)."""
    if len(w) != n + 2 * k:
        raise ValueError("word length must be n + 2k")
    return [w[j : j + 2 * k + 1] for j in range(n)]


def cylinder_sups(lang: LanguageOracle, phi: LocallyConstantPotential, n: int) -> dict:
    """Exact sup of the n-step Birkhoff sum over each length-n cylinder.

    For every admissible word t of length n, the supremum of
    phi(x) + phi(f x) + ... + phi(f^{n-1} x) over the cylinder [t] is a
    maximum over the admissible extensions of t by k symbols on each side,
    because phi only sees windows of radius k.  Returns {t: sup}.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    k = phi.radius
    ext = lang.words(n + 2 * k)
    if not ext:
        raise NotAdmissibleError("language is empty at the required length")
    sups: dict = {}
    win = phi.window
    for w in ext:
        total = sum(win(w[j : j + 2 * k + 1]) for j in range(n))
        center = w[k : k + n]
        prev = sups.get(center)
        if prev is None or total > prev:
            sups[center] = total
    return sups


def sup_birkhoff_on_cylinder(
    lang: LanguageOracle, phi: LocallyConstantPotential, tau: Word
) -> Fraction:
    """Exact sup of S_n(phi) over the cylinder of tau, n = len(tau)."""
    tau = tuple(tau)
    n = len(tau)
    if n == 0:
        raise ValueError("cylinder word must be nonempty")
    if tau not in lang.words(n):
        raise NotAdmissibleError(f"{tau} is not admissible")
    k = phi.radius
    win = phi.window
    best = None
    for w in lang.words(n + 2 * k):
        if w[k : k + n] != tau:
            continue
        total = sum(win(w[j : j + 2 * k + 1]) for j in range(n))
        if best is None or total > best:
            best = total
    if best is None:
        raise NotAdmissibleError(f"{tau} admits no extension to length {n + 2*k}")
    return best


class PotentialOracle:
    """Precision-indexed approximation of a continuous potential.

    ``approx(p)`` returns a locally constant potential within 2**-p of the
    target in sup norm.  ``exact`` marks oracles whose approximants are the
    target itself (zero error), letting callers skip the widening term.
    """

    def __init__(self, approx_fn, exact: bool = False, alphabet: Alphabet | None = None):
        self._fn = approx_fn
        self.exact = exact
        self._alphabet = alphabet
        self._memo: dict[int, LocallyConstantPotential] = {}

    def approx(self, p: int) -> LocallyConstantPotential:
        got = self._memo.get(p)
        if got is None:
            got = self._fn(p)
            self._memo[p] = got
        return got

    @property
    def alphabet(self) -> Alphabet:
        if self._alphabet is not None:
            return self._alphabet
        return self.approx(0).alphabet

    @classmethod
    def from_exact(cls, phi: LocallyConstantPotential) -> "PotentialOracle":
        return cls(lambda p: phi, exact=True, alphabet=phi.alphabet)


def sup_norm_distance(a: LocallyConstantPotential, b: LocallyConstantPotential) -> Fraction:
    """Exact sup of |a - b| over the full shift."""
    k = max(a.radius, b.radius)
    wa = a.widen_to(k)
    wb = b.widen_to(k)
    words = set(wa.table) | set(wb.table)
    best = abs(wa.default - wb.default)
    for w in words:
        best = max(best, abs(wa.window(w) - wb.window(w)))
    return best


# ---------------------------------------------------------------------------
# Potential file format: line 1 "radius k", line 2 "default p/q", then
# "word p/q" lines where word is a digit string of length 2k+1.


def parse_potential(text: str, alphabet: Alphabet) -> LocallyConstantPotential:
    lines = [
        (i + 1, ln.strip())
        for i, ln in enumerate(text.splitlines())
        if ln.strip() and not ln.strip().startswith("#")
    ]
    if len(lines) < 2:
        raise ParseError(1, "potential file needs 'radius' and 'default' lines")
    no, first = lines[0]
    parts = first.split()
    if len(parts) != 2 or parts[0] != "radius":
        raise ParseError(no, f"expected 'radius k', got {first!r}")
    try:
        radius = int(parts[1])
    except ValueError:
        raise ParseError(no, f"bad radius {parts[1]!r}") from None
    no, second = lines[1]
    parts = second.split()
    if len(parts) != 2 or parts[0] != "default":
        raise ParseError(no, f"expected 'default p/q', got {second!r}")
    default = _parse_rational(no, parts[1])
    table = {}
    for no, ln in lines[2:]:
        parts = ln.split()
        if len(parts) != 2:
            raise ParseError(no, f"expected 'word p/q', got {ln!r}")
        try:
            w = word(parts[0])
        except ValueError:
            raise ParseError(no, f"bad word {parts[0]!r}") from None
        if len(w) != 2 * radius + 1:
            raise ParseError(no, f"word {parts[0]!r} must have length {2*radius+1}")
        if not alphabet.valid_word(w):
            raise ParseError(no, f"symbol out of alphabet in {parts[0]!r}")
        table[w] = _parse_rational(no, parts[1])
    return LocallyConstantPotential(alphabet, radius, table, default)


def _parse_rational(line_no: int, text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ParseError(line_no, f"malformed rational {text!r}") from None


def format_potential(phi: LocallyConstantPotential) -> str:
    out = [f"radius {phi.radius}", f"default {phi.default}"]
    for w in sorted(phi.table):
        out.append(f"{word_str(w)} {phi.table[w]}")
    return "\n".join(out) + "\n"
