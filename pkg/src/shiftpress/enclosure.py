"""Certified interval arithmetic over exact rationals.

Everything here is exact: intervals have Fraction endpoints, and every
operation is outward-conservative, so a true value contained in the inputs
is contained in the output.  The three workhorses are natural-log and exp
enclosures (argument-reduced power series with explicit tail bounds) and a
Perron-root enclosure for nonnegative matrices based on Collatz-Wielandt
bounds tightened by power iteration.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import NotStronglyConnectedError, ZeroMatrixError

ZERO = Fraction(0)
ONE = Fraction(1)


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


@dataclass(frozen=True)
class RationalInterval:
    """Closed interval [lo, hi] with exact rational endpoints."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        lo = _as_fraction(self.lo)
        hi = _as_fraction(self.hi)
        if lo > hi:
            raise ValueError(f"inverted interval [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def point(cls, q) -> "RationalInterval":
        q = _as_fraction(q)
        return cls(q, q)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def contains(self, q) -> bool:
        q = _as_fraction(q)
        return self.lo <= q <= self.hi

    def contains_interval(self, other: "RationalInterval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def intersects(self, other: "RationalInterval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def __add__(self, other):
        if isinstance(other, RationalInterval):
            return RationalInterval(self.lo + other.lo, self.hi + other.hi)
        q = _as_fraction(other)
        return RationalInterval(self.lo + q, self.hi + q)

    __radd__ = __add__

    def __neg__(self):
        return RationalInterval(-self.hi, -self.lo)

    def __sub__(self, other):
        if isinstance(other, RationalInterval):
            return RationalInterval(self.lo - other.hi, self.hi - other.lo)
        q = _as_fraction(other)
        return RationalInterval(self.lo - q, self.hi - q)

    def scale(self, q) -> "RationalInterval":
        q = _as_fraction(q)
        if q >= 0:
            return RationalInterval(self.lo * q, self.hi * q)
        return RationalInterval(self.hi * q, self.lo * q)

    def times_nonneg(self, other: "RationalInterval") -> "RationalInterval":
        """Product of two intervals with nonnegative lower endpoints."""
        if self.lo < 0 or other.lo < 0:
            raise ValueError("times_nonneg requires nonnegative intervals")
        return RationalInterval(self.lo * other.lo, self.hi * other.hi)

    def max_with(self, other: "RationalInterval") -> "RationalInterval":
        """Enclosure of max(x, y) for x in self, y in other."""
        return RationalInterval(max(self.lo, other.lo), max(self.hi, other.hi))

    def min_with(self, other: "RationalInterval") -> "RationalInterval":
        return RationalInterval(min(self.lo, other.lo), min(self.hi, other.hi))

    def hull(self, other: "RationalInterval") -> "RationalInterval":
        return RationalInterval(min(self.lo, other.lo), max(self.hi, other.hi))

    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __repr__(self):
        return f"[{self.lo}, {self.hi}]"


def dyadic_below(q: Fraction, bits: int) -> Fraction:
    """Largest multiple of 2**-bits that is <= q (bits may be negative)."""
    if bits >= 0:
        scaled = q * (1 << bits)
        return Fraction(scaled.numerator // scaled.denominator, 1 << bits)
    unit = 1 << (-bits)
    scaled = q / unit
    return Fraction((scaled.numerator // scaled.denominator) * unit)


def dyadic_above(q: Fraction, bits: int) -> Fraction:
    """Smallest multiple of 2**-bits that is >= q (bits may be negative)."""
    return -dyadic_below(-q, bits)


def _atanh_enclosure(z: Fraction, tol: Fraction) -> RationalInterval:
    # 2*atanh(z) = log((1+z)/(1-z)) for |z| < 1; tail of the odd series
    # after N terms is bounded by |z|^(2N+1) / ((2N+1)(1-z^2)).
    if not abs(z) < 1:
        raise ValueError("atanh series needs |z| < 1")
    z2 = z * z
    term = z
    total = ZERO
    n = 0
    one_minus = 1 - z2
    while True:
        total += term / (2 * n + 1)
        term *= z2
        n += 1
        tail = abs(term) / ((2 * n + 1) * one_minus)
        if tail <= tol / 2:
            break
    half = 2 * total
    rad = 2 * (abs(term) / ((2 * n + 1) * one_minus))
    return RationalInterval(half - rad, half + rad)


_LN2_CACHE: dict[int, RationalInterval] = {}


def _ln2(p: int) -> RationalInterval:
    """Enclosure of log 2 with width <= 2**-p."""
    best = max(_LN2_CACHE, default=-1)
    if best >= p:
        return _LN2_CACHE[best]
    ival = _atanh_enclosure(Fraction(1, 3), Fraction(1, 1 << p))
    _LN2_CACHE[p] = ival
    return ival


def log_enclosure(q, p: int) -> RationalInterval:
    """Enclosure of the natural log of a positive rational.

    The result contains log(q) and has width at most 2**-p.  The argument
    is reduced to m * 2**e with m near 1, so the series converges quickly
    regardless of the size of q; very long rationals are first rounded
    outward to dyadics so the series runs on short numbers.
    """
    q = _as_fraction(q)
    if q <= 0:
        raise ValueError(f"log requires a positive argument, got {q}")
    if q == 1:
        return RationalInterval(ZERO, ZERO)
    if q < 1:
        return -log_enclosure(1 / q, p)

    tol = Fraction(1, 1 << p)

    # Round long rationals outward to ~p+6 significant bits first, so the
    # series below runs on short numbers.  q >= 1 here.
    if q.numerator.bit_length() + q.denominator.bit_length() > 2 * p + 160:
        exponent = q.numerator.bit_length() - q.denominator.bit_length()
        bits = (p + 6) - exponent  # grid 2**-bits keeps ~p+6 significant bits
        lo_q = dyadic_below(q, bits)
        hi_q = dyadic_above(q, bits)
        if lo_q != hi_q:
            if lo_q <= 0:
                lo_q = hi_q / 2
            lo_iv = log_enclosure(lo_q, p + 2)
            hi_iv = log_enclosure(hi_q, p + 2)
            return RationalInterval(lo_iv.lo, hi_iv.hi)

    e = 0
    m = q
    while m >= Fraction(3, 2):
        m /= 2
        e += 1
    # m in [3/4, 3/2), so z in (-1/7, 1/5].
    z = (m - 1) / (m + 1)
    part_tol = tol / 2
    m_part = _atanh_enclosure(z, part_tol) if z != 0 else RationalInterval(ZERO, ZERO)
    if e == 0:
        return m_part
    ln2_bits = p + 2 + max(1, e).bit_length()
    return m_part + _ln2(ln2_bits).scale(e)


_E_CACHE: dict[int, RationalInterval] = {}


def _e_const(p: int) -> RationalInterval:
    """Enclosure of e with width <= 2**-p."""
    best = max(_E_CACHE, default=-1)
    if best >= p:
        return _E_CACHE[best]
    tol = Fraction(1, 1 << p)
    total = ONE
    term = ONE
    n = 1
    while True:
        term /= n
        total += term
        n += 1
        # remaining tail < 2 * next term
        if 2 * term / n <= tol:
            break
    ival = RationalInterval(total, total + 2 * term / n)
    _E_CACHE[p] = ival
    return ival


def _exp_small(r: Fraction, tol: Fraction) -> RationalInterval:
    # Taylor series for |r| <= 1/2; absolute tail after N terms is at most
    # 2 * |r|^(N+1) / (N+1)! once N >= 1.
    total = ONE
    term = ONE
    abs_term = ONE
    n = 0
    while True:
        n += 1
        term = term * r / n
        abs_term = abs_term * abs(r) / n
        total += term
        tail = 2 * abs_term * abs(r) / (n + 1)
        if tail <= tol:
            break
    lo = total - tail
    hi = total + tail
    if lo <= 0:
        lo = Fraction(1, 4)  # e^r >= e^-0.5 > 1/4
    return RationalInterval(lo, hi)


def exp_enclosure(q, p: int) -> RationalInterval:
    """Enclosure of e**q for rational q, relative width <= 2**-p.

    Splits q = k + r with integer k and |r| <= 1/2; e**k comes from a cached
    enclosure of e raised to an integer power (monotone, so endpoint powers
    are outward), and e**r from the Taylor series with a Lagrange tail.
    """
    q = _as_fraction(q)
    if q == 0:
        return RationalInterval(ONE, ONE)
    k = (q + Fraction(1, 2)).__floor__()
    r = q - k
    # relative-width budget split between the two factors
    kk = max(1, abs(k))
    e_bits = p + 3 + kk.bit_length()
    e_iv = _e_const(e_bits)
    if k >= 0:
        k_part = RationalInterval(e_iv.lo**k, e_iv.hi**k)
    else:
        k_part = RationalInterval(1 / e_iv.hi ** (-k), 1 / e_iv.lo ** (-k))
    r_tol = Fraction(1, 1 << (p + 3))
    r_part = _exp_small(r, r_tol) if r else RationalInterval(ONE, ONE)
    return k_part.times_nonneg(r_part)


def log_interval(iv: RationalInterval, p: int) -> RationalInterval:
    """Enclosure of {log x : x in iv} for a positive interval."""
    if iv.lo <= 0:
        raise ValueError("log_interval requires a positive interval")
    return RationalInterval(log_enclosure(iv.lo, p).lo, log_enclosure(iv.hi, p).hi)


# ---------------------------------------------------------------------------
# Perron root enclosures


@dataclass(frozen=True)
class WeightedMatrix:
    """Square nonnegative matrix with interval entries, stored sparsely.

    ``rows[i]`` is a tuple of ``(j, entry)`` pairs sorted by column with
    ``entry.lo >= 0``.  When ``irreducible`` is set the support digraph
    (positive upper endpoints) is checked to be strongly connected.
    """

    size: int
    rows: tuple
    irreducible: bool = False

    def __post_init__(self):
        for row in self.rows:
            for _, entry in row:
                if entry.lo < 0:
                    raise ValueError("matrix entries must be nonnegative")
        if self.irreducible and not support_strongly_connected(self):
            raise NotStronglyConnectedError("support digraph is not strongly connected")

    @classmethod
    def from_dense(cls, entries, irreducible=False) -> "WeightedMatrix":
        """Build from a dense list of lists of intervals/rationals."""
        n = len(entries)
        rows = []
        for row in entries:
            if len(row) != n:
                raise ValueError("matrix must be square")
            sparse = []
            for j, cell in enumerate(row):
                if not isinstance(cell, RationalInterval):
                    cell = RationalInterval.point(cell)
                if cell.hi > 0:
                    sparse.append((j, cell))
            rows.append(tuple(sparse))
        return cls(n, tuple(rows), irreducible)

    def is_zero(self) -> bool:
        return all(entry.hi == 0 for row in self.rows for _, entry in row)


def support_strongly_connected(m: WeightedMatrix) -> bool:
    succ = [[j for j, entry in row if entry.hi > 0] for row in m.rows]
    return _is_strongly_connected(m.size, succ)


def _is_strongly_connected(n, succ) -> bool:
    if n == 0:
        return False

    def reachable(adj):
        seen = [False] * n
        seen[0] = True
        stack = [0]
        while stack:
            u = stack.pop()
            for v in adj[u]:
                if not seen[v]:
                    seen[v] = True
                    stack.append(v)
        return all(seen)

    pred = [[] for _ in range(n)]
    for u, vs in enumerate(succ):
        for v in vs:
            pred[v].append(u)
    return reachable(succ) and reachable(pred)


@dataclass(frozen=True)
class PerronResult:
    interval: RationalInterval
    converged: bool
    iterations: int


def _float_warm_start(size, idx_rows, wt_rows, iters=400):
    """Approximate Perron vector of A + I by float power iteration.

    Purely a heuristic starting point; certification never depends on it.
    """
    v = [1.0] * size
    prev_gap = None
    for it in range(iters):
        u = list(v)  # the +I shift
        for i in range(size):
            vi_new = u[i]
            row_idx = idx_rows[i]
            row_wt = wt_rows[i]
            for t in range(len(row_idx)):
                vi_new += row_wt[t] * v[row_idx[t]]
            u[i] = vi_new
        mx = max(u)
        if mx <= 0 or mx != mx or mx == float("inf"):
            return [1.0] * size
        ratios_min = min(u[i] / v[i] for i in range(size))
        ratios_max = max(u[i] / v[i] for i in range(size))
        v = [x / mx for x in u]
        gap = ratios_max - ratios_min
        if gap < 1e-13:
            break
        if prev_gap is not None and it > 50 and gap > prev_gap * 0.9999:
            break
        prev_gap = gap
    floor = max(1e-300, max(v) * 1e-18)
    return [max(x, floor) for x in v]


def _quantize(vec_fracs, bits):
    """Round a positive rational vector to integers at scale 2**-bits."""
    mx = max(vec_fracs)
    out = []
    for x in vec_fracs:
        scaled = x / mx * (1 << bits)
        n = scaled.numerator // scaled.denominator
        out.append(max(1, n))
    return out


def _quantize_floats(vec, bits):
    mx = max(vec)
    scale = (1 << bits) / mx
    return [max(1, int(x * scale)) for x in vec]


class _BoundRun:
    """Certified Collatz-Wielandt bounds for one integer-scaled matrix.

    The matrix is B = A*2**h + I*2**h held as integer rows; for any positive
    integer vector v, min_i (Bv)_i / (v_i * 2**h) - 1 and the max analogue
    bound the Perron root of A from below and above.
    """

    def __init__(self, size, idx_rows, int_rows, h_bits, v0):
        self.size = size
        self.idx = idx_rows
        self.wts = int_rows
        self.h = h_bits
        self.v = list(v0)
        self.lo_best = None
        self.hi_best = None

    def step(self, quant_bits):
        v = self.v
        scale = 1 << self.h
        u = []
        for i in range(self.size):
            acc = v[i] * scale  # the +I term at matrix scale
            row_idx = self.idx[i]
            row_wt = self.wts[i]
            for t in range(len(row_idx)):
                acc += row_wt[t] * v[row_idx[t]]
            u.append(acc)
        # ratios u_i / (v_i * 2^h); compare by cross multiplication
        lo_i = hi_i = 0
        for i in range(1, self.size):
            if u[i] * v[lo_i] < u[lo_i] * v[i]:
                lo_i = i
            if u[i] * v[hi_i] > u[hi_i] * v[i]:
                hi_i = i
        lo = Fraction(u[lo_i], v[lo_i] * scale) - 1
        hi = Fraction(u[hi_i], v[hi_i] * scale) - 1
        if self.lo_best is None or lo > self.lo_best:
            self.lo_best = lo
        if self.hi_best is None or hi < self.hi_best:
            self.hi_best = hi
        # next test vector; any positive vector keeps the bounds valid
        mx = max(u)
        nxt = []
        for x in u:
            n = (x << quant_bits) // mx
            nxt.append(n if n > 0 else 1)
        self.v = nxt


def _int_rows(m: WeightedMatrix, h_bits, side):
    """Integer-scaled rows: floor for the lo side, ceil for the hi side."""
    idx_rows, int_rows, flt_rows = [], [], []
    scale = 1 << h_bits
    for row in m.rows:
        idx, wts, flts = [], [], []
        for j, entry in row:
            q = entry.lo if side == "lo" else entry.hi
            num = q.numerator * scale
            den = q.denominator
            w = num // den if side == "lo" else -((-num) // den)
            if w > 0:
                idx.append(j)
                wts.append(w)
                flts.append(w / scale)
        idx_rows.append(idx)
        int_rows.append(wts)
        flt_rows.append(flts)
    return idx_rows, int_rows, flt_rows


def perron_enclosure(m: WeightedMatrix, p: int, budget: int = 20000) -> PerronResult:
    """Certified enclosure of the spectral radius of a nonnegative matrix.

    Entries are intervals; by monotonicity of the Perron root in the
    entries, a lower bound for the endpoint-lo matrix and an upper bound
    for the endpoint-hi matrix enclose the root of every matrix between
    them.  Bounds come from exact Collatz-Wielandt ratios of A + I
    (primitive whenever A is irreducible, so power iteration converges),
    with the test vector warm-started by uncertified float iteration and
    then quantized; correctness never depends on the vector choice.

    Stops when the enclosure width is at most 2**-p or the iteration
    budget runs out, whichever is first.
    """
    if m.size == 0 or m.is_zero():
        raise ZeroMatrixError("Perron root needs a nonzero matrix")
    if not support_strongly_connected(m):
        raise NotStronglyConnectedError("support digraph is not strongly connected")

    tol = Fraction(1, 1 << p)
    if m.size == 1:
        entry = dict(m.rows[0])[0]
        return PerronResult(entry, entry.width <= tol, 0)

    h = p + 8
    same = all(entry.lo == entry.hi for row in m.rows for _, entry in row)
    lo_idx, lo_int, lo_flt = _int_rows(m, h, "lo")
    if same:
        hi_idx, hi_int = lo_idx, lo_int
    else:
        hi_idx, hi_int, _ = _int_rows(m, h, "hi")

    warm = _float_warm_start(m.size, lo_idx, lo_flt)
    qbits = p + 16
    v0 = _quantize_floats(warm, qbits)
    run_lo = _BoundRun(m.size, lo_idx, lo_int, h, v0)
    run_hi = run_lo if same else _BoundRun(m.size, hi_idx, hi_int, h, list(v0))

    iterations = 0
    stall = 0
    prev_width = None
    while iterations < budget:
        run_lo.step(qbits)
        if not same:
            run_hi.step(qbits)
        iterations += 1
        lo = run_lo.lo_best
        hi = run_hi.hi_best
        width = hi - lo
        if width <= tol:
            return PerronResult(RationalInterval(lo, hi), True, iterations)
        if prev_width is not None and width > prev_width * Fraction(99, 100):
            stall += 1
            if stall >= 8:
                qbits += 16
                stall = 0
        else:
            stall = 0
        prev_width = width
    return PerronResult(
        RationalInterval(run_lo.lo_best, run_hi.hi_best), False, iterations
    )
