"""Shifts of finite type as trimmed vertex shifts.

A :class:`VertexShift` is a finite 0/1 transition structure whose states
carry words of a fixed block length r over the base alphabet; state u at
time t stands for the window x_t .. x_{t+r-1}, and an edge u -> v glues to
the window x_t .. x_{t+r}.  SFTs given by forbidden words land here after
higher-block recoding, and the n-block approximation of any language
oracle is built by :func:`vertex_shift_from_language`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import Alphabet, LanguageOracle, Word
from .errors import EmptyShiftError, NotStronglyConnectedError


@dataclass(frozen=True)
class VertexShift:
    alphabet: Alphabet
    states: tuple  # tuple of Words, all the same length r >= 1
    succ: tuple  # tuple of tuples of successor indices, sorted

    def __post_init__(self):
        if len(self.states) != len(self.succ):
            raise ValueError("states and successor lists disagree")
        r = self.block_length
        for w in self.states:
            if len(w) != r:
                raise ValueError("states must share one block length")
            self.alphabet.check_word(w)
        for i, outs in enumerate(self.succ):
            for j in outs:
                if r > 1 and self.states[i][1:] != self.states[j][:-1]:
                    raise ValueError(
                        f"edge {self.states[i]}->{self.states[j]} breaks block overlap"
                    )

    @property
    def block_length(self) -> int:
        return len(self.states[0]) if self.states else 0

    @property
    def size(self) -> int:
        return len(self.states)

    def is_empty(self) -> bool:
        return not self.states

    def edges(self):
        for i, outs in enumerate(self.succ):
            for j in outs:
                yield i, j

    def edge_count(self) -> int:
        return sum(len(outs) for outs in self.succ)

    def edge_word(self, i: int, j: int) -> Word:
        """The glued word of length r+1 read along edge i -> j."""
        return self.states[i] + (self.states[j][-1],)

    def predecessors(self):
        pred = [[] for _ in self.states]
        for i, j in self.edges():
            pred[j].append(i)
        return [tuple(sorted(p)) for p in pred]

    def path_word(self, path) -> Word:
        """Label of a state path (r + len(path) - 1 symbols)."""
        if not path:
            return ()
        w = list(self.states[path[0]])
        for t in path[1:]:
            w.append(self.states[t][-1])
        return tuple(w)

    def cycle_word(self, cycle) -> Word:
        """Periodic word of a closed walk given by its M distinct steps."""
        return tuple(self.states[t][0] for t in cycle)

    def restrict(self, keep) -> "VertexShift":
        """Subgraph on a subset of state indices (no trimming)."""
        keep = sorted(keep)
        index = {old: new for new, old in enumerate(keep)}
        states = tuple(self.states[i] for i in keep)
        succ = tuple(
            tuple(index[j] for j in self.succ[i] if j in index) for i in keep
        )
        return VertexShift(self.alphabet, states, succ)


def _trim(states, succ, alphabet) -> VertexShift:
    n = len(states)
    alive = [True] * n
    changed = True
    while changed:
        changed = False
        out_deg = [0] * n
        in_deg = [0] * n
        for i in range(n):
            if not alive[i]:
                continue
            for j in succ[i]:
                if alive[j]:
                    out_deg[i] += 1
                    in_deg[j] += 1
        for i in range(n):
            if alive[i] and (out_deg[i] == 0 or in_deg[i] == 0):
                alive[i] = False
                changed = True
    keep = [i for i in range(n) if alive[i]]
    order = sorted(keep, key=lambda i: states[i])
    index = {old: new for new, old in enumerate(order)}
    new_states = tuple(states[i] for i in order)
    new_succ = tuple(
        tuple(sorted(index[j] for j in succ[i] if alive[j])) for i in order
    )
    return VertexShift(alphabet, new_states, new_succ)


def trim(v: VertexShift) -> VertexShift:
    """Remove states that cannot lie on a bi-infinite path."""
    return _trim(list(v.states), [list(s) for s in v.succ], v.alphabet)


def sft_from_forbidden(alphabet: Alphabet, forbidden) -> VertexShift:
    """Vertex-shift presentation of the SFT avoiding the given words.

    States are the admissible words of length k-1 (k the longest forbidden
    length) and transitions glue to admissible words of length k; the
    result is trimmed, so an empty set of states means the empty shift.
    Forbidden words of length <= 1 are handled by shrinking the alphabet's
    usable symbols; the alphabet itself is kept.
    """
    fset = {tuple(w) for w in forbidden}
    for w in fset:
        alphabet.check_word(w)
    if () in fset:
        return VertexShift(alphabet, (), ())
    if not fset:
        fset = set()
        k = 1
    else:
        k = max(len(w) for w in fset)
    if k == 1:
        symbols = [s for s in range(alphabet.size) if (s,) not in fset]
        states = [(s,) for s in symbols]
        succ = [list(range(len(states))) for _ in states]
        return _trim(states, succ, alphabet)

    by_len: dict[int, set] = {}
    for w in fset:
        by_len.setdefault(len(w), set()).add(w)

    def bad_suffix(w: Word) -> bool:
        for ln, bucket in by_len.items():
            if ln <= len(w) and w[len(w) - ln :] in bucket:
                return True
        return False

    level = [()]
    for _ in range(k - 1):
        nxt = []
        for w in level:
            for s in range(alphabet.size):
                cand = w + (s,)
                if not bad_suffix(cand):
                    nxt.append(cand)
        level = nxt
    states = level  # admissible words of length k-1, lex order
    index = {w: i for i, w in enumerate(states)}
    long_bucket = by_len.get(k, set())
    succ = [[] for _ in states]
    for i, u in enumerate(states):
        for s in range(alphabet.size):
            glued = u + (s,)
            if glued in long_bucket:
                continue
            j = index.get(glued[1:])
            if j is not None:
                succ[i].append(j)
    return _trim(states, succ, alphabet)


def vertex_shift_from_language(lang: LanguageOracle, n: int) -> VertexShift:
    """The n-block SFT approximation of a language oracle.

    Bi-infinite sequences all of whose length-n windows are admissible.
    This shift contains the oracle's shift, shrinks as n grows, and has
    exactly the oracle's words at length n, so its pressure is a certified
    upper bound that decreases to the true pressure.
    """
    if n < 1:
        raise ValueError("window length must be >= 1")
    if n == 1:
        states = sorted(lang.words(1))
        succ = [list(range(len(states))) for _ in states]
        return _trim(states, succ, lang.alphabet)
    states = sorted(lang.words(n - 1))
    index = {w: i for i, w in enumerate(states)}
    glue = lang.words(n)
    succ = [[] for _ in states]
    for i, u in enumerate(states):
        for s in range(lang.alphabet.size):
            if u + (s,) in glue:
                j = index.get(u[1:] + (s,))
                if j is not None:
                    succ[i].append(j)
    return _trim(states, succ, lang.alphabet)


@dataclass(frozen=True)
class TransitiveComponent:
    """A maximal strongly connected set of states containing an edge."""

    shift: VertexShift
    members: tuple  # sorted state indices into shift

    def subshift(self) -> VertexShift:
        return self.shift.restrict(self.members)

    def least_word(self) -> Word:
        return self.shift.states[self.members[0]]


def strongly_connected_components(succ) -> list:
    """Tarjan's algorithm, iterative; returns components as lists."""
    n = len(succ)
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack = []
    comps = []
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        while work:
            v, pi = work[-1]
            if pi == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            advanced = False
            for off in range(pi, len(succ[v])):
                w = succ[v][off]
                if index[w] == -1:
                    work[-1] = (v, off + 1)
                    work.append((w, 0))
                    advanced = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                pv = work[-1][0]
                low[pv] = min(low[pv], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comps.append(comp)
    return comps


def transitive_components(v: VertexShift) -> list:
    """Maximal SCCs with at least one edge, ordered by least state word."""
    comps = strongly_connected_components(v.succ)
    out = []
    for comp in comps:
        members = sorted(comp)
        cset = set(members)
        has_edge = any(j in cset for i in members for j in v.succ[i])
        if has_edge:
            out.append(TransitiveComponent(v, tuple(members)))
    out.sort(key=lambda c: (c.least_word(), c.members))
    return out


def is_strongly_connected(v: VertexShift) -> bool:
    if v.is_empty():
        return False
    comps = strongly_connected_components(v.succ)
    return len(comps) == 1


def enumerate_language(v: VertexShift, length: int) -> frozenset:
    """The admissible words of the vertex shift's subshift, de-blocked."""
    if length < 0:
        raise ValueError("length must be nonnegative")
    if v.is_empty():
        return frozenset()
    if length == 0:
        return frozenset({()})
    r = v.block_length
    if length <= r:
        return frozenset(
            w[i : i + length] for w in v.states for i in range(r - length + 1)
        )
    frontier: dict = {}
    for i, w in enumerate(v.states):
        frontier.setdefault(w, set()).add(i)
    for _ in range(length - r):
        nxt: dict = {}
        for w, ends in frontier.items():
            for e in ends:
                for j in v.succ[e]:
                    nw = w + (v.states[j][-1],)
                    nxt.setdefault(nw, set()).add(j)
        frontier = nxt
    return frozenset(frontier)


def language_oracle(v: VertexShift, name: str = "") -> LanguageOracle:
    return LanguageOracle(v.alphabet, lambda n: enumerate_language(v, n), name=name)


def min_mean_cycle(v: VertexShift, weights):
    """Cycle of minimum mean edge weight, with exact rational mean.

    Uses Karp's recurrence for the exact minimum mean, then extracts a
    deterministic witness cycle from the tight subgraph of the reduced
    weights: the shortest tight cycle, ties broken toward the
    lexicographically least sequence of state words.

    ``weights`` is either a mapping from (i, j) index pairs to rationals
    or a callable weights(i, j).
    """
    if v.is_empty():
        raise EmptyShiftError("minimum mean cycle needs a nonempty shift")
    if not is_strongly_connected(v):
        raise NotStronglyConnectedError("minimum mean cycle needs strong connectivity")
    if callable(weights):
        wfn = weights
    else:
        wfn = lambda i, j: weights[(i, j)]
    n = v.size
    edge_list = [(i, j, Fraction(wfn(i, j))) for i, j in v.edges()]

    INF = None
    d = [[INF] * n for _ in range(n + 1)]
    d[0][0] = Fraction(0)
    for k in range(1, n + 1):
        dk = d[k]
        dk1 = d[k - 1]
        for i, j, w in edge_list:
            if dk1[i] is not None:
                cand = dk1[i] + w
                if dk[j] is None or cand < dk[j]:
                    dk[j] = cand
    best = None
    for t in range(n):
        if d[n][t] is None:
            continue
        worst = None
        for k in range(n):
            if d[k][t] is None:
                continue
            val = (d[n][t] - d[k][t]) / (n - k)
            if worst is None or val > worst:
                worst = val
        if worst is not None and (best is None or worst < best):
            best = worst
    if best is None:
        raise NotStronglyConnectedError("no cycle found")
    mean = best

    # Tight subgraph of the reduced weights w - mean.
    pot = [Fraction(0)] * n
    for _ in range(n):
        changed = False
        for i, j, w in edge_list:
            cand = pot[i] + w - mean
            if cand < pot[j]:
                pot[j] = cand
                changed = True
        if not changed:
            break
    tight = [[] for _ in range(n)]
    for i, j, w in edge_list:
        if pot[i] + w - mean == pot[j]:
            tight[i].append(j)
    for i in range(n):
        tight[i].sort(key=lambda j: (v.states[j], j))

    cycle = _shortest_lex_cycle(v, tight)
    return cycle, mean


def _shortest_lex_cycle(v, tight):
    n = v.size
    # shortest tight cycle length through each state
    best_len = None
    starts = []
    for s in range(n):
        dist = [-1] * n
        queue = [s]
        dist_s = None
        frontier = [s]
        d = 0
        while frontier and dist_s is None:
            d += 1
            nxt = []
            for u in frontier:
                for w in tight[u]:
                    if w == s:
                        dist_s = d
                        break
                    if dist[w] == -1:
                        dist[w] = d
                        nxt.append(w)
                if dist_s is not None:
                    break
            frontier = nxt
        if dist_s is not None:
            if best_len is None or dist_s < best_len:
                best_len = dist_s
                starts = [s]
            elif dist_s == best_len:
                starts.append(s)
    if best_len is None:
        raise NotStronglyConnectedError("tight subgraph has no cycle")
    start = min(starts, key=lambda s: (v.states[s], s))
    # reach[t][u]: can reach start in exactly t tight steps
    reach = [[False] * n for _ in range(best_len + 1)]
    reach[0][start] = True
    for t in range(1, best_len + 1):
        for u in range(n):
            reach[t][u] = any(reach[t - 1][w] for w in tight[u])
    cycle = [start]
    cur = start
    for t in range(best_len, 0, -1):
        nxt = min(
            (w for w in tight[cur] if reach[t - 1][w]),
            key=lambda w: (v.states[w], w),
        )
        if t > 1:
            cycle.append(nxt)
        cur = nxt
    return tuple(cycle)
