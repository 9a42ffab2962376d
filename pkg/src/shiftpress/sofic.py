"""Labeled-graph presentations of sofic shifts.

A :class:`LabeledGraph` carries alphabet labels on directed edges; the
shift it presents is the set of bi-infinite label sequences of paths.
Key operations: the bouquet presenting a finitely generated coded shift,
right-resolving determinization by subset construction, the edge-shift
lift that turns a labeled graph into a vertex shift over edge symbols,
and language enumeration.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Alphabet, LanguageOracle, LocallyConstantPotential, Word
from .sft import VertexShift


@dataclass(frozen=True)
class LabeledGraph:
    alphabet: Alphabet
    vertices: tuple  # hashable names, sorted
    edges: tuple  # (src_index, dst_index, label) triples, sorted

    def __post_init__(self):
        n = len(self.vertices)
        for src, dst, label in self.edges:
            if not (0 <= src < n and 0 <= dst < n):
                raise ValueError("edge endpoint out of range")
            if not (0 <= label < self.alphabet.size):
                raise ValueError(f"label {label} outside alphabet")

    @classmethod
    def from_named_edges(cls, alphabet: Alphabet, edges) -> "LabeledGraph":
        """Build from (src_name, dst_name, label) triples."""
        names = sorted({e[0] for e in edges} | {e[1] for e in edges}, key=str)
        index = {v: i for i, v in enumerate(names)}
        triples = tuple(
            sorted((index[s], index[d], int(a)) for s, d, a in edges)
        )
        return cls(alphabet, tuple(names), triples)

    def out_edges(self):
        """Per-vertex dict label -> sorted tuple of destination vertices."""
        table = [dict() for _ in self.vertices]
        for src, dst, label in self.edges:
            table[src].setdefault(label, []).append(dst)
        return [
            {a: tuple(sorted(set(ds))) for a, ds in row.items()} for row in table
        ]

    def is_right_resolving(self) -> bool:
        seen = set()
        for src, _, label in self.edges:
            if (src, label) in seen:
                return False
            seen.add((src, label))
        return True

    def edge_count(self) -> int:
        return len(self.edges)


def make_essential(g: LabeledGraph) -> LabeledGraph:
    """Trim to the subgraph whose vertices all lie on bi-infinite paths."""
    n = len(g.vertices)
    alive = [True] * n
    edges = list(g.edges)
    while True:
        out_deg = [0] * n
        in_deg = [0] * n
        for src, dst, _ in edges:
            if alive[src] and alive[dst]:
                out_deg[src] += 1
                in_deg[dst] += 1
        dead = [
            i for i in range(n) if alive[i] and (out_deg[i] == 0 or in_deg[i] == 0)
        ]
        if not dead:
            break
        for i in dead:
            alive[i] = False
        edges = [e for e in edges if alive[e[0]] and alive[e[1]]]
    keep = [i for i in range(n) if alive[i]]
    index = {old: new for new, old in enumerate(keep)}
    return LabeledGraph(
        g.alphabet,
        tuple(g.vertices[i] for i in keep),
        tuple(sorted((index[s], index[d], a) for s, d, a in edges)),
    )


def is_essential(g: LabeledGraph) -> bool:
    return make_essential(g) == g


def bouquet(words) -> LabeledGraph:
    """Bouquet presentation of the coded shift generated by finite words.

    One central vertex; each generator word contributes a directed cycle
    through the center labeled by its symbols in order.
    """
    gens = sorted({tuple(w) for w in words})
    if not gens:
        raise ValueError("bouquet needs at least one generator")
    if any(len(w) == 0 for w in gens):
        raise ValueError("generators must be nonempty")
    top = max(s for w in gens for s in w)
    alphabet = Alphabet(top + 1)
    center = "c"
    edges = []
    for gi, w in enumerate(gens):
        prev = center
        for t, sym in enumerate(w[:-1]):
            mid = f"g{gi}.{t + 1}"
            edges.append((prev, mid, sym))
            prev = mid
        edges.append((prev, center, w[-1]))
    return LabeledGraph.from_named_edges(alphabet, edges)


class _SubsetEnumerator:
    """Deterministic subset-transition machinery for one labeled graph.

    From a subset S and a symbol a, the successor is the set of endpoints
    of a-labeled edges out of S; a word is admissible exactly when the
    chain of successors from the full vertex set stays nonempty.
    """

    def __init__(self, g: LabeledGraph):
        self.graph = g
        self.out = g.out_edges()
        self._trans: dict = {}
        self.alphabet = g.alphabet

    def step(self, subset, symbol):
        key = (subset, symbol)
        got = self._trans.get(key)
        if got is None:
            acc = set()
            for v in subset:
                acc.update(self.out[v].get(symbol, ()))
            got = frozenset(acc)
            self._trans[key] = got
        return got

    def full(self):
        return frozenset(range(len(self.graph.vertices)))


def sofic_language(g: LabeledGraph, length: int) -> frozenset:
    """Admissible words of the presented shift, by subset transitions."""
    return sofic_language_oracle(g).words(length)


def sofic_language_oracle(g: LabeledGraph, name: str = "") -> LanguageOracle:
    ess = make_essential(g)
    enum = _SubsetEnumerator(ess)
    levels = {}

    def words(length):
        if not ess.vertices:
            return frozenset()
        if length == 0:
            return frozenset({()})
        if 0 not in levels:
            levels[0] = {(): enum.full()}
        top = max(levels)
        while top < length:
            nxt = {}
            for w, subset in levels[top].items():
                for a in range(enum.alphabet.size):
                    t = enum.step(subset, a)
                    if t:
                        nxt[w + (a,)] = t
            top += 1
            levels[top] = nxt
        return frozenset(levels[length])

    return LanguageOracle(ess.alphabet, words, name=name or "sofic")


def right_resolve(g: LabeledGraph, verify_depth: int = 6) -> LabeledGraph:
    """Right-resolving presentation of the same sofic shift.

    Subset construction seeded from every singleton, then trimmed to an
    essential graph.  At each output vertex the outgoing labels are
    distinct by construction.  As a guard against misuse the output's
    language is compared with the input's up to ``verify_depth``.
    """
    ess = make_essential(g)
    if not ess.vertices:
        return ess
    enum = _SubsetEnumerator(ess)
    seen = set()
    stack = [frozenset({v}) for v in range(len(ess.vertices))]
    edges = []
    while stack:
        s = stack.pop()
        if s in seen or not s:
            continue
        seen.add(s)
        for a in range(ess.alphabet.size):
            t = enum.step(s, a)
            if t:
                edges.append((s, t, a))
                if t not in seen:
                    stack.append(t)

    def name_of(subset):
        return ",".join(str(ess.vertices[i]) for i in sorted(subset))

    out = make_essential(
        LabeledGraph.from_named_edges(
            ess.alphabet, [(name_of(s), name_of(t), a) for s, t, a in edges]
        )
    )
    if verify_depth:
        for ln in range(1, verify_depth + 1):
            if sofic_language(out, ln) != sofic_language(ess, ln):
                raise AssertionError(
                    f"determinization changed the language at length {ln}"
                )
    return out


def edge_shift_lift(g: LabeledGraph, phi: LocallyConstantPotential):
    """Edge shift of a labeled graph, with the potential lifted to edges.

    States of the resulting vertex shift are the edges of g; transitions
    follow head-to-tail adjacency.  The lifted potential reads the labels
    of an edge window, so it is locally constant with the same radius.
    When g is right-resolving the label map is finite-to-one and the lift
    preserves pressure.
    """
    ess = make_essential(g)
    if ess != g:
        raise ValueError("edge shift lift needs an essential graph")
    edges = g.edges
    if not edges:
        raise ValueError("graph has no edges")
    edge_alphabet = Alphabet(len(edges))
    states = tuple((e,) for e in range(len(edges)))
    by_src: dict = {}
    for idx, (src, _, _) in enumerate(edges):
        by_src.setdefault(src, []).append(idx)
    succ = tuple(
        tuple(sorted(by_src.get(edges[e][1], ()))) for e in range(len(edges))
    )
    shift = VertexShift(edge_alphabet, states, succ)

    k = phi.radius
    if k == 0:
        table = {(e,): phi.window((edges[e][2],)) for e in range(len(edges))}
    else:
        from .sft import enumerate_language

        table = {}
        for window in enumerate_language(shift, 2 * k + 1):
            labels = tuple(edges[e][2] for e in window)
            table[window] = phi.window(labels)
    lifted = LocallyConstantPotential(edge_alphabet, k, table, phi.default)
    return shift, lifted


def graph_from_vertex_shift(v: VertexShift) -> LabeledGraph:
    """Present a vertex shift as a labeled graph.

    The edge out of a state is labeled with the state's first symbol, the
    symbol the shift emits at that time step, so bi-infinite path labels
    coincide with the de-blocked sequences.
    """
    edges = []
    for i, j in v.edges():
        edges.append((f"s{i}", f"s{j}", v.states[i][0]))
    return LabeledGraph.from_named_edges(v.alphabet, edges)
