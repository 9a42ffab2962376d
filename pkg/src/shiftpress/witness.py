"""Discontinuity witnesses: same n-language, pressure pinned to orbits.

Given an n-block presentation of a shift's language, this builds a shift
Z whose length-n words agree exactly with the input's but whose
nonwandering set is a finite union of periodic orbits, so its pressure is
the largest exact cycle average.  Each transitive component contributes
one periodic orbit: a covering closed walk through all of the component's
n-words, spliced into many repetitions of the component's minimum-mean
cycle so the splice's effect on the average drops below a tolerance.
Words outside the marked components ride on eventually periodic
connectors between the chosen orbits.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import Alphabet, LocallyConstantPotential, Word
from .enclosure import RationalInterval
from .errors import WitnessError
from .pressure import periodic_average, sft_pressure
from .sft import (
    VertexShift,
    enumerate_language,
    min_mean_cycle,
    transitive_components,
)


@dataclass(frozen=True)
class ComponentWitness:
    periodic_word: Word
    cycle_average: Fraction
    min_mean: Fraction
    splice_excess: Fraction
    walk: tuple  # global state indices, one period


@dataclass(frozen=True)
class ConnectorWitness:
    word: Word  # the wandering length-n word this connector realizes
    alpha_component: int
    omega_component: int
    path: tuple  # global state indices from orbit to orbit


@dataclass(frozen=True)
class WitnessReport:
    n: int
    components: tuple
    connectors: tuple
    z_language_n: frozenset
    pressure_bound: RationalInterval
    entropy_enclosure: RationalInterval
    gap: RationalInterval
    epsilon: Fraction
    presentation: VertexShift  # Z itself, one symbol per state


def _bfs_path(succ, states, sources, targets):
    """Deterministic shortest path from any source to any target.

    Sources are (state, tag) pairs; exploration follows sorted state
    words, first parent wins, so results are reproducible.
    """
    target_set = set(targets)
    parent = {}
    frontier = sorted(set(sources), key=lambda s: (states[s], s))
    seen = set(frontier)
    for s in frontier:
        if s in target_set:
            return [s]
    while frontier:
        nxt = []
        for u in frontier:
            for w in sorted(succ[u], key=lambda x: (states[x], x)):
                if w in seen:
                    continue
                seen.add(w)
                parent[w] = u
                if w in target_set:
                    path = [w]
                    while path[-1] in parent:
                        path.append(parent[path[-1]])
                    path.reverse()
                    return path
                nxt.append(w)
        frontier = sorted(nxt, key=lambda s: (states[s], s))
    return None


def _covering_closed_walk(v: VertexShift):
    """Closed walk through every edge, deterministic, lex tie-breaks.

    Greedy traversal consuming unused edges (least target first); when the
    current state has none left, hop along a shortest path to the nearest
    state that does, and finally close back to the start.
    """
    unused = [sorted(outs, key=lambda j: (v.states[j], j)) for outs in v.succ]
    remaining = sum(len(o) for o in unused)
    start = min(range(v.size), key=lambda i: (v.states[i], i))
    walk = [start]
    cur = start
    while remaining:
        if unused[cur]:
            nxt = unused[cur].pop(0)
            remaining -= 1
            walk.append(nxt)
            cur = nxt
            continue
        holders = [i for i in range(v.size) if unused[i]]
        path = _bfs_path(v.succ, v.states, [cur], holders)
        if path is None:
            raise WitnessError("edge cover walk got stuck")
        walk.extend(path[1:])
        cur = path[-1]
    if cur != start:
        path = _bfs_path(v.succ, v.states, [cur], [start])
        walk.extend(path[1:])
    return walk[:-1] if len(walk) > 1 else walk


def _edge_weight_fn(v: VertexShift, phi: LocallyConstantPotential):
    width = phi.window_length

    def weight(i, j):
        return phi.window(v.edge_word(i, j)[:width])

    return weight


def build_witness(
    v: VertexShift,
    phi: LocallyConstantPotential,
    n: int,
    marked=None,
    epsilon=Fraction(1, 16),
    gap_precision: int = 20,
) -> WitnessReport:
    """Construct the orbit-pinned shift Z with the same length-n language.

    ``v`` must present the n-block approximation of the shift (block
    length n-1, trimmed); ``marked`` selects the transitive components
    known to meet the original shift (default: all).  Needs n >= 2k+1 so
    the potential is measurable on single transitions.  The gap field
    compares against the pressure of ``v`` itself, which equals the
    original shift's pressure whenever n reaches the shift's memory.
    """
    epsilon = Fraction(epsilon)
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    if v.is_empty():
        raise WitnessError("empty presentation")
    if v.block_length != max(n - 1, 1):
        raise WitnessError(
            f"expected block length {max(n - 1, 1)} for n={n}, "
            f"got {v.block_length}"
        )
    if n < phi.window_length:
        raise WitnessError("n must be at least the potential's window length")

    comps = transitive_components(v)
    if marked is None:
        marked = range(len(comps))
    marked = sorted(set(marked))
    if not marked:
        raise WitnessError("no marked components")
    for idx in marked:
        if not (0 <= idx < len(comps)):
            raise WitnessError(f"no transitive component {idx}")

    weight = _edge_weight_fn(v, phi)
    witnesses = []
    for idx in marked:
        comp = comps[idx]
        sub = comp.subshift()
        local_cycle, mean = min_mean_cycle(
            sub, lambda i, j: weight(comp.members[i], comp.members[j])
        )
        cycle = [comp.members[i] for i in local_cycle]
        cover_local = _covering_closed_walk(sub)
        cover = [comp.members[i] for i in cover_local]
        witnesses.append(
            _splice(v, phi, idx, cycle, cover, mean, epsilon)
        )

    covered_states = {s for w in witnesses for s in w.walk}
    comp_of_state = {}
    for pos, idx in enumerate(marked):
        for s in comps[idx].members:
            comp_of_state[s] = pos

    marked_edges = set()
    for idx in marked:
        members = set(comps[idx].members)
        for i in members:
            for j in v.succ[i]:
                if j in members:
                    marked_edges.add((i, j))

    connectors = []
    pred = v.predecessors()
    orbit_states = sorted(covered_states)
    for i, j in sorted(v.edges(), key=lambda e: (v.states[e[0]], v.states[e[1]])):
        if (i, j) in marked_edges:
            continue
        back = _bfs_path(pred, v.states, [i], orbit_states)
        fwd = _bfs_path(v.succ, v.states, [j], orbit_states)
        if back is None or fwd is None:
            raise WitnessError(
                f"no connector through {v.edge_word(i, j)} reaches a marked orbit"
            )
        back.reverse()  # now orbit -> i
        path = tuple(back + fwd)
        connectors.append(
            ConnectorWitness(
                v.edge_word(i, j),
                comp_of_state[back[0]],
                comp_of_state[fwd[-1]],
                path,
            )
        )

    z = _presentation(v, witnesses, connectors)
    z_nonwander = _presentation(v, witnesses, ())
    z_words = enumerate_language(z, n)
    input_words = enumerate_language(v, n)
    if z_words != input_words:
        raise WitnessError(
            f"language mismatch at length {n}: "
            f"{sorted(input_words - z_words)[:3]} missing, "
            f"{sorted(z_words - input_words)[:3]} extra"
        )

    best = max(w.cycle_average for w in witnesses)
    pressure_bound = RationalInterval.point(best)
    entropy = sft_pressure(
        z_nonwander, LocallyConstantPotential.zero(v.alphabet), 22
    )
    gap = sft_pressure(v, phi, gap_precision) - pressure_bound
    return WitnessReport(
        n=n,
        components=tuple(witnesses),
        connectors=tuple(connectors),
        z_language_n=z_words,
        pressure_bound=pressure_bound,
        entropy_enclosure=entropy,
        gap=gap,
        epsilon=epsilon,
        presentation=z,
    )


def _splice(v, phi, comp_index, cycle, cover, mean, epsilon):
    """Repeat the minimum-mean cycle until the covering walk's cost fades."""
    q0 = cycle[0]
    c0 = cover[0]
    p1 = _bfs_path(v.succ, v.states, [q0], [c0])
    p2 = _bfs_path(v.succ, v.states, [c0], [q0])
    if p1 is None or p2 is None:
        raise WitnessError("cycle and covering walk are not connected")
    reps = 1
    while True:
        walk = cycle * reps + p1[:-1] + cover + p2[:-1]
        word = v.cycle_word(walk)
        avg = periodic_average(word, phi)
        if avg <= mean + epsilon:
            return ComponentWitness(
                periodic_word=word,
                cycle_average=avg,
                min_mean=mean,
                splice_excess=avg - mean,
                walk=tuple(walk),
            )
        reps *= 2
        if reps > 1 << 24:
            raise WitnessError("splice repetition bound exceeded")


def _presentation(v, witnesses, connectors) -> VertexShift:
    """Assemble Z as a one-symbol-per-state vertex shift.

    One simple cycle per component witness; each connector leaves the
    shared alpha cycle along a one-way chain into a fresh private copy of
    its omega cycle, so chains can never compose into new recurrent
    loops.  The nonwandering set of the result is exactly the union of
    the chosen periodic orbits (the private copies retrace them).
    """
    states = []
    succ = []
    position = {}  # (component position, global state) -> first Z index

    def add_cycle(walk):
        base = len(states)
        period = len(walk)
        for t, s in enumerate(walk):
            states.append((v.states[s][0],))
            succ.append([base + (t + 1) % period])
        return base

    for pos, w in enumerate(witnesses):
        base = add_cycle(w.walk)
        for t, s in enumerate(w.walk):
            position.setdefault((pos, s), base + t)

    for conn in connectors:
        path = conn.path
        prev = position[(conn.alpha_component, path[0])]
        for s in path[1:-1]:
            idx = len(states)
            states.append((v.states[s][0],))
            succ.append([])
            succ[prev].append(idx)
            prev = idx
        omega_walk = witnesses[conn.omega_component].walk
        base = add_cycle(omega_walk)
        t_land = omega_walk.index(path[-1])
        succ[prev].append(base + t_land)

    succ = tuple(tuple(sorted(set(o))) for o in succ)
    return VertexShift(Alphabet(v.alphabet.size), tuple(states), succ)


def format_report(report: WitnessReport) -> str:
    from .core import word_str

    lines = [f"witness n={report.n} epsilon={report.epsilon}"]
    for i, comp in enumerate(report.components):
        lines.append(
            f"component {i}: period={len(comp.periodic_word)} "
            f"average={comp.cycle_average} min_mean={comp.min_mean} "
            f"word={word_str(comp.periodic_word)}"
        )
    for conn in report.connectors:
        lines.append(
            f"connector {word_str(conn.word)}: component "
            f"{conn.alpha_component} -> {conn.omega_component} "
            f"(length {len(conn.path)})"
        )
    lines.append(
        f"pressure_bound [{report.pressure_bound.lo}, {report.pressure_bound.hi}]"
    )
    lines.append(
        f"entropy_enclosure [{report.entropy_enclosure.lo}, "
        f"{report.entropy_enclosure.hi}]"
    )
    lines.append(f"gap [{report.gap.lo}, {report.gap.hi}]")
    return "\n".join(lines) + "\n"
