"""Brute-force certifiers, kept deliberately independent of the constructive code.

Everything here answers by exhaustion over small instances: Hamiltonian cycle
listings, unpruned rotation fixpoints, cyclic-minor searches, and chord maxima
over all cycles.  Tests use these to cross-check the constructive modules, so
this module must never import them; only the graph core is shared.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import SizeGuardExceeded, ValidationError
from .graph import Graph, chord_budget_degeneracy_bound, degeneracy, edge, induced_subgraph


def _check_guard(value: int, guard: int, what: str):
    if value > guard:
        raise SizeGuardExceeded(
            f"{what} {value} exceeds guard {guard}; pass a larger guard explicitly to proceed"
        )


def _validate_cycle(g: Graph, cycle) -> tuple:
    cycle = tuple(cycle)
    if len(cycle) < 3 or len(set(cycle)) != len(cycle):
        raise ValidationError("cycle must list at least 3 distinct vertices")
    for i, u in enumerate(cycle):
        v = cycle[(i + 1) % len(cycle)]
        if not (0 <= u < g.n and g.has_edge(u, v)):
            raise ValidationError(f"cycle step ({u}, {v}) is not an edge of the graph")
    return cycle


# --- Hamiltonian enumeration ------------------------------------------------

def enumerate_hamiltonian_cycles(g: Graph, guard_n: int = 14) -> list[tuple]:
    """All Hamiltonian cycles of g, one representative per rotation/reflection.

    Canonical form: starts at vertex 0, second entry smaller than last entry;
    output is in lexicographic order.  Empty list when none exist.
    """
    _check_guard(g.n, guard_n, "vertex count")
    if g.n < 3:
        return []
    results = []
    used = [False] * g.n
    used[0] = True
    path = [0]

    def extend():
        if len(path) == g.n:
            if g.has_edge(path[-1], 0) and path[1] < path[-1]:
                results.append(tuple(path))
            return
        for v in sorted(g.adj[path[-1]]):
            if not used[v]:
                used[v] = True
                path.append(v)
                extend()
                path.pop()
                used[v] = False

    extend()
    return results


def first_hamiltonian_cycle(g: Graph, guard_n: int = 14) -> tuple | None:
    """Lexicographically first canonical Hamiltonian cycle, or None."""
    _check_guard(g.n, guard_n, "vertex count")
    if g.n < 3:
        return None
    used = [False] * g.n
    used[0] = True
    path = [0]

    def extend():
        if len(path) == g.n:
            if g.has_edge(path[-1], 0) and path[1] < path[-1]:
                return tuple(path)
            return None
        for v in sorted(g.adj[path[-1]]):
            if not used[v]:
                used[v] = True
                path.append(v)
                found = extend()
                path.pop()
                used[v] = False
                if found is not None:
                    return found
        return None

    return extend()


def hamiltonian_paths_from(g: Graph, start: int, guard_n: int = 14) -> list[tuple]:
    """All Hamiltonian paths of g starting at `start`, in lexicographic order."""
    _check_guard(g.n, guard_n, "vertex count")
    if not 0 <= start < g.n:
        raise ValidationError(f"start vertex {start} not in graph")
    results = []
    used = [False] * g.n
    used[start] = True
    path = [start]

    def extend():
        if len(path) == g.n:
            results.append(tuple(path))
            return
        for v in sorted(g.adj[path[-1]]):
            if not used[v]:
                used[v] = True
                path.append(v)
                extend()
                path.pop()
                used[v] = False

    extend()
    return results


# --- rotation fixpoint, no pruning -----------------------------------------

@dataclass(frozen=True)
class FullEnumeration:
    """Least fixpoint of the rotation rule over a cycle, without pruning."""

    paths: frozenset
    active: frozenset


def _one_step_rotations(g: Graph, q: tuple, cycle_edges: frozenset):
    """Every path derivable from q by one rotation.

    q ends at u.  For a pivot v = q[i] with i <= len-3 and uv an edge, the
    segment after v flips; the move is admitted only when the edge it breaks,
    v--q[i+1], lies on the reference cycle.
    """
    u = q[-1]
    for i in range(len(q) - 2):
        v = q[i]
        if v not in g.adj[u]:
            continue
        if edge(v, q[i + 1]) not in cycle_edges:
            continue
        yield q[: i + 1] + tuple(reversed(q[i + 1:]))


def _seed_paths(cycle: tuple) -> tuple:
    forward = tuple(cycle)
    backward = (cycle[0],) + tuple(reversed(cycle[1:]))
    return forward, backward


def cycle_edge_frozenset(cycle) -> frozenset:
    return frozenset(edge(cycle[i], cycle[(i + 1) % len(cycle)]) for i in range(len(cycle)))


def full_active_enumeration(g: Graph, cycle, guard_t: int = 10) -> FullEnumeration:
    """Close the two cycle orientations under rotations, keeping every path.

    Paths are Hamiltonian paths of the graph induced on the cycle's vertices,
    all starting at cycle[0]; `active` collects their terminal vertices.
    """
    cycle = _validate_cycle(g, cycle)
    _check_guard(len(cycle), guard_t, "cycle length")
    cycle_edges = cycle_edge_frozenset(cycle)
    seen = set(_seed_paths(cycle))
    frontier = list(seen)
    while frontier:
        new = []
        for q in frontier:
            for r in _one_step_rotations(g, q, cycle_edges):
                if r not in seen:
                    seen.add(r)
                    new.append(r)
        frontier = new
    return FullEnumeration(paths=frozenset(seen), active=frozenset(q[-1] for q in seen))


def rotation_levels(g: Graph, cycle, levels: int, guard_t: int = 10) -> list[frozenset]:
    """The sets S_1..S_levels, each the exact one-step image of its predecessor.

    S_1 holds the two orientations; S_{i+1} holds precisely the rotations of
    members of S_i.  Containment of consecutive levels is a theorem about the
    rule, not baked into this construction, so tests can observe it honestly.
    """
    cycle = _validate_cycle(g, cycle)
    _check_guard(len(cycle), guard_t, "cycle length")
    if levels < 1:
        raise ValidationError("need at least one level")
    cycle_edges = cycle_edge_frozenset(cycle)
    out = [frozenset(_seed_paths(cycle))]
    for _ in range(levels - 1):
        nxt = set()
        for q in out[-1]:
            nxt.update(_one_step_rotations(g, q, cycle_edges))
        out.append(frozenset(nxt))
    return out


# --- cyclic minors ----------------------------------------------------------

@dataclass(frozen=True)
class CyclicMinorWitness:
    """A verified cyclic model found by exhaustion.

    `arcs[i]` contracts to `target_cycle[i]`; concatenating the arcs in order
    reproduces `cycle` exactly.
    """

    subset: tuple
    cycle: tuple
    arcs: tuple
    target_cycle: tuple


def _arcs_for_cuts(seq: tuple, cuts: tuple) -> tuple:
    rotated = seq[cuts[0]:] + seq[: cuts[0]]
    offsets = [c - cuts[0] for c in cuts] + [len(seq)]
    return rotated, tuple(tuple(rotated[offsets[i]: offsets[i + 1]]) for i in range(len(cuts)))


def _arc_adjacent(g: Graph, a: tuple, b: tuple) -> bool:
    return any(v in g.adj[u] for u in a for v in b)


def cyclic_minor_exists(g: Graph, target: Graph, guard_n: int = 14) -> CyclicMinorWitness | None:
    """Search every cycle of g for a contiguous-arc model of `target`.

    A model is a cycle of g cut into |V(target)| arcs, one per vertex of some
    Hamiltonian cycle of target taken in cyclic order, such that every target
    edge has at least one host edge between the matching arcs.  Exhaustive over
    vertex subsets, Hamiltonian cycles of the induced graph, cut positions and
    target alignments; first witness in that order is returned, else None.
    """
    _check_guard(g.n, guard_n, "vertex count")
    nt = target.n
    if nt < 3:
        raise ValidationError("target needs at least 3 vertices")
    surplus_needed = target.edge_count - nt
    complete_target = target.edge_count == nt * (nt - 1) // 2
    if complete_target:
        alignments = [tuple(range(nt))]
    else:
        alignments = []
        for tc in enumerate_hamiltonian_cycles(target):
            for flip in (False, True):
                base = tc if not flip else (tc[0],) + tuple(reversed(tc[1:]))
                for r in range(nt):
                    alignments.append(base[r:] + base[:r])
        if not alignments:
            return None  # target has no spanning cycle, so no cyclic model

    target_edges = target.edges()

    for size in range(nt, g.n + 1):
        for subset in itertools.combinations(range(g.n), size):
            sub, old_ids = induced_subgraph(g, subset)
            if min(sub.degree(u) for u in range(sub.n)) < 2:
                continue
            if sub.edge_count - sub.n < surplus_needed:
                continue
            if not _connected(sub):
                continue
            for local_cycle in enumerate_hamiltonian_cycles(sub, guard_n=guard_n):
                seq = tuple(old_ids[v] for v in local_cycle)
                for cuts in itertools.combinations(range(size), nt):
                    rotated, arcs = _arcs_for_cuts(seq, cuts)
                    pair_ok = {}

                    def ok(i, j):
                        key = (i, j) if i < j else (j, i)
                        if key not in pair_ok:
                            pair_ok[key] = _arc_adjacent(g, arcs[key[0]], arcs[key[1]])
                        return pair_ok[key]

                    for aligned in alignments:
                        pos = {vtx: i for i, vtx in enumerate(aligned)}
                        if all(ok(pos[a], pos[b]) for a, b in target_edges):
                            return CyclicMinorWitness(
                                subset=subset, cycle=rotated, arcs=arcs, target_cycle=aligned
                            )
    return None


def _connected(g: Graph) -> bool:
    if g.n == 0:
        return True
    seen = {0}
    stack = [0]
    while stack:
        u = stack.pop()
        for v in g.adj[u]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return len(seen) == g.n


# --- chord maxima and the degeneracy corollary ------------------------------

@dataclass(frozen=True)
class ChordMaximum:
    chords: int
    cycle: tuple


def max_chords_over_cycles(g: Graph, guard_n: int = 12) -> ChordMaximum | None:
    """Maximum chord count over all cycles of g, with a witness cycle.

    Every cycle through vertex set S has exactly |E(g[S])| - |S| chords, no
    matter which spanning cycle of g[S] it is.  So the search sweeps subsets in
    decreasing order of that quantity and stops at the first one whose induced
    graph has a spanning cycle.  Returns None when g has no cycle at all.
    """
    _check_guard(g.n, guard_n, "vertex count")
    candidates = []
    for size in range(3, g.n + 1):
        for subset in itertools.combinations(range(g.n), size):
            sub, old_ids = induced_subgraph(g, subset)
            bound = sub.edge_count - sub.n
            if bound < 0 or min(sub.degree(u) for u in range(sub.n)) < 2:
                continue  # a spanning cycle needs |E| >= |S| and min degree 2
            candidates.append((bound, subset, sub, old_ids))
    candidates.sort(key=lambda item: (-item[0], len(item[1]), item[1]))
    for bound, subset, sub, old_ids in candidates:
        local = first_hamiltonian_cycle(sub, guard_n=guard_n)
        if local is not None:
            return ChordMaximum(chords=bound, cycle=tuple(old_ids[v] for v in local))
    return None


def pell_candidates(limit: int) -> list[int]:
    """All budgets <= limit of both shapes a(a-3)/2 (a >= 3) and b^2-2b (b >= 2)."""
    if limit < 0:
        raise ValidationError("limit must be non-negative")
    first = set()
    a = 3
    while a * (a - 3) // 2 <= limit:
        first.add(a * (a - 3) // 2)
        a += 1
    second = set()
    b = 2
    while b * b - 2 * b <= limit:
        second.add(b * b - 2 * b)
        b += 1
    return sorted(first & second)


def corollary_check(g: Graph, budget: int, guard_n: int = 12) -> bool:
    """Does the degeneracy bound hold for g against this chord budget?

    True unless g both keeps every cycle below `budget` chords and still has
    degeneracy above the bound paired with that budget.  Vacuously true when
    some cycle reaches the budget.
    """
    _check_guard(g.n, guard_n, "vertex count")
    found = max_chords_over_cycles(g, guard_n=guard_n)
    if found is not None and found.chords >= budget:
        return True
    return degeneracy(g).degeneracy <= chord_budget_degeneracy_bound(budget)


def brute_degeneracy(g: Graph, guard_n: int = 8) -> int:
    """Degeneracy straight from the definition: maximin degree over subgraphs."""
    _check_guard(g.n, guard_n, "vertex count")
    if g.n == 0:
        raise ValidationError("degeneracy of the empty graph")
    best = 0
    for size in range(1, g.n + 1):
        for subset in itertools.combinations(range(g.n), size):
            sub, _ = induced_subgraph(g, subset)
            best = max(best, min(sub.degree(u) for u in range(sub.n)))
    return best
