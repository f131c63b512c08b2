"""Lollipop search: rotations, the pruned active-set closure, and the outer loop.

A lollipop is a path grafted onto a cycle at one vertex.  Rotating the cycle's
spanning paths turns new vertices into path ends ("active" vertices); whenever
an active end sees a neighbor off the cycle the lollipop strictly improves, and
when no end does, every active vertex has its whole neighborhood on the cycle.
That dichotomy is what the outer loop rides until it can emit a cycle carrying
many high-degree vertices, hence many chords.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .errors import (
    ClosureShortfall,
    InternalInvariantError,
    PreconditionError,
    RuleNotApplicable,
    ValidationError,
)
from .graph import Graph, edge


@dataclass(frozen=True)
class Lollipop:
    """A path p_1..p_s grafted onto a cycle c_1..c_t at p_s = c_1."""

    path: tuple
    cycle: tuple


@dataclass(frozen=True)
class WitnessPath:
    """A spanning path of the cycle's vertices, with its rotation pedigree.

    `derivation` lists ((u, v), w) steps: from a path ending at u, pivot at
    chord uv, breaking the cycle edge v--w.  Replaying them from `seed`
    reproduces `sequence` without consulting the graph.
    """

    sequence: tuple
    derivation: tuple
    seed: tuple


@dataclass(frozen=True)
class ActiveClosure:
    cycle: tuple
    active: frozenset
    witnesses: dict = field(compare=False)
    passive_edges: frozenset


@dataclass(frozen=True)
class Improvement:
    """A strictly better lollipop found during closure; reason is
    "longer_cycle" (same vertices) or "larger_vertex_set"."""

    lollipop: Lollipop
    reason: str


@dataclass(frozen=True)
class DenseCycleCertificate:
    k: int
    cycle: tuple
    high_degree: tuple
    chords: tuple
    closure: ActiveClosure
    iterations: int


def cycle_edge_set(cycle) -> frozenset:
    return frozenset(edge(cycle[i], cycle[(i + 1) % len(cycle)]) for i in range(len(cycle)))


def chords_of_cycle(g: Graph, cycle) -> tuple:
    """Edges of g between non-consecutive cycle vertices, sorted."""
    on_cycle = set(cycle)
    skip = cycle_edge_set(cycle)
    return tuple(
        e
        for e in g.edges()
        if e[0] in on_cycle and e[1] in on_cycle and e not in skip
    )


def validate_lollipop(g: Graph, l: Lollipop):
    path, cycle = l.path, l.cycle
    if len(path) < 1 or len(cycle) < 3:
        raise ValidationError("lollipop needs a nonempty path and a cycle of length >= 3")
    if path[-1] != cycle[0]:
        raise ValidationError("path must end at the cycle's anchor vertex")
    if len(set(path)) != len(path) or len(set(cycle)) != len(cycle):
        raise ValidationError("lollipop path and cycle must not repeat vertices")
    if set(path) & set(cycle) != {cycle[0]}:
        raise ValidationError("path and cycle may share only the anchor")
    for a, b in zip(path, path[1:]):
        if not g.has_edge(a, b):
            raise ValidationError(f"path step ({a}, {b}) is not an edge")
    for i in range(len(cycle)):
        a, b = cycle[i], cycle[(i + 1) % len(cycle)]
        if not g.has_edge(a, b):
            raise ValidationError(f"cycle step ({a}, {b}) is not an edge")


def vertex_set(l: Lollipop) -> frozenset:
    return frozenset(l.path) | frozenset(l.cycle)


# --- path growth ------------------------------------------------------------

def maximal_path_extend(g: Graph, p) -> tuple:
    """Grow a path greedily until neither end has a neighbor off the path.

    Extends the tail first, then the head, always taking the smallest unused
    neighbor id.  Head growth only ever consumes vertices, so one pass per end
    leaves both ends saturated.
    """
    p = tuple(p)
    if not p or len(set(p)) != len(p):
        raise ValidationError("need a nonempty path of distinct vertices")
    for a, b in zip(p, p[1:]):
        if not g.has_edge(a, b):
            raise ValidationError(f"path step ({a}, {b}) is not an edge")
    on_path = set(p)
    tail = list(p)
    while True:
        outside = [v for v in sorted(g.adj[tail[-1]]) if v not in on_path]
        if not outside:
            break
        tail.append(outside[0])
        on_path.add(outside[0])
    head = deque(tail)
    while True:
        outside = [v for v in sorted(g.adj[head[0]]) if v not in on_path]
        if not outside:
            break
        head.appendleft(outside[0])
        on_path.add(outside[0])
    return tuple(head)


def lollipop_from_path(g: Graph, p) -> Lollipop:
    """Close a cycle at an end of a maximal path, preferring the tail end.

    The cycle closes at the end's farthest path-neighbor, so the initial cycle
    is as long as that end allows.  An end whose only path-neighbor is its
    predecessor cannot close anything; then the other end is tried.
    """
    p = tuple(p)
    for candidate in (p, tuple(reversed(p))):
        tail = candidate[-1]
        for i in range(len(candidate) - 2):
            if candidate[i] in g.adj[tail]:
                return Lollipop(path=candidate[: i + 1], cycle=candidate[i:])
    raise PreconditionError("neither end of the path closes a cycle of length >= 3")


def initial_lollipop(g: Graph) -> Lollipop:
    """Deterministic starting lollipop: maximal path from vertex 0, cycle closed
    at the tail's farthest neighbor."""
    if g.n == 0:
        raise PreconditionError("empty graph")
    if min(g.degree(u) for u in range(g.n)) < 2:
        raise PreconditionError("initial lollipop needs minimum degree >= 2")
    return lollipop_from_path(g, maximal_path_extend(g, (0,)))


# --- rotations --------------------------------------------------------------

def rotate(q: WitnessPath, chord, cycle_edges, g: Graph | None = None) -> WitnessPath:
    """One rotation step: pivot the path ending at u around chord (u, v).

    The segment after v flips, making w (v's old successor) the new end.  Only
    allowed when the broken edge v--w lies on the reference cycle; otherwise
    RuleNotApplicable.  Pass g to also verify the chord exists in the graph.
    """
    seq = q.sequence
    u, v = chord
    if seq[-1] != u:
        raise ValidationError(f"chord must start at the path end {seq[-1]}, got {u}")
    if g is not None and not g.has_edge(u, v):
        raise ValidationError(f"({u}, {v}) is not an edge of the graph")
    try:
        i = seq.index(v)
    except ValueError:
        raise ValidationError(f"pivot {v} is not on the path") from None
    if i >= len(seq) - 2:
        raise RuleNotApplicable(f"({u}, {v}) is a path edge or endpoint, not a chord")
    w = seq[i + 1]
    if edge(v, w) not in cycle_edges:
        raise RuleNotApplicable(f"broken edge ({v}, {w}) is not a cycle edge")
    return WitnessPath(
        sequence=seq[: i + 1] + tuple(reversed(seq[i + 1:])),
        derivation=q.derivation + (((u, v), w),),
        seed=q.seed,
    )


def replay(seed, derivation) -> tuple:
    """Re-run a derivation from its seed sequence.  Purely combinatorial: no
    graph needed, each step is validated against the recorded pivot."""
    seq = tuple(seed)
    for (u, v), w in derivation:
        if seq[-1] != u:
            raise ValidationError(f"derivation expects end {u}, path ends at {seq[-1]}")
        i = seq.index(v)
        if i >= len(seq) - 2 or seq[i + 1] != w:
            raise ValidationError(f"derivation step ({u}, {v}) -> {w} does not fit the path")
        seq = seq[: i + 1] + tuple(reversed(seq[i + 1:]))
    return seq


# --- the pruned closure -----------------------------------------------------

def required_active_count(g: Graph, cycle, k: int) -> int:
    """k active vertices are guaranteed; one more when the anchor has fewer
    than k neighbors on the cycle."""
    anchor = cycle[0]
    on_cycle = set(cycle)
    d_c = sum(1 for x in g.adj[anchor] if x in on_cycle)
    return k if d_c >= k else k + 1


def active_closure(g: Graph, l: Lollipop, k: int):
    """Grow the active set from the two cycle orientations to a fixpoint.

    Keeps one witness path per active vertex (first one found; FIFO worklist,
    chords in ascending neighbor id, so runs are deterministic).  The moment
    any new end sees a neighbor off the cycle, an Improvement is returned
    instead: a longer cycle if the neighbor sits on the lollipop's path, a
    strictly larger lollipop if it is outside the lollipop entirely.

    At fixpoint the closure must hold at least required_active_count vertices;
    a shortfall raises ClosureShortfall carrying the closure for diagnosis.
    """
    validate_lollipop(g, l)
    cycle = tuple(l.cycle)
    anchor = cycle[0]
    cedges = cycle_edge_set(cycle)
    on_cycle = set(cycle)
    on_path = set(l.path)
    witnesses = {}
    queue = deque()

    def activate(wp):
        # first activation of this end; check its neighborhood before queueing
        u = wp.sequence[-1]
        witnesses[u] = wp
        for x in sorted(g.adj[u]):
            if x in on_cycle:
                continue
            if x in on_path:
                return _longer_cycle(l, wp, x)
            return _larger_vertex_set(g, l, wp, x)
        queue.append(wp)
        return None

    forward = tuple(cycle)
    backward = (cycle[0],) + tuple(reversed(cycle[1:]))
    for seed in (forward, backward):
        improvement = activate(WitnessPath(sequence=seed, derivation=(), seed=seed))
        if improvement is not None:
            return improvement

    while queue:
        wp = queue.popleft()
        seq = wp.sequence
        u = seq[-1]
        position = {v: i for i, v in enumerate(seq)}
        for v in sorted(g.adj[u]):
            i = position.get(v)
            if i is None or i >= len(seq) - 2:
                continue
            w = seq[i + 1]
            if w in witnesses:
                continue
            if edge(v, w) not in cedges:
                continue
            rotated = WitnessPath(
                sequence=seq[: i + 1] + tuple(reversed(seq[i + 1:])),
                derivation=wp.derivation + (((u, v), w),),
                seed=wp.seed,
            )
            improvement = activate(rotated)
            if improvement is not None:
                return improvement

    passive = frozenset(
        e for e in cedges if e[0] not in witnesses and e[1] not in witnesses
    )
    closure = ActiveClosure(
        cycle=cycle,
        active=frozenset(witnesses),
        witnesses=dict(witnesses),
        passive_edges=passive,
    )
    needed = required_active_count(g, cycle, k)
    if len(closure.active) < needed:
        raise ClosureShortfall(
            f"closure fixpoint has {len(closure.active)} active vertices, "
            f"needs {needed} (cycle length {len(cycle)}, anchor {anchor})",
            closure,
        )
    return closure


def _longer_cycle(l: Lollipop, wp: WitnessPath, x: int) -> Improvement:
    # x lies on the lollipop's path; route the path's tail through the witness
    j = l.path.index(x)
    new_path = l.path[: j + 1]
    new_cycle = l.path[j:] + wp.sequence[1:]
    return Improvement(Lollipop(path=new_path, cycle=new_cycle), reason="longer_cycle")


def _larger_vertex_set(g: Graph, l: Lollipop, wp: WitnessPath, x: int) -> Improvement:
    # x is a fresh vertex: straighten the lollipop into a path, append x,
    # grow maximally, and close a cycle again
    base = l.path[:-1] + wp.sequence + (x,)
    grown = maximal_path_extend(g, base)
    return Improvement(lollipop_from_path(g, grown), reason="larger_vertex_set")


# --- closure audit ----------------------------------------------------------

def verify_closure_lemmas(g: Graph, closure: ActiveClosure):
    """Audit an emitted closure against everything the theory promises.

    Raises InternalInvariantError on the first violation: witnesses must be
    spanning paths of the cycle's vertices with faithful derivations, every
    witness must traverse every passive edge, active vertices may touch a
    passive run only once and only at its ends, and active neighborhoods must
    lie entirely on the cycle.
    """
    cycle = closure.cycle
    anchor = cycle[0]
    on_cycle = set(cycle)
    cedges = cycle_edge_set(cycle)

    def fail(message):
        raise InternalInvariantError(message)

    if anchor in closure.active:
        fail("anchor vertex is marked active")
    if set(closure.witnesses) != set(closure.active):
        fail("witness keys disagree with the active set")

    seeds = {tuple(cycle), (cycle[0],) + tuple(reversed(cycle[1:]))}
    for u, wp in closure.witnesses.items():
        seq = wp.sequence
        if seq[-1] != u:
            fail(f"witness for {u} ends at {seq[-1]}")
        if seq[0] != anchor or set(seq) != on_cycle or len(seq) != len(cycle):
            fail(f"witness for {u} is not a spanning path from the anchor")
        for a, b in zip(seq, seq[1:]):
            if not g.has_edge(a, b):
                fail(f"witness for {u} uses non-edge ({a}, {b})")
        if wp.seed not in seeds:
            fail(f"witness for {u} starts from a non-seed path")
        if replay(wp.seed, wp.derivation) != seq:
            fail(f"witness for {u} does not replay to its own sequence")

    expected_passive = frozenset(
        e for e in cedges if e[0] not in closure.active and e[1] not in closure.active
    )
    if closure.passive_edges != expected_passive:
        fail("passive edge set is not the non-active cycle edges")

    for u, wp in closure.witnesses.items():
        path_edges = {edge(a, b) for a, b in zip(wp.sequence, wp.sequence[1:])}
        missing = closure.passive_edges - path_edges
        if missing:
            fail(f"witness for {u} skips passive edges {sorted(missing)}")

    for run in _passive_runs(cycle, closure.passive_edges):
        run_set = set(run)
        ends = {run[0], run[-1]}
        for u in closure.active:
            hits = [x for x in g.adj[u] if x in run_set]
            if len(hits) > 1:
                fail(f"active {u} touches passive run {run} at {hits}")
            if hits and hits[0] not in ends:
                fail(f"active {u} touches the interior of passive run {run}")

    for u in closure.active:
        stray = [x for x in g.adj[u] if x not in on_cycle]
        if stray:
            fail(f"active {u} has neighbors off the cycle: {stray}")


def _passive_runs(cycle, passive_edges):
    """Maximal chains of consecutive passive edges, as vertex sequences.

    The anchor's two cycle edges are never passive (their far ends are the
    seeded actives), so runs cannot wrap around the sequence start.
    """
    t = len(cycle)
    runs = []
    current = None
    for i in range(t):
        a, b = cycle[i], cycle[(i + 1) % t]
        if edge(a, b) in passive_edges:
            if current is None:
                current = [a, b]
            else:
                current.append(b)
        else:
            if current is not None:
                runs.append(tuple(current))
                current = None
    if current is not None:
        runs.append(tuple(current))
    return runs


# --- outer loop -------------------------------------------------------------

def find_dense_cycle(g: Graph, k: int) -> DenseCycleCertificate:
    """Improve lollipops until a closure certifies a chord-dense cycle.

    Needs minimum degree >= k >= 2.  Each improvement strictly grows
    (vertex count, cycle length) lexicographically, so the loop is bounded;
    the emitted certificate carries at least k+1 vertices with k neighbors on
    the cycle and hence at least (k+1)(k-2)/2 chords.
    """
    if k < 2:
        raise PreconditionError("need k >= 2")
    if g.n == 0 or min(g.degree(u) for u in range(g.n)) < k:
        raise PreconditionError(f"need minimum degree >= k = {k}")

    l = initial_lollipop(g)
    iterations = 0
    limit = g.n * g.n
    progress = (len(vertex_set(l)), len(l.cycle))
    while True:
        outcome = active_closure(g, l, k)
        if isinstance(outcome, Improvement):
            iterations += 1
            if iterations > limit:
                raise InternalInvariantError("improvement loop exceeded its n^2 bound")
            l = outcome.lollipop
            new_progress = (len(vertex_set(l)), len(l.cycle))
            if new_progress <= progress:
                raise InternalInvariantError(
                    f"improvement did not progress: {progress} -> {new_progress}"
                )
            progress = new_progress
            continue
        closure = outcome
        break

    verify_closure_lemmas(g, closure)
    cycle = closure.cycle
    on_cycle = set(cycle)
    anchor = cycle[0]

    def cycle_degree(u):
        return sum(1 for x in g.adj[u] if x in on_cycle)

    high = set(closure.active)
    if cycle_degree(anchor) >= k:
        high.add(anchor)
    for u in high:
        if cycle_degree(u) < k:
            raise InternalInvariantError(f"vertex {u} has cycle degree below k")
    if len(high) < k + 1:
        raise InternalInvariantError(
            f"only {len(high)} high-degree vertices, need {k + 1}"
        )
    chords = chords_of_cycle(g, cycle)
    if 2 * len(chords) < (k + 1) * (k - 2):
        raise InternalInvariantError(
            f"{len(chords)} chords fall short of the (k+1)(k-2)/2 bound"
        )
    return DenseCycleCertificate(
        k=k,
        cycle=cycle,
        high_degree=tuple(sorted(high)),
        chords=chords,
        closure=closure,
        iterations=iterations,
    )
