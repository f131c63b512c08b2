"""Cyclic-minor models: contract arcs of a cycle onto a small target graph.

A model carves the host cycle into contiguous arcs, one per target vertex,
aligned with a Hamiltonian cycle of the target.  Contracting each arc must
produce every target edge; host edges the target lacks are harmless, because
the Hamiltonian subgraph being contracted is free to omit chords.  Cycle
edges are never omitted, which is why consecutive arcs come for free.

Constructors cover the small cliques (K3 through K5), the augmented
bipartite graph K'll obtained from a block partition of the cycle's
adjacency matrix, and K6 by merging two of those blocks end to end.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass

from .errors import (
    InternalInvariantError,
    PreconditionError,
    ValidationError,
)
from .graph import Graph, edge, generate


@dataclass(frozen=True)
class CyclicMinorModel:
    host: Graph
    host_cycle: tuple[int, ...]
    arcs: tuple[tuple[int, ...], ...]
    target: Graph
    target_cycle: tuple[int, ...]
    target_name: str


@dataclass(frozen=True)
class GridPartition:
    """Cut positions 0 = c_0 < ... < c_a = m on both axes of the matrix."""

    row_cuts: tuple[int, ...]
    col_cuts: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.row_cuts) - 1


@dataclass(frozen=True)
class GridOutcome:
    """partition is None for NotFound; exact says whether that settles it."""

    partition: GridPartition | None
    exact: bool


def kll_prime_graph(ell: int) -> tuple[Graph, tuple[int, ...]]:
    """K_{l,l} with a path added on each side, plus its Hamiltonian cycle.

    Vertices 0..l-1 are one side, l..2l-1 the other.  The returned cycle
    walks one path, crosses, walks the other path, and crosses back.
    """
    if ell < 1:
        raise ValidationError("bipartite side must have at least one vertex")
    edges = [(x, ell + y) for x in range(ell) for y in range(ell)]
    edges += [(x, x + 1) for x in range(ell - 1)]
    edges += [(ell + y, ell + y + 1) for y in range(ell - 1)]
    return Graph(2 * ell, edges), tuple(range(2 * ell))


def _validate_cycle_in(g: Graph, cycle: tuple[int, ...], what: str) -> None:
    if len(cycle) < 2 or len(set(cycle)) != len(cycle):
        raise ValidationError(f"{what} is not a cycle")
    if len(cycle) == 2:
        # degenerate two-vertex cycle: the single edge traversed both ways
        if not g.has_edge(cycle[0], cycle[1]):
            raise ValidationError(f"{what} edge missing")
        return
    for i, u in enumerate(cycle):
        if not g.has_edge(u, cycle[(i + 1) % len(cycle)]):
            raise ValidationError(f"{what} has a non-edge")


def verify_model(m: CyclicMinorModel) -> bool:
    """True iff every target edge is realized between the matching arcs.

    Structural defects (arcs not tiling the cycle, a bad target cycle,
    mismatched counts) raise; a well-formed model that misses an edge is
    just False.
    """
    _validate_cycle_in(m.host, m.host_cycle, "host cycle")
    _validate_cycle_in(m.target, m.target_cycle, "target cycle")
    if len(m.target_cycle) != m.target.n:
        raise ValidationError("target cycle is not Hamiltonian")
    if len(m.arcs) != m.target.n:
        raise ValidationError("arc count differs from target order")
    flat = tuple(v for arc in m.arcs for v in arc)
    if flat != m.host_cycle:
        raise ValidationError("arcs do not tile the host cycle in order")
    if any(len(arc) == 0 for arc in m.arcs):
        raise ValidationError("empty arc")

    k = len(m.arcs)
    for p in range(k):
        for q in range(p + 1, k):
            if not m.target.has_edge(m.target_cycle[p], m.target_cycle[q]):
                continue
            if (q - p) % k == 1 or (p - q) % k == 1:
                continue  # consecutive arcs share a host cycle edge
            if not any(
                m.host.has_edge(u, v) for u in m.arcs[p] for v in m.arcs[q]
            ):
                return False
    return True


def _some_cycle(g: Graph) -> tuple[int, ...]:
    """Walk to the smallest fresh neighbor until the walk bites its tail."""
    path = [0]
    where = {0: 0}
    while True:
        u = path[-1]
        parent = path[-2] if len(path) > 1 else -1
        back = [v for v in sorted(g.adj[u]) if v in where and v != parent]
        if back:
            start = min(where[v] for v in back)
            return tuple(path[start:])
        nxt = min(v for v in sorted(g.adj[u]) if v not in where)
        where[nxt] = len(path)
        path.append(nxt)


def k3_model(g: Graph) -> CyclicMinorModel:
    """Any cycle, cut into three arcs as evenly as possible."""
    if g.n == 0 or min(g.degree(u) for u in range(g.n)) < 2:
        raise PreconditionError("need minimum degree 2 to guarantee a cycle")
    cycle = _some_cycle(g)
    n = len(cycle)
    sizes = [n // 3 + (1 if i < n % 3 else 0) for i in range(3)]
    arcs = []
    at = 0
    for s in sizes:
        arcs.append(cycle[at : at + s])
        at += s
    model = CyclicMinorModel(
        host=g,
        host_cycle=cycle,
        arcs=tuple(arcs),
        target=generate("complete", {"n": 3}),
        target_cycle=(0, 1, 2),
        target_name="K3",
    )
    if not verify_model(model):
        raise InternalInvariantError("triangle model failed verification")
    return model


def _cycle_positions(c: tuple[int, ...]) -> dict[int, int]:
    return {v: i for i, v in enumerate(c)}


def _chords(g: Graph, c: tuple[int, ...]) -> list[tuple[int, int]]:
    on_cycle = {edge(c[i], c[(i + 1) % len(c)]) for i in range(len(c))}
    member = set(c)
    out = []
    for u, v in g.edges():
        if u in member and v in member and (u, v) not in on_cycle:
            out.append((u, v))
    return out


def _arcs_from_intervals(
    c: tuple[int, ...], intervals: list[tuple[int, int]]
) -> tuple[tuple[int, ...], tuple[tuple[int, ...], ...]]:
    """Tile the cycle with (start, length) position intervals.

    Rotates the host cycle to the first interval's start so the arcs
    concatenate to it exactly.
    """
    n = len(c)
    if sum(length for _, length in intervals) != n:
        raise InternalInvariantError("intervals do not tile the cycle")
    base = intervals[0][0]
    ordered = sorted(intervals, key=lambda iv: (iv[0] - base) % n)
    at = 0
    arcs = []
    for start, length in ordered:
        if (start - base) % n != at:
            raise InternalInvariantError("intervals overlap or leave a gap")
        arcs.append(tuple(c[(start + i) % n] for i in range(length)))
        at += length
    host_cycle = tuple(c[(base + i) % n] for i in range(n))
    return host_cycle, tuple(arcs)


def k4_model(f: Graph, c: tuple[int, ...]) -> CyclicMinorModel:
    """Shortest chord uv, an interior vertex z, and a chord zx leaving P.

    The four arcs are the two chord ends, the interior of the short side P,
    and the rest of the cycle; minimality of P forces every chord at z out
    of P, which supplies the fourth clique edge.
    """
    _validate_cycle_in(f, c, "host cycle")
    if len(c) != f.n:
        raise ValidationError("cycle is not Hamiltonian")
    if min(f.degree(u) for u in range(f.n)) < 3:
        raise PreconditionError("need minimum degree 3")
    chords = _chords(f, c)
    if not chords:
        raise PreconditionError("cycle has no chord")
    pos = _cycle_positions(c)
    n = len(c)

    def span(ch):
        d = (pos[ch[1]] - pos[ch[0]]) % n
        return min(d, n - d)

    uv = min(chords, key=lambda ch: (span(ch), ch[0], ch[1]))
    d = span(uv)
    u, v = uv
    forward = (pos[v] - pos[u]) % n
    if forward == d and (n - forward == d and u > v):
        start = v
    elif forward == d:
        start = u
    else:
        start = v
    sp = pos[start]
    path = tuple(c[(sp + i) % n] for i in range(d + 1))

    interior = path[1:-1]
    z = min(interior)
    outside = set(path)
    x_candidates = sorted(w for w in f.adj[z] if w not in outside)
    if not x_candidates:
        raise InternalInvariantError("all chords at z land inside the short path")

    intervals = [
        (sp, 1),
        ((sp + 1) % n, d - 1),
        ((sp + d) % n, 1),
        ((sp + d + 1) % n, n - d - 1),
    ]
    host_cycle, arcs = _arcs_from_intervals(c, intervals)
    model = CyclicMinorModel(
        host=f,
        host_cycle=host_cycle,
        arcs=arcs,
        target=generate("complete", {"n": 4}),
        target_cycle=(0, 1, 2, 3),
        target_name="K4",
    )
    if not verify_model(model):
        raise InternalInvariantError("K4 model failed verification")
    return model


def _block_vertices(c: tuple[int, ...], iv: tuple[int, int]) -> tuple[int, ...]:
    start, length = iv
    n = len(c)
    return tuple(c[(start + k) % n] for k in range(length))


def _blocks_quotient(host: Graph, c: tuple[int, ...], ivs) -> Graph:
    """Simple graph on block indices induced by host edges between blocks."""
    owner = {}
    for i, iv in enumerate(ivs):
        for v in _block_vertices(c, iv):
            owner[v] = i
    edges = set()
    for u, v in host.edges():
        if owner[u] != owner[v]:
            edges.add(edge(owner[u], owner[v]))
    return Graph(len(ivs), sorted(edges))


def _contract_once(host: Graph, c: tuple[int, ...], ivs):
    """Merge the first adjacent block pair keeping density >= 3 per vertex.

    Blocks are (start, length) intervals of host cycle positions, listed in
    cyclic order; merging keeps each block a contiguous arc.
    """
    t = len(ivs)
    q = _blocks_quotient(host, c, ivs)
    for i in range(t):
        j = (i + 1) % t
        common = len(q.adj[i] & q.adj[j])
        if q.edge_count - 1 - common >= 3 * (t - 1):
            merged = (ivs[i][0], ivs[i][1] + ivs[j][1])
            if j == 0:
                return [merged] + ivs[1 : t - 1]
            return ivs[:i] + [merged] + ivs[j + 1 :]
    return None


def _peaks(q: Graph, t: int, p: int) -> list[int]:
    """Interior common neighbors of the cycle edge at position p.

    Neighbors are ordered along the path the cycle becomes once that edge
    is removed; the two extremes are not peaks.
    """
    u, v = p, (p + 1) % t
    common = q.adj[u] & q.adj[v]
    ordered = []
    for step in range(1, t - 1):
        w = (v + step) % t
        if w in common:
            ordered.append(w)
    return ordered[1:-1]


def k5_model(f: Graph, c: tuple[int, ...]) -> CyclicMinorModel:
    """Densify by contracting cycle edges, then split around two peaks.

    Every cycle edge of the fixpoint lies in three triangles, so a shortest
    peak-to-end path P exists whose interior holds a common neighbor of the
    edge; a second peak for the first path edge lands outside P and the five
    pieces contract to K5.
    """
    if f.edge_count < 3 * f.n:
        raise PreconditionError(
            f"need |E| >= 3|V|, have {f.edge_count} < {3 * f.n}"
        )
    _validate_cycle_in(f, c, "host cycle")
    if len(c) != f.n:
        raise ValidationError("cycle is not Hamiltonian")

    ivs = [(i, 1) for i in range(len(c))]
    while True:
        nxt = _contract_once(f, c, ivs)
        if nxt is None:
            break
        ivs = nxt
    t = len(ivs)
    q = _blocks_quotient(f, c, ivs)
    for p in range(t):
        if len(q.adj[p] & q.adj[(p + 1) % t]) < 3:
            raise InternalInvariantError(
                "fixpoint cycle edge in fewer than three triangles"
            )

    # globally shortest peak-to-end path; ties fall to scan order
    best = None
    for p in range(t):
        u, v = p, (p + 1) % t
        for z in _peaks(q, t, p):
            to_u = (u - z) % t
            to_v = (z - v) % t
            for plen, end in ((to_u, u), (to_v, v)):
                key = (plen, p, z, end)
                if best is None or key < best:
                    best = key
    if best is None:
        raise InternalInvariantError("no peaks at the density fixpoint")
    plen, p, z, end = best
    u, v = p, (p + 1) % t
    other = v if end == u else u
    direction = 1 if end == u else -1  # travel sense of P along the cycle

    ppos = [(z + direction * i) % t for i in range(plen + 1)]
    inside = set(ppos)
    interior = ppos[1:-1]
    if not interior:
        raise InternalInvariantError("peak path has no interior")
    if not (q.adj[end] & q.adj[other] & set(interior)):
        raise InternalInvariantError("no common neighbor inside the path")
    vprime = ppos[-2]
    if (end + 1) % t == vprime:
        zprime_peaks = _peaks(q, t, end)
    elif (vprime + 1) % t == end:
        zprime_peaks = _peaks(q, t, vprime)
    else:
        raise InternalInvariantError("path neighbor is not on the cycle")
    if not [w for w in zprime_peaks if w not in inside and w != other]:
        raise InternalInvariantError("second peak fell inside the path")

    prime = [
        (ppos[-1] + direction * (2 + i)) % t
        for i in range(t - len(ppos) - 1)
    ]
    parts = [[z], interior, [end], [other], prime]

    intervals = []
    for part in parts:
        run = part if direction == 1 else list(reversed(part))
        intervals.append(
            (ivs[run[0]][0], sum(ivs[pp][1] for pp in run))
        )
    host_cycle, arcs = _arcs_from_intervals(c, intervals)
    model = CyclicMinorModel(
        host=f,
        host_cycle=host_cycle,
        arcs=arcs,
        target=generate("complete", {"n": 5}),
        target_cycle=(0, 1, 2, 3, 4),
        target_name="K5",
    )
    if not verify_model(model):
        raise InternalInvariantError("K5 model failed verification")
    return model


def _row_block_next(rows_cols: list[list[int]], lo: int, hi: int, s: int) -> int | None:
    """Smallest column >= s holding a 1 in matrix rows [lo, hi)."""
    best = None
    for r in range(lo, hi):
        cols = rows_cols[r]
        i = bisect.bisect_left(cols, s)
        if i < len(cols):
            c = cols[i]
            if best is None or c < best:
                best = c
    return best


def _col_greedy(rows_cols, cuts, a, m):
    """Earliest-end column cuts so every (row block, col block) pair hits.

    Returns the full cut tuple or None.  Works for a prefix of row blocks
    too, giving a sound pruning test: a superset of blocks only tightens
    the greedy.
    """
    blocks = list(zip(cuts[:-1], cuts[1:]))
    out = [0]
    s = 0
    for step in range(a - 1):
        e = None
        for lo, hi in blocks:
            nxt = _row_block_next(rows_cols, lo, hi, s)
            if nxt is None:
                return None
            if e is None or nxt > e:
                e = nxt
        s = e + 1
        if s > m - (a - 1 - step):
            return None
        out.append(s)
    for lo, hi in blocks:
        if _row_block_next(rows_cols, lo, hi, s) is None:
            return None
    out.append(m)
    return tuple(out)


def grid_block_partition(matrix: list[list[int]], a: int) -> GridOutcome:
    """Cut the matrix into an a-by-a grid with a 1 in every block.

    Exact for small instances (m <= 60 or a <= 4): lexicographic search
    over row cuts, with greedy column cuts per row choice; the greedy is
    optimal given the rows, so an exhausted search proves non-existence.
    Larger instances get a sweep heuristic whose NotFound is inconclusive.
    """
    m = len(matrix)
    if m == 0 or any(len(row) != m for row in matrix):
        raise ValidationError("matrix is not square")
    if not isinstance(a, int) or a < 1:
        raise ValidationError("block grid size must be a positive integer")
    if a > m:
        raise ValidationError(f"cannot cut {m} rows into {a} blocks")
    rows_cols = [
        [j for j, x in enumerate(row) if x] for row in matrix
    ]
    exact = m <= 60 or a <= 4

    if exact:
        result = _grid_exact(rows_cols, a, m)
        return GridOutcome(result, exact=True)
    return GridOutcome(_grid_sweep(rows_cols, a, m), exact=False)


def _grid_exact(rows_cols, a, m) -> GridPartition | None:
    prefix = [0]

    def dfs():
        done = len(prefix) - 1
        if done == a - 1:
            cuts = prefix + [m]
            cols = _col_greedy(rows_cols, cuts, a, m)
            if cols is not None:
                return GridPartition(tuple(cuts), cols)
            return None
        lo = prefix[-1] + 1
        hi = m - (a - 1 - done)
        for cut in range(lo, hi + 1):
            prefix.append(cut)
            # sound prune: the finished row blocks alone must admit col cuts
            if _col_greedy(rows_cols, prefix + [m], a, m) is not None:
                found = dfs()
                if found is not None:
                    return found
            prefix.pop()
        return None

    if a == 1:
        cuts = (0, m)
        cols = _col_greedy(rows_cols, list(cuts), 1, m)
        return GridPartition(cuts, cols) if cols is not None else None
    return dfs()


def _grid_sweep(rows_cols, a, m) -> GridPartition | None:
    """Accumulate rows until a block shows a distinct 1-columns, then cut."""
    cuts = [0]
    seen: set[int] = set()
    for r in range(m):
        seen.update(rows_cols[r])
        if len(seen) >= a and len(cuts) < a:
            cuts.append(r + 1)
            seen = set()
    if len(cuts) < a:
        return None
    if cuts[-1] == m:
        return None
    cuts.append(m)
    cols = _col_greedy(rows_cols, cuts, a, m)
    if cols is None:
        return None
    return GridPartition(tuple(cuts), cols)


def _cycle_matrix(host: Graph, cycle: tuple[int, ...]) -> list[list[int]]:
    """Full adjacency matrix in cycle order, cycle edges included."""
    n = len(cycle)
    mat = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i != j and host.has_edge(cycle[i], cycle[j]):
                mat[i][j] = 1
    return mat


def _bipartite_layout(host, cycle, ell):
    """Position ranges for X1..Xl and Y1..Yl, or None.

    Y1 swallows the slack between the middle row cut and the middle column
    cut; the cut pair is normalized so the slack is non-negative.
    """
    outcome = grid_block_partition(_cycle_matrix(host, cycle), 2 * ell)
    if outcome.partition is None:
        return None
    rows = list(outcome.partition.row_cuts)
    cols = list(outcome.partition.col_cuts)
    if rows[ell] > cols[ell]:
        rows, cols = cols, rows
    xs = [(rows[x], rows[x + 1]) for x in range(ell)]
    ys = [(rows[ell], cols[ell + 1])]
    ys += [(cols[y], cols[y + 1]) for y in range(ell + 1, 2 * ell)]
    return xs, ys


def kll_prime_model(host: Graph, cycle: tuple[int, ...], ell: int) -> CyclicMinorModel | None:
    """Block-partition the cycle's adjacency matrix into 2l x 2l and read off
    the two sides; None when no partition exists (exactly for small hosts)."""
    _validate_cycle_in(host, cycle, "host cycle")
    if len(cycle) != host.n:
        raise ValidationError("cycle is not Hamiltonian")
    if ell < 1:
        raise ValidationError("need a positive bipartite side")
    layout = _bipartite_layout(host, cycle, ell)
    if layout is None:
        return None
    xs, ys = layout
    target, target_cycle = kll_prime_graph(ell)
    arcs = tuple(
        tuple(cycle[p] for p in range(lo, hi)) for lo, hi in xs + ys
    )
    model = CyclicMinorModel(
        host=host,
        host_cycle=cycle,
        arcs=arcs,
        target=target,
        target_cycle=target_cycle,
        target_name="K'll",
    )
    if not verify_model(model):
        raise InternalInvariantError("bipartite model failed verification")
    return model


def k6_from_bipartite(host: Graph, cycle: tuple[int, ...]) -> CyclicMinorModel | None:
    """K6 from the l=4 layout by merging the wrap pair and the slack pair.

    Y4 and X1 are cyclically adjacent, as are X4 and Y1; merging each pair
    leaves six arcs whose cross edges are all supplied by the bipartite
    blocks or the cycle itself.
    """
    _validate_cycle_in(host, cycle, "host cycle")
    if len(cycle) != host.n:
        raise ValidationError("cycle is not Hamiltonian")
    layout = _bipartite_layout(host, cycle, 4)
    if layout is None:
        return None
    xs, ys = layout
    n = len(cycle)
    rot = ys[3][0]  # start of Y4
    rotated = tuple(cycle[(rot + i) % n] for i in range(n))

    def grab(lo, hi):
        return tuple(cycle[p] for p in range(lo, hi))

    arcs = (
        grab(*ys[3]) + grab(*xs[0]),     # Y4 followed by X1 across the wrap
        grab(*xs[1]),
        grab(*xs[2]),
        grab(*xs[3]) + grab(*ys[0]),     # X4, then slack and Y1
        grab(*ys[1]),
        grab(*ys[2]),
    )
    model = CyclicMinorModel(
        host=host,
        host_cycle=rotated,
        arcs=arcs,
        target=generate("complete", {"n": 6}),
        target_cycle=(0, 1, 2, 3, 4, 5),
        target_name="K6",
    )
    if not verify_model(model):
        raise InternalInvariantError("K6 model failed verification")
    return model
