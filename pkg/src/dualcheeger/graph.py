"""Weighted graphs, vertex measures, cuts, balls and radial splits.

A graph carries symmetric positive weights ``mu[x, y]``; ``mu[x, x] > 0`` is a
self-loop.  The measure of a vertex is ``mu(x) = sum_y mu[x, y]`` with the loop
counted once.  Graphs cut out of an infinite family also carry ``outer[x]``,
the weight of the edges from ``x`` to vertices that were not interned, so that
``mu(x)`` is always the ambient degree.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import HorizonError, InputError

VertexSet = tuple  # sorted tuple of distinct vertex ids


class WeightedGraph:
    """Finite weighted graph on vertices ``0..n-1``.

    ``edges`` is an iterable of ``(u, v, w)`` with ``w > 0``; ``u == v`` is a
    self-loop.  Listing the same unordered pair twice is an error.
    """

    def __init__(self, n: int, edges: Iterable[Sequence], outer: Sequence[float] | None = None):
        n = int(n)
        if n < 0:
            raise InputError("vertex count must be nonnegative")
        adj: list[dict[int, float]] = [dict() for _ in range(n)]
        loops = np.zeros(n)
        canon = []
        for e in edges:
            if len(e) != 3:
                raise InputError(f"edge {e!r} is not a (u, v, w) triple")
            u, v, w = int(e[0]), int(e[1]), float(e[2])
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge ({u}, {v}) out of range for {n} vertices")
            if not w > 0 or not np.isfinite(w):
                raise InputError(f"edge ({u}, {v}) has non-positive weight {w}")
            if u == v:
                if loops[u] > 0:
                    raise InputError(f"duplicate self-loop at {u}")
                loops[u] = w
            else:
                if v in adj[u]:
                    raise InputError(f"duplicate edge ({u}, {v})")
                adj[u][v] = w
                adj[v][u] = w
            canon.append((min(u, v), max(u, v), w))
        if outer is None:
            outer_arr = np.zeros(n)
        else:
            outer_arr = np.array(outer, dtype=float)
            if outer_arr.shape != (n,) or np.any(outer_arr < 0):
                raise InputError("outer weights must be a nonnegative vector of length n")
        self.n = n
        self._adj = tuple({y: adj[x][y] for y in sorted(adj[x])} for x in range(n))
        self.loops = loops
        self.outer = outer_arr
        self.edges = tuple(sorted(canon))
        meas = loops + outer_arr
        for x in range(n):
            meas[x] += sum(self._adj[x].values())
        self.measure = meas
        for a in (self.loops, self.outer, self.measure):
            a.setflags(write=False)

    # basic access -----------------------------------------------------

    @property
    def vertices(self) -> range:
        return range(self.n)

    def neighbors(self, x: int) -> dict[int, float]:
        """Non-loop neighbours of ``x`` with edge weights, ascending by id."""
        return self._adj[x]

    def weight(self, x: int, y: int) -> float:
        if x == y:
            return float(self.loops[x])
        return self._adj[x].get(y, 0.0)

    @property
    def has_loops(self) -> bool:
        return bool(np.any(self.loops > 0))

    @property
    def total_weight(self) -> float:
        """Sum of edge weights, each unordered edge and loop once."""
        return float(sum(w for _, _, w in self.edges))

    def submatrix(self, s: Sequence[int]) -> np.ndarray:
        """Dense weight matrix restricted to ``s`` (in the given order)."""
        s = list(s)
        pos = {x: i for i, x in enumerate(s)}
        m = np.zeros((len(s), len(s)))
        for i, x in enumerate(s):
            m[i, i] = self.loops[x]
            for y, w in self._adj[x].items():
                j = pos.get(y)
                if j is not None:
                    m[i, j] = w
        return m

    def dense(self) -> np.ndarray:
        return self.submatrix(range(self.n))

    def __repr__(self) -> str:
        return f"WeightedGraph(n={self.n}, edges={len(self.edges)})"

    # serialisation ------------------------------------------------------

    def to_json(self) -> dict:
        d = {"vertices": self.n, "edges": [[u, v, w] for u, v, w in self.edges]}
        if np.any(self.outer > 0):
            d["outer"] = self.outer.tolist()
        return d

    @classmethod
    def from_json(cls, data: dict | str) -> "WeightedGraph":
        if isinstance(data, str):
            try:
                data = json.loads(data)
            except json.JSONDecodeError as exc:
                raise InputError(f"invalid graph JSON: {exc}") from None
        if not isinstance(data, dict) or "vertices" not in data or "edges" not in data:
            raise InputError('graph JSON needs "vertices" and "edges"')
        n = data["vertices"]
        if not isinstance(n, int):
            raise InputError('"vertices" must be an integer')
        return cls(n, data["edges"], data.get("outer"))

    @classmethod
    def from_matrix(cls, w: np.ndarray) -> "WeightedGraph":
        w = np.asarray(w, dtype=float)
        if w.ndim != 2 or w.shape[0] != w.shape[1] or not np.allclose(w, w.T, atol=0):
            raise InputError("weight matrix must be square and symmetric")
        n = w.shape[0]
        edges = [(i, j, w[i, j]) for i in range(n) for j in range(i, n) if w[i, j] != 0]
        return cls(n, edges)


@dataclass(frozen=True)
class Region:
    """A finite piece of an infinite family with its coordinate table.

    ``horizon`` is the radius around vertex 0 (the family root) up to which the
    piece was explored by BFS; it is ``None`` for an arbitrary induced piece,
    where graph distances are not trustworthy.
    """

    graph: WeightedGraph
    coords: tuple
    horizon: int | None = None
    depth: tuple = ()
    index: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        if not self.index:
            object.__setattr__(self, "index", {c: i for i, c in enumerate(self.coords)})

    def id(self, coord) -> int:
        try:
            return self.index[coord]
        except KeyError:
            raise HorizonError(f"coordinate {coord!r} is outside the explored region") from None

    def ids(self, coords: Iterable) -> VertexSet:
        return vset(self.id(c) for c in coords)

    def free_radius(self, x0: int) -> float:
        """Largest r for which distances from ``x0`` up to r are exact."""
        if self.horizon is None:
            return 0 if np.any(self.graph.outer > 0) else float("inf")
        return self.horizon - self.depth[x0]


def _resolve(obj) -> tuple[WeightedGraph, Region | None]:
    if isinstance(obj, Region):
        return obj.graph, obj
    if isinstance(obj, WeightedGraph):
        return obj, None
    raise InputError(f"expected a WeightedGraph or Region, got {type(obj).__name__}")


def graph_of(obj) -> WeightedGraph:
    return _resolve(obj)[0]


def vset(s: Iterable[int], g: WeightedGraph | None = None) -> VertexSet:
    """Normalise to a sorted tuple of distinct ids, optionally range-checked."""
    out = tuple(sorted(set(int(x) for x in s)))
    if g is not None and out and (out[0] < 0 or out[-1] >= g.n):
        raise InputError(f"vertex set not contained in 0..{g.n - 1}")
    return out


def volume(g, s: Iterable[int]) -> float:
    g = graph_of(g)
    s = vset(s, g)
    return float(sum(g.measure[x] for x in s))


def cut_measure(g, a: Iterable[int], b: Iterable[int]) -> float:
    """Double sum of ``mu[x, y]`` over ``x in a``, ``y in b``.

    For ``a == b`` internal edges appear twice and loops once.
    """
    g = graph_of(g)
    a = vset(a, g)
    bset = set(vset(b, g))
    total = 0.0
    for x in a:
        if x in bset:
            total += g.loops[x]
        for y, w in g.neighbors(x).items():
            if y in bset:
                total += w
    return float(total)


def boundary(g, s: Iterable[int]) -> float:
    """``|d s|``: weight of edges from ``s`` to everything outside it, in the ambient."""
    g = graph_of(g)
    s = vset(s, g)
    return volume(g, s) - cut_measure(g, s, s)


def components(g, s: Iterable[int]) -> list[VertexSet]:
    """Connected components of the subgraph induced on ``s``, by smallest id."""
    g = graph_of(g)
    s = vset(s, g)
    inside = set(s)
    seen: set[int] = set()
    comps = []
    for x in s:
        if x in seen:
            continue
        seen.add(x)
        comp = [x]
        queue = deque([x])
        while queue:
            u = queue.popleft()
            for v in g.neighbors(u):
                if v in inside and v not in seen:
                    seen.add(v)
                    comp.append(v)
                    queue.append(v)
        comps.append(vset(comp))
    return comps


def is_connected(g, s: Iterable[int]) -> bool:
    return len(components(g, s)) == 1


def bipartition(g, s: Iterable[int]) -> tuple[VertexSet, VertexSet] | None:
    """Two-colouring of the subgraph induced on ``s`` or None.

    Each component is coloured by BFS from its smallest id, which gets colour 0.
    A self-loop inside ``s`` makes the answer None.
    """
    g = graph_of(g)
    s = vset(s, g)
    inside = set(s)
    colour: dict[int, int] = {}
    for x0 in s:
        if g.loops[x0] > 0:
            return None
    for x0 in s:
        if x0 in colour:
            continue
        colour[x0] = 0
        queue = deque([x0])
        while queue:
            u = queue.popleft()
            for v in g.neighbors(u):
                if v not in inside:
                    continue
                if v not in colour:
                    colour[v] = 1 - colour[u]
                    queue.append(v)
                elif colour[v] == colour[u]:
                    return None
    a = vset(x for x in s if colour[x] == 0)
    b = vset(x for x in s if colour[x] == 1)
    return a, b


@dataclass(frozen=True)
class OddGirth:
    """Shortest odd circuit length; ``length is None`` means bipartite.

    A self-loop counts as a circuit of length 1.
    """

    length: int | None
    circuit: tuple = ()

    @property
    def infinite(self) -> bool:
        return self.length is None


def _bfs_tree(g: WeightedGraph, src: int, inside: set, limit: float = float("inf")):
    dist = {src: 0}
    parent = {src: -1}
    order = [src]
    queue = deque([src])
    while queue:
        u = queue.popleft()
        if dist[u] >= limit:
            continue
        for v in g.neighbors(u):
            if v in inside and v not in dist:
                dist[v] = dist[u] + 1
                parent[v] = u
                order.append(v)
                queue.append(v)
    return dist, parent, order


def odd_girth(g, s: Iterable[int] | None = None) -> OddGirth:
    """Odd girth of the subgraph induced on ``s`` (default: all vertices)."""
    g = graph_of(g)
    s = vset(range(g.n) if s is None else s, g)
    for x in s:
        if g.loops[x] > 0:
            return OddGirth(1, (x,))
    inside = set(s)
    best = None
    best_data = None
    for src in s:
        # an odd circuit of length 2k+1 through src is found at BFS depth k
        limit = float("inf") if best is None else (best - 1) // 2
        dist, parent, order = _bfs_tree(g, src, inside, limit)
        for u in order:
            du = dist[u]
            if best is not None and 2 * du + 1 >= best:
                break
            for v in g.neighbors(u):
                if v > u and dist.get(v) == du:
                    best = 2 * du + 1
                    best_data = (parent, u, v)
                    break
    if best is None:
        return OddGirth(None)
    parent, u, v = best_data

    def path(x):
        out = []
        while x != -1:
            out.append(x)
            x = parent[x]
        return out[::-1]

    pu, pv = path(u), path(v)
    circuit = tuple(pu + pv[:0:-1])
    return OddGirth(best, circuit)


def distances(g, x0: int, radius: float = float("inf")) -> dict[int, int]:
    """BFS distances from ``x0`` up to ``radius``."""
    g, region = _resolve(g)
    if not 0 <= x0 < g.n:
        raise InputError(f"vertex {x0} out of range")
    if region is not None and radius > region.free_radius(x0):
        raise HorizonError(
            f"radius {radius} from vertex {x0} exceeds the explored horizon "
            f"({region.free_radius(x0)} available)"
        )
    dist, _, _ = _bfs_tree(g, x0, set(range(g.n)), radius)
    return dist


def ball(g, x0: int, r: int) -> VertexSet:
    """Closed graph-distance ball ``B(x0, r)``."""
    return vset(distances(g, x0, r))


def sphere(g, x0: int, r: int) -> VertexSet:
    return vset(x for x, d in distances(g, x0, r).items() if d == r)


def radial_split(g, x0: int, x: int, dist: dict[int, int] | None = None) -> tuple[float, float, float]:
    """``(mu_plus, mu_minus, mu_zero)`` of ``x`` relative to ``x0``.

    Loops fall into ``mu_zero``.  ``dist`` may pass precomputed distances
    covering ``x`` and its neighbours.
    """
    gr = graph_of(g)
    if dist is None:
        dist = distances(g, x0, _dist_needed(g, x0, x))
    if x not in dist:
        raise InputError(f"vertex {x} not reachable from {x0}")
    dx = dist[x]
    plus = minus = 0.0
    zero = float(gr.loops[x])
    for y, w in gr.neighbors(x).items():
        dy = dist.get(y)
        if dy is None:
            raise HorizonError(f"neighbour {y} of {x} lies beyond the distance table")
        if dy > dx:
            plus += w
        elif dy < dx:
            minus += w
        else:
            zero += w
    if gr.outer[x] > 0:
        raise HorizonError(f"vertex {x} has unexplored neighbours")
    return plus, minus, zero


def _dist_needed(g, x0: int, x: int) -> float:
    gr, region = _resolve(g)
    if region is None:
        return float("inf")
    d = distances(g, x0, region.free_radius(x0)).get(x)
    if d is None:
        raise HorizonError(f"vertex {x} is not within the explored horizon of {x0}")
    if d + 1 > region.free_radius(x0):
        raise HorizonError(f"neighbours of {x} fall outside the explored horizon")
    return d + 1


@dataclass(frozen=True)
class SphereProfile:
    """Per-radius sphere statistics around ``center``.

    ``p[r] = |E(S_r, S_{r+1})|`` and ``q[r] = |E(S_r, S_r)|`` with
    ``p[0] = mu(x0) - mu[x0, x0]`` and ``q[0] = mu[x0, x0]``.
    """

    center: int
    sizes: tuple
    p: tuple
    q: tuple
    vol: tuple

    @property
    def P(self) -> tuple:
        return tuple(np.cumsum(self.p).tolist())

    @property
    def Q(self) -> tuple:
        return tuple(np.cumsum(self.q).tolist())

    def identity_gaps(self) -> list[float]:
        """``vol(B_r) - (P_{r-1} + P_r + Q_r)`` for each r; zero in exact arithmetic."""
        P, Q = self.P, self.Q
        return [self.vol[r] - ((P[r - 1] if r else 0.0) + P[r] + Q[r]) for r in range(len(self.p))]


def sphere_profile(g, x0: int, R: int) -> SphereProfile:
    """Sphere profile for radii ``0..R``; needs distances up to ``R + 1``."""
    gr = graph_of(g)
    dist = distances(g, x0, R + 1)
    spheres = [[] for _ in range(R + 2)]
    for x, d in dist.items():
        spheres[d].append(x)
    sizes, p, q, vol = [], [], [], []
    running = 0.0
    for r in range(R + 1):
        s_r = vset(spheres[r])
        sizes.append(len(s_r))
        if r == 0:
            p.append(float(gr.measure[x0] - gr.loops[x0]))
            q.append(float(gr.loops[x0]))
        else:
            p.append(cut_measure(gr, s_r, spheres[r + 1]))
            q.append(cut_measure(gr, s_r, s_r))
        running += volume(gr, s_r)
        vol.append(running)
    return SphereProfile(x0, tuple(sizes), tuple(p), tuple(q), tuple(vol))


@dataclass(frozen=True)
class PartitionPair:
    """Disjoint nonempty ``(V1, V2)`` with cut and volume statistics."""

    V1: VertexSet
    V2: VertexSet
    cross: float
    inner1: float
    inner2: float
    vol1: float
    vol2: float
    boundary: float

    @classmethod
    def build(cls, g, v1: Iterable[int], v2: Iterable[int]) -> "PartitionPair":
        g = graph_of(g)
        a, b = vset(v1, g), vset(v2, g)
        if not a or not b:
            raise InputError("both sides of a partition pair must be nonempty")
        if set(a) & set(b):
            raise InputError("partition sides overlap")
        return cls(
            a, b,
            cut_measure(g, a, b),
            cut_measure(g, a, a),
            cut_measure(g, b, b),
            volume(g, a),
            volume(g, b),
            boundary(g, a + b),
        )

    @property
    def ratio(self) -> float:
        """``2|E(V1,V2)| / (vol V1 + vol V2)``."""
        return 2.0 * self.cross / (self.vol1 + self.vol2)

    def to_json(self) -> list:
        return [list(self.V1), list(self.V2)]
