"""Procedural infinite graphs and finite corpora.

An infinite family is a neighbour oracle on hashable coordinates plus a root,
a canonical exhaustion and a few metadata flags.  Finite pieces are cut out
either as BFS balls around the root (``explore``) or as arbitrary coordinate
sets (``induced``); both keep the true ambient degree of every interned
vertex through the graph's ``outer`` weights.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import HorizonError, InputError
from .graph import Region, WeightedGraph, bipartition, vset

SYMMETRY_TOL = 1e-12


@dataclass(frozen=True)
class GraphFamily:
    name: str
    params: dict
    oracle: Callable  # coord -> [(coord, weight)], a loop appears as (coord, w)
    root: object
    exhaustion: Callable  # n -> list of coords, nested in n
    horizon: int
    bipartite: bool
    has_loops: bool
    depth: Callable  # coord -> graph distance to the root
    at_depth: Callable  # j -> some coord at distance j from the root
    declared_tail: tuple | None = None  # (M_minus_inf, kappa_inf)
    threshold: Callable | None = None  # k -> concentration threshold for hbar probes
    threshold_label: str | None = None
    closed_form: Callable | None = None  # n -> (lambda1, lambdamax)
    limits: tuple | None = None  # (bottom, top) of the spectrum
    min_n: int = 1
    notes: tuple = ()

    # construction of finite pieces -------------------------------------------

    def measure(self, coord) -> float:
        return float(sum(w for _, w in self.oracle(coord)))

    def _build(self, coords: list, horizon: int | None, depth: tuple) -> Region:
        index = {c: i for i, c in enumerate(coords)}
        edges = []
        outer = np.zeros(len(coords))
        for i, c in enumerate(coords):
            for d, w in self.oracle(c):
                j = index.get(d)
                if j is None:
                    outer[i] += w
                elif j >= i:
                    edges.append((i, j, w))
        g = WeightedGraph(len(coords), edges, outer)
        return Region(g, tuple(coords), horizon, depth, index)

    def explore(self, radius: int) -> Region:
        """BFS ball of the given radius around the root."""
        if radius > self.horizon:
            raise HorizonError(f"{self.name}: radius {radius} exceeds the safe horizon {self.horizon}")
        seen = {self.root: 0}
        order = [self.root]
        queue = deque([self.root])
        while queue:
            c = queue.popleft()
            if seen[c] == radius:
                continue
            for d, _ in self.oracle(c):
                if d not in seen:
                    seen[d] = seen[c] + 1
                    order.append(d)
                    queue.append(d)
        return self._build(order, radius, tuple(seen[c] for c in order))

    def induced(self, coords: Sequence) -> Region:
        """Finite piece on exactly these coordinates (order kept)."""
        coords = list(dict.fromkeys(coords))
        return self._build(coords, None, ())

    def omega(self, n: int) -> tuple[Region, tuple]:
        """The n-th exhaustion set as a region together with its ids."""
        coords = self.exhaustion(n)
        region = self.induced(coords)
        return region, tuple(range(region.graph.n))

    def annulus_probes(self, k: int, size: int = 12) -> list[list]:
        """Connected coordinate sets of at most ``size`` vertices outside ``B(root, k)``."""
        out = []
        for j in (k + 1, k + 2):
            start = self.at_depth(j)
            seen = [start]
            mark = {start}
            queue = deque([start])
            while queue and len(seen) < size:
                c = queue.popleft()
                for d, _ in self.oracle(c):
                    if d in mark or self.depth(d) <= k:
                        continue
                    mark.add(d)
                    seen.append(d)
                    queue.append(d)
                    if len(seen) >= size:
                        break
            out.append(seen)
        return out

    # checks ---------------------------------------------------------------

    def validate(self, radius: int = 3, n_max: int = 4) -> None:
        region = self.explore(min(radius, self.horizon))
        for c in region.coords:
            nb = self.oracle(c)
            for d, w in nb:
                if not w > 0:
                    raise InputError(f"{self.name}: non-positive weight at {c!r}")
                back = [v for e, v in self.oracle(d) if e == c]
                if len(back) != 1 or abs(back[0] - w) > SYMMETRY_TOL * max(1.0, w):
                    raise InputError(f"{self.name}: oracle not symmetric on ({c!r}, {d!r})")
            if self.depth(c) != region.depth[region.index[c]]:
                raise InputError(f"{self.name}: depth function disagrees with BFS at {c!r}")
        looped = any(e == c for c in region.coords for e, _ in self.oracle(c))
        if looped and not self.has_loops:
            raise InputError(f"{self.name}: loops found but has_loops is False")
        prev = None
        for n in range(self.min_n, self.min_n + n_max):
            cur = set(self.exhaustion(n))
            if prev is not None and not prev < cur:
                raise InputError(f"{self.name}: exhaustion not strictly nested at n={n}")
            prev = cur
            reg, ids = self.omega(n)
            if self.bipartite and bipartition(reg.graph, ids) is None:
                raise InputError(f"{self.name}: flagged bipartite but Omega_{n} is not")

    def manifest(self) -> dict:
        return {
            "name": self.name,
            "params": dict(self.params),
            "root": _coord_json(self.root),
            "horizon": self.horizon,
            "metadata": {
                "bipartite": self.bipartite,
                "has_loops": self.has_loops,
                "declared_tail": None if self.declared_tail is None else {
                    "M_minus_inf": self.declared_tail[0], "kappa_inf": self.declared_tail[1]},
                "concentration_threshold": self.threshold_label,
                "limits": None if self.limits is None else list(self.limits),
            },
            "notes": list(self.notes),
        }


def _coord_json(c):
    if isinstance(c, tuple):
        return [_coord_json(x) for x in c]
    return c


# named families ---------------------------------------------------------------


def infinite_path() -> GraphFamily:
    def oracle(i):
        return [(i - 1, 1.0), (i + 1, 1.0)]

    def closed(n):
        c = math.cos(math.pi / (n + 1))
        return 1 - c, 1 + c

    return GraphFamily(
        "infinite_path", {}, oracle, 0, lambda n: list(range(n)), 5000,
        bipartite=True, has_loops=False, depth=abs, at_depth=lambda j: j,
        declared_tail=(0.5, 0.0), closed_form=closed, limits=(0.0, 2.0),
    )


def ladder_ex2() -> GraphFamily:
    """Two copies of Z with cross edges ``(i, 0) ~ (j, 1)`` whenever ``|i - j| <= 1``."""

    def oracle(c):
        i, s = c
        out = [((i - 1, s), 1.0), ((i + 1, s), 1.0)]
        out += [((j, 1 - s), 1.0) for j in (i - 1, i, i + 1)]
        return out

    def closed(n):
        c = math.cos(math.pi / (n + 1))
        return 0.8 * (1 - c), 0.8 * (1 + c)

    fam = GraphFamily(
        "ladder_ex2", {}, oracle, (0, 0),
        lambda n: [(i, s) for i in range(n) for s in (0, 1)], 2000,
        bipartite=False, has_loops=False,
        depth=lambda c: abs(c[0]) if c[1] == 0 else max(abs(c[0]), 1),
        at_depth=lambda j: (j, 0), closed_form=closed, limits=(0.0, 1.6),
        notes=("cross edges read literally as |i - j'| in {0, 1}; accepted after "
               "reproducing the closed-form extremes for n = 2..10",),
    )
    _self_validate(fam, range(2, 11))
    return fam


def cayley_ZxZ3() -> GraphFamily:
    """Z x Z_3 with generators (+-1, 0) and (0, +-1)."""

    def oracle(c):
        i, k = c
        return [((i - 1, k), 1.0), ((i + 1, k), 1.0), ((i, (k + 1) % 3), 1.0), ((i, (k - 1) % 3), 1.0)]

    def closed(n):
        c = math.cos(math.pi / (n + 1))
        return 0.5 * (1 - c), 1.25 + 0.5 * c

    fam = GraphFamily(
        "cayley_ZxZ3", {}, oracle, (0, 0),
        lambda n: [(i, k) for i in range(n) for k in range(3)], 1000,
        bipartite=False, has_loops=False,
        depth=lambda c: abs(c[0]) + (c[1] != 0), at_depth=lambda j: (j, 0),
        closed_form=closed, limits=(0.0, 1.75),
        notes=("generators (+-1,0), (0,+-1); the diagonal reading (+-1,+-1) is bipartite "
               "and fails the closed-form check",),
    )
    _self_validate(fam, range(2, 11))
    return fam


def homogeneous_tree(d: int = 3) -> GraphFamily:
    """Regular tree of degree d; coordinates are child-index addresses."""
    if d < 2:
        raise InputError("tree degree must be at least 2")

    def oracle(a):
        out = [] if not a else [(a[:-1], 1.0)]
        nchild = d if not a else d - 1
        out += [(a + (j,), 1.0) for j in range(nchild)]
        return out

    horizon = 1
    while d * (d - 1) ** horizon < 200_000:
        horizon += 1
    return GraphFamily(
        "homogeneous_tree", {"d": d}, oracle, (), lambda n: _tree_ball(oracle, n), horizon,
        bipartite=True, has_loops=False, depth=len, at_depth=lambda j: (0,) * j,
        declared_tail=(1.0 / d, 0.0),
        limits=(1 - 2 * math.sqrt(d - 1) / d, 1 + 2 * math.sqrt(d - 1) / d), min_n=0,
    )


def _tree_ball(oracle, n):
    out = [()]
    frontier = [()]
    for _ in range(n):
        nxt = []
        for a in frontier:
            nxt.extend(c for c, _ in oracle(a) if len(c) > len(a))
        out.extend(nxt)
        frontier = nxt
    return out


def halfline(l: float = 3.0) -> GraphFamily:
    if l < 2:
        raise InputError("l must be at least 2")

    def oracle(i):
        out = [(i + 1, (l - 1.0) ** i)]
        if i > 0:
            out.insert(0, (i - 1, (l - 1.0) ** (i - 1)))
        return out

    horizon = 5000 if l == 2 else int(600 / math.log(l - 1.0)) - 1

    def closed(n):
        from .halfline import halfline_model

        m = halfline_model(l, n)
        return m.lambda1, m.lambdamax

    c = 2 * math.sqrt(l - 1) / l
    return GraphFamily(
        "halfline", {"l": l}, oracle, 0, lambda n: list(range(n + 1)), horizon,
        bipartite=True, has_loops=False, depth=lambda i: i, at_depth=lambda j: j,
        declared_tail=(1.0 / l, 0.0), closed_form=closed, limits=(1 - c, 1 + c),
    )


DEFAULT_PATCH = ((0, 0), (1, 0), (0, 1), (1, 1), (-1, 0))


def lattice_plus_bipartite(m: int = 3, n: int = 4, patch: Sequence = DEFAULT_PATCH) -> GraphFamily:
    """Z^2 with the extra edge (0,1)-(1,0), joined to K_{m,n} by one edge at the origin.

    The exhaustion is ``K_{m,n}`` plus the patch plus the lattice points with
    ``|i| + |j| <= n``; ``example_omega`` gives the n = 0 set.
    """
    if m < 1 or n < 1:
        raise InputError("K_{m,n} needs m, n >= 1")
    patch = tuple(tuple(p) for p in patch)
    if (0, 0) not in patch or (0, 1) not in patch or (1, 0) not in patch:
        raise InputError("the patch must contain the origin and the extra edge")
    extra = {(0, 1): (1, 0), (1, 0): (0, 1)}

    def oracle(c):
        if c[0] == "z":
            _, i, j = c
            out = [(("z", i + di, j + dj), 1.0) for di, dj in ((1, 0), (-1, 0), (0, 1), (0, -1))]
            if (i, j) in extra:
                out.append((("z",) + extra[(i, j)], 1.0))
            if (i, j) == (0, 0):
                out.append((("k", 0, 0), 1.0))
            return out
        _, side, a = c
        other = n if side == 0 else m
        out = [(("k", 1 - side, b), 1.0) for b in range(other)]
        if c == ("k", 0, 0):
            out.append((("z", 0, 0), 1.0))
        return out

    kblock = [("k", 0, a) for a in range(m)] + [("k", 1, b) for b in range(n)]

    def exhaustion(r):
        pts = [("z",) + p for p in patch]
        pts += [("z", i, j) for s in range(r + 1) for i in range(-s, s + 1)
                for j in sorted({s - abs(i), abs(i) - s}) if ("z", i, j) not in pts]
        return kblock + pts

    def depth(c):
        if c[0] == "z":
            return abs(c[1]) + abs(c[2])
        _, side, a = c
        return 1 if (side, a) == (0, 0) else (2 if side == 1 else 3)

    fam = GraphFamily(
        "lattice_plus_bipartite", {"m": m, "n": n, "patch": [list(p) for p in patch]},
        oracle, ("z", 0, 0), exhaustion, 200,
        bipartite=False, has_loops=False, depth=depth, at_depth=lambda j: ("z", j, 0), min_n=0,
    )
    kreg = fam.induced(kblock)
    vol_k = float(kreg.graph.measure.sum()) - 1.0
    preg = fam.induced([("z",) + p for p in patch])
    vol_patch = float(preg.graph.measure.sum()) - 1.0  # both without the connecting edge
    if vol_patch > vol_k:
        raise InputError(f"patch volume {vol_patch} exceeds vol(K_{{m,n}}) = {vol_k}")
    return fam


def example_omega(family: GraphFamily) -> tuple[Region, tuple]:
    """``K_{m,n}`` plus the patch, as a region of the lattice family."""
    return family.omega(0)


def selfloop_chain() -> GraphFamily:
    """Half-line with unit edges and a loop of weight ``2**k`` at vertex k."""

    def oracle(k):
        out = [(k, 2.0 ** k), (k + 1, 1.0)]
        if k > 0:
            out.insert(0, (k - 1, 1.0))
        return out

    return GraphFamily(
        "selfloop_chain", {}, oracle, 0, lambda n: list(range(n)), 60,
        bipartite=False, has_loops=True, depth=lambda k: k, at_depth=lambda j: j,
        declared_tail=(0.0, 1.0),
        notes=("loop weights reconstructed so that 1 - mu_kk/mu(k) = 2/(2^k + 2) for k >= 1",),
    )


def rapidly_branching_tree(schedule: Callable[[int], int] | None = None, label: str = "r+2") -> GraphFamily:
    """Tree whose vertices at depth r have ``schedule(r)`` children (default r + 2)."""
    b = schedule or (lambda r: r + 2)

    def oracle(a):
        out = [] if not a else [(a[:-1], 1.0)]
        out += [(a + (j,), 1.0) for j in range(b(len(a)))]
        return out

    horizon = 0
    size = 1
    layer = 1
    while True:
        layer *= b(horizon)
        if size + layer > 100_000:
            break
        size += layer
        horizon += 1
    return GraphFamily(
        "rapidly_branching_tree", {"schedule": label}, oracle, (), lambda n: _tree_ball(oracle, n), horizon,
        bipartite=True, has_loops=False, depth=len, at_depth=lambda j: (0,) * j,
        declared_tail=(0.0, 0.0), threshold=lambda k: 2.0 / (k + 2), threshold_label="2/(k+2)", min_n=0,
    )


def _self_validate(fam: GraphFamily, ns) -> None:
    from .spectral import dirichlet_spectrum

    for n in ns:
        region, ids = fam.omega(n)
        res = dirichlet_spectrum(region, ids)
        want = fam.closed_form(n)
        if abs(res.lambda1 - want[0]) > 1e-9 or abs(res.lambdamax - want[1]) > 1e-9:
            raise InputError(
                f"{fam.name}: generator rejected, n={n} gives "
                f"({res.lambda1}, {res.lambdamax}) instead of {want}"
            )


FAMILIES = {
    "infinite_path": infinite_path,
    "ladder_ex2": ladder_ex2,
    "cayley_ZxZ3": cayley_ZxZ3,
    "homogeneous_tree": homogeneous_tree,
    "halfline": halfline,
    "lattice_plus_bipartite": lattice_plus_bipartite,
    "selfloop_chain": selfloop_chain,
    "rapidly_branching_tree": rapidly_branching_tree,
}


def make_family(name: str, **params) -> GraphFamily:
    try:
        factory = FAMILIES[name]
    except KeyError:
        raise InputError(f"unknown family {name!r}; choose from {sorted(FAMILIES)}") from None
    try:
        fam = factory(**params)
    except TypeError as exc:
        raise InputError(f"bad parameters for {name}: {exc}") from None
    fam.validate()
    return fam


# finite graphs -------------------------------------------------------------------


def path_graph(n: int) -> WeightedGraph:
    return WeightedGraph(n, [(i, i + 1, 1.0) for i in range(n - 1)])


def cycle(n: int) -> WeightedGraph:
    if n < 3:
        raise InputError("cycle needs n >= 3")
    return WeightedGraph(n, [(i, (i + 1) % n, 1.0) for i in range(n)])


def complete(n: int) -> WeightedGraph:
    return WeightedGraph(n, [(i, j, 1.0) for i in range(n) for j in range(i + 1, n)])


def complete_bipartite(a: int, b: int) -> WeightedGraph:
    return WeightedGraph(a + b, [(i, a + j, 1.0) for i in range(a) for j in range(b)])


def hypercube(k: int) -> WeightedGraph:
    n = 1 << k
    return WeightedGraph(n, [(x, x ^ (1 << i), 1.0) for x in range(n) for i in range(k) if x < x ^ (1 << i)])


def petersen() -> WeightedGraph:
    outer = [(i, (i + 1) % 5, 1.0) for i in range(5)]
    spokes = [(i, i + 5, 1.0) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5, 1.0) for i in range(5)]
    return WeightedGraph(10, outer + spokes + inner)


def circulant(n: int, gens: Sequence[int]) -> WeightedGraph:
    """Cayley graph of Z_n with the symmetric closure of ``gens``."""
    steps = sorted({g % n for g in gens} | {(-g) % n for g in gens} - {0})
    edges = {(min(x, (x + s) % n), max(x, (x + s) % n)) for x in range(n) for s in steps}
    return WeightedGraph(n, [(u, v, 1.0) for u, v in sorted(edges)])


def chorded_cycle(n: int, chords: Sequence[tuple[int, int]]) -> WeightedGraph:
    edges = {(i, (i + 1) % n) for i in range(n)}
    for u, v in chords:
        if u % n == v % n:
            raise InputError("chord endpoints coincide")
        edges.add((min(u % n, v % n), max(u % n, v % n)))
    edges = {(min(u, v), max(u, v)) for u, v in edges}
    return WeightedGraph(n, [(u, v, 1.0) for u, v in sorted(edges)])


def _weights(rng, k, weights, integer):
    lo, hi = weights
    if integer:
        return rng.integers(int(lo), int(hi) + 1, size=k).astype(float)
    return rng.uniform(lo, hi, size=k)


def random_graph(
    n: int,
    p: float,
    seed: int,
    weights: tuple[float, float] = (1.0, 1.0),
    integer: bool = False,
    loops: float = 0.0,
    connected: bool = True,
) -> WeightedGraph:
    """Erdos-Renyi style graph, optionally forced connected by a random spanning tree.

    ``loops`` is the probability that a vertex gets a self-loop.
    """
    rng = np.random.default_rng(seed)
    pairs = set()
    if connected and n > 1:
        perm = rng.permutation(n)
        for i in range(1, n):
            j = perm[rng.integers(0, i)]
            pairs.add((min(perm[i], j), max(perm[i], j)))
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                pairs.add((i, j))
    pairs = sorted((int(a), int(b)) for a, b in pairs)
    ws = _weights(rng, len(pairs), weights, integer)
    edges = [(a, b, w) for (a, b), w in zip(pairs, ws)]
    if loops > 0:
        for x in range(n):
            if rng.random() < loops:
                edges.append((x, x, float(_weights(rng, 1, weights, integer)[0])))
    return WeightedGraph(n, edges)


def random_bipartite(
    n1: int, n2: int, p: float, seed: int,
    weights: tuple[float, float] = (1.0, 1.0), integer: bool = False,
) -> WeightedGraph:
    """Connected random bipartite graph with sides ``0..n1-1`` and ``n1..n1+n2-1``."""
    rng = np.random.default_rng(seed)
    n = n1 + n2
    pairs = set()
    # spanning tree alternating between sides
    left, right = list(range(n1)), list(range(n1, n))
    placed_l, placed_r = [left[0]], []
    rest = [x for x in range(n) if x != left[0]]
    rng.shuffle(rest)
    pending = list(rest)
    while pending:
        progress = False
        for x in list(pending):
            pool = placed_r if x < n1 else placed_l
            if pool:
                y = pool[int(rng.integers(0, len(pool)))]
                pairs.add((min(x, y), max(x, y)))
                (placed_l if x < n1 else placed_r).append(x)
                pending.remove(x)
                progress = True
        if not progress:
            break
    for i in left:
        for j in right:
            if rng.random() < p:
                pairs.add((i, j))
    pairs = sorted((int(a), int(b)) for a, b in pairs)
    ws = _weights(rng, len(pairs), weights, integer)
    return WeightedGraph(n, [(a, b, w) for (a, b), w in zip(pairs, ws)])


def with_collar(g: WeightedGraph, k: int, seed: int, weight: tuple[float, float] = (0.5, 2.0)) -> tuple[WeightedGraph, tuple]:
    """Attach k pendant vertices to random vertices of g; returns (ambient, original ids).

    The pendants sit outside the returned omega and make its Dirichlet
    problem non-degenerate.
    """
    rng = np.random.default_rng(seed)
    n = g.n
    edges = [(u, v, w) for u, v, w in g.edges]
    for i in range(k):
        x = int(rng.integers(0, n))
        edges.append((x, n + i, float(rng.uniform(*weight))))
    return WeightedGraph(n + k, edges), tuple(range(n))


__all__ = [
    "GraphFamily",
    "make_family",
    "FAMILIES",
    "infinite_path",
    "ladder_ex2",
    "cayley_ZxZ3",
    "homogeneous_tree",
    "halfline",
    "lattice_plus_bipartite",
    "example_omega",
    "selfloop_chain",
    "rapidly_branching_tree",
    "path_graph",
    "cycle",
    "complete",
    "complete_bipartite",
    "hypercube",
    "petersen",
    "circulant",
    "chorded_cycle",
    "random_graph",
    "random_bipartite",
    "with_collar",
    "vset",
]
