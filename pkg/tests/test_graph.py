import json
from collections import deque

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles as O
from dualcheeger import families as F
from dualcheeger.errors import HorizonError, InputError
from dualcheeger.graph import (
    PartitionPair,
    WeightedGraph,
    ball,
    bipartition,
    boundary,
    components,
    cut_measure,
    odd_girth,
    radial_split,
    sphere,
    sphere_profile,
    volume,
)


@st.composite
def small_graphs(draw, max_n=9, loops=True):
    n = draw(st.integers(2, max_n))
    seed = draw(st.integers(0, 2**32 - 1))
    p = draw(st.floats(0.1, 0.9))
    lp = draw(st.sampled_from([0.0, 0.3])) if loops else 0.0
    return F.random_graph(n, p, seed, weights=(0.5, 2.0), loops=lp)


def test_volume_examples():
    g = F.path_graph(5)
    assert volume(g, [2]) == 2
    assert volume(g, [1, 2, 3]) == 6
    assert volume(g, []) == 0
    h = WeightedGraph(2, [(0, 0, 4.0), (0, 1, 1.0)])
    assert h.measure[0] == 5.0


def test_cut_measure_examples():
    tri = F.cycle(3)
    assert cut_measure(tri, [0, 1, 2], [0, 1, 2]) == 6
    g = WeightedGraph(6, [(0, 3, 1), (1, 4, 1), (2, 5, 1), (0, 1, 1)])
    assert cut_measure(g, [0, 1, 2], [3, 4, 5]) == 3
    loop = WeightedGraph(2, [(0, 0, 2.5), (0, 1, 1.0)])
    assert cut_measure(loop, [0], [0]) == 2.5


@settings(max_examples=100, deadline=None)
@given(small_graphs(), st.data())
def test_volume_identity_and_symmetry(g, data):
    a = data.draw(st.sets(st.integers(0, g.n - 1), min_size=1))
    b = data.draw(st.sets(st.integers(0, g.n - 1)))
    w = O.weight_matrix(g.n, g.edges)
    assert volume(g, a) == pytest.approx(cut_measure(g, a, a) + boundary(g, a), abs=1e-12)
    assert cut_measure(g, a, b) == pytest.approx(cut_measure(g, b, a), abs=1e-12)
    assert cut_measure(g, a, b) == pytest.approx(O.cut(w, a, b), abs=1e-12)
    assert volume(g, a) == pytest.approx(O.degrees(w)[list(a)].sum(), abs=1e-12)


def test_bipartition_examples():
    assert bipartition(F.cycle(6), range(6)) == ((0, 2, 4), (1, 3, 5))
    assert bipartition(F.cycle(3), range(3)) is None
    assert bipartition(WeightedGraph(1, [(0, 0, 1.0)]), [0]) is None


def test_odd_girth_examples():
    assert odd_girth(F.cycle(5)).length == 5
    assert odd_girth(F.cycle(6)).infinite
    assert odd_girth(F.petersen()).length == 5
    assert odd_girth(WeightedGraph(1, [(0, 0, 1.0)])).length == 1


def test_petersen_against_cycle_search():
    g = F.petersen()
    assert O.shortest_odd_cycle(O.weight_matrix(g.n, g.edges)) == odd_girth(g).length


@settings(max_examples=80, deadline=None)
@given(small_graphs(max_n=8))
def test_odd_girth_matches_bipartition_and_oracle(g):
    og = odd_girth(g)
    w = O.weight_matrix(g.n, g.edges)
    assert og.infinite == (bipartition(g, g.vertices) is not None)
    assert og.infinite == O.is_bipartite(w, range(g.n))
    expected = O.shortest_odd_cycle(w)
    assert (og.length if og.length is not None else float("inf")) == expected
    if og.length and og.length > 1:
        c = og.circuit
        assert len(c) == og.length and len(set(c)) == len(c)
        for x, y in zip(c, c[1:] + c[:1]):
            assert g.weight(x, y) > 0


def test_components_of_disconnected_set():
    g = F.path_graph(6)
    assert components(g, [0, 1, 3, 4, 5]) == [(0, 1), (3, 4, 5)]


def test_path_ball_and_profile():
    fam = F.make_family("infinite_path")
    region = fam.explore(6)
    x0 = region.id(0)
    assert sorted(region.coords[i] for i in ball(region, x0, 2)) == [-2, -1, 0, 1, 2]
    prof = sphere_profile(region, x0, 4)
    assert prof.p == (2.0,) * 5
    assert prof.q == (0.0,) * 5


def test_tree_profile():
    region = F.make_family("homogeneous_tree").explore(4)
    prof = sphere_profile(region, 0, 2)
    assert prof.sizes == (1, 3, 6)
    assert prof.p[:2] == (3.0, 6.0)
    assert set(prof.q) == {0.0}
    assert len(sphere(region, 0, 2)) == 6


def _ladder_oracle_profile(R):
    """Sphere data of the two-line ladder from its edge rule, by plain BFS."""
    def nbrs(v):
        i, s = v
        out = [(i - 1, s), (i + 1, s)]
        out += [(j, 1 - s) for j in (i - 1, i, i + 1)]
        return out

    dist = {(0, 0): 0}
    queue = deque([(0, 0)])
    while queue:
        v = queue.popleft()
        if dist[v] > R:
            continue
        for u in nbrs(v):
            if u not in dist:
                dist[u] = dist[v] + 1
                queue.append(u)
    q = []
    for r in range(R + 1):
        s = [v for v, d in dist.items() if d == r]
        q.append(sum(1 for v in s for u in nbrs(v) if dist.get(u) == r))
    return q


# ordered double sum over each sphere: the two internal edges count twice
LADDER_Q = (0, 12, 4, 4, 4, 4, 4)


def test_ladder_profile_frozen():
    assert tuple(_ladder_oracle_profile(6)) == LADDER_Q
    fam = F.make_family("ladder_ex2")
    region = fam.explore(8)
    prof = sphere_profile(region, region.id(fam.root), 6)
    assert prof.q == tuple(float(v) for v in LADDER_Q)


@pytest.mark.parametrize("name", ["infinite_path", "homogeneous_tree", "ladder_ex2", "cayley_ZxZ3", "selfloop_chain"])
def test_profile_identity(name):
    fam = F.make_family(name)
    region = fam.explore(7)
    prof = sphere_profile(region, 0, 5)
    assert max(abs(x) for x in prof.identity_gaps()) == 0.0
    assert all(a <= b for a, b in zip(prof.P, prof.P[1:]))
    assert all(a <= b for a, b in zip(prof.Q, prof.Q[1:]))


def test_radial_split_examples():
    path = F.make_family("infinite_path").explore(6)
    assert radial_split(path, path.id(0), path.id(3)) == (1.0, 1.0, 0.0)
    tree = F.make_family("homogeneous_tree").explore(4)
    assert radial_split(tree, 0, tree.id((0,))) == (2.0, 1.0, 0.0)


def test_cayley_radial_split_frozen():
    # oracle: BFS on Z x Z_3 with generators (+-1, 0), (0, +-1)
    gens = [(1, 0), (-1, 0), (0, 1), (0, -1)]
    dist = {(0, 0): 0}
    queue = deque([(0, 0)])
    while queue:
        v = queue.popleft()
        if dist[v] >= 6:
            continue
        for a, b in gens:
            u = (v[0] + a, (v[1] + b) % 3)
            if u not in dist:
                dist[u] = dist[v] + 1
                queue.append(u)
    x = (2, 1)
    split = [0, 0, 0]
    for a, b in gens:
        u = (x[0] + a, (x[1] + b) % 3)
        split[0 if dist[u] > dist[x] else 1 if dist[u] < dist[x] else 2] += 1
    assert tuple(split) == (1, 2, 1)
    region = F.make_family("cayley_ZxZ3").explore(6)
    assert radial_split(region, 0, region.id(x)) == (1.0, 2.0, 1.0)


@settings(max_examples=60, deadline=None)
@given(small_graphs(), st.data())
def test_radial_split_sums(g, data):
    x0 = data.draw(st.integers(0, g.n - 1))
    for x in g.vertices:
        assert sum(radial_split(g, x0, x)) == pytest.approx(g.measure[x], abs=1e-12)


def test_radial_split_refuses_unexplored():
    region = F.make_family("homogeneous_tree").explore(3)
    with pytest.raises(HorizonError):
        radial_split(region, 0, region.id((0, 0, 0)))


def test_json_round_trip_and_errors():
    g = WeightedGraph(3, [(0, 1, 1.5), (1, 2, 1.0), (2, 2, 0.5)])
    h = WeightedGraph.from_json(json.dumps(g.to_json()))
    assert h.edges == g.edges
    with pytest.raises(InputError):
        WeightedGraph.from_json('{"vertices": 2, "edges": [[0, 1, 1], [1, 0, 1]]}')
    with pytest.raises(InputError):
        WeightedGraph(2, [(0, 1, -1.0)])
    with pytest.raises(InputError):
        WeightedGraph.from_json("{not json")


def test_partition_pair_cache():
    g = F.random_graph(8, 0.5, 3, weights=(0.5, 2.0), loops=0.3)
    p = PartitionPair.build(g, [0, 2, 5], [1, 3])
    w = O.weight_matrix(g.n, g.edges)
    assert p.cross == pytest.approx(O.cut(w, [0, 2, 5], [1, 3]))
    assert p.inner1 == pytest.approx(O.cut(w, [0, 2, 5], [0, 2, 5]))
    assert p.boundary == pytest.approx(boundary(g, [0, 1, 2, 3, 5]))
    with pytest.raises(InputError):
        PartitionPair.build(g, [0, 1], [1, 2])
    with pytest.raises(InputError):
        PartitionPair.build(g, [], [1])


def test_measure_is_readonly():
    g = F.cycle(4)
    with pytest.raises(ValueError):
        g.measure[0] = 7
    assert np.all(g.measure == 2)
