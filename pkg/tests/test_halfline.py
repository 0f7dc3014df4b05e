import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles as O
from dualcheeger import families as F
from dualcheeger.errors import HypothesisError, InputError
from dualcheeger.graph import WeightedGraph
from dualcheeger.halfline import (
    barta_lower,
    barta_lower_lambda1,
    clustering_C,
    comparison_bounds,
    finite_graph_bounds,
    graph_constants,
    halfline_graph,
    halfline_model,
    kappa,
    extreme_brackets,
    model_symmetric_form,
    radial_ratios,
    solve_theta,
    theta_bracket,
)
from dualcheeger.spectral import dirichlet_operator, dirichlet_spectrum

L_GRID = (2.1, 2.5, 3.0, 4.0, 6.0)


def oracle_theta(l, r):
    """theta from the oracle spectrum of the explicit weighted path."""
    g = halfline_graph(l, r + 1)
    lam1 = O.dirichlet_eigs(O.weight_matrix(g.n, g.edges), list(range(r + 1)))[0]
    return math.acos((1 - lam1) * l / (2 * math.sqrt(l - 1)))


@pytest.mark.parametrize("r", [1, 2, 5, 17, 50])
def test_theta_l2(r):
    assert solve_theta(2.0, r) == pytest.approx(math.pi / (2 * (r + 1)), abs=1e-12)
    assert oracle_theta(2.0, r) == pytest.approx(math.pi / (2 * (r + 1)), abs=1e-6)


@pytest.mark.parametrize("l", L_GRID)
@pytest.mark.parametrize("r", [1, 2, 3, 7, 12, 20])
def test_theta_against_oracle(l, r):
    th = solve_theta(l, r)
    lo, hi = theta_bracket(l, r)
    assert lo - 1e-15 <= th <= hi + 1e-15
    assert th == pytest.approx(oracle_theta(l, r), abs=1e-7)


@settings(max_examples=60, deadline=None)
@given(st.floats(2.0001, 12.0), st.integers(1, 25))
def test_model_eigenpair_and_brackets(l, r):
    m = halfline_model(l, r)
    g = halfline_graph(l, r + 1)
    op = dirichlet_operator(g, range(r + 1))
    assert op.apply(m.f1) == pytest.approx(m.lambda1 * m.f1, abs=1e-9 * np.abs(m.f1).max())
    assert op.apply(m.fmax) == pytest.approx(m.lambdamax * m.fmax, abs=1e-9 * np.abs(m.fmax).max())
    ev = np.linalg.eigvalsh(model_symmetric_form(l, r))
    assert ev[0] == pytest.approx(m.lambda1, abs=1e-9)
    assert ev[-1] == pytest.approx(m.lambdamax, abs=1e-9)
    b = extreme_brackets(l, r)
    tol = 1e-12
    assert b["lambda1_lower"] - tol <= m.lambda1 <= b["lambda1_upper"] + tol
    assert b["lambdamax_lower"] - tol <= m.lambdamax <= b["lambdamax_upper"] + tol


def test_halfline_errors():
    with pytest.raises(InputError):
        solve_theta(1.5, 3)
    with pytest.raises(InputError):
        solve_theta(3.0, 0)
    with pytest.raises(HypothesisError):
        extreme_brackets(2.0, 3)
    with pytest.raises(InputError):
        halfline_graph(3.0, 2000)


def test_radial_quantities():
    tree = F.make_family("homogeneous_tree").explore(6)
    assert set(radial_ratios(tree, 0, 3).values()) == {3.0}
    assert kappa(tree, 0, 3) == 0.0
    path = F.make_family("infinite_path").explore(6)
    assert set(radial_ratios(path, path.id(0), 3).values()) == {2.0}
    cay = F.make_family("cayley_ZxZ3").explore(8)
    assert kappa(cay, 0, 3) == pytest.approx(0.25)


def _oracle_C(g, x0, r):
    """Edge fraction on odd simple circuits of length <= 2r+1, by exhaustive DFS."""
    w = O.weight_matrix(g.n, g.edges)
    d = O.all_distances(w)
    n = g.n

    def on_odd(x, y):
        # simple path y ... x of even length avoiding x
        def dfs(v, seen, length):
            for z in range(n):
                if w[v, z] <= 0 or z == v:
                    continue
                if z == x and length >= 1 and (length + 1) % 2 == 0 and length + 2 <= 2 * r + 1:
                    return True
                if z != x and z not in seen and length + 2 <= 2 * r:
                    if dfs(z, seen | {z}, length + 1):
                        return True
            return False
        return dfs(y, {y}, 0)

    best = 0.0
    for x in range(n):
        if d[x0, x] > r:
            continue
        tot = w[x, x] + sum(w[x, y] for y in range(n) if y != x and w[x, y] > 0 and on_odd(x, y))
        best = max(best, tot / w[x].sum())
    return best


@pytest.mark.parametrize("g, r, want", [
    (F.cycle(5), 1, 0.0), (F.cycle(5), 2, 1.0), (F.petersen(), 2, 1.0), (F.cycle(7), 2, 0.0), (F.complete(4), 1, 1.0),
])
def test_clustering_examples(g, r, want):
    assert clustering_C(g, 0, r).value == want
    assert _oracle_C(g, 0, r) == want


@settings(max_examples=40, deadline=None)
@given(st.integers(3, 8), st.integers(0, 2**32 - 1), st.integers(1, 3))
def test_clustering_against_oracle(n, seed, r):
    g = F.random_graph(n, 0.4, seed, weights=(0.5, 2.0))
    res = clustering_C(g, 0, r)
    assert res.exact
    assert res.value == pytest.approx(_oracle_C(g, 0, r), abs=1e-12)
    assert kappa(g, 0, r) <= res.value + 1e-12


def test_tree_comparison_r4():
    region = F.make_family("homogeneous_tree").explore(9)
    rep = comparison_bounds(region, 0, 4)
    assert rep.ok
    assert rep.l_sup == rep.l_inf == 3.0
    assert rep.kappa == 0.0 and rep.C == 0.0
    closed = rep.bounds["sup_closed_lambdamax_lower"]
    assert closed.value == pytest.approx(1 + (2 * math.sqrt(2) / 3) * math.cos(math.pi / 5))
    # the model bound is attained on the tree ball
    assert rep.bounds["sup_model_lambdamax_lower"].slack == pytest.approx(0, abs=1e-9)


def test_path_comparison_r5():
    region = F.make_family("infinite_path").explore(11)
    rep = comparison_bounds(region, region.id(0), 5)
    assert rep.ok
    assert rep.l_sup == 2.0
    assert rep.bounds["sup_closed_lambdamax_lower"].value == pytest.approx(1 + math.cos(math.pi / 12))


def test_barta_quotients():
    g = F.random_graph(9, 0.4, 8, weights=(0.5, 2.0))
    amb, omega = F.with_collar(g, 2, 9)
    op = dirichlet_operator(amb, omega)
    res = dirichlet_spectrum(amb, omega)
    rng = np.random.default_rng(1)
    for _ in range(20):
        f = rng.uniform(0.1, 1.0, size=len(omega))
        assert barta_lower_lambda1(op, f) <= res.lambda1 + 1e-12
        signs = np.where(rng.random(len(omega)) < 0.5, -1.0, 1.0)
        assert barta_lower(op, f * signs) <= res.lambdamax + 1e-12


@pytest.mark.parametrize("g", [F.hypercube(3), F.hypercube(4), F.chorded_cycle(12, [(0, 6)]), F.chorded_cycle(16, [(0, 5), (8, 13)])])
def test_finite_graph_bounds(g):
    diam, l_sup, kap, _ = graph_constants(g)
    assert 2 < l_sup < math.inf
    for m in range(1, diam // 2 + 1):
        if diam // (2 * m) < 1:
            continue
        rep = finite_graph_bounds(g, m)
        assert rep.ok and rep.edge_disjoint


def test_finite_graph_bounds_hypotheses():
    with pytest.raises(HypothesisError):
        finite_graph_bounds(F.cycle(8), 1)  # l = 2
    with pytest.raises(InputError):
        finite_graph_bounds(WeightedGraph(4, [(0, 1, 1.0), (2, 3, 1.0)]), 1)
