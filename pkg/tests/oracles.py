"""Slow reference implementations, written straight from the definitions.

Nothing here imports the package's algorithms: edges come in as plain
``(u, v, w)`` lists and every quantity is recomputed with itertools/numpy.
"""
from __future__ import annotations

import itertools
import math

import numpy as np


def weight_matrix(n, edges):
    w = np.zeros((n, n))
    for u, v, x in edges:
        w[u, v] = x
        w[v, u] = x
    return w


def degrees(w, outer=None):
    # a loop sits on the diagonal once, so a plain row sum counts it once
    mu = w.sum(axis=1)
    return mu if outer is None else mu + np.asarray(outer)


def dirichlet_matrix(w, omega, outer=None):
    """Non-symmetric ``Delta_Omega`` written entrywise."""
    mu = degrees(w, outer)
    k = len(omega)
    m = np.eye(k)
    for i, x in enumerate(omega):
        for j, y in enumerate(omega):
            m[i, j] -= w[x, y] / mu[x]
    return m


def dirichlet_eigs(w, omega, outer=None):
    vals = np.linalg.eigvals(dirichlet_matrix(w, omega, outer))
    return np.sort(vals.real)


def cut(w, a, b):
    return float(sum(w[x, y] for x in a for y in b))


def brute_h(w, omega, outer=None):
    mu = degrees(w, outer)
    out = np.zeros(w.shape[0]) if outer is None else np.asarray(outer)
    omega = list(omega)
    rest_all = range(w.shape[0])
    best = math.inf
    for k in range(1, len(omega) + 1):
        for u in itertools.combinations(omega, k):
            su = set(u)
            bd = sum(w[x, y] for x in u for y in rest_all if y not in su) + sum(out[x] for x in u)
            best = min(best, bd / sum(mu[x] for x in u))
    return best


def brute_hbar(w, omega, outer=None):
    mu = degrees(w, outer)
    omega = list(omega)
    best = -math.inf
    for labels in itertools.product((0, 1, 2), repeat=len(omega)):
        a = [x for x, s in zip(omega, labels) if s == 1]
        b = [x for x, s in zip(omega, labels) if s == 2]
        if a and b:
            best = max(best, 2 * cut(w, a, b) / (sum(mu[x] for x in a) + sum(mu[x] for x in b)))
    return best


def brute_maxcut(w):
    n = w.shape[0]
    best = 0.0
    for labels in itertools.product((0, 1), repeat=n - 1):
        a = [x for x, s in enumerate(labels) if s]
        b = [x for x in range(n) if x not in a]
        best = max(best, sum(w[x, y] for x in a for y in b if x != y))
    return best


def all_distances(w):
    n = w.shape[0]
    d = np.full((n, n), np.inf)
    for x in range(n):
        d[x, x] = 0
        for y in range(n):
            if x != y and w[x, y] > 0:
                d[x, y] = 1
    for k in range(n):
        d = np.minimum(d, d[:, [k]] + d[[k], :])
    return d


def is_bipartite(w, omega):
    omega = list(omega)
    for labels in itertools.product((0, 1), repeat=len(omega)):
        col = dict(zip(omega, labels))
        if all(not (w[x, y] > 0 and col[x] == col[y]) for x in omega for y in omega):
            return True
    return False


def shortest_odd_cycle(w):
    """Length of the shortest simple odd cycle by exhaustive DFS (loops count as 1)."""
    n = w.shape[0]
    if any(w[x, x] > 0 for x in range(n)):
        return 1
    best = math.inf

    def dfs(start, cur, seen, length):
        nonlocal best
        if length >= best:
            return
        for y in range(n):
            if w[cur, y] <= 0 or y == cur:
                continue
            if y == start and length >= 3 - 1 and (length + 1) % 2 == 1:
                best = min(best, length + 1)
            elif y not in seen and y > start:
                dfs(start, y, seen | {y}, length + 1)

    for s in range(n):
        dfs(s, s, {s}, 0)
    return best


def path_eigs(n):
    return np.sort([1 - math.cos(j * math.pi / (n + 1)) for j in range(1, n + 1)])
