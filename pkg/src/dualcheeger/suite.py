"""Seeded verification battery behind ``dualcheeger verify``.

Every check recomputes its quantities from scratch and returns plain data,
so two runs with the same seed serialise to identical bytes.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import families as F
from .asymptotics import infinity_constants, trace_bound_check
from .graph import bipartition, cut_measure
from .halfline import comparison_bounds, solve_theta
from .isoperimetry import max_cut_exact, surgery_trace, verify_cheeger_pair
from .spectral import dirichlet_spectrum


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    cases: int
    worst: float | None  # smallest margin seen (negative means violated)
    detail: str = ""

    def to_json(self) -> dict:
        return {"name": self.name, "ok": self.ok, "cases": self.cases, "worst_margin": self.worst, "detail": self.detail}


def _check(name, margins, tol, detail=""):
    worst = float(min(margins)) if margins else None
    return Check(name, worst is None or worst >= -tol, len(margins), worst, detail)


def closed_forms(seed: int) -> Check:
    margins = []
    for name, ns in (("infinite_path", range(2, 21)), ("ladder_ex2", range(2, 11)), ("cayley_ZxZ3", range(2, 11))):
        fam = F.make_family(name)
        for n in ns:
            res = dirichlet_spectrum(*fam.omega(n))
            lo, hi = fam.closed_form(n)
            margins.append(-max(abs(res.lambda1 - lo), abs(res.lambdamax - hi)))
    return _check("closed_form_spectra", margins, 1e-9)


def bipartite_sum(seed: int, count: int = 40) -> Check:
    ss = np.random.SeedSequence(seed).spawn(count)
    margins = []
    for i, s in enumerate(ss):
        sub = int(s.generate_state(1)[0])
        if i % 2 == 0:
            g = F.random_bipartite(3 + i % 4, 3 + (i // 2) % 4, 0.4, sub, weights=(0.5, 2.0))
        else:
            g = F.random_graph(6 + i % 5, 0.35, sub, weights=(0.5, 2.0))
            if bipartition(g, g.vertices) is not None:
                continue
        amb, omega = F.with_collar(g, 2, sub + 1)
        res = dirichlet_spectrum(amb, omega)
        total = res.lambda1 + res.lambdamax
        if bipartition(amb, omega) is not None:
            margins.append(-abs(total - 2))
        else:
            margins.append(2 - 1e-8 - total)
    return _check("bipartite_iff_sum_two", margins, 1e-9)


def cheeger_inequalities(seed: int, count: int = 30) -> Check:
    ss = np.random.SeedSequence(seed + 1).spawn(count)
    margins = []
    for i, s in enumerate(ss):
        sub = int(s.generate_state(1)[0])
        g = F.random_graph(4 + i % 6, 0.4, sub, weights=(0.5, 2.0), loops=0.2 if i % 3 == 0 else 0.0)
        amb, omega = F.with_collar(g, 1 + i % 3, sub + 1)
        rep = verify_cheeger_pair(amb, omega)
        margins.extend(q.margin for q in rep.inequalities.values())
    return _check("cheeger_dual_cheeger_inequalities", margins, 1e-9)


def surgery(seed: int, count: int = 100) -> Check:
    ss = np.random.SeedSequence(seed + 2).spawn(count)
    margins = []
    for i, s in enumerate(ss):
        sub = int(s.generate_state(1)[0])
        g = F.random_graph(3 + i % 10, 0.5, sub, weights=(1, 4), integer=True)
        tr = surgery_trace(g, g.vertices)
        p = tr.pair
        total = sum(w for _, _, w in g.edges)
        margins.append(p.cross - max(p.inner1, p.inner2))
        margins.append(g.n * total - len(tr.moves))
    return _check("surgery_partition", margins, 0.0)


def interlacing(seed: int, count: int = 20) -> Check:
    ss = np.random.SeedSequence(seed + 3).spawn(count)
    margins = []
    for i, s in enumerate(ss):
        sub = int(s.generate_state(1)[0])
        rng = np.random.default_rng(sub)
        g = F.random_graph(8 + i % 5, 0.4, sub, weights=(0.5, 2.0))
        amb, big = F.with_collar(g, 2, sub + 1)
        r = int(rng.integers(1, len(big) - 1))
        drop = set(rng.choice(big, size=r, replace=False).tolist())
        small = tuple(x for x in big if x not in drop)
        e1 = dirichlet_spectrum(amb, big).eigenvalues
        e2 = dirichlet_spectrum(amb, small).eigenvalues
        for k in range(len(small)):
            margins.append(e2[k] - e1[k])
            margins.append(e1[k + r] - e2[k])
    return _check("interlacing", margins, 1e-9)


def lattice_instance(seed: int) -> Check:
    fam = F.make_family("lattice_plus_bipartite")
    region, ids = fam.omega(0)
    rep = verify_cheeger_pair(region, ids)
    w = rep.hbar.witness
    margins = [
        -abs(rep.h.value + rep.hbar.value - 1),
        -cut_measure(region, w.V1, w.V1),
        -cut_measure(region, w.V2, w.V2),
        0.0 if bipartition(region, ids) is None else -1.0,
    ]
    return _check("lattice_sum_one_non_bipartite", margins, 1e-12)


def comparison(seed: int) -> Check:
    margins = []
    cases = (("homogeneous_tree", range(1, 4)), ("infinite_path", range(1, 5)), ("cayley_ZxZ3", range(1, 3)))
    for name, rs in cases:
        fam = F.make_family(name)
        for r in rs:
            region = fam.explore(2 * r + 1)
            rep = comparison_bounds(region, 0, r)
            margins.extend(b.slack for b in rep.bounds.values())
            margins.append(rep.C - rep.kappa)
    return _check("comparison_bounds", margins, 1e-9)


def max_cut(seed: int) -> Check:
    m5, _ = max_cut_exact(F.cycle(5))
    mp, _ = max_cut_exact(F.petersen())
    mb, _ = max_cut_exact(F.complete_bipartite(3, 4))
    margins = [-abs(m5 - 4), -abs(mp - 12), -abs(mb - 12)]
    return _check("max_cut_values", margins, 0.0)


def trace_bound(seed: int) -> Check:
    fam = F.make_family("selfloop_chain")
    margins = []
    for K in range(1, 5):
        for size in (2, 5, 8):
            rep = trace_bound_check(fam, K, size)
            margins.append(rep.power_bound - rep.lambdamax)
            margins.append(rep.sum_bound - rep.trace)
    return _check("selfloop_trace_bound", margins, 1e-12)


def halfline_theta(seed: int) -> Check:
    margins = [-abs(solve_theta(2.0, r) - math.pi / (2 * (r + 1))) for r in range(1, 21)]
    return _check("halfline_theta_l2", margins, 1e-12)


def rapid_tree(seed: int) -> Check:
    ic = infinity_constants(F.make_family("rapidly_branching_tree"), 4, probe_size=10)
    seq = [r.hbar_lower for r in ic.rows]
    margins = [a - b for a, b in zip(seq, seq[1:])]
    margins += [-1.0 if r.bipartite_equality is False else 0.0 for r in ic.rows]
    return _check("rapid_tree_probes_decrease", margins, 1e-12, ic.verdict)


CHECKS = (
    closed_forms, bipartite_sum, cheeger_inequalities, surgery, interlacing,
    lattice_instance, comparison, max_cut, trace_bound, halfline_theta, rapid_tree,
)


def run_suite(seed: int = 0) -> list[Check]:
    return [c(seed) for c in CHECKS]
