"""Cheeger and dual Cheeger constants, surgery partitions and max cut.

``h(omega)`` is the minimum of ``|dU| / vol(U)`` over nonempty ``U`` in omega,
boundaries taken in the ambient graph.  ``hbar(omega)`` is the maximum of
``2|E(V1,V2)| / (vol V1 + vol V2)`` over disjoint nonempty pairs.  Both are
computed by exhaustive enumeration up to a size cap; above it a sweep-cut
heuristic gives a one-sided bound that is flagged as such.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from . import _kernels as K
from .errors import CapExceeded, HypothesisError, InputError
from .graph import (
    PartitionPair,
    bipartition,
    boundary,
    cut_measure,
    graph_of,
    volume,
    vset,
)
from .spectral import dirichlet_operator, spectrum

CHEEGER_CAP = 20
DUAL_CAP = 13
MAXCUT_CAP = 24
TIE_TOL = 1e-12
WINDOW = 1e-9
INEQ_TOL = 1e-9


@dataclass(frozen=True)
class IsoperimetricResult:
    """Value of h or hbar with its witness.

    ``side`` is ``"exact"`` for enumeration results, ``"upper"`` for a heuristic
    h (any test set bounds h from above) and ``"lower"`` for a heuristic hbar.
    """

    value: float
    witness: object
    method: str
    candidates: int
    side: str = "exact"

    def witness_json(self):
        w = self.witness
        return w.to_json() if isinstance(w, PartitionPair) else list(w)


@dataclass(frozen=True)
class AuxiliaryCheegerResult:
    value: float
    witness: tuple
    positive_set: tuple


def _local(ambient, omega):
    g = graph_of(ambient)
    omega = vset(omega, g)
    if not omega:
        raise InputError("omega is empty")
    w = g.submatrix(omega)
    mu = np.array([g.measure[x] for x in omega])
    if np.any(mu <= 0):
        raise InputError("omega contains isolated vertices")
    return g, omega, w, mu


def _candidates(values: np.ndarray, best: float, maximise: bool) -> np.ndarray:
    slack = WINDOW * max(1.0, abs(best))
    if maximise:
        return np.nonzero(values >= best - slack)[0]
    return np.nonzero(values <= best + slack)[0]


def cheeger_exact(ambient, omega: Iterable[int], cap: int = CHEEGER_CAP) -> IsoperimetricResult:
    g, omega, w, mu = _local(ambient, omega)
    n = len(omega)
    if n > min(cap, CHEEGER_CAP):
        raise CapExceeded(f"#omega = {n} exceeds the Cheeger enumeration cap {min(cap, CHEEGER_CAP)}")
    vals = K.cheeger_values(w, mu)
    best = float(vals.min())
    pool = []
    for mask in _candidates(vals, best, maximise=False):
        exact = K.cheeger_exact_value(w, mu, int(mask))
        pool.append((exact, tuple(omega[i] for i in K.bits(int(mask)))))
    top = min(v for v, _ in pool)
    ties = sorted(u for v, u in pool if v <= top + TIE_TOL * max(1.0, top))
    u = ties[0]
    value = boundary(g, u) / volume(g, u)
    return IsoperimetricResult(value, u, "exact", (1 << n) - 1)


def cheeger_heuristic(ambient, omega: Iterable[int]) -> IsoperimetricResult:
    """Best level set of the first Dirichlet eigenfunction; an upper bound on h."""
    g, omega, _, _ = _local(ambient, omega)
    res = spectrum(dirichlet_operator(g, omega))
    f = res.vectors[:, 0]
    order = np.lexsort((np.array(omega), -f))
    best, best_u = math.inf, None
    for k in range(1, len(omega) + 1):
        u = vset(omega[i] for i in order[:k])
        val = boundary(g, u) / volume(g, u)
        if val < best - TIE_TOL:
            best, best_u = val, u
    return IsoperimetricResult(best, best_u, "heuristic", len(omega), side="upper")


def cheeger(ambient, omega: Iterable[int], cap: int = CHEEGER_CAP, fallback: bool = True) -> IsoperimetricResult:
    omega = vset(omega)
    if len(omega) <= min(cap, CHEEGER_CAP):
        return cheeger_exact(ambient, omega, cap)
    if not fallback:
        raise CapExceeded(f"#omega = {len(omega)} exceeds the Cheeger cap")
    return cheeger_heuristic(ambient, omega)


def dual_cheeger_exact(ambient, omega: Iterable[int], cap: int = DUAL_CAP) -> IsoperimetricResult:
    g, omega, w, mu = _local(ambient, omega)
    n = len(omega)
    if n < 2:
        raise InputError("the dual Cheeger constant needs #omega >= 2")
    if n > min(cap, DUAL_CAP):
        raise CapExceeded(f"#omega = {n} exceeds the dual Cheeger enumeration cap {min(cap, DUAL_CAP)}")
    vals = K.dual_values(w, mu)
    best = float(vals.max())
    pool = []
    for code in _candidates(vals, best, maximise=True):
        m1, m2 = K.decode3(int(code), n)
        exact = K.dual_exact_value(w, mu, m1, m2)
        pair = (tuple(omega[i] for i in K.bits(m1)), tuple(omega[i] for i in K.bits(m2)))
        pool.append((exact, pair))
    top = max(v for v, _ in pool)
    ties = sorted(p for v, p in pool if v >= top - TIE_TOL * max(1.0, top))
    pp = PartitionPair.build(g, *ties[0])
    count = (3 ** n - 2 ** (n + 1) + 1) // 2
    return IsoperimetricResult(pp.ratio, pp, "exact", count)


def _best_split(g, u: tuple, start: tuple | None = None) -> PartitionPair:
    """Local search on partitions of ``u`` maximising the cross weight."""
    if start is None:
        start = u[: max(1, len(u) // 2)]
    side = {x: (1 if x in set(start) else 2) for x in u}
    improved = True
    while improved:
        improved = False
        for x in u:
            same = sum(wt for y, wt in g.neighbors(x).items() if side.get(y) == side[x])
            other = sum(wt for y, wt in g.neighbors(x).items() if side.get(y) == 3 - side[x])
            ones = sum(1 for z in u if side[z] == side[x])
            if same > other + TIE_TOL and ones > 1:
                side[x] = 3 - side[x]
                improved = True
    v1 = [x for x in u if side[x] == 1]
    v2 = [x for x in u if side[x] == 2]
    if v1[0] > v2[0]:
        v1, v2 = v2, v1
    return PartitionPair.build(g, v1, v2)


def dual_cheeger_heuristic(ambient, omega: Iterable[int]) -> IsoperimetricResult:
    """Sign sweep of the top eigenfunction plus local refinement; a lower bound on hbar."""
    g, omega, _, _ = _local(ambient, omega)
    if len(omega) < 2:
        raise InputError("the dual Cheeger constant needs #omega >= 2")
    res = spectrum(dirichlet_operator(g, omega))
    f = res.vectors[:, -1]
    order = np.lexsort((np.array(omega), -np.abs(f)))
    best, best_pair, tried = -math.inf, None, 0
    for k in range(2, len(omega) + 1):
        idx = order[:k]
        u = vset(omega[i] for i in idx)
        pos = tuple(omega[i] for i in idx if f[i] > 0)
        pp = _best_split(g, u, pos if 0 < len(pos) < k else None)
        tried += 1
        if pp.ratio > best + TIE_TOL:
            best, best_pair = pp.ratio, pp
    return IsoperimetricResult(best, best_pair, "heuristic", tried, side="lower")


def dual_cheeger(ambient, omega: Iterable[int], cap: int = DUAL_CAP, fallback: bool = True) -> IsoperimetricResult:
    omega = vset(omega)
    if len(omega) <= min(cap, DUAL_CAP):
        return dual_cheeger_exact(ambient, omega, cap)
    if not fallback:
        raise CapExceeded(f"#omega = {len(omega)} exceeds the dual Cheeger cap")
    return dual_cheeger_heuristic(ambient, omega)


def auxiliary_cheeger(ambient, omega: Iterable[int], gfun) -> AuxiliaryCheegerResult:
    """``h(omega, g)``: Cheeger minimum restricted to subsets of ``{g > 0}``."""
    omega = vset(omega)
    gfun = np.asarray(gfun, dtype=float)
    if gfun.shape != (len(omega),):
        raise InputError("g must have one value per vertex of omega")
    pos = tuple(x for x, v in zip(omega, gfun) if v > 0)
    if not pos:
        raise InputError("g has no positive values")
    res = cheeger_exact(ambient, pos)
    return AuxiliaryCheegerResult(res.value, res.witness, pos)


# surgery -------------------------------------------------------------------


@dataclass(frozen=True)
class SurgeryTrace:
    pair: PartitionPair
    moves: tuple  # (vertex, gain) per move


def surgery_trace(g, u: Iterable[int], start: Iterable[int] | None = None) -> SurgeryTrace:
    """Move vertices across until the cross weight dominates both sides.

    Each step moves the vertex with the largest positive gain (same-side
    weight minus cross weight), smallest id first on ties, and stops as soon
    as ``|E(V1,V2)| >= max(|E(V1,V1)|, |E(V2,V2)|)``.
    """
    g = graph_of(g)
    u = vset(u, g)
    if len(u) < 2:
        raise InputError("surgery needs at least two vertices")
    if any(g.loops[x] > 0 for x in u):
        raise HypothesisError("surgery requires a loopless vertex set")
    first = vset(start) if start is not None else (u[0],)
    if not first or not set(first) < set(u):
        raise InputError("start side must be a nonempty proper subset of u")
    side = {x: (1 if x in set(first) else 2) for x in u}
    moves = []

    def stats():
        c = {1: 0.0, 2: 0.0, 0: 0.0}  # inner1, inner2, cross (each edge once)
        for x in u:
            for y, wt in g.neighbors(x).items():
                if y in side and y > x:
                    c[side[x] if side[x] == side[y] else 0] += wt
        return c

    limit = 1 + len(u) * max(1, len(g.edges)) * 64
    while True:
        c = stats()
        # |E(Vi,Vi)| is an ordered double sum, so internal weight counts twice
        if c[0] >= 2 * max(c[1], c[2]):
            break
        best_gain, best_x = 0.0, None
        for x in u:
            same = other = 0.0
            for y, wt in g.neighbors(x).items():
                if y in side:
                    if side[y] == side[x]:
                        same += wt
                    else:
                        other += wt
            gain = same - other
            if gain > best_gain:
                best_gain, best_x = gain, x
        if best_x is None:
            raise RuntimeError("no improving move although the surgery condition fails")
        side[best_x] = 3 - side[best_x]
        moves.append((best_x, best_gain))
        if len(moves) > limit:
            raise RuntimeError("surgery move limit exceeded")
    v1 = [x for x in u if side[x] == 1]
    v2 = [x for x in u if side[x] == 2]
    return SurgeryTrace(PartitionPair.build(g, v1, v2), tuple(moves))


def surgery_partition(g, u: Iterable[int], start: Iterable[int] | None = None) -> PartitionPair:
    return surgery_trace(g, u, start).pair


# max cut -------------------------------------------------------------------


def max_cut_exact(g, cap: int = MAXCUT_CAP) -> tuple[float, PartitionPair]:
    """``Mc = max |E(V1, V2)|`` over partitions of all vertices."""
    g = graph_of(g)
    n = g.n
    if n < 2:
        raise InputError("max cut needs at least two vertices")
    if n > min(cap, MAXCUT_CAP):
        raise CapExceeded(f"{n} vertices exceeds the max-cut cap {min(cap, MAXCUT_CAP)}")
    w = g.dense()
    np.fill_diagonal(w, 0.0)
    vals = K.maxcut_values(w)
    vals[0] = -np.inf
    best = float(vals.max())
    pool = []
    for mask in _candidates(vals, best, maximise=True):
        exact = K.cut_exact_value(w, int(mask))
        v1 = K.bits(int(mask))
        v2 = tuple(x for x in range(n) if x not in set(v1))
        pool.append((exact, (v1, v2)))
    top = max(v for v, _ in pool)
    v1, v2 = sorted(p for v, p in pool if v >= top - TIE_TOL * max(1.0, top))[0]
    pp = PartitionPair.build(g, v1, v2)
    return pp.cross, pp


@dataclass(frozen=True)
class MaxCutBound:
    delta: float
    bound: float
    variant: str
    ball_size: int | None = None


def max_cut_bound(d: int, odd_girth: int, m: float, ball_size: int | None = None) -> MaxCutBound:
    """``m (1 - delta)`` for a non-bipartite vertex-transitive graph.

    Odd girth 3 uses ``delta = 2 / (3 d (d-1))``.  Odd girth ``2s+1 >= 5`` uses
    ``delta = 1 / (d (2s+1) C(b, 2s+1))`` with ``b = d**s`` or, when
    ``ball_size`` is given, the true size of the radius-s balls.
    """
    if odd_girth is None:
        raise HypothesisError("bipartite graph: the max-cut bound does not apply")
    if d < 2 or m <= 0 or odd_girth < 3 or odd_girth % 2 == 0:
        raise InputError("need d >= 2, m > 0 and an odd girth >= 3")
    s = (odd_girth - 1) // 2
    if s == 1:
        delta = 2.0 / (3.0 * d * (d - 1))
        return MaxCutBound(delta, m * (1 - delta), "girth3")
    b = d ** s if ball_size is None else int(ball_size)
    binom = math.comb(b, 2 * s + 1)
    if binom == 0:
        raise HypothesisError(
            f"C({b}, {2 * s + 1}) = 0: the ball-size estimate is too small for this odd girth; "
            "pass the true ball size"
        )
    delta = 1.0 / (d * (2 * s + 1) * binom)
    return MaxCutBound(delta, m * (1 - delta), "literal" if ball_size is None else "exact-ball", b)


# inequality report -----------------------------------------------------------


@dataclass(frozen=True)
class Inequality:
    lhs: float
    rhs: float
    tol: float = INEQ_TOL

    @property
    def ok(self) -> bool:
        return self.lhs <= self.rhs + self.tol

    @property
    def margin(self) -> float:
        return self.rhs - self.lhs

    def to_json(self) -> dict:
        return {"lhs": self.lhs, "rhs": self.rhs, "ok": self.ok}


@dataclass(frozen=True)
class CheegerReport:
    omega: tuple
    h: IsoperimetricResult
    hbar: IsoperimetricResult
    lambda1: float
    lambdamax: float
    bipartite: bool
    loopless: bool
    inequalities: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(q.ok for q in self.inequalities.values())

    def to_json(self) -> dict:
        return {
            "h": self.h.value,
            "hbar": self.hbar.value,
            "witness_h": self.h.witness_json(),
            "witness_hbar": self.hbar.witness_json(),
            "h_side": self.h.side,
            "hbar_side": self.hbar.side,
            "lambda1": self.lambda1,
            "lambdamax": self.lambdamax,
            "bipartite": self.bipartite,
            "inequalities": {k: v.to_json() for k, v in self.inequalities.items()},
        }


def verify_cheeger_pair(ambient, omega: Iterable[int], caps: tuple[int, int] = (CHEEGER_CAP, DUAL_CAP)) -> CheegerReport:
    """Exact h, hbar and the Dirichlet extremes, with the two-sided inequalities.

    Inequalities are stored as ``lhs <= rhs``.
    """
    g = graph_of(ambient)
    omega = vset(omega, g)
    hr = cheeger_exact(g, omega, caps[0])
    hbr = dual_cheeger_exact(g, omega, caps[1])
    res = spectrum(dirichlet_operator(g, omega))
    h, hb = hr.value, hbr.value
    l1, lm = res.lambda1, res.lambdamax
    loopless = not any(g.loops[x] > 0 for x in omega)
    ineq = {
        "cheeger_lower": Inequality(1 - math.sqrt(max(0.0, 1 - h * h)), l1),
        "cheeger_upper": Inequality(l1, h),
        "dual_lower": Inequality(2 * hb + h, lm),
        "dual_upper": Inequality(lm, 1 + math.sqrt(max(0.0, 1 - (1 - hb) ** 2))),
        "hbar_le_1_minus_h": Inequality(hb, 1 - h),
    }
    if loopless:
        ineq["half_1_minus_h_le_hbar"] = Inequality((1 - h) / 2, hb)
    return CheegerReport(omega, hr, hbr, l1, lm, bipartition(g, omega) is not None, loopless, ineq)


__all__ = [
    "IsoperimetricResult",
    "AuxiliaryCheegerResult",
    "cheeger_exact",
    "cheeger_heuristic",
    "cheeger",
    "dual_cheeger_exact",
    "dual_cheeger_heuristic",
    "dual_cheeger",
    "auxiliary_cheeger",
    "SurgeryTrace",
    "surgery_trace",
    "surgery_partition",
    "max_cut_exact",
    "MaxCutBound",
    "max_cut_bound",
    "Inequality",
    "CheegerReport",
    "verify_cheeger_pair",
    "cut_measure",
]
