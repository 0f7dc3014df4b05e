"""The weighted half-line model and spectral comparison for balls.

``R_l`` is the path ``0, 1, 2, ...`` with ``mu[i, i+1] = (l-1)**i``.  On
``V_l(r) = {0..r}`` its Dirichlet extremes are known through the smallest
positive root ``theta`` of ``sin((r+1)t) cos(t) / sin(r t) = l / (2(l-1))``.
Balls in other graphs are compared against it through the radial ratio
``mu(x) / mu_minus(x)`` and the equidistant fraction ``kappa``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .errors import HypothesisError, InputError
from .graph import (
    WeightedGraph,
    ball,
    cut_measure,
    distances,
    graph_of,
    is_connected,
    radial_split,
    vset,
)
from .spectral import DirichletOperator, dirichlet_operator, spectrum

THETA_TOL = 1e-13
BOUND_TOL = 1e-9
OVERFLOW_LOG = 600.0


def _eta(l: float) -> float:
    return 2.0 * (l - 1.0) / (l - 2.0)


def _coef(l: float) -> float:
    return 2.0 * math.sqrt(l - 1.0) / l


def g_r(theta: float, r: int) -> float:
    return math.sin((r + 1) * theta) * math.cos(theta) / math.sin(r * theta)


def theta_bracket(l: float, r: int) -> tuple[float, float]:
    if l == 2:
        t = math.pi / (2 * (r + 1))
        return t, t
    return max(math.pi / (r + _eta(l)), math.pi / (2 * (r + 1))), math.pi / (r + 1)


def solve_theta(l: float, r: int) -> float:
    """Smallest positive root of ``g_r(theta) = l / (2(l-1))``."""
    if l < 2 or r < 1 or int(r) != r:
        raise InputError(f"need l >= 2 and integer r >= 1, got l={l}, r={r}")
    r = int(r)
    if l == 2:
        return math.pi / (2 * (r + 1))
    target = l / (2.0 * (l - 1.0))
    lo, hi = theta_bracket(l, r)
    flo, fhi = g_r(lo, r) - target, g_r(hi, r) - target
    if not (flo >= 0 >= fhi):
        raise HypothesisError(
            f"no sign change on [{lo}, {hi}] for l={l}, r={r}: g-target = {flo}, {fhi}"
        )
    while hi - lo > THETA_TOL:
        mid = 0.5 * (lo + hi)
        if g_r(mid, r) - target >= 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


@dataclass(frozen=True)
class HalfLineModel:
    l: float
    r: int
    theta: float
    eta: float
    lambda1: float
    lambdamax: float
    f1: np.ndarray
    fmax: np.ndarray


def halfline_model(l: float, r: int) -> HalfLineModel:
    theta = solve_theta(l, r)
    c = _coef(l)
    lam1 = 1.0 - c * math.cos(theta)
    s = np.arange(r + 1)
    f1 = (l - 1.0) ** (-s / 2.0) * np.sin((r + 1 - s) * theta)
    fmax = (-1.0) ** s * f1
    eta = math.inf if l == 2 else _eta(l)
    return HalfLineModel(float(l), int(r), theta, eta, lam1, 2.0 - lam1, f1, fmax)


def extreme_brackets(l: float, r: int) -> dict[str, float]:
    """Closed-form brackets for the extremes of ``V_l(r)``, ``l > 2``."""
    if l <= 2:
        raise HypothesisError("closed-form brackets need l > 2")
    c, eta = _coef(l), _eta(l)
    return {
        "lambda1_lower": 1 - c * math.cos(math.pi / (r + eta)),
        "lambda1_upper": 1 - c * math.cos(math.pi / (r + 1)),
        "lambdamax_lower": 1 + c * math.cos(math.pi / (r + 1)),
        "lambdamax_upper": 1 + c * math.cos(math.pi / (r + eta)),
    }


def halfline_graph(l: float, n: int) -> WeightedGraph:
    """Path ``0..n`` with ``mu[i, i+1] = (l-1)**i``."""
    if l < 2:
        raise InputError("l must be at least 2")
    if n < 2:
        raise InputError("n must be at least 2")
    if l > 2 and n * math.log(l - 1.0) > OVERFLOW_LOG:
        raise InputError(f"(l-1)^n too large for l={l}, n={n}")
    return WeightedGraph(n + 1, [(i, i + 1, (l - 1.0) ** i) for i in range(n)])


def model_symmetric_form(l: float, r: int) -> np.ndarray:
    """Symmetric Dirichlet form of ``V_l(r)`` built from weight ratios only."""
    m = np.eye(r + 1)
    if r >= 1:
        m[0, 1] = m[1, 0] = -1.0 / math.sqrt(l)
    off = -math.sqrt(l - 1.0) / l
    for i in range(1, r):
        m[i, i + 1] = m[i + 1, i] = off
    return m


# radial quantities -----------------------------------------------------------


def _ball_dist(ambient, x0: int, r: int) -> dict[int, int]:
    return distances(ambient, x0, r + 1)


def radial_ratios(ambient, x0: int, r: int) -> dict[int, float]:
    """``mu(x) / mu_minus(x)`` on ``B(x0, r)`` minus the centre (inf where mu_minus = 0)."""
    g = graph_of(ambient)
    dist = _ball_dist(ambient, x0, r)
    out = {}
    for x in sorted(x for x, d in dist.items() if 0 < d <= r):
        _, minus, _ = radial_split(ambient, x0, x, dist)
        out[x] = math.inf if minus == 0 else g.measure[x] / minus
    return out


def kappa(ambient, x0: int, r: int) -> float:
    """``sup_{x in B(x0, r)} mu_zero(x) / mu(x)``."""
    g = graph_of(ambient)
    dist = _ball_dist(ambient, x0, r)
    best = 0.0
    for x, d in dist.items():
        if d <= r:
            _, _, zero = radial_split(ambient, x0, x, dist)
            best = max(best, zero / g.measure[x])
    return best


@dataclass(frozen=True)
class ClusteringResult:
    value: float
    exact: bool
    nodes: int


def _odd_circuit_through(g: WeightedGraph, x: int, y: int, budget: int, dx: dict, cap: int, counter: list) -> bool | None:
    """Whether edge xy lies on a circuit of odd length <= budget + 1.

    Searches simple paths y -> x of even length in ``2..budget`` avoiding x in
    between.  Returns None when the node cap is hit.
    """
    stack = [(y, 0, iter(g.neighbors(y)))]
    on_path = {y}
    while stack:
        v, length, it = stack[-1]
        advanced = False
        for z in it:
            if z == x:
                if length >= 1 and (length + 1) % 2 == 0:
                    return True
                continue
            if z in on_path or z not in dx:
                continue
            if length + 1 + dx[z] > budget:
                continue
            counter[0] += 1
            if counter[0] > cap:
                return None
            on_path.add(z)
            stack.append((z, length + 1, iter(g.neighbors(z))))
            advanced = True
            break
        if not advanced:
            stack.pop()
            on_path.discard(v)
    return False


def clustering_C(ambient, x0: int, r: int, node_cap: int = 2_000_000) -> ClusteringResult:
    """Sup over ``B(x0, r)`` of the weight fraction on edges lying in short odd circuits.

    An edge ``xy`` counts when it lies on a circuit of odd length at most
    ``2r + 1``; a loop counts as a circuit of length one.  If the search cap is
    reached the value is a lower bound and ``exact`` is False.
    """
    g = graph_of(ambient)
    # circuits of length <= 2r+1 through x stay inside B(x, r)
    dist0 = distances(ambient, x0, 2 * r + 1)
    counter = [0]
    exact = True
    best = 0.0
    for x in sorted(v for v, d in dist0.items() if d <= r):
        dx = {v: d for v, d in distances(g, x, r).items() if v in dist0}
        total = float(g.loops[x])
        for y, w in g.neighbors(x).items():
            hit = _odd_circuit_through(g, x, y, 2 * r, dx, node_cap, counter)
            if hit is None:
                exact = False
                break
            if hit:
                total += w
        best = max(best, total / g.measure[x])
        if not exact:
            break
    return ClusteringResult(best, exact, counter[0])


# Barta bounds ---------------------------------------------------------------


def barta_lower(op: DirichletOperator, f) -> float:
    """``inf_x (Delta f)(x) / f(x)`` for nowhere-zero f; at most lambda_max."""
    f = np.asarray(f, dtype=float)
    if f.shape != (op.size,) or np.any(f == 0):
        raise InputError("Barta bound needs a nowhere-zero function on omega")
    return float(np.min(op.apply(f) / f))


def barta_lower_lambda1(op: DirichletOperator, f) -> float:
    """``inf_x (Delta f)(x) / f(x)`` for positive f; at most lambda_1."""
    f = np.asarray(f, dtype=float)
    if f.shape != (op.size,) or np.any(f <= 0):
        raise InputError("first-eigenvalue Barta bound needs a positive function")
    return float(np.min(op.apply(f) / f))


def transplant(ambient, x0: int, omega: Iterable[int], profile) -> np.ndarray:
    """Pull a radial profile back to omega via ``f(x) = profile[d(x0, x)]`` (0 past its end)."""
    omega = vset(omega)
    profile = np.asarray(profile, dtype=float)
    dist = distances(ambient, x0, len(profile))
    out = np.zeros(len(omega))
    for i, x in enumerate(omega):
        d = dist.get(x)
        if d is not None and d < len(profile):
            out[i] = profile[d]
    return out


# comparison report ----------------------------------------------------------


@dataclass(frozen=True)
class Bound:
    target: str  # "lambda1" or "lambdamax"
    kind: str  # "lower" or "upper"
    value: float
    actual: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "value", float(self.value))
        if self.actual is not None:
            object.__setattr__(self, "actual", float(self.actual))

    @property
    def slack(self) -> float | None:
        if self.actual is None:
            return None
        return self.actual - self.value if self.kind == "lower" else self.value - self.actual

    @property
    def holds(self) -> bool | None:
        s = self.slack
        return None if s is None else bool(s >= -BOUND_TOL)

    def to_json(self) -> dict:
        return {
            "target": self.target,
            "kind": self.kind,
            "value": self.value,
            "actual": self.actual,
            "slack": self.slack,
            "holds": self.holds,
        }


@dataclass(frozen=True)
class ComparisonReport:
    x0: int
    r: int
    ball_size: int
    l_sup: float
    l_inf: float
    kappa: float
    C: float
    C_exact: bool
    lambda1: float | None
    lambdamax: float | None
    bounds: dict = field(default_factory=dict)
    notes: tuple = ()

    @property
    def ok(self) -> bool:
        return all(b.holds is not False for b in self.bounds.values()) and self.kappa <= self.C + 1e-12

    def to_json(self) -> dict:
        def num(v):
            return None if v is None or (isinstance(v, float) and math.isinf(v)) else v

        return {
            "x0": self.x0,
            "r": self.r,
            "ball_size": self.ball_size,
            "l_sup": num(self.l_sup),
            "l_inf": num(self.l_inf),
            "kappa": self.kappa,
            "C": self.C,
            "C_exact": self.C_exact,
            "lambda1": self.lambda1,
            "lambdamax": self.lambdamax,
            "bounds": {k: b.to_json() for k, b in self.bounds.items()},
            "notes": list(self.notes),
            "ok": self.ok,
        }


def comparison_bounds(ambient, x0: int, r: int, with_C: bool = True, eigen_cap: int = 600) -> ComparisonReport:
    """Half-line comparison bounds for ``B(x0, r)`` checked against its spectrum."""
    if r < 1:
        raise InputError("comparison needs r >= 1")
    b = ball(ambient, x0, r)
    ratios = radial_ratios(ambient, x0, r)
    l_sup = float(max(ratios.values()))
    l_inf = float(min(ratios.values()))
    kap = kappa(ambient, x0, r)
    if with_C:
        cres = clustering_C(ambient, x0, r)
        cval, cexact = cres.value, cres.exact
    else:
        cval, cexact = math.nan, False
    lam1 = lmax = None
    op = None
    if len(b) <= eigen_cap:
        op = dirichlet_operator(ambient, b)
        res = spectrum(op)
        lam1, lmax = res.lambda1, res.lambdamax
    bounds: dict[str, Bound] = {}
    notes = []
    if math.isinf(l_sup):
        notes.append("some off-centre vertex has no neighbour closer to x0: sup ratio infinite")
    elif l_sup < 2:
        notes.append(f"sup ratio {l_sup} < 2: sup-ratio comparison not applicable")
    else:
        model = halfline_model(l_sup, r)
        bounds["sup_model_lambdamax_lower"] = Bound("lambdamax", "lower", model.lambdamax - 2 * kap, lmax)
        if l_sup > 2:
            v = 1 + _coef(l_sup) * math.cos(math.pi / (r + 1)) - 2 * kap
        else:
            v = 1 + math.cos(math.pi / (2 * (r + 1))) - 2 * kap
        bounds["sup_closed_lambdamax_lower"] = Bound("lambdamax", "lower", v, lmax)
        if op is not None:
            f = transplant(ambient, x0, b, model.fmax)
            bounds["barta_transplant"] = Bound("lambdamax", "lower", barta_lower(op, f), lmax)
    if math.isinf(l_inf) or l_inf < 2:
        notes.append(f"inf ratio {l_inf}: inf-ratio comparison not applicable")
    else:
        model = halfline_model(l_inf, r)
        bounds["inf_model_lambda1_lower"] = Bound("lambda1", "lower", model.lambda1 - kap, lam1)
        bounds["inf_model_lambdamax_upper"] = Bound("lambdamax", "upper", model.lambdamax + kap, lmax)
        if l_inf > 2:
            cl, eta = _coef(l_inf), _eta(l_inf)
            bounds["inf_closed_lambda1_lower"] = Bound("lambda1", "lower", 1 - cl * math.cos(math.pi / (r + eta)) - kap, lam1)
            bounds["inf_closed_lambdamax_upper"] = Bound("lambdamax", "upper", 1 + cl * math.cos(math.pi / (r + eta)) + kap, lmax)
    return ComparisonReport(x0, r, len(b), l_sup, l_inf, kap, cval, cexact, lam1, lmax, bounds, tuple(notes))


# finite graphs -------------------------------------------------------------


@dataclass(frozen=True)
class FiniteGraphReport:
    m: int
    diameter: int
    l: float
    kappa: float
    radius: int
    lower_top: float  # bound on theta_{N-m}
    upper_bottom: float  # bound on theta_m
    theta_top: float
    theta_bottom: float
    centers: tuple
    balls: tuple
    edge_disjoint: bool
    ball_lambdamax_min: float

    @property
    def ok(self) -> bool:
        return (
            self.theta_top >= self.lower_top - BOUND_TOL
            and self.theta_bottom <= self.upper_bottom + BOUND_TOL
            and self.edge_disjoint
            and self.theta_top >= self.ball_lambdamax_min - BOUND_TOL
        )

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "diameter": self.diameter,
            "l": self.l,
            "kappa": self.kappa,
            "radius": self.radius,
            "lower_theta_top": self.lower_top,
            "upper_theta_bottom": self.upper_bottom,
            "theta_top": self.theta_top,
            "theta_bottom": self.theta_bottom,
            "centers": list(self.centers),
            "balls": [list(b) for b in self.balls],
            "edge_disjoint": self.edge_disjoint,
            "ball_lambdamax_min": self.ball_lambdamax_min,
            "ok": self.ok,
        }


def graph_constants(g: WeightedGraph) -> tuple[int, float, float, dict]:
    """Diameter, sup of ``mu/mu_minus`` and of ``mu_zero/mu`` over all reference points.

    Each reference point is excluded from its own ratio.  Also returns the
    all-pairs distance tables.
    """
    tables = {x0: distances(g, x0) for x0 in g.vertices}
    diam = max(max(t.values()) for t in tables.values())
    l_sup, kap = 0.0, 0.0
    for x0, dist in tables.items():
        for x in g.vertices:
            plus, minus, zero = radial_split(g, x0, x, dist)
            kap = max(kap, zero / g.measure[x])
            if x != x0:
                l_sup = max(l_sup, math.inf if minus == 0 else g.measure[x] / minus)
    return diam, float(l_sup), float(kap), tables


def finite_graph_bounds(g: WeightedGraph, m: int, constants=None) -> FiniteGraphReport:
    """Bounds on ``theta_{N-m}`` and ``theta_m`` of the normalized Laplacian of g."""
    g = graph_of(g)
    if np.any(g.outer > 0):
        raise InputError("finite_graph_bounds needs a standalone finite graph")
    if not is_connected(g, g.vertices):
        raise InputError("graph must be connected")
    diam, l_sup, kap, tables = constants or graph_constants(g)
    if diam < 2 or not 1 <= m <= diam // 2:
        raise HypothesisError(f"need diameter >= 2 and 1 <= m <= D/2 (D={diam}, m={m})")
    if not 2 < l_sup < math.inf:
        raise HypothesisError(f"need 2 < l < inf, got l={l_sup}")
    rr = diam // (2 * m)
    c = _coef(l_sup)
    lower = 1 + c * math.cos(math.pi / rr) - 2 * kap
    upper = 1 - c * math.cos(math.pi / rr)
    theta = spectrum(dirichlet_operator(g, g.vertices)).eigenvalues
    n = g.n
    # centres spaced 2*rr apart along a diametral geodesic
    a = min(x for x in g.vertices if max(tables[x].values()) == diam)
    bnd = min(y for y, d in tables[a].items() if d == diam)
    path = [bnd]
    while path[-1] != a:
        cur = path[-1]
        path.append(min(y for y in g.neighbors(cur) if tables[a][y] == tables[a][cur] - 1))
    path = path[::-1]
    centers = tuple(path[2 * rr * i] for i in range(m))
    balls = tuple(ball(g, c0, rr - 1) for c0 in centers)
    disjoint = True
    for i in range(m):
        for j in range(i + 1, m):
            if set(balls[i]) & set(balls[j]) or cut_measure(g, balls[i], balls[j]) > 0:
                disjoint = False
    ball_min = min(spectrum(dirichlet_operator(g, bb)).lambdamax for bb in balls)
    return FiniteGraphReport(
        m, diam, l_sup, kap, rr, lower, upper,
        float(theta[n - m]), float(theta[m]), centers, balls, disjoint, ball_min,
    )
