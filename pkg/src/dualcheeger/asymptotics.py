"""Exhaustion sequences, one-sided estimates and constants at infinity.

Finite sets only ever certify one direction: ``lambda_1(Omega)`` and
``h(Omega)`` bound the global bottom quantities from above, ``lambda_max`` and
``hbar`` bound the top quantities from below.  Everything else produced here
is labelled as an extrapolation.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import HypothesisError, InputError
from .families import GraphFamily
from .graph import bipartition, sphere_profile
from .isoperimetry import CHEEGER_CAP, DUAL_CAP, cheeger_exact, dual_cheeger_exact
from .spectral import MAX_SIZE, dirichlet_spectrum

MONO_TOL = 1e-10
RATIO_MAX = 0.9
RATIO_STABLE = 0.05
EXPONENT_STABLE = 0.05


@dataclass(frozen=True)
class Estimate:
    """A number with its direction of validity.

    ``side`` is ``"upper"``, ``"lower"`` or ``"exact"`` for certified values
    and ``"extrapolated"`` or ``"unconverged"`` otherwise.
    """

    value: float
    side: str
    source: str
    witness: object = None

    def __post_init__(self):
        object.__setattr__(self, "value", float(self.value))

    @property
    def certified(self) -> bool:
        return self.side in ("upper", "lower", "exact")

    def to_json(self) -> dict:
        d = {"value": self.value, "side": self.side, "source": self.source}
        if self.witness is not None:
            d["witness"] = self.witness
        return d


def extrapolate(values, ns=None) -> Estimate:
    """Tail estimate from the last four terms of a monotone sequence.

    Geometric: consecutive deltas shrink by a stable ratio below 0.9, giving
    ``last + delta * rho / (1 - rho)``.  Algebraic: deltas decay like
    ``n^-(p+1)`` with a stable local exponent, giving ``last + delta * n / p``.
    Otherwise the last value is returned as unconverged.
    """
    x = [float(v) for v in values if v is not None]
    if ns is None:
        ns = list(range(1, len(x) + 1))
    ns = [float(n) for n, v in zip(ns, values) if v is not None]
    if not x:
        raise InputError("nothing to extrapolate")
    last = x[-1]
    if len(x) < 4:
        return Estimate(last, "unconverged", "fewer than four terms")
    d = np.diff(x[-4:])
    if np.all(np.abs(d) <= 1e-15 * max(1.0, abs(last))):
        return Estimate(last, "extrapolated", "stationary tail")
    if np.any(d == 0) or not (np.all(d > 0) or np.all(d < 0)):
        return Estimate(last, "unconverged", "deltas change sign")
    r1, r2 = d[1] / d[0], d[2] / d[1]
    if 0 < r2 < RATIO_MAX and abs(r2 - r1) <= RATIO_STABLE:
        return Estimate(last + d[2] * r2 / (1 - r2), "extrapolated", f"geometric tail rho={r2:.4g}")
    m = ns[-4:]
    # local exponent q of the delta law d(t) ~ t^-q, placed at step midpoints
    mid = [0.5 * (m[i] + m[i + 1]) for i in range(3)]
    q1 = -math.log(d[1] / d[0]) / math.log(mid[1] / mid[0])
    q2 = -math.log(d[2] / d[1]) / math.log(mid[2] / mid[1])
    p = q2 - 1.0
    if p > 0 and abs(q2 - q1) <= EXPONENT_STABLE * q2:
        step = m[3] - m[2]
        tail = d[2] / step * mid[2] ** q2 * m[3] ** (-p) / p
        return Estimate(last + tail, "extrapolated", f"algebraic tail p={p:.4g}")
    return Estimate(last, "unconverged", "no stable contraction")


# exhaustion -------------------------------------------------------------------


@dataclass(frozen=True)
class ExhaustionRow:
    n: int
    size: int
    lambda1: float | None
    lambdamax: float | None
    h: float | None
    hbar: float | None
    closed: tuple | None = None


@dataclass(frozen=True)
class ExhaustionReport:
    family: str
    rows: tuple
    monotone: dict
    lower_estimate: Estimate
    upper_estimate: Estimate
    truncated: tuple = ()
    limits: tuple | None = None
    config: dict = field(default_factory=dict)

    def sequence(self, key: str) -> list:
        return [getattr(r, key) for r in self.rows]

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "config": self.config,
            "rows": [
                {
                    "n": r.n, "size": r.size, "lambda1": r.lambda1, "lambdamax": r.lambdamax,
                    "h": r.h, "hbar": r.hbar,
                    "closed_form": None if r.closed is None else list(r.closed),
                }
                for r in self.rows
            ],
            "monotone": self.monotone,
            "lambda_bottom": self.lower_estimate.to_json(),
            "lambda_top": self.upper_estimate.to_json(),
            "truncated": list(self.truncated),
            "known_limits": None if self.limits is None else list(self.limits),
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "size", "lambda1", "lambdamax", "h", "hbar", "closed_lambda1", "closed_lambdamax"])
        for r in self.rows:
            c = r.closed or (None, None)
            w.writerow([r.n, r.size, _csv(r.lambda1), _csv(r.lambdamax), _csv(r.h), _csv(r.hbar), _csv(c[0]), _csv(c[1])])
        return buf.getvalue()


def _csv(v):
    return "" if v is None else repr(float(v))


def _monotone(seq, direction: int) -> bool:
    vals = [v for v in seq if v is not None]
    return all(direction * (b - a) >= -MONO_TOL for a, b in zip(vals, vals[1:]))


def exhaustion_limits(
    family: GraphFamily,
    n_max: int,
    n_min: int | None = None,
    caps: tuple[int, int] = (CHEEGER_CAP, DUAL_CAP),
    isoperimetry: bool = True,
) -> ExhaustionReport:
    """Spectral and isoperimetric sequences along the canonical exhaustion."""
    n_min = family.min_n if n_min is None else n_min
    rows, truncated = [], []
    for n in range(n_min, n_max + 1):
        region, ids = family.omega(n)
        size = len(ids)
        l1 = lm = h = hb = None
        if size <= MAX_SIZE:
            res = dirichlet_spectrum(region, ids)
            l1, lm = res.lambda1, res.lambdamax
        else:
            truncated.append(f"n={n}: #omega={size} above eigensolver cap")
        if isoperimetry:
            if size <= caps[0]:
                h = cheeger_exact(region, ids, caps[0]).value
            else:
                truncated.append(f"n={n}: h not enumerated (#omega={size} > {caps[0]})")
            if 2 <= size <= caps[1]:
                hb = dual_cheeger_exact(region, ids, caps[1]).value
            elif size > caps[1]:
                truncated.append(f"n={n}: hbar not enumerated (#omega={size} > {caps[1]})")
        closed = family.closed_form(n) if family.closed_form else None
        rows.append(ExhaustionRow(n, size, l1, lm, h, hb, closed))
    seq = lambda k: [getattr(r, k) for r in rows]
    ns = [r.n for r in rows]
    mono = {
        "lambda1_nonincreasing": _monotone(seq("lambda1"), -1),
        "lambdamax_nondecreasing": _monotone(seq("lambdamax"), 1),
        "h_nonincreasing": _monotone(seq("h"), -1),
        "hbar_nondecreasing": _monotone(seq("hbar"), 1),
    }
    config = {"n_min": n_min, "n_max": n_max, "caps": list(caps), "isoperimetry": isoperimetry}
    return ExhaustionReport(
        family.name, tuple(rows), mono,
        extrapolate(seq("lambda1"), ns), extrapolate(seq("lambdamax"), ns),
        tuple(truncated), family.limits, config,
    )


# bounds from isoperimetry ---------------------------------------------------------


def _fits(est: Estimate, need: str) -> bool:
    return est.side == need or est.side == "exact"


@dataclass(frozen=True)
class DerivedBound:
    name: str
    value: float | None
    side: str  # direction of the bound on its target (or "extrapolated")
    target: str
    inputs: dict
    suppressed: str | None = None

    def to_json(self) -> dict:
        return {
            "name": self.name, "target": self.target, "value": self.value, "side": self.side,
            "inputs": {k: v.to_json() for k, v in self.inputs.items()}, "suppressed": self.suppressed,
        }


# each bound: (name, target, side of the bound, formula, {term: side needed})
_BOUND_RULES = (
    ("top_lower", "lambda_top", "lower", lambda hb, h: 2 * hb + h, {"hbar": "lower", "h": "lower"}),
    ("top_upper", "lambda_top", "upper", lambda hb, h: 1 + math.sqrt(max(0.0, 1 - (1 - hb) ** 2)), {"hbar": "upper"}),
    ("bottom_lower", "lambda_bottom", "lower", lambda hb, h: 1 - math.sqrt(max(0.0, 1 - h * h)), {"h": "lower"}),
    ("bottom_upper", "lambda_bottom", "upper", lambda hb, h: h, {"h": "upper"}),
)


def evaluate_bounds(terms: dict[str, list[Estimate]], extrapolated: bool = False) -> list[DerivedBound]:
    """Apply the Cheeger and dual Cheeger bounds to estimates of h and hbar.

    For each bound, every input must have the direction that makes the bound
    valid; the best such candidate is used.  Missing directions suppress the
    bound with a reason.  With ``extrapolated=True`` the extrapolated values
    are plugged in instead and the outputs are labelled accordingly.
    """
    out = []
    for name, target, side, fn, need in _BOUND_RULES:
        chosen: dict[str, Estimate] = {}
        missing = []
        for term, want in need.items():
            pool = terms.get(term, [])
            if extrapolated:
                cands = [e for e in pool if e.side in ("extrapolated", "exact")]
            else:
                cands = [e for e in pool if _fits(e, want)]
            if not cands:
                have = sorted({e.side for e in pool}) or ["none"]
                missing.append(f"{term} needs a {'extrapolated' if extrapolated else want} estimate, have {have}")
            elif extrapolated:
                chosen[term] = cands[-1]
            else:
                # tightest certified value: largest lower bound, smallest upper bound
                pick = max if want == "lower" else min
                chosen[term] = pick(cands, key=lambda e: e.value)
        label = "extrapolated" if extrapolated else side
        if missing:
            out.append(DerivedBound(name, None, label, target, chosen, "; ".join(missing)))
            continue
        hb = chosen["hbar"].value if "hbar" in chosen else 0.0
        h = chosen["h"].value if "h" in chosen else 0.0
        out.append(DerivedBound(name, float(fn(hb, h)), label, target, chosen))
    return out


@dataclass(frozen=True)
class SpectrumBounds:
    certified: tuple
    extrapolated: tuple
    direct: tuple

    def to_json(self) -> dict:
        return {
            "certified": [b.to_json() for b in self.certified],
            "extrapolated": [b.to_json() for b in self.extrapolated],
            "direct": [e.to_json() for e in self.direct],
        }


def spectrum_bounds_from_isoperimetry(report: ExhaustionReport, extra: dict[str, list[Estimate]] | None = None) -> SpectrumBounds:
    """Bounds on the bottom and top of the spectrum of the whole family."""
    hs = [(r.n, r.h) for r in report.rows if r.h is not None]
    hbs = [(r.n, r.hbar) for r in report.rows if r.hbar is not None]
    terms: dict[str, list[Estimate]] = {
        "h": [Estimate(0.0, "lower", "trivial: h >= 0")],
        "hbar": [Estimate(1.0, "upper", "trivial: hbar <= 1")],
    }
    if hs:
        n, v = min(hs, key=lambda t: t[1])
        terms["h"].append(Estimate(v, "upper", f"h(Omega_{n})"))
        terms["h"].append(extrapolate([v for _, v in hs], [n for n, _ in hs]))
    if hbs:
        n, v = max(hbs, key=lambda t: t[1])
        terms["hbar"].append(Estimate(v, "lower", f"hbar(Omega_{n})"))
        terms["hbar"].append(extrapolate([v for _, v in hbs], [n for n, _ in hbs]))
    for k, v in (extra or {}).items():
        terms.setdefault(k, []).extend(v)
    direct = []
    l1 = [(r.n, r.lambda1) for r in report.rows if r.lambda1 is not None]
    lm = [(r.n, r.lambdamax) for r in report.rows if r.lambdamax is not None]
    if l1:
        n, v = min(l1, key=lambda t: t[1])
        direct.append(Estimate(v, "upper", f"lambda_bottom <= lambda1(Omega_{n})"))
    if lm:
        n, v = max(lm, key=lambda t: t[1])
        direct.append(Estimate(v, "lower", f"lambda_top >= lambdamax(Omega_{n})"))
    return SpectrumBounds(tuple(evaluate_bounds(terms)), tuple(evaluate_bounds(terms, extrapolated=True)), tuple(direct))


def sidedness_violations(report: ExhaustionReport) -> list[str]:
    """Certified bounds contradicted by a later (larger) exhaustion set."""
    bad = []
    for key, direction in (("lambda1", -1), ("h", -1), ("lambdamax", 1), ("hbar", 1)):
        seq = [(r.n, getattr(r, key)) for r in report.rows if getattr(r, key) is not None]
        for i, (n, v) in enumerate(seq):
            for m, w in seq[i + 1:]:
                # an upper bound (direction -1) must dominate later values, a lower bound stay below them
                if direction * (w - v) < -MONO_TOL:
                    bad.append(f"{key}: value at n={m} ({w}) contradicts the bound from n={n} ({v})")
    if report.limits is not None:
        lo, hi = report.limits
        for r in report.rows:
            if r.lambda1 is not None and r.lambda1 < lo - MONO_TOL:
                bad.append(f"lambda1(Omega_{r.n}) below the known bottom {lo}")
            if r.lambdamax is not None and r.lambdamax > hi + MONO_TOL:
                bad.append(f"lambdamax(Omega_{r.n}) above the known top {hi}")
    return bad


# constants at infinity --------------------------------------------------------------


@dataclass(frozen=True)
class InfinityRow:
    k: int
    h_upper: float
    h_witness: list
    hbar_lower: float
    hbar_witness: list
    hbar_lower_derived: float | None  # (1 - h_upper)/2, loopless only
    h_upper_derived: float  # 1 - hbar_lower
    bipartite_equality: bool | None
    probes: int


@dataclass(frozen=True)
class InfinityConstants:
    family: str
    rows: tuple
    h_inf: Estimate
    hbar_inf: Estimate
    bands: dict
    verdict: str
    notes: tuple
    config: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "config": self.config,
            "rows": [
                {
                    "k": r.k,
                    "h_upper": {"value": r.h_upper, "side": "upper", "witness": r.h_witness},
                    "hbar_lower": {"value": r.hbar_lower, "side": "lower", "witness": r.hbar_witness},
                    "hbar_lower_from_h": r.hbar_lower_derived,
                    "h_upper_from_hbar": r.h_upper_derived,
                    "bipartite_equality": r.bipartite_equality,
                    "probes": r.probes,
                }
                for r in self.rows
            ],
            "h_inf": self.h_inf.to_json(),
            "hbar_inf": self.hbar_inf.to_json(),
            "bands": {k: v for k, v in self.bands.items()},
            "verdict": self.verdict,
            "notes": list(self.notes),
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["k", "h_upper", "hbar_lower", "hbar_lower_from_h", "h_upper_from_hbar", "bipartite_equality"])
        for r in self.rows:
            w.writerow([r.k, repr(r.h_upper), repr(r.hbar_lower), _csv(r.hbar_lower_derived), repr(r.h_upper_derived), r.bipartite_equality])
        return buf.getvalue()


def _coords_json(coords):
    from .families import _coord_json

    return [_coord_json(c) for c in coords]


def infinity_constants(family: GraphFamily, k_max: int, probe_size: int = 12) -> InfinityConstants:
    """Probe ``Gamma minus B(root, k)`` with small connected sets for k = 0..k_max."""
    if probe_size > DUAL_CAP:
        raise InputError(f"probe size {probe_size} above the dual Cheeger cap {DUAL_CAP}")
    rows = []
    for k in range(k_max + 1):
        best_h = (math.inf, None)
        best_hb = (-math.inf, None)
        equal = True
        probes = family.annulus_probes(k, probe_size)
        for coords in probes:
            region = family.induced(coords)
            ids = tuple(range(region.graph.n))
            hr = cheeger_exact(region, ids)
            hbr = dual_cheeger_exact(region, ids)
            if hr.value < best_h[0]:
                best_h = (hr.value, _coords_json([coords[i] for i in hr.witness]))
            if hbr.value > best_hb[0]:
                w = hbr.witness
                best_hb = (hbr.value, [_coords_json([coords[i] for i in w.V1]), _coords_json([coords[i] for i in w.V2])])
            if bipartition(region.graph, ids) is not None:
                equal = equal and abs(hbr.value - (1 - hr.value)) <= 1e-12
            else:
                equal = None if equal is not False else False
        derived = None if family.has_loops else (1 - best_h[0]) / 2
        rows.append(InfinityRow(k, best_h[0], best_h[1], best_hb[0], best_hb[1], derived, 1 - best_hb[0],
                                equal if family.bipartite else None, len(probes)))
    ks = [r.k for r in rows]
    h_inf = extrapolate([r.h_upper for r in rows], [k + 1 for k in ks])
    hb_inf = extrapolate([r.hbar_lower for r in rows], [k + 1 for k in ks])
    h_inf = Estimate(h_inf.value, h_inf.side, "per-k upper bounds; " + h_inf.source)
    hb_inf = Estimate(hb_inf.value, hb_inf.side, "per-k lower bounds; " + hb_inf.source)
    bands = {}
    if h_inf.side == "extrapolated" and hb_inf.side == "extrapolated":
        h, hb = min(max(h_inf.value, 0.0), 1.0), min(max(hb_inf.value, 0.0), 1.0)
        bands["top_ess"] = {"lower": 2 * hb + h, "upper": 1 + math.sqrt(max(0.0, 1 - (1 - hb) ** 2)), "side": "extrapolated"}
        bands["bottom_ess"] = {"lower": 1 - math.sqrt(max(0.0, 1 - h * h)), "upper": h, "side": "extrapolated"}
    if family.declared_tail is not None:
        m_inf, k_inf = family.declared_tail
        try:
            lo, hi, verdict = essential_bounds_from_inf(m_inf, k_inf)
            bands["declared_tail"] = {"lower": lo, "upper": hi, "side": "declared", "verdict": verdict}
        except HypothesisError as exc:
            bands["declared_tail"] = {"suppressed": str(exc)}
    if family.threshold is None:
        verdict = "no concentration schedule declared"
    else:
        seq = [r.hbar_lower for r in rows]
        below = all(r.hbar_lower < family.threshold(r.k) for r in rows if r.k >= 1)
        decreasing = all(b <= a + MONO_TOL for a, b in zip(seq, seq[1:]))
        verdict = ("consistent with sigma_ess = {1}" if below and decreasing
                   else "inconclusive")
    notes = (
        "finite probes certify only upper bounds on h and lower bounds on hbar of each deleted set",
        "no finite certificate bounds h_inf from below or hbar_inf from above; limits are extrapolations",
    )
    config = {"k_max": k_max, "probe_size": probe_size, "threshold": family.threshold_label}
    return InfinityConstants(family.name, tuple(rows), h_inf, hb_inf, bands, verdict, notes, config)


# specific checks -----------------------------------------------------------------


@dataclass(frozen=True)
class TraceReport:
    K: int
    omega: tuple
    lambdamax: float
    trace: float
    sum_bound: float
    power_bound: float

    @property
    def ok(self) -> bool:
        tol = 1e-12
        return self.lambdamax <= self.trace + 1e-9 and self.trace <= self.sum_bound + tol and self.sum_bound <= self.power_bound + tol

    def to_json(self) -> dict:
        return {
            "K": self.K, "omega": list(self.omega), "lambdamax": self.lambdamax, "trace": self.trace,
            "sum_bound": self.sum_bound, "power_bound": self.power_bound, "ok": self.ok,
        }


def trace_bound_check(family: GraphFamily, K: int, size: int | None = None, omega=None) -> TraceReport:
    """``lambda_max(Omega) <= sum_{k=K+1}^{K+#Omega} 2/(2^k+2) <= 2^(1-K)`` on the self-loop chain."""
    if family.name != "selfloop_chain":
        raise InputError("the trace bound applies to the self-loop chain only")
    if omega is None:
        if size is None:
            raise InputError("give either size or omega")
        omega = list(range(K + 1, K + 1 + size))
    omega = sorted(set(int(k) for k in omega))
    if not omega or min(omega) <= K:
        raise InputError(f"omega must lie outside B(0, {K})")
    region = family.induced(omega)
    ids = tuple(range(region.graph.n))
    res = dirichlet_spectrum(region, ids)
    g = region.graph
    trace = float(sum(1 - g.loops[i] / g.measure[i] for i in ids))
    sum_bound = float(sum(2.0 / (2.0 ** k + 2.0) for k in range(K + 1, K + len(omega) + 1)))
    return TraceReport(K, tuple(omega), res.lambdamax, trace, sum_bound, 2.0 ** (1 - K))


@dataclass(frozen=True)
class GrowthReport:
    center: object
    r_max: int
    vol: tuple
    Q_ratio: tuple
    q_sum: tuple
    q_over_p: tuple
    rate: float
    C1: float
    growth: str
    tail_ratio_small: bool
    certificate: float | None
    claim: str

    def to_json(self) -> dict:
        return {
            "center": self.center, "r_max": self.r_max, "vol": list(self.vol),
            "Q_over_vol": list(self.Q_ratio), "partial_q_sums": list(self.q_sum),
            "q_over_p": [None if math.isinf(v) else v for v in self.q_over_p],
            "rate": self.rate, "C1": self.C1, "growth": self.growth,
            "tail_ratio_small": self.tail_ratio_small, "certificate": self.certificate, "claim": self.claim,
        }


def volume_growth_check(family: GraphFamily, r_max: int, eps0: float, hbar_certificate: float | None = None,
                        center=None) -> GrowthReport:
    """Sphere-profile ratios and an exponential-growth fit around ``center``."""
    center = family.root if center is None else center
    if r_max < 4:
        raise InputError("need r_max >= 4 for a growth fit")
    region = family.explore(family.depth(center) + r_max + 1)
    x0 = region.id(center)
    prof = sphere_profile(region, x0, r_max)
    vol = np.array(prof.vol)
    Q = np.array(prof.Q)
    q = np.array(prof.q)
    p = np.array(prof.p)
    q_ratio = tuple((Q / vol).tolist())
    q_sum = tuple(np.cumsum(q / vol).tolist())
    q_over_p = tuple(float(a / b) if b > 0 else math.inf for a, b in zip(q, p))
    r = np.arange(r_max + 1)
    tail = r >= r_max // 2
    logv = np.log(vol)
    rate, icpt = np.polyfit(r[tail], logv[tail], 1)
    exp_res = float(np.sum((logv[tail] - (rate * r[tail] + icpt)) ** 2))
    rr = r[tail & (r > 0)]
    pw, pc = np.polyfit(np.log(rr), logv[tail & (r > 0)], 1)
    pow_res = float(np.sum((logv[tail & (r > 0)] - (pw * np.log(rr) + pc)) ** 2))
    growth = "exponential" if rate > 0 and exp_res <= pow_res else "subexponential"
    C1 = float(np.min(vol * np.exp(-rate * r)))
    small_tail = max(q_ratio[r_max // 2:]) < eps0
    if hbar_certificate is None:
        claim = "no certificate: hypotheses reported only"
    elif hbar_certificate > 1 - eps0:
        claim = f"certificate {hbar_certificate} exceeds 1 - eps0: no claim"
    elif not small_tail:
        claim = "hypothesis on Q_r/vol(B_r) fails: no claim"
    elif growth == "exponential" and rate > 0:
        claim = f"vol(B_r) >= {C1:.6g} exp({rate:.6g} r) on 0..{r_max}"
    else:
        claim = "violation: hypotheses hold but growth is not exponential"
    return GrowthReport(_coords_json([center])[0], r_max, tuple(vol.tolist()), q_ratio, q_sum, q_over_p,
                        float(rate), C1, growth, bool(small_tail), hbar_certificate, claim)


def essential_band_from_model(l_sup: float, kappa_inf: float) -> tuple[float, float]:
    """Interval ``[1 + 2 sqrt(l-1)/l - 2 kappa, 2]`` that meets the essential spectrum."""
    if not 2 <= l_sup < math.inf:
        raise HypothesisError(f"need 2 <= l < inf, got {l_sup}")
    if not 0 <= kappa_inf <= 1:
        raise HypothesisError("kappa must lie in [0, 1]")
    lo = 1 + 2 * math.sqrt(l_sup - 1) / l_sup - 2 * kappa_inf
    return max(lo, 0.0), 2.0


def essential_bounds_from_inf(m_minus_inf: float, kappa_inf: float) -> tuple[float, float, str]:
    """Enclosure of the essential spectrum from ``M_{-,inf}`` and ``kappa_inf``.

    With ``l = 1 / M`` the half-width is ``2 sqrt(l-1)/l = 2 sqrt(M (1 - M))``;
    ``M = 0`` is the limit case.  Returns ``(lower, upper, verdict)``.
    """
    if not 0 <= m_minus_inf <= 0.5:
        raise HypothesisError(f"need 0 <= M_minus_inf <= 1/2, got {m_minus_inf}")
    if not 0 <= kappa_inf <= 1:
        raise HypothesisError("kappa must lie in [0, 1]")
    half = 2 * math.sqrt(m_minus_inf * (1 - m_minus_inf))
    lo, hi = max(1 - half - kappa_inf, 0.0), min(1 + half + kappa_inf, 2.0)
    if lo + hi > 2 + 1e-12:
        raise HypothesisError("inconsistent band")
    verdict = "sigma_ess = {1}" if m_minus_inf == 0 and kappa_inf == 0 else "band"
    return lo, hi, verdict
