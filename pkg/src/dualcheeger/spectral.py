"""Dirichlet Laplacians on finite vertex sets and their spectra.

For ``omega`` inside an ambient graph, ``Delta f(x) = f(x) - sum_{y in omega}
mu[x, y] f(y) / mu(x)`` where ``mu(x)`` is the ambient degree.  The operator is
diagonalised through the symmetric form ``L = I - D^-1/2 W D^-1/2`` with a
cyclic Jacobi method.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

import numpy as np

from .errors import ConvergenceError, InputError
from .graph import graph_of, vset

JACOBI_TOL = 1e-12
MAX_SWEEPS = 60
MAX_SIZE = 2000


@dataclass(frozen=True)
class DirichletOperator:
    """``Delta_Omega`` for a vertex set inside an ambient graph."""

    omega: tuple
    degrees: np.ndarray  # ambient mu(x) for x in omega
    weights: np.ndarray  # W restricted to omega
    loops: np.ndarray

    @property
    def size(self) -> int:
        return len(self.omega)

    @property
    def boundary_weights(self) -> np.ndarray:
        """Weight from each vertex of omega to the rest of the ambient graph."""
        return self.degrees - self.weights.sum(axis=1)

    def symmetric(self) -> np.ndarray:
        s = 1.0 / np.sqrt(self.degrees)
        m = np.eye(self.size) - s[:, None] * self.weights * s[None, :]
        return 0.5 * (m + m.T)

    def matrix(self) -> np.ndarray:
        """``Delta_Omega`` in the vertex basis (not symmetric when degrees differ)."""
        return np.eye(self.size) - self.weights / self.degrees[:, None]

    def apply(self, f: np.ndarray) -> np.ndarray:
        f = np.asarray(f, dtype=float)
        return f - (self.weights @ f) / self.degrees

    def inner(self, f: np.ndarray, g: np.ndarray) -> float:
        """``(f, g)_mu``."""
        return float(np.sum(self.degrees * np.asarray(f) * np.asarray(g)))


def dirichlet_operator(ambient, omega: Iterable[int]) -> DirichletOperator:
    g = graph_of(ambient)
    omega = vset(omega, g)
    if not omega:
        raise InputError("omega is empty")
    deg = np.array([g.measure[x] for x in omega], dtype=float)
    if np.any(deg <= 0):
        bad = [x for x, d in zip(omega, deg) if d <= 0]
        raise InputError(f"isolated vertices in omega: {bad}")
    w = g.submatrix(omega)
    return DirichletOperator(omega, deg, w, np.diag(w).copy())


@dataclass(frozen=True)
class SpectralResult:
    """Ascending Dirichlet eigenvalues with eigenvectors.

    ``vectors_sym`` are orthonormal eigenvectors of the symmetric form, one per
    column; ``vectors`` are the corresponding eigenfunctions of Delta, which
    are orthonormal in ``(., .)_mu``.
    """

    omega: tuple
    eigenvalues: np.ndarray
    vectors_sym: np.ndarray
    vectors: np.ndarray
    residual: float
    sweeps: int

    @property
    def lambda1(self) -> float:
        return float(self.eigenvalues[0])

    @property
    def lambdamax(self) -> float:
        return float(self.eigenvalues[-1])

    def to_json(self) -> dict:
        return {
            "eigenvalues": [float(x) for x in self.eigenvalues],
            "residual": float(self.residual),
            "lambda1": self.lambda1,
            "lambdamax": self.lambdamax,
        }


@lru_cache(maxsize=64)
def _round_robin(n: int) -> tuple[tuple[np.ndarray, np.ndarray], ...]:
    """Pairings covering every index pair once, n/2 disjoint pairs per round."""
    m = n + (n % 2)
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        ps, qs = [], []
        for i in range(m // 2):
            a, b = players[i], players[m - 1 - i]
            if a < n and b < n:
                ps.append(min(a, b))
                qs.append(max(a, b))
        rounds.append((np.array(ps, dtype=np.intp), np.array(qs, dtype=np.intp)))
        players = [players[0]] + [players[-1]] + players[1:-1]
    return tuple(rounds)


def jacobi_eigh(a: np.ndarray, tol: float = JACOBI_TOL, max_sweeps: int = MAX_SWEEPS):
    """Eigen-decomposition of a symmetric matrix by cyclic Jacobi rotations.

    Each sweep visits every off-diagonal pair once; pairs are grouped into
    rounds of disjoint rotations that are applied together.  Stops when the
    off-diagonal Frobenius norm falls below ``tol * ||A||_F``.
    Returns ``(values, vectors, sweeps)`` with values unsorted.
    """
    a = np.array(a, dtype=float)
    n = a.shape[0]
    v = np.eye(n)
    if n == 1:
        return a.diagonal().copy(), v, 0
    scale = np.linalg.norm(a)
    if scale == 0:
        return np.zeros(n), v, 0
    rounds = _round_robin(n)
    for sweep in range(max_sweeps + 1):
        off = np.linalg.norm(a - np.diag(a.diagonal()))
        if off <= tol * scale:
            return a.diagonal().copy(), v, sweep
        if sweep == max_sweeps:
            break
        for p, q in rounds:
            apq = a[p, q]
            live = np.abs(apq) > 1e-300
            if not np.any(live):
                continue
            p, q, apq = p[live], q[live], apq[live]
            theta = (a[q, q] - a[p, p]) / (2.0 * apq)
            t = np.where(theta >= 0, 1.0, -1.0) / (np.abs(theta) + np.hypot(theta, 1.0))
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c
            rp, rq = a[p, :], a[q, :]
            a[p, :] = c[:, None] * rp - s[:, None] * rq
            a[q, :] = s[:, None] * rp + c[:, None] * rq
            cp, cq = a[:, p], a[:, q]
            a[:, p] = cp * c - cq * s
            a[:, q] = cp * s + cq * c
            a[p, q] = 0.0
            a[q, p] = 0.0
            vp, vq = v[:, p], v[:, q]
            v[:, p] = vp * c - vq * s
            v[:, q] = vp * s + vq * c
    raise ConvergenceError(f"Jacobi did not converge in {max_sweeps} sweeps (n={n})")


def _normalise_signs(vecs: np.ndarray) -> np.ndarray:
    """Flip each column so its largest-magnitude entry (first on ties) is positive."""
    out = vecs.copy()
    for j in range(out.shape[1]):
        col = out[:, j]
        k = int(np.argmax(np.abs(col) > np.abs(col).max() * (1 - 1e-9)))
        if col[k] < 0:
            out[:, j] = -col
    return out


def spectrum(op: DirichletOperator, method: str = "jacobi") -> SpectralResult:
    """All eigenpairs of ``op``.

    ``method="lapack"`` swaps the Jacobi solver for ``numpy.linalg.eigh``;
    everything else is unchanged.
    """
    n = op.size
    if n > MAX_SIZE:
        raise InputError(f"#omega = {n} exceeds the eigensolver cap {MAX_SIZE}")
    lsym = op.symmetric()
    if method == "jacobi":
        vals, vecs, sweeps = jacobi_eigh(lsym)
    elif method == "lapack":
        vals, vecs = np.linalg.eigh(lsym)
        sweeps = 0
    else:
        raise InputError(f"unknown eigensolver {method!r}")
    order = np.argsort(vals, kind="stable")
    vals = vals[order]
    vecs = _normalise_signs(vecs[:, order])
    funcs = vecs / np.sqrt(op.degrees)[:, None]
    resid = np.linalg.norm(op.matrix() @ funcs - funcs * vals[None, :], axis=0)
    residual = float(resid.max()) if n else 0.0
    if residual > 1e-9 * max(n, 1):
        raise ConvergenceError(f"eigenpair residual {residual:.3e} above budget")
    return SpectralResult(op.omega, vals, vecs, funcs, residual, sweeps)


def dirichlet_spectrum(ambient, omega: Iterable[int], method: str = "jacobi") -> SpectralResult:
    return spectrum(dirichlet_operator(ambient, omega), method)


def green_form(op: DirichletOperator, f, g) -> float:
    """Edge sum ``sum_e theta_xy (f(x) - f(y)) (g(x) - g(y))`` with f, g zero off omega.

    Loops do not contribute (their difference vanishes); edges leaving omega
    contribute ``mu_xy f(x) g(x)``.
    """
    f = np.asarray(f, dtype=float)
    g = np.asarray(g, dtype=float)
    iu, ju = np.triu_indices(op.size, k=1)
    w = op.weights[iu, ju]
    inner = np.sum(w * (f[iu] - f[ju]) * (g[iu] - g[ju]))
    return float(inner + np.sum(op.boundary_weights * f * g))


def rayleigh(op: DirichletOperator, f) -> float:
    f = np.asarray(f, dtype=float)
    denom = op.inner(f, f)
    if denom == 0:
        raise InputError("Rayleigh quotient of the zero function")
    return green_form(op, f, f) / denom


def q_form(op: DirichletOperator, f) -> float:
    """``sum_e theta_xy (f(x) + f(y))^2``, the form of ``2I - Delta``."""
    f = np.asarray(f, dtype=float)
    iu, ju = np.triu_indices(op.size, k=1)
    w = op.weights[iu, ju]
    inner = np.sum(w * (f[iu] + f[ju]) ** 2)
    loops = np.sum(0.5 * op.loops * (2 * f) ** 2)
    return float(inner + loops + np.sum(op.boundary_weights * f * f))


def q_smallest(op: DirichletOperator, result: SpectralResult | None = None) -> float:
    """``2 - lambda_max`` evaluated through the Q-form on the top eigenfunction."""
    if result is None:
        result = spectrum(op)
    f = result.vectors[:, -1]
    xi = q_form(op, f) / op.inner(f, f)
    if abs(xi - (2.0 - result.lambdamax)) > 1e-9:
        raise ConvergenceError(f"Q-form value {xi} disagrees with 2 - lambda_max")
    return xi
