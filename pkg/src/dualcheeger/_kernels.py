"""Compiled enumeration loops for the exact isoperimetric constants.

Each kernel sweeps its search space with O(n) incremental updates per step and
writes an approximate objective per candidate into an array.  Callers then
re-evaluate the near-optimal candidates from scratch, so drift in the running
sums never decides a witness.
"""
from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def _ctz(k):
    i = 0
    while (k & 1) == 0:
        k >>= 1
        i += 1
    return i


@njit(cache=True)
def cheeger_values(w, mu):
    """``|dU| / vol(U)`` for every mask U (index 0 unused, set to +inf)."""
    n = w.shape[0]
    total = 1 << n
    out = np.empty(total)
    out[0] = np.inf
    s = np.zeros(n)
    inside = np.zeros(n, dtype=np.bool_)
    vol = 0.0
    inner = 0.0
    mask = 0
    for k in range(1, total):
        i = _ctz(k)
        if inside[i]:
            for y in range(n):
                s[y] -= w[y, i]
            inner -= 2.0 * s[i] + w[i, i]
            vol -= mu[i]
            inside[i] = False
        else:
            inner += 2.0 * s[i] + w[i, i]
            for y in range(n):
                s[y] += w[y, i]
            vol += mu[i]
            inside[i] = True
        mask ^= 1 << i
        out[mask] = (vol - inner) / vol
    return out


@njit(cache=True)
def cheeger_exact_value(w, mu, mask):
    n = w.shape[0]
    vol = 0.0
    inner = 0.0
    for x in range(n):
        if (mask >> x) & 1:
            vol += mu[x]
            for y in range(n):
                if (mask >> y) & 1:
                    inner += w[x, y]
    return (vol - inner) / vol


@njit(cache=True)
def dual_values(w, mu):
    """Objective ``2|E(V1,V2)|/(vol V1 + vol V2)`` for each base-3 code.

    Digit x of the code is 0 (unused), 1 (V1) or 2 (V2).  Codes whose lowest
    used vertex is not in V1, or with an empty side, get -inf.
    """
    n = w.shape[0]
    total = 1
    for _ in range(n):
        total *= 3
    out = np.full(total, -np.inf)
    digits = np.zeros(n, dtype=np.int64)
    s1 = np.zeros(n)
    s2 = np.zeros(n)
    cross = 0.0
    vol = 0.0
    n1 = 0
    n2 = 0
    for code in range(1, total):
        # odometer increment: trailing 2s roll over to 0, next digit +1
        i = 0
        while digits[i] == 2:
            # move i from V2 to unused
            for y in range(n):
                s2[y] -= w[y, i]
            cross -= s1[i]
            vol -= mu[i]
            n2 -= 1
            digits[i] = 0
            i += 1
        if digits[i] == 0:
            # unused -> V1
            cross += s2[i]
            for y in range(n):
                s1[y] += w[y, i]
            vol += mu[i]
            n1 += 1
            digits[i] = 1
        else:
            # V1 -> V2
            for y in range(n):
                s1[y] -= w[y, i]
            cross -= s2[i]
            n1 -= 1
            cross += s1[i]
            for y in range(n):
                s2[y] += w[y, i]
            n2 += 1
            digits[i] = 2
        if n1 == 0 or n2 == 0:
            continue
        j = 0
        while digits[j] == 0:
            j += 1
        if digits[j] != 1:
            continue
        out[code] = 2.0 * cross / vol
    return out


@njit(cache=True)
def dual_exact_value(w, mu, m1, m2):
    n = w.shape[0]
    cross = 0.0
    vol = 0.0
    for x in range(n):
        if (m1 >> x) & 1:
            vol += mu[x]
            for y in range(n):
                if (m2 >> y) & 1:
                    cross += w[x, y]
        elif (m2 >> x) & 1:
            vol += mu[x]
    return 2.0 * cross / vol


@njit(cache=True)
def maxcut_values(w):
    """Cut weight for every V1 mask over the first n-1 vertices (vertex n-1 in V2)."""
    n = w.shape[0]
    m = n - 1
    total = 1 << m
    out = np.empty(total)
    out[0] = 0.0
    deg = np.zeros(n)
    for x in range(n):
        for y in range(n):
            if y != x:
                deg[x] += w[x, y]
    s = np.zeros(n)
    inside = np.zeros(n, dtype=np.bool_)
    cross = 0.0
    mask = 0
    for k in range(1, total):
        i = _ctz(k)
        if inside[i]:
            for y in range(n):
                if y != i:
                    s[y] -= w[y, i]
            cross -= deg[i] - 2.0 * s[i]
            inside[i] = False
        else:
            cross += deg[i] - 2.0 * s[i]
            for y in range(n):
                if y != i:
                    s[y] += w[y, i]
            inside[i] = True
        mask ^= 1 << i
        out[mask] = cross
    return out


@njit(cache=True)
def cut_exact_value(w, mask):
    n = w.shape[0]
    cross = 0.0
    for x in range(n):
        if (mask >> x) & 1:
            for y in range(n):
                if not (mask >> y) & 1:
                    cross += w[x, y]
    return cross


def decode3(code: int, n: int) -> tuple[int, int]:
    """Split a base-3 code into (V1 mask, V2 mask)."""
    m1 = m2 = 0
    for x in range(n):
        code, d = divmod(code, 3)
        if d == 1:
            m1 |= 1 << x
        elif d == 2:
            m2 |= 1 << x
    return m1, m2


def bits(mask: int) -> tuple[int, ...]:
    out = []
    x = 0
    while mask:
        if mask & 1:
            out.append(x)
        mask >>= 1
        x += 1
    return tuple(out)
