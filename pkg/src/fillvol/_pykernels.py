"""Pure-Python float kernels (fallback for ``_ckernels``).

Same algorithm as the compiled version: a simplex is clipped against the 2N
faces of an axis-aligned box by recursive edge splitting and the surviving
pieces are measured with the Gram determinant.
"""
import math

import numpy as np

MAX_VERTICES = 8
MAX_AMBIENT = 16


def _gram(S, nv):
    k = nv - 1
    if k == 0:
        return 1.0
    base = S[0]
    edges = [[x - b for x, b in zip(S[i + 1], base)] for i in range(k)]
    G = [[sum(a * b for a, b in zip(edges[i], edges[j])) for j in range(k)] for i in range(k)]
    det = 1.0
    for col in range(k):
        piv = max(range(col, k), key=lambda r: abs(G[r][col]))
        if G[piv][col] == 0.0:
            return 0.0
        if piv != col:
            G[col], G[piv] = G[piv], G[col]
            det = -det
        p = G[col][col]
        det *= p
        for r in range(col + 1, k):
            f = G[r][col] / p
            if f:
                row, prow = G[r], G[col]
                for c in range(col, k):
                    row[c] -= f * prow[c]
    if det <= 0.0:
        return 0.0
    return math.sqrt(det) / math.factorial(k)


def _clip(S, nv, N, lo, hi, plane):
    while plane < 2 * N:
        axis = plane >> 1
        upper = plane & 1
        ineg = ipos = -1
        fneg = fpos = 0.0
        for i in range(nv):
            f = S[i][axis] - hi[axis] if upper else lo[axis] - S[i][axis]
            if f < 0.0:
                if ineg < 0:
                    ineg, fneg = i, f
            elif f > 0.0:
                if ipos < 0:
                    ipos, fpos = i, f
        if ipos < 0:
            plane += 1
            continue
        if ineg < 0:
            return 0.0
        t = fneg / (fneg - fpos)
        a, b = S[ineg], S[ipos]
        p = [x + t * (y - x) for x, y in zip(a, b)]
        p[axis] = hi[axis] if upper else lo[axis]
        c1 = list(S)
        c1[ipos] = p
        c2 = list(S)
        c2[ineg] = p
        return _clip(c1, nv, N, lo, hi, plane) + _clip(c2, nv, N, lo, hi, plane)
    return _gram(S, nv)


def _check(simplices):
    simplices = np.ascontiguousarray(simplices, dtype=np.float64)
    if simplices.ndim != 3:
        raise ValueError("expected an (m, k+1, N) array of simplices")
    _, nv, N = simplices.shape
    if nv > MAX_VERTICES or N > MAX_AMBIENT:
        raise ValueError(f"kernel limits exceeded: {nv} vertices, N={N}")
    return simplices


def simplex_volumes(simplices):
    """Euclidean k-volume of each simplex in an (m, k+1, N) array."""
    simplices = _check(simplices)
    nv = simplices.shape[1]
    return np.array([_gram(s.tolist(), nv) for s in simplices], dtype=np.float64)


def box_volumes(simplices, lo, hi):
    """Volume of each simplex intersected with the box [lo, hi]."""
    simplices = _check(simplices)
    m, nv, N = simplices.shape
    lo = [float(x) for x in lo]
    hi = [float(x) for x in hi]
    out = np.zeros(m, dtype=np.float64)
    for i in range(m):
        out[i] = _clip(simplices[i].tolist(), nv, N, lo, hi, 0)
    return out


def growth_profile(simplices, weights, center, radii):
    """sum_i w_i Vol(s_i ∩ [center - r, center + r]) for every r in ``radii``."""
    simplices = _check(simplices)
    m, nv, N = simplices.shape
    weights = np.asarray(weights, dtype=np.float64)
    center = np.asarray(center, dtype=np.float64)
    radii = np.asarray(radii, dtype=np.float64)
    out = np.zeros(len(radii), dtype=np.float64)
    if m == 0:
        return out
    full = simplex_volumes(simplices) * weights
    dev = simplices - center  # (m, nv, N)
    lo_dev = dev.min(axis=1)
    hi_dev = dev.max(axis=1)
    reach = np.maximum(np.abs(lo_dev), np.abs(hi_dev)).max(axis=1)
    gap = np.maximum(lo_dev, -hi_dev).max(axis=1)
    rows = [s.tolist() for s in simplices]
    for j, r in enumerate(radii):
        inside = reach <= r
        total = full[inside].sum()
        partial = np.nonzero(~inside & (gap < r) & (weights != 0))[0]
        if len(partial):
            lo = (center - r).tolist()
            hi = (center + r).tolist()
            for i in partial:
                total += weights[i] * _clip(rows[i], nv, N, lo, hi, 0)
        out[j] = total
    return out
