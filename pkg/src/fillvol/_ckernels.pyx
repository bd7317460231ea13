# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled float kernels: box-clipped simplex volumes and volume growth profiles.

Mirrors ``_pykernels`` exactly; only the inner loops differ.
"""
import numpy as np

from libc.math cimport sqrt, fabs
from libc.string cimport memcpy

cdef enum:
    MAXV = 8
    MAXN = 16

MAX_VERTICES = MAXV
MAX_AMBIENT = MAXN

cdef double[8] _FACT = [1.0, 1.0, 2.0, 6.0, 24.0, 120.0, 720.0, 5040.0]


cdef double _gram(const double* S, int nv, int N) noexcept nogil:
    cdef double G[MAXV][MAXV]
    cdef double E[MAXV][MAXN]
    cdef int k = nv - 1
    cdef int i, j, a, r, c, piv
    cdef double det = 1.0, s, p, f, best, tmp
    if k == 0:
        return 1.0
    for i in range(k):
        for a in range(N):
            E[i][a] = S[(i + 1) * N + a] - S[a]
    for i in range(k):
        for j in range(i, k):
            s = 0.0
            for a in range(N):
                s += E[i][a] * E[j][a]
            G[i][j] = s
            G[j][i] = s
    for c in range(k):
        piv = c
        best = fabs(G[c][c])
        for r in range(c + 1, k):
            if fabs(G[r][c]) > best:
                best = fabs(G[r][c])
                piv = r
        if best == 0.0:
            return 0.0
        if piv != c:
            for j in range(k):
                tmp = G[c][j]
                G[c][j] = G[piv][j]
                G[piv][j] = tmp
            det = -det
        p = G[c][c]
        det *= p
        for r in range(c + 1, k):
            f = G[r][c] / p
            if f != 0.0:
                for j in range(c, k):
                    G[r][j] -= f * G[c][j]
    if det <= 0.0:
        return 0.0
    return sqrt(det) / _FACT[k]


cdef double _clip(const double* S, int nv, int N, const double* lo, const double* hi, int plane) noexcept nogil:
    cdef double C[MAXV * MAXN]
    cdef double P[MAXN]
    cdef int i, a, axis, upper, ineg, ipos
    cdef double f, fneg = 0.0, fpos = 0.0, t, total
    while plane < 2 * N:
        axis = plane >> 1
        upper = plane & 1
        ineg = -1
        ipos = -1
        for i in range(nv):
            if upper:
                f = S[i * N + axis] - hi[axis]
            else:
                f = lo[axis] - S[i * N + axis]
            if f < 0.0:
                if ineg < 0:
                    ineg = i
                    fneg = f
            elif f > 0.0:
                if ipos < 0:
                    ipos = i
                    fpos = f
        if ipos < 0:
            plane += 1
            continue
        if ineg < 0:
            return 0.0
        t = fneg / (fneg - fpos)
        for a in range(N):
            P[a] = S[ineg * N + a] + t * (S[ipos * N + a] - S[ineg * N + a])
        P[axis] = hi[axis] if upper else lo[axis]
        memcpy(C, S, nv * N * sizeof(double))
        memcpy(&C[ipos * N], P, N * sizeof(double))
        total = _clip(C, nv, N, lo, hi, plane)
        memcpy(C, S, nv * N * sizeof(double))
        memcpy(&C[ineg * N], P, N * sizeof(double))
        total += _clip(C, nv, N, lo, hi, plane)
        return total
    return _gram(S, nv, N)


def _check(simplices):
    simplices = np.ascontiguousarray(simplices, dtype=np.float64)
    if simplices.ndim != 3:
        raise ValueError("expected an (m, k+1, N) array of simplices")
    _, nv, N = simplices.shape
    if nv > MAXV or N > MAXN:
        raise ValueError(f"kernel limits exceeded: {nv} vertices, N={N}")
    return simplices


def simplex_volumes(simplices):
    """Euclidean k-volume of each simplex in an (m, k+1, N) array."""
    cdef double[:, :, ::1] S = _check(simplices)
    cdef Py_ssize_t m = S.shape[0], i
    cdef int nv = S.shape[1], N = S.shape[2]
    out = np.zeros(m, dtype=np.float64)
    cdef double[::1] o = out
    if m == 0:
        return out
    with nogil:
        for i in range(m):
            o[i] = _gram(&S[i, 0, 0], nv, N)
    return out


def box_volumes(simplices, lo, hi):
    """Volume of each simplex intersected with the box [lo, hi]."""
    cdef double[:, :, ::1] S = _check(simplices)
    cdef double[::1] L = np.ascontiguousarray(lo, dtype=np.float64)
    cdef double[::1] H = np.ascontiguousarray(hi, dtype=np.float64)
    cdef Py_ssize_t m = S.shape[0], i
    cdef int nv = S.shape[1], N = S.shape[2]
    out = np.zeros(m, dtype=np.float64)
    cdef double[::1] o = out
    if m == 0:
        return out
    with nogil:
        for i in range(m):
            o[i] = _clip(&S[i, 0, 0], nv, N, &L[0], &H[0], 0)
    return out


def growth_profile(simplices, weights, center, radii):
    """sum_i w_i Vol(s_i ∩ [center - r, center + r]) for every r in ``radii``."""
    cdef double[:, :, ::1] S = _check(simplices)
    cdef double[::1] W = np.ascontiguousarray(weights, dtype=np.float64)
    cdef double[::1] X = np.ascontiguousarray(center, dtype=np.float64)
    cdef double[::1] R = np.ascontiguousarray(radii, dtype=np.float64)
    cdef Py_ssize_t m = S.shape[0], nr = R.shape[0], i, j
    cdef int nv = S.shape[1], N = S.shape[2], v, a
    cdef double lo[MAXN]
    cdef double hi[MAXN]
    cdef double r, d, total
    out = np.zeros(nr, dtype=np.float64)
    cdef double[::1] o = out
    if m == 0:
        return out
    full_arr = np.zeros(m, dtype=np.float64)
    reach_arr = np.zeros(m, dtype=np.float64)
    gap_arr = np.full(m, -1e300, dtype=np.float64)
    cdef double[::1] full = full_arr
    cdef double[::1] reach = reach_arr
    cdef double[::1] gap = gap_arr
    cdef double mn, mx
    with nogil:
        for i in range(m):
            full[i] = W[i] * _gram(&S[i, 0, 0], nv, N)
            for a in range(N):
                mn = 1e300
                mx = -1e300
                for v in range(nv):
                    d = S[i, v, a] - X[a]
                    if d < mn:
                        mn = d
                    if d > mx:
                        mx = d
                if fabs(mn) > reach[i]:
                    reach[i] = fabs(mn)
                if fabs(mx) > reach[i]:
                    reach[i] = fabs(mx)
                if mn > gap[i]:
                    gap[i] = mn
                if -mx > gap[i]:
                    gap[i] = -mx
        for j in range(nr):
            r = R[j]
            for a in range(N):
                lo[a] = X[a] - r
                hi[a] = X[a] + r
            total = 0.0
            for i in range(m):
                if W[i] == 0.0:
                    continue
                if reach[i] <= r:
                    total += full[i]
                elif gap[i] < r:
                    total += W[i] * _clip(&S[i, 0, 0], nv, N, lo, hi, 0)
            o[j] = total
    return out
