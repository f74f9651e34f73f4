# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels. ``_fallback.py`` holds the reference Python versions."""

import numpy as np
cimport numpy as cnp
from libc.stdlib cimport malloc, realloc, free, qsort
from libc.math cimport fabs

cnp.import_array()


cdef struct Pt:
    double x
    double y


cdef int _cmp_pt(const void* a, const void* b) noexcept nogil:
    cdef const Pt* p = <const Pt*> a
    cdef const Pt* q = <const Pt*> b
    if p.x < q.x:
        return -1
    if p.x > q.x:
        return 1
    if p.y < q.y:
        return -1
    if p.y > q.y:
        return 1
    return 0


cdef inline double _turn(Pt o, Pt a, Pt b, double tol) noexcept nogil:
    cdef double ax = a.x - o.x
    cdef double ay = a.y - o.y
    cdef double bx = b.x - o.x
    cdef double by = b.y - o.y
    cdef double cr = ax * by - ay * bx
    return cr - tol * ((fabs(ax) + fabs(ay)) * (fabs(bx) + fabs(by)))


cdef Py_ssize_t _chain(Pt* pts, Py_ssize_t n, Pt* out, Pt* work, double tol) noexcept nogil:
    # pts sorted; writes hull to out, returns its size
    cdef Py_ssize_t i, k, m, t
    if n <= 2:
        m = 0
        for i in range(n):
            if m == 0 or out[m - 1].x != pts[i].x or out[m - 1].y != pts[i].y:
                out[m] = pts[i]
                m += 1
        return m
    k = 0
    for i in range(n):
        while k >= 2 and _turn(work[k - 2], work[k - 1], pts[i], tol) <= 0.0:
            k -= 1
        work[k] = pts[i]
        k += 1
    m = 0
    for i in range(k - 1):
        out[m] = work[i]
        m += 1
    k = 0
    for t in range(n):
        i = n - 1 - t
        while k >= 2 and _turn(work[k - 2], work[k - 1], pts[i], tol) <= 0.0:
            k -= 1
        work[k] = pts[i]
        k += 1
    for i in range(k - 1):
        out[m] = work[i]
        m += 1
    if m == 0:
        out[0] = pts[0]
        m = 1
    return m


def hull_dp_float(int n_nodes, src, dst, f, phi, g, int n_max, double tol=1e-12):
    cdef cnp.int64_t[:] s = np.ascontiguousarray(src, dtype=np.int64)
    cdef cnp.int64_t[:] t = np.ascontiguousarray(dst, dtype=np.int64)
    cdef double[:] fv = np.ascontiguousarray(f, dtype=np.float64)
    cdef double[:] pv = np.ascontiguousarray(phi, dtype=np.float64)
    cdef double[:] gv = np.ascontiguousarray(g, dtype=np.float64)
    cdef Py_ssize_t n_edges = s.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] c = np.empty(n_max, dtype=np.float64)

    # hull storage: node v owns hull[v*cap : v*cap + size[v]]
    cdef Py_ssize_t cap = 64
    cdef Py_ssize_t cand_cap = 64
    cdef Pt* hull = <Pt*> malloc(n_nodes * cap * sizeof(Pt))
    cdef Pt* nxt = <Pt*> malloc(n_nodes * cap * sizeof(Pt))
    cdef Py_ssize_t* size = <Py_ssize_t*> malloc(n_nodes * sizeof(Py_ssize_t))
    cdef Py_ssize_t* nsize = <Py_ssize_t*> malloc(n_nodes * sizeof(Py_ssize_t))
    cdef Pt* cand = <Pt*> malloc(cand_cap * sizeof(Pt))
    cdef Pt* work = <Pt*> malloc(cand_cap * sizeof(Pt))
    cdef Pt* tmp
    cdef Py_ssize_t v, e, i, k, m, need, watermark = 2, new_cap
    cdef double best, ax, fe, pe, ge
    cdef Pt p
    if not hull or not nxt or not size or not nsize or not cand or not work:
        raise MemoryError()
    try:
        for v in range(n_nodes):
            hull[v * cap].x = 0.0
            hull[v * cap].y = -1.0
            hull[v * cap + 1].x = 0.0
            hull[v * cap + 1].y = 1.0
            size[v] = 2
        for i in range(n_max):
            best = 0.0
            for v in range(n_nodes):
                need = 0
                for e in range(n_edges):
                    if t[e] == v:
                        need += size[s[e]]
                if need > cand_cap:
                    while cand_cap < need:
                        cand_cap *= 2
                    cand = <Pt*> realloc(cand, cand_cap * sizeof(Pt))
                    work = <Pt*> realloc(work, cand_cap * sizeof(Pt))
                    if not cand or not work:
                        raise MemoryError()
                m = 0
                for e in range(n_edges):
                    if t[e] != v:
                        continue
                    fe = fv[e]
                    pe = pv[e]
                    ge = gv[e]
                    for k in range(size[s[e]]):
                        p = hull[s[e] * cap + k]
                        cand[m].x = fe * p.x + pe * p.y
                        cand[m].y = ge * p.y
                        m += 1
                qsort(cand, m, sizeof(Pt), _cmp_pt)
                if m > cap:
                    # grow hull buffers; copying existing hulls into the new layout
                    new_cap = cap
                    while new_cap < m:
                        new_cap *= 2
                    tmp = <Pt*> malloc(n_nodes * new_cap * sizeof(Pt))
                    if not tmp:
                        raise MemoryError()
                    for e in range(n_nodes):
                        for k in range(size[e]):
                            tmp[e * new_cap + k] = hull[e * cap + k]
                    free(hull)
                    hull = tmp
                    tmp = <Pt*> malloc(n_nodes * new_cap * sizeof(Pt))
                    if not tmp:
                        raise MemoryError()
                    for e in range(v):
                        for k in range(nsize[e]):
                            tmp[e * new_cap + k] = nxt[e * cap + k]
                    free(nxt)
                    nxt = tmp
                    cap = new_cap
                nsize[v] = _chain(cand, m, &nxt[v * cap], work, tol)
                if nsize[v] > watermark:
                    watermark = nsize[v]
                for k in range(nsize[v]):
                    ax = fabs(nxt[v * cap + k].x)
                    if ax > best:
                        best = ax
            tmp = hull
            hull = nxt
            nxt = tmp
            for v in range(n_nodes):
                size[v] = nsize[v]
            c[i] = best
    finally:
        free(hull)
        free(nxt)
        free(size)
        free(nsize)
        free(cand)
        free(work)
    return c, int(watermark)


def window_discrepancy(q, long w):
    """``max |q[j] - q[i]|`` over ``i < j`` with ``j - i <= w`` (monotone deques)."""
    cdef cnp.int64_t[:] a = np.ascontiguousarray(q, dtype=np.int64)
    cdef Py_ssize_t n = a.shape[0]
    if n < 2 or w < 1:
        return 0
    cdef Py_ssize_t* dmax = <Py_ssize_t*> malloc(n * sizeof(Py_ssize_t))
    cdef Py_ssize_t* dmin = <Py_ssize_t*> malloc(n * sizeof(Py_ssize_t))
    cdef Py_ssize_t hmax = 0, tmax = 0, hmin = 0, tmin = 0, j
    cdef cnp.int64_t best = 0, d
    if not dmax or not dmin:
        free(dmax)
        free(dmin)
        raise MemoryError()
    with nogil:
        for j in range(n):
            while hmax < tmax and dmax[hmax] < j - w:
                hmax += 1
            while hmin < tmin and dmin[hmin] < j - w:
                hmin += 1
            if hmax < tmax:
                d = a[dmax[hmax]] - a[j]
                if d > best:
                    best = d
            if hmin < tmin:
                d = a[j] - a[dmin[hmin]]
                if d > best:
                    best = d
            while hmax < tmax and a[dmax[tmax - 1]] <= a[j]:
                tmax -= 1
            dmax[tmax] = j
            tmax += 1
            while hmin < tmin and a[dmin[tmin - 1]] >= a[j]:
                tmin -= 1
            dmin[tmin] = j
            tmin += 1
    free(dmax)
    free(dmin)
    return int(best)
