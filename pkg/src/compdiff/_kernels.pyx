# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled diffusion kernels (layered multi-source BFS over CSR adjacency)."""

import numpy as np
cimport numpy as cnp

ctypedef cnp.int64_t i64

cdef enum:
    NEUTRAL = -1
    UNDOMINATED = -2
    CONFLICT = -3
    UNCLAIMED = -4


cdef class _Scratch:
    cdef i64[::1] owner, time, claim, frontier, touched, seedcount

    def __init__(self, Py_ssize_t n):
        self.owner = np.empty(n, dtype=np.int64)
        self.time = np.empty(n, dtype=np.int64)
        self.claim = np.full(n, UNCLAIMED, dtype=np.int64)
        self.frontier = np.empty(n, dtype=np.int64)
        self.touched = np.empty(n, dtype=np.int64)
        self.seedcount = np.zeros(n, dtype=np.int64)


cdef void _run(const i64[::1] indptr, const i64[::1] indices,
               const i64* prof, Py_ssize_t k, _Scratch sc) noexcept nogil:
    cdef Py_ssize_t n = indptr.shape[0] - 1
    cdef Py_ssize_t i, j, f, nf = 0, nt
    cdef i64 s, u, v, p, c, t
    for i in range(n):
        sc.owner[i] = UNDOMINATED
        sc.time[i] = 0
    for i in range(k):
        sc.seedcount[prof[i]] += 1
    for i in range(k):
        s = prof[i]
        if sc.owner[s] != UNDOMINATED:
            continue
        sc.time[s] = 1
        if sc.seedcount[s] == 1:
            sc.owner[s] = i
            sc.frontier[nf] = s
            nf += 1
        else:
            sc.owner[s] = NEUTRAL
    for i in range(k):
        sc.seedcount[prof[i]] = 0
    t = 1
    while nf > 0:
        t += 1
        nt = 0
        for f in range(nf):
            u = sc.frontier[f]
            p = sc.owner[u]
            for j in range(indptr[u], indptr[u + 1]):
                v = indices[j]
                if sc.owner[v] != UNDOMINATED:
                    continue
                c = sc.claim[v]
                if c == UNCLAIMED:
                    sc.claim[v] = p
                    sc.touched[nt] = v
                    nt += 1
                elif c != p:
                    sc.claim[v] = CONFLICT
        nf = 0
        for f in range(nt):
            v = sc.touched[f]
            c = sc.claim[v]
            sc.claim[v] = UNCLAIMED
            sc.time[v] = t
            if c == CONFLICT:
                sc.owner[v] = NEUTRAL
            else:
                sc.owner[v] = c
                sc.frontier[nf] = v
                nf += 1


cdef i64 _utility_of(const i64[::1] weights, _Scratch sc, i64 player) noexcept nogil:
    cdef Py_ssize_t v
    cdef i64 total = 0
    for v in range(weights.shape[0]):
        if sc.owner[v] == player:
            total += weights[v]
    return total


def simulate(const i64[::1] indptr, const i64[::1] indices, const i64[::1] weights, profile):
    cdef Py_ssize_t n = indptr.shape[0] - 1
    cdef i64[::1] prof = np.ascontiguousarray(profile, dtype=np.int64)
    cdef Py_ssize_t k = prof.shape[0], v
    cdef _Scratch sc = _Scratch(n)
    util = np.zeros(k, dtype=np.int64)
    cdef i64[::1] u = util
    _run(indptr, indices, &prof[0], k, sc)
    for v in range(n):
        if sc.owner[v] >= 0:
            u[sc.owner[v]] += weights[v]
    return np.asarray(sc.owner).copy(), np.asarray(sc.time).copy(), util


def deviation_utility(const i64[::1] indptr, const i64[::1] indices, const i64[::1] weights,
                      profile, Py_ssize_t i, i64 v):
    cdef i64[::1] prof = np.array(profile, dtype=np.int64)
    cdef _Scratch sc = _Scratch(indptr.shape[0] - 1)
    prof[i] = v
    _run(indptr, indices, &prof[0], prof.shape[0], sc)
    return int(_utility_of(weights, sc, i))


def first_improvement(const i64[::1] indptr, const i64[::1] indices, const i64[::1] weights,
                      profile):
    cdef Py_ssize_t n = indptr.shape[0] - 1
    cdef i64[::1] prof = np.array(profile, dtype=np.int64)
    cdef Py_ssize_t k = prof.shape[0], i, j
    cdef _Scratch sc = _Scratch(n)
    cdef i64[::1] base = np.zeros(k, dtype=np.int64)
    cdef i64 s, v, u
    cdef bint dup
    _run(indptr, indices, &prof[0], k, sc)
    for v in range(n):
        if sc.owner[v] >= 0:
            base[sc.owner[v]] += weights[v]
    for i in range(k):
        s = prof[i]
        dup = False
        for j in range(i):
            if prof[j] == s:
                dup = True
                break
        if dup:
            continue
        for v in range(n):
            if v == s:
                continue
            prof[i] = v
            _run(indptr, indices, &prof[0], k, sc)
            u = _utility_of(weights, sc, i)
            if u > base[i]:
                return int(i), int(v), int(u - base[i])
        prof[i] = s
    return None


def extra_potential(const i64[::1] indptr, const i64[::1] indices, const i64[::1] weights,
                    profile):
    cdef Py_ssize_t n = indptr.shape[0] - 1
    cdef i64[::1] base = np.ascontiguousarray(profile, dtype=np.int64)
    cdef Py_ssize_t k = base.shape[0], i
    cdef i64[::1] prof = np.empty(k + 1, dtype=np.int64)
    cdef _Scratch sc = _Scratch(n)
    cdef i64 v, u, best = 0
    for i in range(k):
        prof[i] = base[i]
    for v in range(n):
        prof[k] = v
        _run(indptr, indices, &prof[0], k + 1, sc)
        u = _utility_of(weights, sc, k)
        if v == 0 or u > best:
            best = u
    return int(best)
