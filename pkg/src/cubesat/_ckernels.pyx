# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled subcube kernels. Mirrors ``cubesat._pykernels`` exactly."""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t, int32_t, uint8_t

cnp.import_array()


cdef inline int64_t _next_base(int64_t v, int64_t free) nogil:
    return ((v | free) + 1) & ~free


def scan(const uint8_t[:, ::1] edges, const int64_t[:, ::1] combos):
    """Count full subcubes and the per-edge completion counts.

    ``combos`` holds one direction set per row.  Returns ``(copies, cover)``
    where ``cover[d, b]`` counts subcubes whose only missing edge is
    ``(b, d)``.
    """
    cdef Py_ssize_t n = edges.shape[0]
    cdef int64_t N = edges.shape[1]
    cdef Py_ssize_t m = combos.shape[1]
    cdef Py_ssize_t ncombo = combos.shape[0]
    cover_arr = np.zeros((n, N), dtype=np.int32)
    cdef int32_t[:, ::1] cover = cover_arr
    cdef int64_t copies = 0
    cdef int64_t total = m << (m - 1) if m > 0 else 0
    cdef Py_ssize_t c, j
    cdef int64_t free, v, rest, o, present, miss_b, d
    cdef int miss_d
    with nogil:
        for c in range(ncombo):
            free = 0
            for j in range(m):
                free |= (<int64_t>1) << combos[c, j]
            v = 0
            while v < N:
                present = 0
                miss_d = -1
                miss_b = 0
                for j in range(m):
                    d = combos[c, j]
                    rest = free & ~((<int64_t>1) << d)
                    o = rest
                    while True:
                        if edges[d, v | o]:
                            present += 1
                        else:
                            miss_d = <int>d
                            miss_b = v | o
                        if o == 0:
                            break
                        o = (o - 1) & rest
                if present == total:
                    copies += 1
                elif present == total - 1:
                    cover[miss_d, miss_b] += 1
                v = _next_base(v, free)
    return copies, cover_arr


cdef int64_t _new_copies(const uint8_t[:, ::1] edges, int64_t base, int64_t d,
                         const int64_t[:, ::1] combos) noexcept nogil:
    cdef Py_ssize_t ncombo = combos.shape[0]
    cdef Py_ssize_t k = combos.shape[1]
    cdef Py_ssize_t c, j, i
    cdef int64_t free, v, rest, o, dd
    cdef int64_t count = 0
    cdef bint ok
    for c in range(ncombo):
        free = (<int64_t>1) << d
        for j in range(k):
            free |= (<int64_t>1) << combos[c, j]
        v = base & ~free
        ok = True
        for i in range(k + 1):
            if i == k:
                dd = d
            else:
                dd = combos[c, i]
            rest = free & ~((<int64_t>1) << dd)
            o = rest
            while True:
                if not (dd == d and (v | o) == base):
                    if not edges[dd, v | o]:
                        ok = False
                        break
                if o == 0:
                    break
                o = (o - 1) & rest
            if not ok:
                break
        if ok:
            count += 1
    return count


def new_copies(const uint8_t[:, ::1] edges, int64_t base, int64_t d,
               const int64_t[:, ::1] combos):
    """Subcubes through edge ``(base, d)`` whose other edges are all present.

    ``combos`` lists the candidate sets of companion directions (size m-1,
    none equal to ``d``).
    """
    return _new_copies(edges, base, d, combos)


def greedy(uint8_t[:, ::1] edges, const int64_t[::1] bases,
           const int64_t[::1] dirs, object combos_by_dir):
    """Add each listed absent edge, in order, unless it completes a subcube.

    ``combos_by_dir[d]`` is the companion-direction array for direction d.
    Mutates ``edges`` and returns the number of edges added.
    """
    cdef Py_ssize_t i, count = len(bases)
    cdef int64_t added = 0
    cdef int64_t b, d
    for i in range(count):
        b = bases[i]
        d = dirs[i]
        if edges[d, b]:
            continue
        if _new_copies(edges, b, d, combos_by_dir[d]) == 0:
            edges[d, b] = 1
            added += 1
    return added
