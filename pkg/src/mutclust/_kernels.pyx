# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot kernels: mutual-dyad extraction, the tendency-Laplacian
matvec, and the k-means Lloyd sweep.  Mirrors ``_kernels_py``."""

import numpy as np

cimport numpy as cnp

cnp.import_array()


def mutual_adjacency(
    const cnp.int64_t[::1] out_indptr,
    const cnp.int64_t[::1] out_indices,
    const cnp.int64_t[::1] in_indptr,
    const cnp.int64_t[::1] in_indices,
):
    """CSR pattern of mutual dyads via sorted-list intersection per node."""
    cdef Py_ssize_t n = out_indptr.shape[0] - 1
    cdef cnp.ndarray[cnp.int64_t, ndim=1] indptr_arr = np.zeros(n + 1, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] indices_arr = np.empty(out_indices.shape[0], dtype=np.int64)
    cdef cnp.int64_t[::1] m_indptr = indptr_arr
    cdef cnp.int64_t[::1] m_indices = indices_arr
    cdef Py_ssize_t i, a, b, a_end, b_end, pos = 0
    cdef cnp.int64_t va, vb

    for i in range(n):
        a = out_indptr[i]
        a_end = out_indptr[i + 1]
        b = in_indptr[i]
        b_end = in_indptr[i + 1]
        while a < a_end and b < b_end:
            va = out_indices[a]
            vb = in_indices[b]
            if va == vb:
                m_indices[pos] = va
                pos += 1
                a += 1
                b += 1
            elif va < vb:
                a += 1
            else:
                b += 1
        m_indptr[i + 1] = pos

    return indptr_arr, np.ascontiguousarray(indices_arr[:pos])


def lt_matvec(
    const cnp.int64_t[::1] indptr,
    const cnp.int64_t[::1] indices,
    const double[::1] dt_diag,
    const double[::1] d,
    double scale,
    const double[::1] x,
):
    """Fused y = D_T x - M x + scale * (d (d.x) - d^2 * x)."""
    cdef Py_ssize_t n = indptr.shape[0] - 1
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(n, dtype=np.float64)
    cdef double[::1] y = out
    cdef Py_ssize_t i, p
    cdef double ddx = 0.0, acc, di

    for i in range(n):
        ddx += d[i] * x[i]
    for i in range(n):
        di = d[i]
        acc = dt_diag[i] * x[i] + scale * (di * ddx - di * di * x[i])
        for p in range(indptr[i], indptr[i + 1]):
            acc -= x[indices[p]]
        y[i] = acc
    return out


def lloyd_step(const double[:, ::1] points, const double[:, ::1] centers):
    """One k-means sweep: nearest-center labels, sums, counts, inertia."""
    cdef Py_ssize_t n = points.shape[0]
    cdef Py_ssize_t dim = points.shape[1]
    cdef Py_ssize_t k = centers.shape[0]
    cdef cnp.ndarray[cnp.int64_t, ndim=1] labels_arr = np.empty(n, dtype=np.int64)
    cdef cnp.ndarray[cnp.float64_t, ndim=2] sums_arr = np.zeros((k, dim), dtype=np.float64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] counts_arr = np.zeros(k, dtype=np.int64)
    cdef cnp.int64_t[::1] labels = labels_arr
    cdef double[:, ::1] sums = sums_arr
    cdef cnp.int64_t[::1] counts = counts_arr
    cdef Py_ssize_t i, c, j, best
    cdef double dist, diff, best_dist, inertia = 0.0

    for i in range(n):
        best = 0
        best_dist = 0.0
        for j in range(dim):
            diff = points[i, j] - centers[0, j]
            best_dist += diff * diff
        for c in range(1, k):
            dist = 0.0
            for j in range(dim):
                diff = points[i, j] - centers[c, j]
                dist += diff * diff
                if dist > best_dist:
                    break
            if dist < best_dist:
                best_dist = dist
                best = c
        labels[i] = best
        counts[best] += 1
        inertia += best_dist
        for j in range(dim):
            sums[best, j] += points[i, j]

    return labels_arr, sums_arr, counts_arr, float(inertia)
