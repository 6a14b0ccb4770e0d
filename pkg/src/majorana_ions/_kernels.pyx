# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled fixed-step RK4 propagator for ``H(t) = sum_m f_m(t) A_m``.

Pauli-sum Hamiltonians have a handful of nonzeros per row, so the terms
are packed once into a shared CSR pattern and each stage costs O(nnz).
"""
import numpy as np
cimport numpy as cnp

cnp.import_array()


cdef void _combine(const double complex[:, ::1] vals, const double[::1] c,
                   double complex[::1] h) noexcept nogil:
    # h[p] = sum_m c[m] * vals[p, m]
    cdef Py_ssize_t p, m
    cdef Py_ssize_t nnz = vals.shape[0], nt = vals.shape[1]
    cdef double complex acc
    for p in range(nnz):
        acc = 0
        for m in range(nt):
            acc = acc + c[m] * vals[p, m]
        h[p] = acc


cdef void _deriv(const long long[::1] indptr, const long long[::1] cols,
                 const double complex[::1] h, const double complex[::1] v,
                 double complex[::1] out) noexcept nogil:
    # out = -i * H @ v
    cdef Py_ssize_t i, p
    cdef Py_ssize_t d = indptr.shape[0] - 1
    cdef double re, im
    for i in range(d):
        re = 0.0
        im = 0.0
        for p in range(indptr[i], indptr[i + 1]):
            re = re + h[p].real * v[cols[p]].real - h[p].imag * v[cols[p]].imag
            im = im + h[p].real * v[cols[p]].imag + h[p].imag * v[cols[p]].real
        out[i] = im - 1j * re


def _pack(ops):
    A = np.ascontiguousarray(ops, dtype=np.complex128)
    rows, cols = np.nonzero(np.any(A != 0, axis=0))
    indptr = np.zeros(A.shape[1] + 1, dtype=np.int64)
    np.cumsum(np.bincount(rows, minlength=A.shape[1]), out=indptr[1:])
    vals = np.ascontiguousarray(A[:, rows, cols].T)
    return indptr, cols.astype(np.int64), vals


def rk4_propagate(ops, coefs, psi0, double dt, record):
    """Integrate ``i dpsi/dt = H(t) psi`` and return the states at ``record`` steps.

    ``coefs[n, 0/1/2, m]`` are the term weights at the start, midpoint and
    end of step ``n``.
    """
    indptr_arr, cols_arr, vals_arr = _pack(ops)
    cdef const long long[::1] indptr = indptr_arr
    cdef const long long[::1] cols = cols_arr
    cdef const double complex[:, ::1] vals = vals_arr
    cdef const double[:, :, ::1] C = np.ascontiguousarray(coefs, dtype=np.float64)
    cdef const long long[::1] rec = np.ascontiguousarray(record, dtype=np.int64)
    cdef Py_ssize_t d = indptr.shape[0] - 1, nsteps = C.shape[0], nrec = rec.shape[0]
    cdef Py_ssize_t nnz = vals.shape[0]
    out_arr = np.empty((nrec, d), dtype=np.complex128)
    cdef double complex[:, ::1] out = out_arr
    cdef double complex[::1] psi = np.array(psi0, dtype=np.complex128)
    cdef double complex[::1] tmp = np.empty(d, dtype=np.complex128)
    cdef double complex[::1] k1 = np.empty(d, dtype=np.complex128)
    cdef double complex[::1] k2 = np.empty(d, dtype=np.complex128)
    cdef double complex[::1] k3 = np.empty(d, dtype=np.complex128)
    cdef double complex[::1] k4 = np.empty(d, dtype=np.complex128)
    cdef double complex[::1] h0 = np.empty(nnz, dtype=np.complex128)
    cdef double complex[::1] h1 = np.empty(nnz, dtype=np.complex128)
    cdef double complex[::1] h2 = np.empty(nnz, dtype=np.complex128)
    cdef Py_ssize_t n, i, r = 0
    cdef double half = 0.5 * dt, sixth = dt / 6.0
    if nrec and rec[nrec - 1] > nsteps:
        raise ValueError("record index beyond the last step")
    with nogil:
        while r < nrec and rec[r] == 0:
            for i in range(d):
                out[r, i] = psi[i]
            r += 1
        for n in range(nsteps):
            _combine(vals, C[n, 0], h0)
            _combine(vals, C[n, 1], h1)
            _combine(vals, C[n, 2], h2)
            _deriv(indptr, cols, h0, psi, k1)
            for i in range(d):
                tmp[i] = psi[i] + half * k1[i]
            _deriv(indptr, cols, h1, tmp, k2)
            for i in range(d):
                tmp[i] = psi[i] + half * k2[i]
            _deriv(indptr, cols, h1, tmp, k3)
            for i in range(d):
                tmp[i] = psi[i] + dt * k3[i]
            _deriv(indptr, cols, h2, tmp, k4)
            for i in range(d):
                psi[i] = psi[i] + sixth * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])
            while r < nrec and rec[r] == n + 1:
                for i in range(d):
                    out[r, i] = psi[i]
                r += 1
    return out_arr
