# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot loops; same contracts as ``_kernels_py``."""

import numpy as np
cimport numpy as cnp
from libc.math cimport cos, sin, M_PI
from libc.stdlib cimport malloc, free

cnp.import_array()


cdef inline void _decode(long long code, int n, int p, long long *X) noexcept nogil:
    cdef int N = 2 * n
    cdef int i, j
    cdef long long c
    for i in range(N * N):
        X[i] = 0
    for i in range(n):
        for j in range(n):
            c = code % p
            code //= p
            X[i * N + j] = c
            X[(n + j) * N + n + i] = (p - c) % p
    for i in range(n):
        for j in range(i, n):
            c = code % p
            code //= p
            X[i * N + n + j] = c
            X[j * N + n + i] = c
    for i in range(n):
        for j in range(i, n):
            c = code % p
            code //= p
            X[(n + i) * N + j] = c
            X[(n + j) * N + i] = c


cdef inline long long _encode(int n, int p, long long *X) noexcept nogil:
    cdef int N = 2 * n
    cdef int i, j
    cdef long long code = 0, w = 1
    for i in range(n):
        for j in range(n):
            code += X[i * N + j] * w
            w *= p
    for i in range(n):
        for j in range(i, n):
            code += X[i * N + n + j] * w
            w *= p
    for i in range(n):
        for j in range(i, n):
            code += X[(n + i) * N + j] * w
            w *= p
    return code


cdef inline void _matmul(int N, int p, long long *A, long long *B, long long *C) noexcept nogil:
    cdef int i, j, k
    cdef long long s
    for i in range(N):
        for j in range(N):
            s = 0
            for k in range(N):
                s += A[i * N + k] * B[k * N + j]
            C[i * N + j] = s % p


def nilpotent_codes(int n, int p):
    cdef int N = 2 * n
    cdef int dim = n * (2 * n + 1)
    cdef long long total = 1
    cdef int i, k
    for i in range(dim):
        total *= p
    cdef long long *X = <long long *> malloc(N * N * sizeof(long long))
    cdef long long *P = <long long *> malloc(N * N * sizeof(long long))
    cdef long long *T = <long long *> malloc(N * N * sizeof(long long))
    cdef long long code
    cdef bint zero
    out = []
    try:
        for code in range(total):
            _decode(code, n, p, X)
            for i in range(N * N):
                P[i] = X[i]
            zero = False
            for k in range(N - 1):
                _matmul(N, p, P, X, T)
                zero = True
                for i in range(N * N):
                    P[i] = T[i]
                    if T[i] != 0:
                        zero = False
                if zero:
                    break
            if zero:
                out.append(code)
    finally:
        free(X); free(P); free(T)
    return np.array(out, dtype=np.int64)


cdef inline Py_ssize_t _search(long long[::1] codes, long long key) noexcept nogil:
    cdef Py_ssize_t lo = 0, hi = codes.shape[0] - 1, mid
    while lo <= hi:
        mid = (lo + hi) >> 1
        if codes[mid] < key:
            lo = mid + 1
        elif codes[mid] > key:
            hi = mid - 1
        else:
            return mid
    return -1


def conjugation_orbits(codes, gens, int n, int p):
    cdef long long[::1] cv = np.ascontiguousarray(codes, dtype=np.int64)
    cdef Py_ssize_t M = cv.shape[0]
    cdef int N = 2 * n
    cdef int G = len(gens)
    cdef long long[:, ::1] gs = np.ascontiguousarray(
        np.stack([np.asarray(g, dtype=np.int64).reshape(-1) for g, _ in gens]))
    cdef long long[:, ::1] gis = np.ascontiguousarray(
        np.stack([np.asarray(gi, dtype=np.int64).reshape(-1) for _, gi in gens]))
    labels_np = np.full(M, -1, dtype=np.int64)
    cdef long long[::1] labels = labels_np
    queue_np = np.empty(M, dtype=np.int64)
    cdef long long[::1] queue = queue_np
    cdef long long *X = <long long *> malloc(N * N * sizeof(long long))
    cdef long long *T = <long long *> malloc(N * N * sizeof(long long))
    cdef long long *Y = <long long *> malloc(N * N * sizeof(long long))
    cdef Py_ssize_t s, head, tail, i, j
    cdef int a
    cdef long long orbit = 0
    try:
        with nogil:
            for s in range(M):
                if labels[s] >= 0:
                    continue
                labels[s] = orbit
                head = 0
                tail = 1
                queue[0] = s
                while head < tail:
                    i = queue[head]
                    head += 1
                    _decode(cv[i], n, p, X)
                    for a in range(G):
                        _matmul(N, p, &gs[a, 0], X, T)
                        _matmul(N, p, T, &gis[a, 0], Y)
                        j = _search(cv, _encode(n, p, Y))
                        if j < 0:
                            with gil:
                                raise ValueError("code set is not closed under conjugation")
                        if labels[j] < 0:
                            labels[j] = orbit
                            queue[tail] = j
                            tail += 1
                orbit += 1
    finally:
        free(X); free(T); free(Y)
    return labels_np


def character_sums(xs, ys, weights, int p):
    cdef long long[:, ::1] xv = np.ascontiguousarray(xs, dtype=np.int64)
    cdef long long[:, ::1] yv = np.ascontiguousarray(ys, dtype=np.int64)
    w = np.ascontiguousarray(weights, dtype=np.complex128)
    cdef double[::1] wr = np.ascontiguousarray(w.real)
    cdef double[::1] wi = np.ascontiguousarray(w.imag)
    cdef Py_ssize_t nx = xv.shape[0], ny = yv.shape[0], d = xv.shape[1]
    cdef Py_ssize_t a, b, k
    cdef long long s
    cdef double acc_r, acc_i
    cdef double *cr = <double *> malloc(p * sizeof(double))
    cdef double *ci = <double *> malloc(p * sizeof(double))
    out_np = np.empty(nx, dtype=np.complex128)
    cdef double complex[::1] out = out_np
    try:
        for k in range(p):
            cr[k] = cos(2.0 * M_PI * k / p)
            ci[k] = sin(2.0 * M_PI * k / p)
        with nogil:
            for a in range(nx):
                acc_r = 0.0
                acc_i = 0.0
                for b in range(ny):
                    s = 0
                    for k in range(d):
                        s += xv[a, k] * yv[b, k]
                    s = s % p
                    if s < 0:
                        s += p
                    acc_r += wr[b] * cr[s] - wi[b] * ci[s]
                    acc_i += wr[b] * ci[s] + wi[b] * cr[s]
                out[a] = acc_r + 1j * acc_i
    finally:
        free(cr); free(ci)
    return out_np
