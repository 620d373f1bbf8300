"""Exact linear algebra over F_p on small integer matrices."""

from __future__ import annotations

import numpy as np


def as_matrix(M, p: int) -> np.ndarray:
    return np.asarray(M, dtype=np.int64) % p


def row_reduce(M, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of M over F_p and its pivot columns."""
    A = as_matrix(M, p).copy()
    rows, cols = A.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            A[[r, k]] = A[[k, r]]
        A[r] = A[r] * pow(int(A[r, c]), -1, p) % p
        for i in range(rows):
            if i != r and A[i, c]:
                A[i] = (A[i] - A[i, c] * A[r]) % p
        pivots.append(c)
        r += 1
    return A, pivots


def rank(M, p: int) -> int:
    M = np.asarray(M)
    if M.size == 0:
        return 0
    return len(row_reduce(M, p)[1])


def nullspace(M, p: int) -> np.ndarray:
    """Basis of {x : M x = 0} over F_p, one vector per row."""
    M = as_matrix(M, p)
    cols = M.shape[1]
    R, pivots = row_reduce(M, p)
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for i, c in enumerate(pivots):
            basis[k, c] = -R[i, f] % p
    return basis


def inverse(M, p: int) -> np.ndarray:
    M = as_matrix(M, p)
    n = M.shape[0]
    R, pivots = row_reduce(np.hstack([M, np.eye(n, dtype=np.int64)]), p)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular mod p")
    return R[:, n:]


def det(M, p: int) -> int:
    A = as_matrix(M, p).copy()
    n = A.shape[0]
    d = 1
    for c in range(n):
        nz = np.nonzero(A[c:, c])[0]
        if nz.size == 0:
            return 0
        k = c + nz[0]
        if k != c:
            A[[c, k]] = A[[k, c]]
            d = -d
        d = d * int(A[c, c]) % p
        inv = pow(int(A[c, c]), -1, p)
        for i in range(c + 1, n):
            if A[i, c]:
                A[i] = (A[i] - A[i, c] * inv * A[c]) % p
    return d % p


def diagonalize_symmetric(G, p: int) -> list[int]:
    """Diagonal entries of a form congruent to the symmetric matrix G over F_p (p odd).

    Zeros in the result count the radical.
    """
    A = as_matrix(G, p).copy()
    n = A.shape[0]
    out: list[int] = []
    for k in range(n):
        sub = A[k:, k:]
        if not sub.any():
            out.extend([0] * (n - k))
            break
        diag = np.nonzero(np.diag(sub))[0]
        if diag.size:
            j = k + diag[0]
        else:
            # all diagonal entries vanish: e_i + e_j has value 2 a_ij != 0
            i, j = (k + np.argwhere(sub)[0]).tolist()
            A[i] = (A[i] + A[j]) % p
            A[:, i] = (A[:, i] + A[:, j]) % p
            j = i
        if j != k:
            A[[k, j]] = A[[j, k]]
            A[:, [k, j]] = A[:, [j, k]]
        a = int(A[k, k])
        inv = pow(a, -1, p)
        for i in range(k + 1, n):
            if A[i, k]:
                c = A[i, k] * inv % p
                A[i] = (A[i] - c * A[k]) % p
                A[:, i] = (A[:, i] - c * A[:, k]) % p
        out.append(a)
    return out
