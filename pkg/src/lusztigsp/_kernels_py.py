"""numpy/scipy implementations of the hot loops (fallback for the compiled core)."""

from __future__ import annotations

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .liealg import decode, encode, sp_dim

_CHUNK = 1 << 18


def nilpotent_codes(n: int, p: int) -> np.ndarray:
    """Sorted codes of all nilpotent elements of sp_2n(F_p)."""
    total = p ** sp_dim(n)
    out = []
    for lo in range(0, total, _CHUNK):
        codes = np.arange(lo, min(lo + _CHUNK, total), dtype=np.int64)
        X = decode(codes, n, p)
        P = X.copy()
        for _ in range(2 * n - 1):
            P = np.matmul(P, X) % p
        out.append(codes[~P.reshape(len(codes), -1).any(axis=1)])
    return np.concatenate(out)


def conjugation_orbits(codes: np.ndarray, gens, n: int, p: int) -> np.ndarray:
    """Orbit id of each code under conjugation by the generated group.

    ``gens`` is a list of (g, g^-1) pairs; ``codes`` must be sorted and closed
    under conjugation. Orbit ids are numbered by their smallest member.
    """
    codes = np.asarray(codes, dtype=np.int64)
    N = len(codes)
    X = decode(codes, n, p)
    rows, cols = [], []
    for g, gi in gens:
        Y = np.matmul(np.matmul(g, X), gi) % p
        idx = np.searchsorted(codes, encode(Y, n, p))
        rows.append(np.arange(N))
        cols.append(idx)
    rows, cols = np.concatenate(rows), np.concatenate(cols)
    graph = coo_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(N, N))
    _, raw = connected_components(graph, directed=True, connection="weak")
    # renumber in order of first appearance
    _, first = np.unique(raw, return_index=True)
    order = np.argsort(first)
    remap = np.empty_like(order)
    remap[order] = np.arange(len(order))
    return remap[raw]


def character_sums(xs: np.ndarray, ys: np.ndarray, weights: np.ndarray, p: int) -> np.ndarray:
    """out[a] = sum_b weights[b] * exp(2 pi i (xs[a] . ys[b]) / p)."""
    xs = np.asarray(xs, dtype=np.int64)
    ys = np.asarray(ys, dtype=np.int64)
    w = np.asarray(weights, dtype=np.complex128)
    roots = np.exp(2j * np.pi * np.arange(p) / p)
    out = np.empty(len(xs), dtype=np.complex128)
    step = max(1, (1 << 22) // max(1, len(ys)))
    for lo in range(0, len(xs), step):
        pair = xs[lo : lo + step] @ ys.T % p
        out[lo : lo + step] = roots[pair] @ w
    return out
