"""Dense linear algebra over GF(2).

Matrices are ``numpy.uint8`` arrays holding 0/1 entries; rows are vectors.
"""
from itertools import combinations, product

import numpy as np


def as_gf2(mat, ncols=None):
    a = np.asarray(mat, dtype=np.uint8) & 1
    if a.ndim == 1:
        a = a.reshape(1, -1) if a.size else np.zeros((0, ncols or 0), np.uint8)
    return a


def rref(mat):
    """Row-reduce `mat`; return (reduced matrix without zero rows, pivot columns)."""
    a = as_gf2(mat).copy()
    m, n = a.shape
    pivots = []
    r = 0
    for c in range(n):
        if r >= m:
            break
        rows = np.nonzero(a[r:, c])[0]
        if rows.size == 0:
            continue
        p = r + int(rows[0])
        if p != r:
            a[[r, p]] = a[[p, r]]
        ones = np.nonzero(a[:, c])[0]
        ones = ones[ones != r]
        if ones.size:
            a[ones] ^= a[r]
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rank(mat):
    a = as_gf2(mat)
    if a.shape[0] == 0:
        return 0
    return len(rref(a)[1])


def nullspace(mat, ncols=None):
    """Basis (as rows) of {v : mat @ v = 0 mod 2}."""
    a = as_gf2(mat, ncols)
    n = a.shape[1] if ncols is None else ncols
    if a.shape[0] == 0:
        return np.eye(n, dtype=np.uint8)
    r, pivots = rref(a)
    free = [c for c in range(n) if c not in pivots]
    basis = np.zeros((len(free), n), dtype=np.uint8)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for row, p in enumerate(pivots):
            basis[i, p] = r[row, f]
    return basis


def in_rowspace(mat, v):
    a = as_gf2(mat)
    v = as_gf2(v)
    if a.shape[0] == 0:
        return not v.any()
    return rank(np.vstack([a, v])) == rank(a)


def independent_rows(mat):
    """Indices of a maximal independent subset of rows, chosen greedily in order."""
    a = as_gf2(mat)
    keep = []
    basis = np.zeros((0, a.shape[1]), dtype=np.uint8)
    for i, row in enumerate(a):
        trial = np.vstack([basis, row])
        if rank(trial) > basis.shape[0]:
            basis = trial
            keep.append(i)
    return keep


def complement_basis(mat, ncols):
    """Unit vectors completing the row space of `mat` to all of GF(2)^ncols."""
    a = as_gf2(mat, ncols)
    if a.shape[0] == 0:
        return np.eye(ncols, dtype=np.uint8)
    _, pivots = rref(a)
    free = [c for c in range(ncols) if c not in pivots]
    out = np.zeros((len(free), ncols), dtype=np.uint8)
    out[np.arange(len(free)), free] = 1
    return out


def span(mat):
    """All 2^rank vectors in the row space (small inputs only)."""
    r, _ = rref(mat)
    n = as_gf2(mat).shape[1]
    vecs = []
    for coeffs in product((0, 1), repeat=r.shape[0]):
        v = np.zeros(n, dtype=np.uint8)
        for c, row in zip(coeffs, r):
            if c:
                v ^= row
        vecs.append(v)
    return np.array(vecs, dtype=np.uint8).reshape(-1, n)


def enumerate_subspaces(dim, ncols):
    """Yield every `dim`-dimensional subspace of GF(2)^ncols once, as its RREF basis.

    Order: pivot tuples lexicographically, then free entries in binary order.
    """
    for pivots in combinations(range(ncols), dim):
        slots = [(i, c) for i, p in enumerate(pivots)
                 for c in range(p + 1, ncols) if c not in pivots]
        for bits in product((0, 1), repeat=len(slots)):
            basis = np.zeros((dim, ncols), dtype=np.uint8)
            for i, p in enumerate(pivots):
                basis[i, p] = 1
            for (i, c), b in zip(slots, bits):
                basis[i, c] = b
            yield basis
