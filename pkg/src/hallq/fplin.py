"""Exact dense linear algebra over prime fields F_p.

Matrices are numpy int64 arrays with entries reduced mod p.  Everything is
plain Gaussian elimination; p is small (2, 3, 5) and shapes are tiny, so
clarity beats asymptotics.  Empty shapes like (0, n) and (n, 0) are legal
everywhere.
"""

from __future__ import annotations

from itertools import combinations, product

import numpy as np


def asmat(rows, cols, data=None, p=2):
    """Build an (rows x cols) matrix mod p from nested data (or zeros)."""
    if data is None:
        return np.zeros((rows, cols), dtype=np.int64)
    m = np.asarray(data, dtype=np.int64).reshape(rows, cols) % p
    return m


def matmul(a, b, p):
    return (a @ b) % p


def mat_key(a):
    """Hashable canonical key for a matrix (shape plus entries)."""
    return (a.shape, a.tobytes())


def inv_mod(x, p):
    return pow(int(x), p - 2, p)


def rref(a, p):
    """Reduced row echelon form mod p.

    Returns (r, pivot_cols) with pivots normalized to 1 and cleared above
    and below.  Does not modify the input.
    """
    r = a.copy() % p
    m, n = r.shape
    pivots = []
    row = 0
    for col in range(n):
        if row == m:
            break
        sel = -1
        for i in range(row, m):
            if r[i, col] % p:
                sel = i
                break
        if sel < 0:
            continue
        if sel != row:
            r[[row, sel]] = r[[sel, row]]
        r[row] = (r[row] * inv_mod(r[row, col], p)) % p
        for i in range(m):
            if i != row and r[i, col]:
                r[i] = (r[i] - r[i, col] * r[row]) % p
        pivots.append(col)
        row += 1
    return r, pivots


def rank(a, p):
    return len(rref(a, p)[1])


def nullspace(a, p):
    """Basis of the right kernel of a, as rows of a (k x n) matrix."""
    m, n = a.shape
    r, pivots = rref(a, p)
    free = [j for j in range(n) if j not in pivots]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for bi, j in enumerate(free):
        basis[bi, j] = 1
        for ri, pc in enumerate(pivots):
            basis[bi, pc] = (-r[ri, j]) % p
    return basis


def row_space(a, p):
    """Echelon basis of the row space, as rows of a (rank x n) matrix."""
    r, pivots = rref(a, p)
    return r[: len(pivots)].copy()


def solve(a, b, p):
    """One solution x of a @ x = b (columns of b solved jointly), or None.

    b may be a vector or a matrix; the returned x has matching shape.
    """
    vec = b.ndim == 1
    rhs = b.reshape(-1, 1) if vec else b
    m, n = a.shape
    aug = np.concatenate([a % p, rhs % p], axis=1)
    r, pivots = rref(aug, p)
    main = [c for c in pivots if c < n]
    if len(main) != len(pivots):
        return None
    x = np.zeros((n, rhs.shape[1]), dtype=np.int64)
    for ri, pc in enumerate(main):
        x[pc] = r[ri, n:]
    return x[:, 0] if vec else x


def is_invertible(a, p):
    return a.shape[0] == a.shape[1] and rank(a, p) == a.shape[0]


def inverse(a, p):
    n = a.shape[0]
    aug = np.concatenate([a % p, np.eye(n, dtype=np.int64)], axis=1)
    r, pivots = rref(aug, p)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return r[:, n:].copy()


def in_row_space(v, basis_rref, pivots, p):
    """Test membership of v in a row space given by its rref basis."""
    w = v.copy() % p
    for ri, pc in enumerate(pivots):
        if w[pc]:
            w = (w - w[pc] * basis_rref[ri]) % p
    return not w.any()


def all_matrices(rows, cols, p):
    """All (rows x cols) matrices mod p in a fixed lexicographic order."""
    if rows * cols == 0:
        yield np.zeros((rows, cols), dtype=np.int64)
        return
    for entries in product(range(p), repeat=rows * cols):
        yield np.array(entries, dtype=np.int64).reshape(rows, cols)


def all_invertible(n, p):
    """All of GL_n(F_p), lexicographically by entries."""
    if n == 0:
        return [np.zeros((0, 0), dtype=np.int64)]
    return [m for m in all_matrices(n, n, p) if is_invertible(m, p)]


def gl_order(n, p):
    out = 1
    for i in range(n):
        out *= p**n - p**i
    return out


def subspaces(n, k, p):
    """All k-dimensional subspaces of F_p^n as rref generator matrices.

    Deterministic order: pivot column combinations lexicographically, then
    free entries lexicographically.  Rows of each yielded (k x n) matrix are
    the echelon basis.
    """
    if k == 0:
        yield np.zeros((0, n), dtype=np.int64)
        return
    if k > n:
        return
    for pivots in combinations(range(n), k):
        free_cells = [
            (i, j)
            for i in range(k)
            for j in range(n)
            if j > pivots[i] and j not in pivots
        ]
        for vals in product(range(p), repeat=len(free_cells)):
            m = np.zeros((k, n), dtype=np.int64)
            for i, pc in enumerate(pivots):
                m[i, pc] = 1
            for (i, j), val in zip(free_cells, vals):
                m[i, j] = val
            yield m


def gaussian_binomial(n, k, p):
    """Number of k-dimensional subspaces of F_p^n."""
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= p ** (n - i) - 1
        den *= p ** (i + 1) - 1
    assert num % den == 0
    return num // den
