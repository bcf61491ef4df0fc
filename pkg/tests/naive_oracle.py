"""Independent brute-force reference implementations used only by tests.

Deliberately avoids the library's packed GF(2) matrices and torus
instantiation: arithmetic is dense numpy uint8, and stabilizer translates
are enumerated directly with modular coordinate arithmetic.
"""

from __future__ import annotations

import itertools

import numpy as np


def naive_rank(mat: np.ndarray) -> int:
    a = (mat % 2).astype(np.uint8).copy()
    m, n = a.shape
    r = 0
    for c in range(n):
        pivot = None
        for i in range(r, m):
            if a[i, c]:
                pivot = i
                break
        if pivot is None:
            continue
        a[[r, pivot]] = a[[pivot, r]]
        for i in range(m):
            if i != r and a[i, c]:
                a[i] ^= a[r]
        r += 1
        if r == m:
            break
    return r


def naive_nullspace(mat: np.ndarray) -> list[np.ndarray]:
    a = (mat % 2).astype(np.uint8).copy()
    m, n = a.shape
    pivots = []
    r = 0
    for c in range(n):
        if r >= m:
            break
        pivot = None
        for i in range(r, m):
            if a[i, c]:
                pivot = i
                break
        if pivot is None:
            continue
        a[[r, pivot]] = a[[pivot, r]]
        for i in range(m):
            if i != r and a[i, c]:
                a[i] ^= a[r]
        pivots.append(c)
        r += 1
    basis = []
    pivot_set = set(pivots)
    for f in range(n):
        if f in pivot_set:
            continue
        v = np.zeros(n, dtype=np.uint8)
        v[f] = 1
        for row, c in enumerate(pivots):
            if a[row, f]:
                v[c] = 1
        basis.append(v)
    return basis


def stabilizer_rows(code, lengths) -> np.ndarray:
    """All generator translates as dense symplectic 0/1 rows.

    Row layout matches the library's torus ordering (sector block, then
    qubit type, then row-major site), but is produced by direct modular
    enumeration rather than the library's instantiation.
    """
    q = code.q_per_site
    n_sites = 1
    for length in lengths:
        n_sites *= length
    sites = list(itertools.product(*[range(length) for length in lengths]))
    site_idx = {s: i for i, s in enumerate(sites)}
    full = code.full_sigma()
    rows = []
    for t in range(full.cols):
        col = full.column(t)
        for base in sites:
            row = np.zeros(2 * q * n_sites, dtype=np.uint8)
            for r2 in range(2 * q):
                for mono in col[r2].terms:
                    wrapped = tuple(
                        (b + o) % length for b, o, length in zip(base, mono, lengths)
                    )
                    row[r2 * n_sites + site_idx[wrapped]] ^= 1
            rows.append(row)
    return np.array(rows, dtype=np.uint8) if rows else np.zeros((0, 2 * q * n_sites), dtype=np.uint8)


def naive_logical_count(code, lengths) -> int:
    rows = stabilizer_rows(code, lengths)
    n = code.q_per_site * rows.shape[1] // (2 * code.q_per_site)
    return n - naive_rank(rows)
