"""Exact integer matrix algebra: Hermite and Smith normal forms, kernels, solves.

Integer matrices are numpy arrays of ``dtype=object`` holding Python ints, so
products never overflow. Row operations are tracked explicitly so that every
transform returned is unimodular.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import PrymError


def int_matrix(rows, shape: tuple[int, int] | None = None) -> np.ndarray:
    """Build an object-dtype integer matrix (``shape`` needed for empty input)."""
    rows = [list(r) for r in rows]
    if shape is None:
        if not rows:
            raise ValueError("shape is required for an empty matrix")
        shape = (len(rows), len(rows[0]))
    out = np.zeros(shape, dtype=object)
    for i, r in enumerate(rows):
        for j, x in enumerate(r):
            if int(x) != x:
                raise ValueError(f"non-integer entry {x!r}")
            out[i, j] = int(x)
    return out


def identity(n: int) -> np.ndarray:
    out = np.zeros((n, n), dtype=object)
    for i in range(n):
        out[i, i] = 1
    return out


def to_lists(m: np.ndarray) -> list[list[int]]:
    return [[int(x) for x in row] for row in m]


def _echelon(rows: list[list[Fraction]]) -> list[list[Fraction]]:
    """Reduced row echelon form over the rationals."""
    rows = [list(r) for r in rows]
    if not rows:
        return rows
    ncols = len(rows[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return rows


def rank(m: np.ndarray) -> int:
    """Rank over the rationals."""
    if m.size == 0:
        return 0
    ech = _echelon([[Fraction(int(x)) for x in row] for row in m])
    return sum(1 for row in ech if any(x != 0 for x in row))


def solve_rational(b: np.ndarray, z: np.ndarray) -> list[list[Fraction]]:
    """Solve ``b @ y = z`` exactly for ``y`` given ``b`` of full column rank.

    Raises :class:`PrymError` if some column of ``z`` is outside the span.
    """
    n, k = b.shape
    m = z.shape[1]
    aug = [[Fraction(int(b[i, j])) for j in range(k)] + [Fraction(int(z[i, j])) for j in range(m)]
           for i in range(n)]
    ech = _echelon(aug)
    y = [[Fraction(0)] * m for _ in range(k)]
    for row in ech:
        lead = next((j for j, x in enumerate(row) if x != 0), None)
        if lead is None:
            continue
        if lead >= k:
            raise PrymError("image is not in the span of the codomain basis")
        y[lead] = row[k:]
    pivots = {next(j for j, x in enumerate(row) if x != 0) for row in ech if any(x != 0 for x in row[:k])}
    if len(pivots) != k:
        raise PrymError("codomain basis is not linearly independent")
    return y


def hnf_with_transform(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Row Hermite normal form ``h = t @ a`` with ``t`` unimodular.

    Pivots are positive, entries above a pivot lie in ``[0, pivot)``, and zero
    rows sit at the bottom.
    """
    nrows, ncols = a.shape
    h = [[int(x) for x in row] for row in a]
    t = [[int(i == j) for j in range(nrows)] for i in range(nrows)]
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        while True:
            nz = [i for i in range(r, nrows) if h[i][c] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: (abs(h[i][c]), i))
            h[r], h[piv] = h[piv], h[r]
            t[r], t[piv] = t[piv], t[r]
            done = True
            for i in range(r + 1, nrows):
                if h[i][c] != 0:
                    q = h[i][c] // h[r][c]
                    h[i] = [x - q * y for x, y in zip(h[i], h[r])]
                    t[i] = [x - q * y for x, y in zip(t[i], t[r])]
                    if h[i][c] != 0:
                        done = False
            if done:
                break
        if r < nrows and h[r][c] != 0:
            if h[r][c] < 0:
                h[r] = [-x for x in h[r]]
                t[r] = [-x for x in t[r]]
            for i in range(r):
                q = h[i][c] // h[r][c]
                if q:
                    h[i] = [x - q * y for x, y in zip(h[i], h[r])]
                    t[i] = [x - q * y for x, y in zip(t[i], t[r])]
            r += 1
    return int_matrix(h, a.shape), int_matrix(t, (nrows, nrows))


def hermite_normal_form(a: np.ndarray) -> np.ndarray:
    return hnf_with_transform(a)[0]


def kernel_basis(m: np.ndarray) -> np.ndarray:
    """Columns form a Z-basis of ``{x : m @ x = 0}``, in canonical (Hermite) form."""
    nrows, ncols = m.shape
    if ncols == 0:
        return np.zeros((0, 0), dtype=object)
    h, t = hnf_with_transform(m.T.copy())
    zero_rows = [i for i in range(ncols) if all(x == 0 for x in h[i])]
    if not zero_rows:
        return np.zeros((ncols, 0), dtype=object)
    kernel_rows = t[zero_rows, :]
    canon = hermite_normal_form(kernel_rows)
    return canon.T.copy()


@dataclass(frozen=True)
class SnfResult:
    d: np.ndarray
    u: np.ndarray
    v: np.ndarray

    @property
    def diagonal(self) -> list[int]:
        k = min(self.d.shape)
        return [int(self.d[i, i]) for i in range(k)]


def snf(m: np.ndarray) -> SnfResult:
    """Smith normal form ``u @ m @ v = d`` with ``d_1 | d_2 | ...`` and ``d_i >= 0``.

    Pivot choice: smallest nonzero absolute value in the remaining block, ties
    broken by row then column.
    """
    nrows, ncols = m.shape
    a = [[int(x) for x in row] for row in m]
    u = [[int(i == j) for j in range(nrows)] for i in range(nrows)]
    v = [[int(i == j) for j in range(ncols)] for i in range(ncols)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, q):
        for row in a:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    for t in range(min(nrows, ncols)):
        while True:
            cands = [(abs(a[i][j]), i, j) for i in range(t, nrows) for j in range(t, ncols) if a[i][j] != 0]
            if not cands:
                break
            _, pi, pj = min(cands)
            swap_rows(t, pi)
            swap_cols(t, pj)
            p = a[t][t]
            clean = True
            for i in range(t + 1, nrows):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
                    clean = clean and a[i][t] == 0
            for j in range(t + 1, ncols):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
                    clean = clean and a[t][j] == 0
            if not clean:
                continue
            bad = next(((i, j) for i in range(t + 1, nrows) for j in range(t + 1, ncols) if a[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        if all(a[i][j] == 0 for i in range(t, nrows) for j in range(t, ncols)):
            break
    return SnfResult(int_matrix(a, m.shape), int_matrix(u, (nrows, nrows)), int_matrix(v, (ncols, ncols)))


def det_int(m: np.ndarray) -> int:
    """Exact determinant of a square integer matrix (fraction-free elimination)."""
    n = m.shape[0]
    if n == 0:
        return 1
    a = [[int(x) for x in row] for row in m]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]
