"""Small dense linear algebra over exact rationals or complex floats.

Matrices are lists of row lists.  Every routine dispatches on the entry
types: if all entries are exact rationals the computation is done with
fraction-free Gaussian elimination and results are exact; otherwise numpy
is used with a relative tolerance.  The exact path is the authoritative one
for basis selection and straightening.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .scalars import is_exact

_FLOAT_TOL = 1e-9


def _matrix_exact(rows) -> bool:
    return all(is_exact(x) for row in rows for x in row)


def _to_ndarray(rows, ncols=None):
    if not rows:
        return np.zeros((0, ncols or 0), dtype=complex)
    return np.array([[complex(x) for x in row] for row in rows], dtype=complex)


def dot(u, v):
    return sum((a * b for a, b in zip(u, v)), start=Fraction(0))


def transpose(rows):
    return [list(col) for col in zip(*rows)]


def mat_mul(a, b):
    bt = transpose(b)
    return [[dot(row, col) for col in bt] for row in a]


def mat_vec(a, v):
    return [dot(row, v) for row in a]


def _eliminate(rows):
    """Row-reduce a copy of rows over Fraction; returns (echelon, pivots)."""
    m = [[Fraction(x) for x in row] for row in rows]
    pivots = []
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows) -> int:
    if not rows or not rows[0]:
        return 0
    if _matrix_exact(rows):
        _, pivots = _eliminate(rows)
        return len(pivots)
    a = _to_ndarray(rows)
    s = np.linalg.svd(a, compute_uv=False)
    if s.size == 0:
        return 0
    return int(np.sum(s > _FLOAT_TOL * max(1.0, s[0])))


def independent_rows(rows) -> list[int]:
    """Indices of a maximal independent subset of rows, greedy in order."""
    if not rows:
        return []
    if _matrix_exact(rows):
        chosen: list[int] = []
        kept: list[list[Fraction]] = []
        r = 0
        for i, row in enumerate(rows):
            trial = kept + [[Fraction(x) for x in row]]
            _, pivots = _eliminate(trial)
            if len(pivots) > r:
                chosen.append(i)
                kept = trial
                r += 1
            if r == len(rows[0]):
                break
        return chosen
    chosen = []
    basis: list[np.ndarray] = []
    for i, row in enumerate(rows):
        v = np.array([complex(x) for x in row])
        scale = max(1.0, float(np.linalg.norm(v)))
        for b in basis:
            v = v - np.vdot(b, v) * b
        if np.linalg.norm(v) > _FLOAT_TOL * scale:
            basis.append(v / np.linalg.norm(v))
            chosen.append(i)
    return chosen


def solve_coords(basis_rows, target):
    """Coefficients x with sum_i x_i * basis_rows[i] == target.

    basis_rows must be linearly independent; raises ValueError if target is
    not in their span.
    """
    if not basis_rows:
        if any(x != 0 for x in target):
            raise ValueError("target not in span of empty basis")
        return []
    exact = _matrix_exact(basis_rows) and all(is_exact(x) for x in target)
    if exact:
        # Solve B^T x = target by eliminating the augmented system.
        ncols = len(basis_rows)
        aug = [[Fraction(basis_rows[j][i]) for j in range(ncols)] + [Fraction(target[i])]
               for i in range(len(target))]
        m, pivots = _eliminate(aug)
        if ncols in pivots:
            raise ValueError("target not in span of basis rows")
        x = [Fraction(0)] * ncols
        for r, c in enumerate(pivots):
            x[c] = m[r][ncols]
        return x
    a = _to_ndarray(basis_rows).T
    b = np.array([complex(x) for x in target])
    x, _, _, _ = np.linalg.lstsq(a, b, rcond=None)
    resid = np.linalg.norm(a @ x - b)
    if resid > 1e-6 * max(1.0, float(np.linalg.norm(b))):
        raise ValueError(f"target not in span of basis rows (residual {resid:.3e})")
    return list(x)


def nullspace(rows, ncols=None):
    """Basis of the right kernel {v : A v = 0} of the matrix with given rows."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if not rows or ncols == 0:
        return [] if ncols == 0 else [
            [Fraction(1) if j == i else Fraction(0) for j in range(ncols)]
            for i in range(ncols)
        ]
    if _matrix_exact(rows):
        m, pivots = _eliminate(rows)
        free = [c for c in range(ncols) if c not in pivots]
        basis = []
        for fc in free:
            v = [Fraction(0)] * ncols
            v[fc] = Fraction(1)
            for r, c in enumerate(pivots):
                v[c] = -m[r][fc]
            basis.append(v)
        return basis
    a = _to_ndarray(rows, ncols)
    _, s, vh = np.linalg.svd(a)
    tol = _FLOAT_TOL * max(1.0, s[0] if s.size else 0.0)
    nz = int(np.sum(s > tol))
    return [list(vh[i].conj()) for i in range(nz, ncols)]


def det(rows):
    """Determinant; exact for rational entries."""
    n = len(rows)
    if n == 0:
        return Fraction(1)
    if _matrix_exact(rows):
        m = [[Fraction(x) for x in row] for row in rows]
        sign = 1
        d = Fraction(1)
        for c in range(n):
            piv = next((i for i in range(c, n) if m[i][c] != 0), None)
            if piv is None:
                return Fraction(0)
            if piv != c:
                m[c], m[piv] = m[piv], m[c]
                sign = -sign
            d *= m[c][c]
            inv = 1 / m[c][c]
            for i in range(c + 1, n):
                if m[i][c] != 0:
                    f = m[i][c] * inv
                    m[i] = [x - f * y for x, y in zip(m[i], m[c])]
        return sign * d
    return complex(np.linalg.det(_to_ndarray(rows)))
