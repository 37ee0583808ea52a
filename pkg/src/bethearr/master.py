"""Master function of a weighted arrangement: logarithmic gradient and
Hessian, Newton search for critical points, non-degeneracy classification,
symmetry-orbit grouping.

Everything works with ln Phi only; the multivalued master function itself is
never exponentiated.  Gradient and Hessian accept exact rational input and
then return exact values; the solver works in complex doubles.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from . import linalg
from .arrangement import WeightedArrangement
from .scalars import is_exact


@dataclass
class CriticalPoint:
    t: tuple
    grad_residual: float
    hess_det: complex
    nondegenerate: bool
    orbit_id: Optional[int] = None


@dataclass
class DivergenceReport:
    t0: tuple
    cause: str
    iterations: int


def log_grad(arr: WeightedArrangement, t):
    """Gradient of ln Phi: component i = sum_j a_j b^i_j / f_j(t)."""
    if arr.contains_point(t):
        raise ValueError("point on arrangement")
    values = arr.evaluate_all(t)
    out = []
    for i in range(arr.ambient_dim):
        out.append(sum(
            (a * h.b[i] / v for h, a, v in zip(arr.hyperplanes, arr.exponents, values)
             if h.b[i] != 0 and a != 0),
            start=Fraction(0),
        ))
    return out


def log_hessian(arr: WeightedArrangement, t):
    """Hessian of ln Phi: entry (i,l) = -sum_j a_j b^i_j b^l_j / f_j(t)^2."""
    if arr.contains_point(t):
        raise ValueError("point on arrangement")
    values = arr.evaluate_all(t)
    k = arr.ambient_dim
    mat = [[Fraction(0)] * k for _ in range(k)]
    for h, a, v in zip(arr.hyperplanes, arr.exponents, values):
        if a == 0:
            continue
        w = a / (v * v)
        for i in range(k):
            if h.b[i] == 0:
                continue
            for l in range(i, k):
                if h.b[l] != 0:
                    mat[i][l] = mat[i][l] - w * h.b[i] * h.b[l]
    for i in range(k):
        for l in range(i + 1, k):
            mat[l][i] = mat[i][l]
    return mat


def hess_det(arr: WeightedArrangement, t):
    """Hess^(a)(t): determinant of the log-Hessian."""
    return linalg.det(log_hessian(arr, t))


def _degeneracy_threshold(arr, t) -> float:
    scales = sorted(abs(complex(v)) ** -2 for v in arr.evaluate_all(t))
    scale = scales[len(scales) // 2]
    return 1e-8 * scale ** arr.ambient_dim


def newton_solve(arr: WeightedArrangement, t0, tol=1e-12, max_iter=50):
    """Newton iteration on the logarithmic gradient with the log-Hessian as
    Jacobian.  Returns a CriticalPoint or a DivergenceReport.

    Iterates escaping far outside the arrangement's data are rejected: the
    gradient also decays to zero at infinity, so a plain norm test would
    accept bogus points there.
    """
    escape = 1e6 * _start_box_radius(arr)
    t = np.array([complex(x) for x in t0], dtype=complex)
    if arr.contains_point(tuple(t)):
        raise ValueError("start point lies on the arrangement")

    b_rows = np.array([[complex(x) for x in h.b] for h in arr.hyperplanes])

    def log_merit(point):
        # log of |prod f| * |grad|: the cleared-denominator residual, kept
        # in log scale to avoid overflow
        vals = np.array([complex(v) for v in arr.evaluate_all(tuple(point))])
        g = np.array([complex(x) for x in log_grad(arr, tuple(point))])
        gn = np.linalg.norm(g)
        if gn == 0.0:
            return -np.inf
        return float(np.sum(np.log(np.abs(vals))) + np.log(gn))

    for it in range(max_iter):
        if np.max(np.abs(t)) > escape:
            return DivergenceReport(tuple(map(complex, t0)), "escaped to infinity", it)
        values = np.array([complex(v) for v in arr.evaluate_all(tuple(t))])
        if np.min(np.abs(values)) < 1e-12:
            return DivergenceReport(tuple(map(complex, t0)), "hyperplane collision", it)
        g = np.array([complex(x) for x in log_grad(arr, tuple(t))])
        if np.linalg.norm(g) <= tol:
            h = np.array([[complex(x) for x in row] for row in log_hessian(arr, tuple(t))])
            hd = complex(np.linalg.det(h))
            return CriticalPoint(
                t=tuple(map(complex, t)),
                grad_residual=float(np.linalg.norm(g)),
                hess_det=hd,
                nondegenerate=abs(hd) > _degeneracy_threshold(arr, tuple(t)),
            )
        # Newton step for the cleared-denominator system (prod f) * grad:
        # the Jacobian is (prod f) (H + g s^T) with s_m = sum_l b^m_l / f_l,
        # and the polynomial prefactor cancels in the step.  Unlike a raw
        # Newton step on the gradient this does not diverge to infinity,
        # where the gradient itself also vanishes.
        h = np.array([[complex(x) for x in row] for row in log_hessian(arr, tuple(t))])
        s = (b_rows / values[:, None]).sum(axis=0)
        try:
            step = np.linalg.solve(h + np.outer(g, s), g)
        except np.linalg.LinAlgError:
            return DivergenceReport(tuple(map(complex, t0)), "singular Jacobian", it)
        if not np.all(np.isfinite(step)):
            return DivergenceReport(tuple(map(complex, t0)), "non-finite step", it)
        merit = log_merit(t)
        lam = 1.0
        accepted = False
        for _ in range(20):
            cand = t - lam * step
            vals = [complex(v) for v in arr.evaluate_all(tuple(cand))]
            if min(abs(v) for v in vals) > 1e-12 and log_merit(cand) < merit:
                t = cand
                accepted = True
                break
            lam *= 0.5
        if not accepted:
            return DivergenceReport(tuple(map(complex, t0)), "line search failed", it)
    return DivergenceReport(tuple(map(complex, t0)), "max iterations exceeded", max_iter)


def _start_box_radius(arr: WeightedArrangement) -> float:
    mags = [1.0]
    for h in arr.hyperplanes:
        mags.append(abs(complex(h.b0)))
        mags.extend(abs(complex(x)) for x in h.b)
    return 2.0 * max(mags)


def find_critical_points(arr: WeightedArrangement, seed=0, n_starts=100,
                         box=None, tol=1e-12, max_iter=50) -> list[CriticalPoint]:
    """Multi-start Newton search; deduplicated, deterministically ordered.

    May return fewer points than |chi(U)|; the caller compares counts.
    """
    radius = box if box is not None else _start_box_radius(arr)
    rng = np.random.default_rng(seed)
    k = arr.ambient_dim
    found: list[CriticalPoint] = []
    for _ in range(n_starts):
        re = rng.uniform(-radius, radius, size=k)
        im = rng.uniform(0.05 * radius, radius, size=k) * rng.choice([-1.0, 1.0], size=k)
        t0 = re + 1j * im
        if arr.contains_point(tuple(t0)):
            continue
        result = newton_solve(arr, tuple(t0), tol=tol, max_iter=max_iter)
        if isinstance(result, CriticalPoint):
            found.append(result)
    found.sort(key=lambda cp: tuple((round(z.real, 9), round(z.imag, 9)) for z in cp.t))
    unique: list[CriticalPoint] = []
    for cp in found:
        if all(
            max(abs(a - b) for a, b in zip(cp.t, u.t)) >= 1e-6 for u in unique
        ):
            unique.append(cp)
    return unique


def group_orbits(points: list[CriticalPoint], group, tol=1e-6) -> list[CriticalPoint]:
    """Assign orbit ids under a coordinate-permutation group.

    group is an iterable of permutations sigma (tuples), acting by
    (sigma . t)_{sigma(i)} = t_i.  Points p, q share an orbit iff some group
    element maps p within tol of q.  Returns the same list with orbit_id set.
    """
    perms = [tuple(g) for g in group]
    n = len(points)
    orbit = [-1] * n
    next_id = 0
    for i in range(n):
        if orbit[i] != -1:
            continue
        orbit[i] = next_id
        for g in perms:
            gt = [None] * len(points[i].t)
            for src, dst in enumerate(g):
                gt[dst] = points[i].t[src]
            for j in range(i + 1, n):
                if orbit[j] == -1 and max(
                    abs(a - b) for a, b in zip(gt, points[j].t)
                ) < tol:
                    orbit[j] = next_id
        next_id += 1
    for cp, oid in zip(points, orbit):
        cp.orbit_id = oid
    return points


def symmetric_group(k: int):
    """All coordinate permutations of {0..k-1}."""
    return [tuple(p) for p in itertools.permutations(range(k))]
