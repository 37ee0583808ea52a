"""Special vectors: the specialization map into the top flag space, the
criticality/norm/orthogonality verifications, and symmetry actions with
one-dimensional isotypic projections."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .arrangement import WeightedArrangement
from .master import hess_det, log_grad
from .osflag import (FlagVector, apply_delta, evaluate_form, straighten_coords)
from .scalars import scalar_abs
from .shapovalov import shapovalov_form, special_pairing


def specialize(arr: WeightedArrangement, t) -> FlagVector:
    """v(t): dual coordinates are the evaluations of the basis top forms."""
    k = arr.ambient_dim
    coords = tuple(evaluate_form(arr, s, t) for s in arr.basis(k))
    return FlagVector(k, coords)


def _norm(coords) -> float:
    return math.sqrt(sum(scalar_abs(x) ** 2 for x in coords))


def verify_singular(arr: WeightedArrangement, t, tol=1e-8) -> dict:
    """Criticality of t vs singularity of v(t): both norms small or both
    large is a pass; a mixed outcome is a counterexample."""
    v = specialize(arr, t)
    dv = apply_delta(arr, v)
    scale = max(1.0, _norm(v.coords))
    delta_norm = _norm(dv.coords) / scale
    grad_norm = _norm(log_grad(arr, t))
    is_critical = grad_norm <= tol
    is_singular = delta_norm <= tol
    return {
        "is_critical": is_critical,
        "delta_norm": delta_norm,
        "grad_norm": grad_norm,
        "pass": is_critical == is_singular,
    }


def verify_norm_identity(arr: WeightedArrangement, t) -> dict:
    """S^(a)(v(t), v(t)) against (-1)^k Hess^(a)(t)."""
    v = specialize(arr, t)
    lhs = shapovalov_form(arr, v, v)
    rhs = (-1) ** arr.ambient_dim * hess_det(arr, t)
    abs_err = scalar_abs(lhs - rhs)
    return {"lhs": lhs, "rhs": rhs, "abs_err": abs_err}


def verify_orthogonality(arr: WeightedArrangement, t1, t2, tol=1e-10) -> dict:
    """S^(a)(v(t1), v(t2)) relative to the geometric mean of the two
    self-pairings; the tolerance is scale-free in the exponents."""
    value = special_pairing(arr, t1, t2)
    n1 = scalar_abs(special_pairing(arr, t1, t1))
    n2 = scalar_abs(special_pairing(arr, t2, t2))
    scale = math.sqrt(n1 * n2)
    ok = scalar_abs(value) <= tol * max(scale, 1e-300)
    return {"value": value, "scale": scale, "pass": ok}


# -- symmetry actions ------------------------------------------------------


def apply_permutation(sigma, t):
    """Coordinate permutation acting on a point: (sigma.t)_{sigma(i)} = t_i."""
    out = [None] * len(t)
    for src, dst in enumerate(sigma):
        out[dst] = t[src]
    return tuple(out)


def permutation_sign(sigma) -> int:
    sign = 1
    seen = [False] * len(sigma)
    for i in range(len(sigma)):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = sigma[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def _invert(sigma):
    inv = [0] * len(sigma)
    for i, j in enumerate(sigma):
        inv[j] = i
    return tuple(inv)


@dataclass(frozen=True)
class SymmetryAction:
    """A group of coordinate permutations preserving the arrangement and its
    exponents, with a one-dimensional character (trivial or sign)."""

    perms: tuple
    hyperplane_perms: tuple
    character: str = "trivial"

    def __len__(self):
        return len(self.perms)

    def chi(self, idx: int):
        if self.character == "trivial":
            return 1
        if self.character == "sign":
            return permutation_sign(self.perms[idx])
        raise ValueError(
            f"character {self.character!r} unsupported: only one-dimensional "
            "characters (trivial, sign) are in scope"
        )

    def rho(self, idx: int) -> int:
        # for coordinate permutations the volume-form factor is the sign
        return permutation_sign(self.perms[idx])


def _induced_hyperplane_perm(arr: WeightedArrangement, sigma) -> tuple:
    """Index permutation with H_{pi(m)} the image of H_m under the coordinate
    permutation; image equations may differ by a scalar factor."""
    inv = _invert(sigma)
    rows = [[h.b0, *h.b] for h in arr.hyperplanes]
    pi = []
    for m, h in enumerate(arr.hyperplanes):
        image = [h.b0] + [h.b[inv[j]] for j in range(arr.ambient_dim)]
        match = None
        for m2, row in enumerate(rows):
            if linalg.rank([row, image]) == 1:
                match = m2
                break
        if match is None:
            raise ValueError(f"permutation {sigma} does not preserve the arrangement")
        if arr.exponents[match] != arr.exponents[m]:
            raise ValueError(
                f"permutation {sigma} does not preserve the exponents "
                f"({m} -> {match})"
            )
        pi.append(match)
    return tuple(pi)


def build_action(arr: WeightedArrangement, perms, character="trivial") -> SymmetryAction:
    perms = [tuple(p) for p in perms]
    hp = tuple(_induced_hyperplane_perm(arr, p) for p in perms)
    return SymmetryAction(perms=tuple(perms), hyperplane_perms=hp, character=character)


def os_action_matrix(arr: WeightedArrangement, action: SymmetryAction, idx: int):
    """Matrix of the group element on A^k coordinates (columns = images of
    basis monomials, straightened)."""
    pi = action.hyperplane_perms[idx]
    basis = arr.basis(arr.ambient_dim)
    cols = [straighten_coords(arr, tuple(pi[m] for m in s)) for s in basis]
    return linalg.transpose(cols)


def flag_action_matrix(arr: WeightedArrangement, action: SymmetryAction, idx: int):
    """Matrix of R_g on dual coordinates: transpose of the A^k matrix of the
    inverse element (so the duality pairing is invariant)."""
    sigma_inv = _invert(action.perms[idx])
    inv_idx = action.perms.index(sigma_inv)
    return linalg.transpose(os_action_matrix(arr, action, inv_idx))


def apply_flag_action(arr, action, idx, flag: FlagVector) -> FlagVector:
    m = flag_action_matrix(arr, action, idx)
    return FlagVector(flag.degree, tuple(linalg.mat_vec(m, list(flag.coords))))


def isotypic_project(arr: WeightedArrangement, action: SymmetryAction,
                     flag: FlagVector) -> FlagVector:
    """Projection onto the isotypic component of the (one-dimensional)
    character: (1/|G|) sum_g conj(chi(g)) R_g."""
    n = len(arr.basis(arr.ambient_dim))
    acc = [Fraction(0)] * n
    for idx in range(len(action)):
        chi = action.chi(idx)  # real for trivial/sign; conjugation is a no-op
        img = apply_flag_action(arr, action, idx, flag)
        for i in range(n):
            acc[i] = acc[i] + chi * img.coords[i]
    inv = Fraction(1, len(action))
    return FlagVector(flag.degree, tuple(inv * x for x in acc))


def verify_isotypic_norm(arr: WeightedArrangement, action: SymmetryAction, t) -> dict:
    """S^(a)(v_j(t), v_j(t)) against c (-1)^k Hess^(a)(t) with c = 1/|G| for
    a real one-dimensional character.  Requires a free orbit."""
    orbit = {tuple(complex(x) for x in apply_permutation(p, t)) for p in action.perms}
    if len(orbit) != len(action):
        raise ValueError("orbit smaller than the group; identity not applicable")
    vj = isotypic_project(arr, action, specialize(arr, t))
    lhs = shapovalov_form(arr, vj, vj)
    c = Fraction(1, len(action))
    rhs = c * (-1) ** arr.ambient_dim * hess_det(arr, t)
    return {"lhs": lhs, "rhs": rhs, "c_factor": c, "abs_err": scalar_abs(lhs - rhs)}


def full_symmetric_action(arr: WeightedArrangement, k: int, character="trivial"):
    return build_action(arr, list(itertools.permutations(range(k))), character)
