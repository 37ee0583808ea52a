"""Weighted affine hyperplane arrangements and their combinatorics.

An arrangement is a finite ordered list of affine hyperplanes in C^k with
an exponent attached to each hyperplane.  All combinatorial questions
(ranks, circuits, bases) are answered by exact rational linear algebra when
the coefficients are rational; basis dimensions are cross-checked against
the evaluation-rank oracle built from the logarithmic-form realization.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .scalars import Scalar, all_exact, format_scalar, is_exact, parse_scalar

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Hyperplane:
    """Affine hyperplane b0 + b[0]*t_1 + ... + b[k-1]*t_k = 0."""

    b0: Scalar
    b: tuple
    label: str = ""

    def __post_init__(self):
        if all(x == 0 for x in self.b):
            raise ValueError(f"hyperplane {self.label!r}: coefficient vector is zero")
        object.__setattr__(self, "b", tuple(self.b))

    def evaluate(self, t):
        return self.b0 + sum(bi * ti for bi, ti in zip(self.b, t))


@dataclass(frozen=True)
class SubsetRankReport:
    subset: tuple
    coeff_rank: int
    consistent: bool
    general_position: bool


class WeightedArrangement:
    """An ordered weighted arrangement; immutable after construction.

    Basis and straightening data are memoized lazily; the caches are only
    ever appended to, so concurrent reads after construction are safe.
    """

    def __init__(self, ambient_dim: int, hyperplanes, exponents, check_vertex=True):
        if ambient_dim < 1:
            raise ValueError("ambient dimension must be positive")
        hyperplanes = list(hyperplanes)
        exponents = list(exponents)
        if len(hyperplanes) != len(exponents):
            raise ValueError("need one exponent per hyperplane")
        for h in hyperplanes:
            if len(h.b) != ambient_dim:
                raise ValueError(f"hyperplane {h.label!r} has wrong dimension")
        self.ambient_dim = ambient_dim
        self.hyperplanes = tuple(hyperplanes)
        self.exponents = tuple(exponents)
        self._check_distinct()
        if check_vertex and not self.has_vertex():
            raise ValueError("arrangement has no vertex")
        self._cache: dict = {}

    # -- construction checks ------------------------------------------------

    def _check_distinct(self):
        rows = [[h.b0, *h.b] for h in self.hyperplanes]
        for i, j in itertools.combinations(range(len(rows)), 2):
            if linalg.rank([rows[i], rows[j]]) < 2:
                raise ValueError(
                    f"hyperplanes {i} and {j} are proportional as projective equations"
                )

    def has_vertex(self) -> bool:
        k = self.ambient_dim
        if len(self.hyperplanes) < k:
            return False
        for subset in itertools.combinations(range(len(self.hyperplanes)), k):
            if self.rank_report(subset).general_position:
                return True
        return False

    # -- basic properties ---------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.hyperplanes)

    @property
    def is_exact(self) -> bool:
        return all(
            is_exact(h.b0) and all_exact(h.b) for h in self.hyperplanes
        ) and all_exact(self.exponents)

    def evaluate_all(self, t):
        return [h.evaluate(t) for h in self.hyperplanes]

    def contains_point(self, t, tol=1e-12) -> bool:
        """True if t lies on some hyperplane (within tol in float mode)."""
        for v in self.evaluate_all(t):
            if is_exact(v):
                if v == 0:
                    return True
            elif abs(complex(v)) < tol:
                return True
        return False

    # -- ranks and circuits -------------------------------------------------

    def rank_report(self, subset) -> SubsetRankReport:
        subset = tuple(subset)
        coeff_rows = [list(self.hyperplanes[j].b) for j in subset]
        aug_rows = [[*self.hyperplanes[j].b, self.hyperplanes[j].b0] for j in subset]
        coeff_rank = linalg.rank(coeff_rows)
        consistent = linalg.rank(aug_rows) == coeff_rank
        general = consistent and coeff_rank == len(subset)
        return SubsetRankReport(subset, coeff_rank, consistent, general)

    def general_position(self, subset) -> bool:
        return self.rank_report(subset).general_position

    def closure(self, subset) -> frozenset:
        """All hyperplane indices containing the intersection stratum of the
        subset.  The subset must have a nonempty intersection."""
        subset = tuple(subset)
        rows = [[*self.hyperplanes[j].b, self.hyperplanes[j].b0] for j in subset]
        report = self.rank_report(subset)
        if not report.consistent:
            raise ValueError(f"subset {subset} has empty intersection")
        base_rank = report.coeff_rank
        members = []
        for j in range(self.n):
            row = [*self.hyperplanes[j].b, self.hyperplanes[j].b0]
            if linalg.rank(rows + [row]) == base_rank:
                members.append(j)
        return frozenset(members)

    def circuits(self) -> list[tuple]:
        """Minimal dependent subsets, up to size k+1."""
        if "circuits" in self._cache:
            return self._cache["circuits"]
        found: list[tuple] = []
        for size in range(1, self.ambient_dim + 2):
            for subset in itertools.combinations(range(self.n), size):
                s = set(subset)
                if any(set(c) <= s for c in found):
                    continue
                if not self.general_position(subset):
                    found.append(subset)
        self._cache["circuits"] = found
        return found

    def broken_circuits(self) -> list[tuple]:
        """Tails of circuits with nonempty intersection.  Circuits whose
        hyperplanes have empty common intersection give no relation in the
        affine algebra, so they contribute no broken circuits."""
        return sorted({
            c[1:]
            for c in self.circuits()
            if len(c) > 1 and self.rank_report(c).consistent
        })

    def nbc_sets(self, p: int) -> list[tuple]:
        """General-position p-subsets containing no broken circuit, lex order."""
        if not 0 <= p <= self.ambient_dim:
            raise ValueError(f"degree {p} out of range 0..{self.ambient_dim}")
        if p == 0:
            return [()]
        broken = self.broken_circuits()
        out = []
        for subset in itertools.combinations(range(self.n), p):
            s = set(subset)
            if any(set(b) <= s for b in broken):
                continue
            if self.general_position(subset):
                out.append(subset)
        return out

    # -- evaluation-rank oracle and validated basis ---------------------------

    def sample_points(self, count: int) -> list[tuple]:
        """Deterministic rational points in U, skipping any that land on a
        hyperplane.  Coordinates come from a fixed linear-congruential
        sequence; points on a low-degree curve (such as powers of a single
        base) would make the evaluation rows rank-deficient."""
        points = []
        state = 123456789
        tries = 0
        while len(points) < count:
            tries += 1
            coords = []
            for _ in range(self.ambient_dim):
                state = (1103515245 * state + 12345) % (1 << 31)
                num = state % 4001 - 2000
                den = (state >> 12) % 37 + 1
                coords.append(Fraction(num, den))
            t = tuple(coords)
            if not self.contains_point(t):
                points.append(t)
            if tries > 100 * count + 100:
                raise RuntimeError("could not find enough sample points off the arrangement")
        return points

    def candidate_monomials(self, p: int) -> list[tuple]:
        """All general-position p-subsets, lex order (the monomial spanning set)."""
        if p == 0:
            return [()]
        return [
            s
            for s in itertools.combinations(range(self.n), p)
            if self.general_position(s)
        ]

    def _minor_columns(self, p: int) -> list[tuple]:
        return list(itertools.combinations(range(self.ambient_dim), p))

    def monomial_row(self, subset, t) -> list:
        """Evaluation row of the p-form w_{j1}^...^w_{jp} at point t.

        Component for columns (i1<...<ip) is det(b^{i}_{j}) over the minor,
        divided by the product of the f_j(t).
        """
        p = len(subset)
        if p == 0:
            return [Fraction(1)]
        denom = Fraction(1)
        for j in subset:
            denom = denom * self.hyperplanes[j].evaluate(t)
        row = []
        for cols in self._minor_columns(p):
            minor = [[self.hyperplanes[j].b[c] for c in cols] for j in subset]
            row.append(linalg.det(minor) / denom)
        return row

    def evaluation_matrix(self, p: int, points=None):
        """Stacked evaluation rows (one long row per candidate monomial)."""
        candidates = self.candidate_monomials(p)
        if points is None:
            points = self.sample_points(len(candidates) + 3)
        rows = []
        for s in candidates:
            row = []
            for t in points:
                row.extend(self.monomial_row(s, t))
            rows.append(row)
        return candidates, rows

    def basis(self, p: int) -> list[tuple]:
        """Validated basis of A^p: nbc sets if the oracle confirms them,
        otherwise a greedy lex-first independent subset of monomial rows."""
        key = ("basis", p)
        if key in self._cache:
            return self._cache[key]
        if not 0 <= p <= self.ambient_dim:
            raise ValueError(f"degree {p} out of range 0..{self.ambient_dim}")
        if p == 0:
            self._cache[key] = [()]
            return [()]
        candidates, rows = self.evaluation_matrix(p)
        idx = linalg.independent_rows(rows)
        oracle_basis = [candidates[i] for i in idx]
        nbc = self.nbc_sets(p)
        if len(nbc) == len(oracle_basis):
            nbc_rows = [rows[candidates.index(s)] for s in nbc]
            if linalg.rank(nbc_rows) == len(nbc):
                self._cache[key] = nbc
                self._cache[("rows", p)] = (candidates, rows)
                return nbc
        log.warning(
            "degree %d: nbc count %d disagrees with evaluation rank %d; "
            "using oracle basis", p, len(nbc), len(oracle_basis),
        )
        self._cache[key] = oracle_basis
        self._cache[("rows", p)] = (candidates, rows)
        return oracle_basis

    def evaluation_rows(self, p: int):
        """(candidates, rows) pair used for basis selection, cached."""
        self.basis(p)
        key = ("rows", p)
        if key not in self._cache:
            self._cache[key] = self.evaluation_matrix(p)
        return self._cache[key]

    def dims(self) -> list[int]:
        return [len(self.basis(p)) for p in range(self.ambient_dim + 1)]

    def euler_characteristic(self) -> int:
        return sum((-1) ** p * d for p, d in enumerate(self.dims()))

    # -- JSON ----------------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "dim": self.ambient_dim,
            "hyperplanes": [
                {"label": h.label, "b0": format_scalar(h.b0),
                 "b": [format_scalar(x) for x in h.b]}
                for h in self.hyperplanes
            ],
            "exponents": [format_scalar(a) for a in self.exponents],
        }

    @classmethod
    def from_json(cls, data: dict) -> "WeightedArrangement":
        try:
            k = int(data["dim"])
            hyperplanes = [
                Hyperplane(
                    b0=parse_scalar(h["b0"]),
                    b=tuple(parse_scalar(x) for x in h["b"]),
                    label=h.get("label", ""),
                )
                for h in data["hyperplanes"]
            ]
            exponents = [parse_scalar(a) for a in data["exponents"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed arrangement JSON: {exc}") from exc
        return cls(k, hyperplanes, exponents)


def with_exponents(arr: WeightedArrangement, exponents) -> WeightedArrangement:
    """Same hyperplanes with different exponents; combinatorial caches are
    rebuilt lazily (they do not depend on exponents, but sharing mutable
    caches across instances is not worth the coupling)."""
    return WeightedArrangement(arr.ambient_dim, arr.hyperplanes, exponents)
