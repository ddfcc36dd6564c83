"""Projections of the d-dimensional walk whose zeros mark subset visits.

A hyperplane a.x = 0 turns the walk into the 1-d walk with increments
+/-a_j (axis j step); a codimension-2 subspace gives the planar walk with
increments +/-(a_r, b_r).  Coinciding projected values merge their 1/(2d)
weights.  When the planar increments only generate a proper subgroup
G < Z^2, re-expressing them in a basis of G yields a walk on all of Z^2
with the identical zero set; the basis comes from integer column reduction
(Hermite-style) of the 2 x d increment matrix.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

import numpy as np

from .subsets import Codim2, Hyperplane, _canonical_coeffs


class RankDeficientError(ValueError):
    """The projection pairs span rank < 2: violated not-parallel hypothesis."""


def project_1d(a, axis: int, sign: int) -> int:
    """Increment of the projected walk for a signed unit step."""
    return sign * int(a[axis])


def project_2d(pairs, axis: int, sign: int) -> tuple[int, int]:
    a, b = pairs[axis]
    return sign * a, sign * b


def _merged_law(values, weight):
    law: dict = {}
    for v in values:
        law[v] = law.get(v, 0.0) + weight
    return law


@dataclass(frozen=True)
class OneDProjection:
    """1-d walk Z_n = a.S_n; Z_n = 0 exactly when S_n lies on a.x = 0."""

    a: tuple[int, ...]

    @classmethod
    def from_hyperplane(cls, spec: Hyperplane) -> "OneDProjection":
        return cls(_canonical_coeffs(spec.a))

    @property
    def d(self) -> int:
        return len(self.a)

    def increments(self) -> np.ndarray:
        """Increment per outcome index (axis, sign encoding of walk.StepLaw)."""
        inc = np.empty(2 * self.d, dtype=np.int64)
        for j, aj in enumerate(self.a):
            inc[2 * j] = aj
            inc[2 * j + 1] = -aj
        return inc

    def law(self) -> dict[int, float]:
        """Projected step law with multiplicity-merged probabilities."""
        return _merged_law(self.increments().tolist(), 1.0 / (2 * self.d))

    @property
    def variance(self) -> float:
        return sum(v * v for v in self.a) / self.d

    def is_aperiodic(self) -> bool:
        """Support generates Z (gcd of nonzero values is 1)."""
        g = 0
        for v in self.a:
            g = gcd(g, abs(v))
        return g == 1


@dataclass(frozen=True)
class TwoDProjection:
    """Planar walk (a.S_n, b.S_n); zero exactly on the codim-2 subspace."""

    pairs: tuple[tuple[int, int], ...]

    @classmethod
    def from_codim2(cls, spec: Codim2) -> "TwoDProjection":
        spec = spec.canonicalize()
        return cls(tuple(zip(spec.a, spec.b)))

    @property
    def d(self) -> int:
        return len(self.pairs)

    def increments(self) -> np.ndarray:
        """(2d, 2) increment table indexed by outcome."""
        inc = np.empty((2 * self.d, 2), dtype=np.int64)
        for r, (a, b) in enumerate(self.pairs):
            inc[2 * r] = (a, b)
            inc[2 * r + 1] = (-a, -b)
        return inc

    def law(self) -> dict[tuple[int, int], float]:
        vals = [tuple(v) for v in self.increments().tolist()]
        return _merged_law(vals, 1.0 / (2 * self.d))


def _hnf_basis(gens: list[tuple[int, int]]):
    """Basis of the subgroup of Z^2 generated by gens, by column reduction.

    Returns (u, v) with u = (h11, h21), v = (0, h22), h11, h22 > 0,
    0 <= h21 < h22.  Raises RankDeficientError when the span has rank < 2.
    """
    cols = [list(g) for g in gens if g != (0, 0)]
    if not cols:
        raise RankDeficientError("all generators are zero")
    pivot = None
    rest = []
    for c in cols:
        if c[0] == 0:
            rest.append(c)
            continue
        if pivot is None:
            pivot = c[:]
            continue
        # column gcd step: replace pivot by s*pivot + t*c with row-0 entry g
        a0, b0 = pivot[0], c[0]
        g, s, t = _extgcd(a0, b0)
        new = [s * pivot[0] + t * c[0], s * pivot[1] + t * c[1]]
        rest.append([0, (a0 // g) * c[1] - (b0 // g) * pivot[1]])
        pivot = new
    if pivot is None:
        raise RankDeficientError("generators span rank < 2 (zero first row)")
    g2 = 0
    for c in rest:
        g2 = gcd(g2, abs(c[1]))
    if g2 == 0:
        raise RankDeficientError("generators span rank < 2")
    h11 = abs(pivot[0])
    h21 = pivot[1] if pivot[0] > 0 else -pivot[1]
    h21 %= g2
    return (h11, h21), (0, g2)


def _extgcd(a: int, b: int):
    """(g, s, t) with s*a + t*b = g = gcd(a, b), g > 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


@dataclass(frozen=True)
class AperiodicReduction:
    """Coordinates of the projected steps in a basis (u, v) of their group.

    The reduced walk has the same zero set as the projected one and its
    steps generate all of Z^2.  |det(u, v)| is the index of the group in
    Z^2; index 1 means the projection was already aperiodic and the
    reduction is the identity.
    """

    basis_u: tuple[int, int]
    basis_v: tuple[int, int]
    coords: tuple[tuple[int, int], ...]
    pairs: tuple[tuple[int, int], ...] = field(repr=False)

    @property
    def index(self) -> int:
        u, v = self.basis_u, self.basis_v
        return abs(u[0] * v[1] - u[1] * v[0])

    @property
    def is_identity(self) -> bool:
        return (self.basis_u, self.basis_v) == ((1, 0), (0, 1))

    def increments(self) -> np.ndarray:
        inc = np.empty((2 * len(self.coords), 2), dtype=np.int64)
        for r, (al, be) in enumerate(self.coords):
            inc[2 * r] = (al, be)
            inc[2 * r + 1] = (-al, -be)
        return inc

    def law(self) -> dict[tuple[int, int], float]:
        vals = [tuple(v) for v in self.increments().tolist()]
        return _merged_law(vals, 1.0 / (2 * len(self.coords)))

    def reduced_generate_z2(self) -> bool:
        """Certificate that the reduced steps generate all of Z^2."""
        gens = [c for c in self.coords if c != (0, 0)]
        try:
            u, v = _hnf_basis(gens)
        except RankDeficientError:
            return False
        return abs(u[0] * v[1] - u[1] * v[0]) == 1

    def time_period(self) -> int:
        """gcd of possible return times of the reduced walk (1 or 2).

        A symmetric walk returns at time 2, so the gcd is 2 exactly when a
        mod-2 character of Z^2 maps every step to 1 (all return lengths are
        then even); otherwise an odd-length return exists.
        """
        for e1, e2 in ((0, 1), (1, 0), (1, 1)):
            if all((e1 * al + e2 * be) % 2 == 1 for al, be in self.coords):
                return 2
        return 1


def subgroup_basis(pairs) -> AperiodicReduction:
    """Reduce planar projection steps to an aperiodic walk on Z^2.

    ``pairs`` are the unsigned increment pairs (a_r, b_r), r = 1..d.  The
    basis prefers an actual pair of step vectors when one spans the whole
    group, otherwise the Hermite column-reduced basis is used.
    """
    pairs = tuple((int(a), int(b)) for a, b in pairs)
    gens = [p for p in pairs if p != (0, 0)]
    u, v = _hnf_basis(gens)
    index = abs(u[0] * v[1] - u[1] * v[0])
    # prefer a basis made of step vectors: any pair with |det| == index
    # spans a full-covolume sublattice of the group, hence the group itself
    for i in range(len(gens)):
        found = False
        for j in range(i + 1, len(gens)):
            w1, w2 = gens[i], gens[j]
            if abs(w1[0] * w2[1] - w1[1] * w2[0]) == index:
                u, v = w1, w2
                found = True
                break
        if found:
            break
    det = u[0] * v[1] - u[1] * v[0]
    coords = []
    for a, b in pairs:
        num_al = a * v[1] - b * v[0]
        num_be = b * u[0] - a * u[1]
        if num_al % det or num_be % det:
            raise RankDeficientError(
                f"pair {(a, b)} not in the lattice spanned by {u}, {v}")
        coords.append((num_al // det, num_be // det))
    red = AperiodicReduction(tuple(u), tuple(v), tuple(coords), pairs)
    assert red.reduced_generate_z2(), "reduced steps must generate Z^2"
    return red
