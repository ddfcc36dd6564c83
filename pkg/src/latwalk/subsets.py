"""Membership geometry for the restricted-maximum subsets.

Supported subsets of Z^d: balls around the origin, lines a1*x1 + a2*x2 = 0
in the plane, hyperplanes a.x = 0, codimension-2 subspaces {a.x = 0, b.x = 0},
and finite intersections.  Linear coefficients are stored gcd-reduced with
the first nonzero entry positive, so equal zero sets compare equal.

Text grammar (used by the CLI and experiment configs):

    ball:2.5            line:1,-1           hyp:1,0,0
    codim2:1,0,0;0,1,0  and(ball:2,line:1,-1)
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import gcd

import numpy as np


class InvalidSubsetError(ValueError):
    pass


class DimensionMismatchError(ValueError):
    pass


def _canonical_coeffs(coeffs) -> tuple[int, ...]:
    c = [int(v) for v in coeffs]
    if all(v == 0 for v in c):
        raise InvalidSubsetError("coefficients must not all be zero")
    g = 0
    for v in c:
        g = gcd(g, abs(v))
    c = [v // g for v in c]
    first = next(v for v in c if v != 0)
    if first < 0:
        c = [-v for v in c]
    return tuple(c)


def _check_dim(spec_dim, site_len):
    if spec_dim is not None and spec_dim != site_len:
        raise DimensionMismatchError(
            f"site has dimension {site_len}, spec expects {spec_dim}")


class SubsetSpec:
    """Base: immutable membership predicate over lattice sites."""

    dim: int | None = None  # None means any dimension (balls)

    def contains(self, site) -> bool:
        raise NotImplementedError

    def contains_many(self, positions: np.ndarray) -> np.ndarray:
        """Vectorized membership over an (m, d) int array."""
        raise NotImplementedError

    def canonicalize(self) -> "SubsetSpec":
        return self


@dataclass(frozen=True)
class Ball(SubsetSpec):
    """Sites with ||x||^2 <= floor(radius^2); works in any dimension.

    Membership is decided in exact integer arithmetic against the floored
    squared radius.  For non-integer radii the threshold floor(r*r) is exact
    up to the half-ulp of the float product, which never matters because
    squared site norms are integers.
    """

    radius: float

    def __post_init__(self):
        if self.radius < 0:
            raise InvalidSubsetError("ball radius must be nonnegative")

    @property
    def r2(self) -> int:
        r = self.radius
        if float(r).is_integer():
            return int(r) * int(r)
        return math.floor(r * r)

    def contains(self, site) -> bool:
        return int(sum(int(v) * int(v) for v in site)) <= self.r2

    def contains_many(self, positions):
        return np.einsum("ij,ij->i", positions, positions) <= self.r2

    def __str__(self):
        return f"ball:{self.radius:g}"


@dataclass(frozen=True)
class Hyperplane(SubsetSpec):
    """Sites with a.x = 0 (integer coefficients, not all zero)."""

    a: tuple[int, ...]

    def __post_init__(self):
        if all(v == 0 for v in self.a):
            raise InvalidSubsetError("hyperplane coefficients all zero")

    @property
    def dim(self):
        return len(self.a)

    def contains(self, site) -> bool:
        _check_dim(self.dim, len(site))
        return sum(int(c) * int(v) for c, v in zip(self.a, site)) == 0

    def contains_many(self, positions):
        _check_dim(self.dim, positions.shape[1])
        return positions @ np.asarray(self.a, dtype=np.int64) == 0

    def canonicalize(self):
        return type(self)(_canonical_coeffs(self.a))

    def __str__(self):
        tag = "line" if len(self.a) == 2 else "hyp"
        return f"{tag}:{','.join(str(v) for v in self.a)}"


def Line2D(a1: int, a2: int) -> Hyperplane:
    """The lattice line a1*x1 + a2*x2 = 0 in Z^2."""
    return Hyperplane((int(a1), int(a2)))


@dataclass(frozen=True)
class Codim2(SubsetSpec):
    """Sites with a.x = 0 and b.x = 0, a and b integer and not parallel."""

    a: tuple[int, ...]
    b: tuple[int, ...]

    def __post_init__(self):
        if len(self.a) != len(self.b):
            raise InvalidSubsetError("coefficient vectors differ in length")
        if all(v == 0 for v in self.a) or all(v == 0 for v in self.b):
            raise InvalidSubsetError("coefficients must not all be zero")
        # exact integer rank test: every 2x2 minor zero <=> parallel
        n = len(self.a)
        if all(self.a[i] * self.b[j] - self.a[j] * self.b[i] == 0
               for i in range(n) for j in range(i + 1, n)):
            raise InvalidSubsetError("codim-2 coefficient vectors are parallel")

    @property
    def dim(self):
        return len(self.a)

    def contains(self, site) -> bool:
        _check_dim(self.dim, len(site))
        sa = sum(int(c) * int(v) for c, v in zip(self.a, site))
        sb = sum(int(c) * int(v) for c, v in zip(self.b, site))
        return sa == 0 and sb == 0

    def contains_many(self, positions):
        _check_dim(self.dim, positions.shape[1])
        za = positions @ np.asarray(self.a, dtype=np.int64)
        zb = positions @ np.asarray(self.b, dtype=np.int64)
        return (za == 0) & (zb == 0)

    def canonicalize(self):
        return Codim2(_canonical_coeffs(self.a), _canonical_coeffs(self.b))

    def __str__(self):
        return ("codim2:" + ",".join(str(v) for v in self.a)
                + ";" + ",".join(str(v) for v in self.b))


@dataclass(frozen=True)
class Intersection(SubsetSpec):
    """Conjunction of member predicates."""

    parts: tuple[SubsetSpec, ...]

    def __post_init__(self):
        if not self.parts:
            raise InvalidSubsetError("empty intersection")
        dims = {p.dim for p in self.parts if p.dim is not None}
        if len(dims) > 1:
            raise InvalidSubsetError(f"mixed dimensions in intersection: {dims}")

    @property
    def dim(self):
        for p in self.parts:
            if p.dim is not None:
                return p.dim
        return None

    def contains(self, site) -> bool:
        return all(p.contains(site) for p in self.parts)

    def contains_many(self, positions):
        mask = self.parts[0].contains_many(positions)
        for p in self.parts[1:]:
            mask &= p.contains_many(positions)
        return mask

    def canonicalize(self):
        return Intersection(tuple(p.canonicalize() for p in self.parts))

    def __str__(self):
        return "and(" + ",".join(str(p) for p in self.parts) + ")"


_TAGS = ("ball:", "line:", "hyp:", "codim2:", "and(")


def parse_subset(text: str) -> SubsetSpec:
    """Parse the textual subset grammar."""
    s = text.strip()
    if s.startswith("and(") and s.endswith(")"):
        body = s[4:-1]
        # split at top-level commas that are followed by a spec tag; commas
        # inside coefficient lists are not followed by a tag
        parts, depth, start = [], 0, 0
        for i, ch in enumerate(body):
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
            elif (ch == "," and depth == 0
                  and any(body[i + 1:].lstrip().startswith(t) for t in _TAGS)):
                parts.append(body[start:i])
                start = i + 1
        parts.append(body[start:])
        return Intersection(tuple(parse_subset(p) for p in parts))
    if s.startswith("ball:"):
        return Ball(float(s[5:]))
    if s.startswith("line:"):
        vals = [int(v) for v in s[5:].split(",")]
        if len(vals) != 2:
            raise InvalidSubsetError(f"line expects 2 coefficients: {text!r}")
        return Line2D(*vals)
    if s.startswith("hyp:"):
        return Hyperplane(tuple(int(v) for v in s[4:].split(",")))
    if s.startswith("codim2:"):
        try:
            sa, sb = s[7:].split(";")
        except ValueError:
            raise InvalidSubsetError(f"codim2 expects 'a;b': {text!r}") from None
        return Codim2(tuple(int(v) for v in sa.split(",")),
                      tuple(int(v) for v in sb.split(",")))
    raise InvalidSubsetError(f"unrecognized subset spec: {text!r}")
