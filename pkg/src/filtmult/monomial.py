"""Monomial ideals in a polynomial ring, represented by generator exponents.

An ideal is stored as the antichain of its minimal generators: a finite set
of exponent vectors in N^d, none componentwise below another.  Membership,
sums, products and powers are pure set combinatorics on that antichain.
Colengths (the number of standard monomials) are computed exactly by
coordinate slicing; the geometric quantities (Newton polyhedron vertices,
covolume) are delegated to the polytope kernel.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import polytope

Exponent = tuple[int, ...]

GEOMETRY_DIM_CAP = 4


def minimalize(gens: Iterable[Sequence[int]], dim: int) -> tuple[Exponent, ...]:
    """Reduce a generating set to the antichain of minimal exponents.

    Keeps exactly the generators not componentwise dominated by another,
    deduplicated and sorted.  Two dimensions get a linear sweep; higher
    dimensions fall back to dominance scans ordered by total degree.
    """
    pts = sorted({tuple(int(c) for c in g) for g in gens})
    for p in pts:
        if len(p) != dim:
            raise ValueError(f"exponent {p} does not have length {dim}")
        if any(c < 0 for c in p):
            raise ValueError(f"negative exponent in {p}")
    if not pts:
        return ()
    if dim == 1:
        return (min(pts),)
    if dim == 2:
        # Sorted lexicographically: x ascending, y ascending within equal x.
        # A point survives iff its y is strictly below every kept y so far.
        kept2: list[Exponent] = []
        best_y: int | None = None
        for p in pts:
            if best_y is None or p[1] < best_y:
                kept2.append(p)
                best_y = p[1]
        return tuple(sorted(kept2))
    if dim == 3:
        return _minimalize3(pts)
    by_degree = sorted(pts, key=lambda p: (sum(p), p))
    kept: list[Exponent] = []
    for p in by_degree:
        if not any(all(q[i] <= p[i] for i in range(dim)) for q in kept):
            kept.append(p)
    return tuple(sorted(kept))


def _minimalize3(pts: list[Exponent]) -> tuple[Exponent, ...]:
    """Linear-logarithmic antichain filter for three dimensions.

    Points arrive lexicographically sorted, so a dominator always precedes
    its victim.  The survivors' (y, z) profile is kept as a front with y
    ascending and z strictly decreasing; the rightmost entry with y' <= y
    then carries the least z among all candidates, so one lookup decides
    dominance.
    """
    kept: list[Exponent] = []
    fy: list[int] = []
    fz: list[int] = []
    for p in pts:
        y, z = p[1], p[2]
        i = bisect.bisect_right(fy, y) - 1
        if i >= 0 and fz[i] <= z:
            continue
        kept.append(p)
        j = bisect.bisect_left(fy, y)
        k = j
        while k < len(fy) and fz[k] >= z:
            k += 1
        fy[j:k] = [y]
        fz[j:k] = [z]
    return tuple(kept)


@dataclass(frozen=True)
class MonomialIdeal:
    """A monomial ideal given by its minimal generator antichain.

    Instances are immutable; all operations return new ideals.  Construct
    through :func:`ideal`, which minimalizes and validates the input.
    """

    dim: int
    gens: tuple[Exponent, ...]

    def contains(self, exponent: Sequence[int]) -> bool:
        """Monomial membership: some generator divides x^exponent."""
        e = tuple(exponent)
        if len(e) != self.dim:
            raise ValueError("exponent length does not match ambient dimension")
        return any(all(g[i] <= e[i] for i in range(self.dim)) for g in self.gens)

    def contains_ideal(self, other: "MonomialIdeal") -> bool:
        """True when other is a subideal, i.e. every generator of other lies here."""
        self._check_same_dim(other)
        return all(self.contains(g) for g in other.gens)

    def __add__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        self._check_same_dim(other)
        return MonomialIdeal(self.dim, minimalize(self.gens + other.gens, self.dim))

    def __mul__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        self._check_same_dim(other)
        if not self.gens or not other.gens:
            return MonomialIdeal(self.dim, ())
        prods = {
            tuple(a + b for a, b in zip(g, h))
            for g in self.gens
            for h in other.gens
        }
        return MonomialIdeal(self.dim, minimalize(prods, self.dim))

    def power(self, k: int) -> "MonomialIdeal":
        """k-th power, by binary exponentiation with minimalization at each step."""
        if k < 0:
            raise ValueError("negative power")
        result = unit_ideal(self.dim)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def is_unit(self) -> bool:
        return self.gens == ((0,) * self.dim,)

    def is_primary(self) -> bool:
        """True when a pure power of every variable appears among the generators.

        Equivalent to the quotient ring having finite length.
        """
        if not self.gens:
            return False
        for i in range(self.dim):
            if not any(all(c == 0 for j, c in enumerate(g) if j != i) for g in self.gens):
                return False
        return True

    def colength(self) -> int:
        """Number of monomials outside the ideal, exact.

        Only defined for primary ideals; raises ValueError otherwise.
        """
        if not self.is_primary():
            raise ValueError("colength is finite only for primary ideals")
        return _colength(list(self.gens), self.dim)

    def newton_vertices(self) -> polytope.RationalPolytope:
        """Vertices of the Newton polyhedron conv(gens) + R_{>=0}^d.

        Returned as the polytope spanned by the extreme generator exponents;
        the recession cone (the positive orthant) is implicit.
        """
        self._check_geometry_dim()
        ext = polytope.orthant_extremes([tuple(map(Fraction, g)) for g in self.gens])
        return polytope.RationalPolytope(self.dim, tuple(sorted(ext)))

    def covolume(self) -> Fraction:
        """Volume of the orthant complement of the Newton polyhedron, exact.

        This is the normalized limit of colength(I^n)/n^d; the multiplicity
        is d! times this value.
        """
        self._check_geometry_dim()
        if not self.is_primary():
            raise ValueError("covolume is finite only for primary ideals")
        if self.is_unit():
            return Fraction(0)
        return polytope.orthant_covolume(self.gens, self.dim)

    def _check_same_dim(self, other: "MonomialIdeal") -> None:
        if self.dim != other.dim:
            raise ValueError("ambient dimensions differ")

    def _check_geometry_dim(self) -> None:
        if self.dim > GEOMETRY_DIM_CAP:
            raise ValueError(f"geometric operations are limited to dimension {GEOMETRY_DIM_CAP}")


def ideal(dim: int, gens: Iterable[Sequence[int]]) -> MonomialIdeal:
    """Build a MonomialIdeal from any generating set."""
    if dim < 1:
        raise ValueError("dimension must be at least 1")
    reduced = minimalize(gens, dim)
    if not reduced:
        raise ValueError("the zero ideal is not representable; give at least one generator")
    return MonomialIdeal(dim, reduced)


def unit_ideal(dim: int) -> MonomialIdeal:
    return MonomialIdeal(dim, ((0,) * dim,))


def maximal_ideal(dim: int) -> MonomialIdeal:
    """The ideal generated by all variables."""
    eye = []
    for i in range(dim):
        row = [0] * dim
        row[i] = 1
        eye.append(tuple(row))
    # Routed through minimalize so the generator order is canonical and
    # equality with independently built copies holds.
    return ideal(dim, eye)


def _pure_power(gens: Sequence[Exponent], axis: int) -> int:
    """Exponent of the minimal generator supported on the given axis alone."""
    best = None
    for g in gens:
        if all(c == 0 for j, c in enumerate(g) if j != axis):
            if best is None or g[axis] < best:
                best = g[axis]
    if best is None:
        raise ValueError("no pure power on axis; ideal is not primary")
    return best


def _colength(gens: list[Exponent], dim: int) -> int:
    if dim == 1:
        return min(g[0] for g in gens)
    if dim == 2:
        return _colength_2d(gens)
    # Slice along the last coordinate.  The slice ideal at height t is
    # generated by the projections of generators with last coordinate <= t;
    # it only changes at heights where new generators are admitted, so the
    # inner colength is recomputed once per distinct height.
    bound = _pure_power(gens, dim - 1)
    if bound == 0:
        return 0
    order = sorted(gens, key=lambda g: g[-1])
    kept: list[Exponent] = []
    total = 0
    idx = 0
    t = 0
    current = 0
    while t < bound:
        changed = False
        while idx < len(order) and order[idx][-1] <= t:
            p = order[idx][:-1]
            idx += 1
            if any(all(q[i] <= p[i] for i in range(dim - 1)) for q in kept):
                continue
            kept = [q for q in kept if not all(p[i] <= q[i] for i in range(dim - 1))]
            kept.append(p)
            changed = True
        if changed:
            current = _colength(kept, dim - 1)
        nxt = order[idx][-1] if idx < len(order) else bound
        nxt = min(nxt, bound)
        total += (nxt - t) * current
        t = nxt
    return total


def _colength_2d(gens: list[Exponent]) -> int:
    # gens form an antichain with pure powers on both axes, so sorting by x
    # gives strictly descending y starting from (0, y_max).
    pts = sorted(gens)
    total = 0
    for (x0, y0), (x1, _) in zip(pts, pts[1:]):
        total += (x1 - x0) * y0
    return total
