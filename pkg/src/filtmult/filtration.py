"""Filtrations of m-primary monomial ideals, built level by level.

Five kinds are provided: powers of a fixed ideal, a fixed ideal plus
powers of another, levels cut out by a weighted valuation with an exactly
rounded (possibly irrational quadratic) threshold, truncations that
regenerate high levels from low ones, and index rescalings.  Levels are
memoized per filtration; the cache is lock-guarded so one instance may be
shared across threads.
"""

from __future__ import annotations

import itertools
import math
import threading
from dataclasses import dataclass
from fractions import Fraction

from . import monomial
from .monomial import MonomialIdeal


@dataclass(frozen=True)
class SurdScalar:
    """Exact positive scalar, either p/q or the square root of p/q.

    Square roots of perfect squares normalize to the rational kind, so
    is_root implies the value is irrational.  Comparisons and ceilings
    stay in integer arithmetic throughout.
    """

    p: int
    q: int
    is_root: bool

    def __post_init__(self) -> None:
        if self.p <= 0 or self.q <= 0:
            raise ValueError("scalar requires positive p and q")

    @property
    def value_squared(self) -> Fraction:
        f = Fraction(self.p, self.q)
        return f if self.is_root else f * f

    def approx(self) -> float:
        f = Fraction(self.p, self.q)
        return math.sqrt(f) if self.is_root else float(f)

    def scaled_ceiling(self, n: int, unit: Fraction = Fraction(1)) -> int:
        """Smallest integer k with k*unit >= n*(this scalar)."""
        if n < 0:
            raise ValueError("level must be nonnegative")
        if unit <= 0:
            raise ValueError("unit must be positive")
        if n == 0:
            return 0
        if not self.is_root:
            target = Fraction(n * self.p, self.q) / unit
            return -((-target.numerator) // target.denominator)
        # k*unit >= n*sqrt(p/q)  iff  k^2 * unit^2 * q >= n^2 * p; the
        # left side is rational and the right is not a perfect square
        # times q, so equality never decides membership.
        target = Fraction(n * n * self.p, self.q) / (unit * unit)
        k = math.isqrt(target.numerator // target.denominator)
        while k * k < target:
            k += 1
        return k

    def reaches(self, total: Fraction, n: int) -> bool:
        """Exact test of total >= n*(this scalar) for total >= 0."""
        if not self.is_root:
            return total * self.q >= n * self.p
        return total * total * self.q >= n * n * self.p


def rational_scale(p: int, q: int = 1) -> SurdScalar:
    g = math.gcd(p, q)
    return SurdScalar(p // g, q // g, is_root=False)


def root_scale(p: int, q: int = 1) -> SurdScalar:
    g = math.gcd(p, q)
    p, q = p // g, q // g
    rp, rq = math.isqrt(p), math.isqrt(q)
    if rp * rp == p and rq * rq == q:
        return SurdScalar(rp, rq, is_root=False)
    return SurdScalar(p, q, is_root=True)


class Filtration:
    """Descending chain of m-primary monomial ideals indexed by level.

    Subclasses implement _level; ideal_at validates, memoizes and returns
    the unit ideal at level 0.  The memo table keeps the first value
    written per key and is safe for concurrent readers.
    """

    kind: str = "abstract"

    def __init__(self, dim: int) -> None:
        self.dim = dim
        self._cache: dict[int, MonomialIdeal] = {}
        self._lock = threading.Lock()

    def ideal_at(self, n: int) -> MonomialIdeal:
        if n < 0:
            raise ValueError("filtration level must be nonnegative")
        if n == 0:
            return monomial.unit_ideal(self.dim)
        with self._lock:
            got = self._cache.get(n)
        if got is not None:
            return got
        computed = self._level(n)
        with self._lock:
            return self._cache.setdefault(n, computed)

    def _level(self, n: int) -> MonomialIdeal:
        raise NotImplementedError


class AdicFiltration(Filtration):
    """Levels are powers of one fixed m-primary ideal."""

    kind = "adic"

    def __init__(self, base: MonomialIdeal) -> None:
        if not base.is_primary():
            raise ValueError("adic filtration requires an m-primary base")
        super().__init__(base.dim)
        self.base = base

    def _level(self, n: int) -> MonomialIdeal:
        return self.base.power(n)


class FixedPlusAdicFiltration(Filtration):
    """Levels are a fixed proper ideal plus powers of an m-primary one."""

    kind = "fixed-plus-adic"

    def __init__(self, fixed: MonomialIdeal, bulk: MonomialIdeal) -> None:
        if fixed.dim != bulk.dim:
            raise ValueError("dimension mismatch between summands")
        if fixed.is_unit() or not fixed.gens:
            raise ValueError("fixed part must be a proper nonzero ideal")
        if not bulk.is_primary():
            raise ValueError("varying part must be m-primary")
        super().__init__(fixed.dim)
        self.fixed = fixed
        self.bulk = bulk

    def _level(self, n: int) -> MonomialIdeal:
        return self.fixed + self.bulk.power(n)


class RoundedValuationFiltration(Filtration):
    """Level n collects exponents whose weighted sum reaches n times an
    exact scale.

    Minimal generators of level n live in the box with per-axis bound
    min{k : k*w_i >= n*scale}, because lowering any larger coordinate to
    that bound still qualifies.
    """

    kind = "rounded-valuation"

    def __init__(self, weights: tuple[Fraction, ...], scale: SurdScalar) -> None:
        ws = tuple(Fraction(w) for w in weights)
        if not ws or any(w <= 0 for w in ws):
            raise ValueError("weights must be positive")
        super().__init__(len(ws))
        self.weights = ws
        self.scale = scale

    def _level(self, n: int) -> MonomialIdeal:
        bounds = [self.scale.scaled_ceiling(n, w) for w in self.weights]
        hits = []
        for a in itertools.product(*(range(b + 1) for b in bounds)):
            total = sum((w * c for w, c in zip(self.weights, a)), Fraction(0))
            if self.scale.reaches(total, n):
                hits.append(a)
        return monomial.ideal(self.dim, hits)


class TruncatedFiltration(Filtration):
    """Keeps levels up to a, then regenerates: level n > a is the sum of
    products level(i)*level(n-i) over 1 <= i <= min(a, n-1).

    Lower levels are materialized iteratively before use so deep levels
    cost no recursion depth.
    """

    kind = "truncated"

    def __init__(self, base: Filtration, a: int) -> None:
        if a < 1:
            raise ValueError("truncation level must be positive")
        super().__init__(base.dim)
        self.base = base
        self.a = a
        self._exponents: dict[int, int] | None = None

    def _level(self, n: int) -> MonomialIdeal:
        if n <= self.a:
            return self.base.ideal_at(n)
        if self.dim == 1:
            return monomial.ideal(1, [(self._exponent_level(n),)])
        for k in range(self.a + 1, n):
            self.ideal_at(k)
        acc: MonomialIdeal | None = None
        for i in range(1, min(self.a, n - 1) + 1):
            term = self.ideal_at(i) * self.ideal_at(n - i)
            acc = term if acc is None else acc + term
        assert acc is not None
        return acc

    def _exponent_level(self, n: int) -> int:
        # One generator per level in dimension one, so the recurrence can
        # run on bare exponents: g(n) = min over parts of g(i) + g(n-i).
        # Base levels are fetched before taking the lock; the base has its
        # own lock and is never re-entered from here.
        base = [self.base.ideal_at(k).gens[0][0] for k in range(1, self.a + 1)]
        with self._lock:
            if self._exponents is None:
                self._exponents = {k + 1: g for k, g in enumerate(base)}
            table = self._exponents
            for k in range(max(table) + 1, n + 1):
                table[k] = min(
                    table[i] + table[k - i] for i in range(1, min(self.a, k - 1) + 1)
                )
            return table[n]


class RescaledFiltration(Filtration):
    """Reads the base filtration at multiples of a fixed stride."""

    kind = "rescaled"

    def __init__(self, base: Filtration, s: int) -> None:
        if s < 1:
            raise ValueError("rescaling stride must be positive")
        super().__init__(base.dim)
        self.base = base
        self.s = s

    def _level(self, n: int) -> MonomialIdeal:
        return self.base.ideal_at(self.s * n)


def adic(base: MonomialIdeal) -> AdicFiltration:
    return AdicFiltration(base)


def fixed_plus_adic(fixed: MonomialIdeal, bulk: MonomialIdeal) -> FixedPlusAdicFiltration:
    return FixedPlusAdicFiltration(fixed, bulk)


def rounded_valuation(weights, scale: SurdScalar) -> RoundedValuationFiltration:
    return RoundedValuationFiltration(tuple(Fraction(w) for w in weights), scale)


def truncate(f: Filtration, a: int) -> TruncatedFiltration:
    return TruncatedFiltration(f, a)


def rescale(f: Filtration, s: int) -> RescaledFiltration:
    return RescaledFiltration(f, s)


@dataclass(frozen=True)
class PeriodCertificate:
    """Period s with the bound up to which its defining equality was checked."""

    period: int
    checked_bound: int


class PeriodNotCertified(ValueError):
    """No candidate period verified; carries the deepest-surviving candidate."""

    def __init__(self, best_candidate: int, first_failure: int) -> None:
        super().__init__(
            f"no candidate period verified; candidate {best_candidate} "
            f"survived longest, failing first at i={first_failure}; "
            "retry with a larger check_bound"
        )
        self.best_candidate = best_candidate
        self.first_failure = first_failure


def _holds_up_to(f: TruncatedFiltration, s: int, bound: int) -> int | None:
    """First i <= bound where level(s*i) != level(s)^i, or None."""
    block = f.ideal_at(s)
    power = block
    for i in range(1, bound + 1):
        if i > 1:
            power = power * block
        if f.ideal_at(s * i) != power:
            return i
    return None


def noetherian_period(
    f: TruncatedFiltration, check_bound: int = 16, candidate_cap: int = 10_000
) -> PeriodCertificate:
    """Smallest verified s with level(s*i) = level(s)^i for i <= check_bound.

    Candidates are the divisors of lcm(1..a) in ascending order (every
    level index up to a divides that lcm), walked lazily so huge lcm
    values cost nothing.  Verification is a semi-decision: the certificate
    records the bound actually checked.  After candidate_cap divisors the
    search gives up and reports the deepest-surviving candidate.
    """
    if not isinstance(f, TruncatedFiltration):
        raise TypeError("period detection applies to truncated filtrations")
    if check_bound < 1:
        raise ValueError("check_bound must be positive")
    ell = math.lcm(*range(1, f.a + 1))
    best_s, best_depth = 1, 0
    examined = 0
    # The integer walk is capped independently of the divisor count so a
    # fruitless search over a huge lcm still terminates.
    for s in range(1, min(ell, 1_000_000) + 1):
        if ell % s:
            continue
        examined += 1
        failed_at = _holds_up_to(f, s, check_bound)
        if failed_at is None:
            return PeriodCertificate(period=s, checked_bound=check_bound)
        if failed_at > best_depth:
            best_s, best_depth = s, failed_at
        if examined >= candidate_cap:
            break
    raise PeriodNotCertified(best_s, best_depth)


@dataclass(frozen=True)
class SubmultiplicativityReport:
    """Outcome of checking level(i)*level(j) inside level(i+j)."""

    bound: int
    ok: bool
    first_violation: tuple[int, int] | None


def check_submultiplicative(f: Filtration, bound: int) -> SubmultiplicativityReport:
    """Verify products of levels land in the level of the summed index,
    for all i + j <= bound with i, j >= 1.  First violation is reported,
    never raised.
    """
    for total in range(2, bound + 1):
        for i in range(1, total // 2 + 1):
            j = total - i
            if not f.ideal_at(total).contains_ideal(f.ideal_at(i) * f.ideal_at(j)):
                return SubmultiplicativityReport(bound, False, (i, j))
    return SubmultiplicativityReport(bound, True, None)
