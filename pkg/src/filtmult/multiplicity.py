"""Growth of colengths along filtration products.

Direct ladders estimate the normalized limit of ell(R/product)/m^d;
certified periods turn truncated filtrations into exact covolume
computations; sampling the growth function on a unisolvent grid and
solving the exact Vandermonde system extracts mixed multiplicities; the
positivity report checks the sign and vanishing structure those
coefficients must satisfy.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from . import linalg, monomial
from .filtration import (
    Filtration,
    PeriodCertificate,
    TruncatedFiltration,
    noetherian_period,
    truncate,
)
from .monomial import MonomialIdeal

DEFAULT_LADDER = (8, 16, 32)
DEFAULT_ZERO_THRESHOLD = Fraction(1, 1000)

DIRECT = "direct"
TRUNCATION_EXACT = "truncation-exact"


@dataclass(frozen=True)
class LimitEstimate:
    """A limit value together with how it was obtained.

    Exact values (method truncation-exact) are authoritative; direct
    values carry the ladder tail they were extrapolated from and make no
    convergence-rate claim.
    """

    value: Fraction
    lower_evidence: Fraction
    method: str
    error_note: str
    tail: tuple[tuple[int, Fraction], ...] = ()


@dataclass(frozen=True)
class MixedMultiplicityReport:
    r: int
    d: int
    coeffs: dict[tuple[int, ...], LimitEstimate]
    backend: str


def _common_dim(fs) -> int:
    dims = {f.dim for f in fs}
    if len(dims) != 1:
        raise ValueError("filtrations must share one ambient dimension")
    return dims.pop()


def product_ideal_at(fs, levels) -> MonomialIdeal:
    """Product of each filtration's ideal at its own level."""
    d = _common_dim(fs)
    prod = monomial.unit_ideal(d)
    for f, lv in zip(fs, levels):
        if lv:
            prod = prod * f.ideal_at(lv)
    return prod


def length_sequence(fs, n, ladder) -> list[tuple[int, Fraction]]:
    """Normalized colengths of the product at levels m*n, one per ladder m."""
    fs = list(fs)
    n = tuple(n)
    if len(n) != len(fs):
        raise ValueError("one level weight per filtration required")
    if any(v < 0 for v in n):
        raise ValueError("level weights must be nonnegative")
    msteps = list(ladder)
    if any(b <= a for a, b in zip(msteps, msteps[1:])) or any(m < 1 for m in msteps):
        raise ValueError("ladder must be strictly increasing and positive")
    d = _common_dim(fs)
    out = []
    for m in msteps:
        ell = product_ideal_at(fs, [m * v for v in n]).colength()
        out.append((m, Fraction(ell, m**d)))
    return out


def limit_estimate(seq, order: int = 2) -> LimitEstimate:
    """Last term plus an extrapolated refinement from the tail of the ladder.

    The default fits c0 + c1/m over the last three terms; c0 is the
    reported value, exact whenever the tail is exactly affine in 1/m.
    order k >= 3 interpolates c0 + c1/m + ... + c_{k-1}/m^{k-1} through
    the last k terms instead, which recovers the limit exactly whenever
    the scaled lengths are polynomial of degree below k in 1/m along the
    sampled rungs.
    """
    terms = list(seq)
    if order < 2:
        raise ValueError("order must be at least 2")
    need = 3 if order == 2 else order
    if len(terms) < need:
        raise ValueError(f"at least {need} ladder terms required")
    tail = terms[-need:]
    xs = [Fraction(1, m) for m, _ in tail]
    ys = [v for _, v in tail]
    ms = ", ".join(str(m) for m, _ in tail)
    if order == 2:
        c0, _c1 = linalg.fit_affine(xs, ys)
        note = f"fit c0 + c1/m over m in {{{ms}}}; no certified rate"
    else:
        rows = [[u**j for j in range(order)] for u in xs]
        c0 = linalg.solve_linear(rows, ys)[0]
        note = f"interpolated through m in {{{ms}}} at order {order}; no certified rate"
    return LimitEstimate(
        value=c0,
        lower_evidence=terms[-1][1],
        method=DIRECT,
        error_note=note,
        tail=tuple(tail),
    )


def verified_common_period(fs, check_bound: int = 16) -> PeriodCertificate:
    """Least common multiple of per-filtration certified periods.

    Stretching a certificate from its own period s_j to the common s only
    preserves the checked range up to floor(check_bound * s_j / s), so the
    returned bound is the weakest of those; it is at least 1 whenever every
    per-filtration certification succeeds.
    """
    certs = [noetherian_period(f, check_bound) for f in fs]
    s = math.lcm(*(c.period for c in certs))
    bound = min(c.checked_bound * c.period // s for c in certs)
    return PeriodCertificate(period=s, checked_bound=bound)


def exact_growth(fs, n, s: int) -> Fraction:
    """Exact limit of ell(product at m*n)/m^d along multiples of s.

    Requires s to be a certified period of every filtration: the level-s
    ideal then generates all deeper levels, and the limit is the covolume
    of the product of its n_j-th powers, scaled by s^d.
    """
    fs = list(fs)
    n = tuple(n)
    d = _common_dim(fs)
    prod = monomial.unit_ideal(d)
    for f, nj in zip(fs, n):
        if nj:
            prod = prod * f.ideal_at(s).power(nj)
    if prod.is_unit():
        return Fraction(0)
    return prod.covolume() / Fraction(s**d)


def sample_grid(d: int, r: int) -> tuple[tuple[int, ...], ...]:
    """Evaluation points: compositions of d into r parts, shifted by one.

    Exactly as many points as a homogeneous degree-d polynomial in r
    variables has coefficients, and the shifted principal lattice keeps
    the evaluation matrix nonsingular.
    """
    return tuple(tuple(t + 1 for t in tv) for tv in type_vectors(d, r))


def type_vectors(d: int, r: int) -> tuple[tuple[int, ...], ...]:
    """All exponent vectors of total degree d in r variables, sorted with
    the weight-on-first-filtration vectors first."""
    if r < 1:
        raise ValueError("at least one filtration required")
    vs = []
    for bars in itertools.combinations(range(d + r - 1), r - 1):
        prev = -1
        parts = []
        for b in bars:
            parts.append(b - prev - 1)
            prev = b
        parts.append(d + r - 2 - prev)
        vs.append(tuple(parts))
    return tuple(sorted(vs, reverse=True))


def fit_homogeneous(points, values, d: int, r: int) -> dict[tuple[int, ...], Fraction]:
    """Exact coefficients of the degree-d homogeneous polynomial matching
    the given values at the given points."""
    tvs = type_vectors(d, r)
    pts = list(points)
    if len(pts) != len(tvs):
        raise ValueError("point count must match coefficient count")
    rows = [[Fraction(math.prod(p[i] ** t[i] for i in range(r))) for t in tvs] for p in pts]
    sol = linalg.solve_linear(rows, [Fraction(v) for v in values])
    return dict(zip(tvs, sol))


def _factorial_product(t) -> int:
    return math.prod(math.factorial(v) for v in t)


def mixed_multiplicities(
    fs,
    backend: str = TRUNCATION_EXACT,
    trunc_level: int | None = None,
    ladder=None,
    check_bound: int = 16,
    order: int = 2,
) -> MixedMultiplicityReport:
    """Normalized coefficients of the growth polynomial, one per type vector.

    The exact backend certifies a common period for (truncations of) the
    inputs and evaluates growth by covolume; the direct backend estimates
    growth at each grid point from a ladder of colengths.  Either way the
    homogeneous polynomial is recovered by an exact linear solve and the
    coefficient of type t is scaled by prod(t_j!).
    """
    fs = list(fs)
    d = _common_dim(fs)
    r = len(fs)
    grid = sample_grid(d, r)
    if backend == TRUNCATION_EXACT:
        if trunc_level is not None:
            work = [truncate(f, trunc_level) for f in fs]
        elif all(isinstance(f, TruncatedFiltration) for f in fs):
            work = fs
        else:
            raise ValueError(
                "truncation-exact backend requires truncated inputs or trunc_level"
            )
        cert = verified_common_period(work, check_bound)
        samples = [exact_growth(work, n, cert.period) for n in grid]
        coeffs = fit_homogeneous(grid, samples, d, r)
        note = (
            f"exact along period {cert.period}, "
            f"certified for i <= {cert.checked_bound}"
        )
        out = {
            t: LimitEstimate(
                value=c * _factorial_product(t),
                lower_evidence=c * _factorial_product(t),
                method=TRUNCATION_EXACT,
                error_note=note,
            )
            for t, c in coeffs.items()
        }
        return MixedMultiplicityReport(r=r, d=d, coeffs=out, backend=TRUNCATION_EXACT)
    if backend == DIRECT:
        steps = tuple(ladder) if ladder is not None else DEFAULT_LADDER
        ests = [limit_estimate(length_sequence(fs, n, steps), order) for n in grid]
        coeffs = fit_homogeneous(grid, [e.value for e in ests], d, r)
        raw = fit_homogeneous(grid, [e.lower_evidence for e in ests], d, r)
        note = ests[0].error_note
        out = {
            t: LimitEstimate(
                value=coeffs[t] * _factorial_product(t),
                lower_evidence=raw[t] * _factorial_product(t),
                method=DIRECT,
                error_note=note,
            )
            for t in coeffs
        }
        return MixedMultiplicityReport(r=r, d=d, coeffs=out, backend=DIRECT)
    raise ValueError(f"unknown backend {backend!r}")


def multiplicity_estimate(
    f: Filtration,
    backend: str = DIRECT,
    ladder=None,
    trunc_level: int | None = None,
    check_bound: int = 16,
) -> LimitEstimate:
    """Multiplicity of a single filtration: d! times the growth limit."""
    d = f.dim
    scale = math.factorial(d)
    if backend == DIRECT:
        steps = tuple(ladder) if ladder is not None else DEFAULT_LADDER
        est = limit_estimate(length_sequence([f], (1,), steps))
        return LimitEstimate(
            value=est.value * scale,
            lower_evidence=est.lower_evidence * scale,
            method=DIRECT,
            error_note=est.error_note + f"; scaled by d! = {scale}",
            tail=est.tail,
        )
    if backend == TRUNCATION_EXACT:
        if trunc_level is not None:
            work = truncate(f, trunc_level)
        elif isinstance(f, TruncatedFiltration):
            work = f
        else:
            raise ValueError(
                "truncation-exact backend requires a truncated input or trunc_level"
            )
        cert = noetherian_period(work, check_bound)
        value = exact_growth([work], (1,), cert.period) * scale
        return LimitEstimate(
            value=value,
            lower_evidence=value,
            method=TRUNCATION_EXACT,
            error_note=(
                f"exact along period {cert.period}, "
                f"certified for i <= {cert.checked_bound}"
            ),
        )
    raise ValueError(f"unknown backend {backend!r}")


@dataclass(frozen=True)
class TruncationLadder:
    """Mixed multiplicities of successive truncations, with differences."""

    entries: tuple[tuple[int, MixedMultiplicityReport], ...]
    differences: dict[tuple[int, ...], tuple[Fraction, ...]]


def truncation_ladder(fs, levels, check_bound: int = 16) -> TruncationLadder:
    """Exact mixed multiplicities of the a-truncations for each a in levels.

    Successive differences per type vector are attached as convergence
    evidence; no rate is claimed.
    """
    steps = list(levels)
    if any(b <= a for a, b in zip(steps, steps[1:])):
        raise ValueError("truncation levels must be strictly increasing")
    entries = []
    for a in steps:
        rep = mixed_multiplicities(
            fs, backend=TRUNCATION_EXACT, trunc_level=a, check_bound=check_bound
        )
        entries.append((a, rep))
    diffs: dict[tuple[int, ...], tuple[Fraction, ...]] = {}
    if entries:
        for t in entries[0][1].coeffs:
            vals = [rep.coeffs[t].value for _, rep in entries]
            diffs[t] = tuple(b - a for a, b in zip(vals, vals[1:]))
    return TruncationLadder(entries=tuple(entries), differences=diffs)


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str


@dataclass(frozen=True)
class PositivityReport:
    """Signs and vanishing structure of a mixed-multiplicity report.

    positive_indices lists the filtrations whose own multiplicity is
    positive, in their original order; the checks assert nonnegativity of
    everything, vanishing of coefficients weighting a zero-multiplicity
    filtration, and agreement plus positivity of the surviving
    coefficients against the reduced instance.
    """

    backend: str
    zero_threshold: Fraction
    single: tuple[tuple[int, Fraction, bool], ...]
    positive_indices: tuple[int, ...]
    report: MixedMultiplicityReport
    checks: tuple[Check, ...]
    ok: bool


def _classify_positive(value: Fraction, method: str, threshold: Fraction) -> bool:
    if method == TRUNCATION_EXACT:
        return value > 0
    return value > threshold


def _classify_zero(value: Fraction, method: str, threshold: Fraction) -> bool:
    if method == TRUNCATION_EXACT:
        return value == 0
    return abs(value) <= threshold


def positivity_report(
    fs,
    backend: str = TRUNCATION_EXACT,
    trunc_level: int | None = None,
    ladder=None,
    check_bound: int = 16,
    zero_threshold: Fraction = DEFAULT_ZERO_THRESHOLD,
    order: int = 2,
) -> PositivityReport:
    fs = list(fs)
    report = mixed_multiplicities(
        fs,
        backend=backend,
        trunc_level=trunc_level,
        ladder=ladder,
        check_bound=check_bound,
        order=order,
    )
    d, r = report.d, report.r
    single = []
    positives = []
    for j in range(r):
        t = tuple(d if i == j else 0 for i in range(r))
        est = report.coeffs[t]
        pos = _classify_positive(est.value, est.method, zero_threshold)
        single.append((j, est.value, pos))
        if pos:
            positives.append(j)
    checks: list[Check] = []

    floor = Fraction(0) if backend == TRUNCATION_EXACT else -zero_threshold
    bad = [(t, e.value) for t, e in report.coeffs.items() if e.value < floor]
    checks.append(
        Check(
            "nonnegative",
            not bad,
            "all coefficients >= 0" if not bad else f"negative at {bad[0][0]}: {bad[0][1]}",
        )
    )

    zero_set = set(range(r)) - set(positives)
    touching = [
        (t, e)
        for t, e in report.coeffs.items()
        if any(t[j] > 0 for j in zero_set)
    ]
    failures = [
        (t, e.value)
        for t, e in touching
        if not _classify_zero(e.value, e.method, zero_threshold)
    ]
    checks.append(
        Check(
            "vanishing-with-zero-weight",
            not failures,
            f"{len(touching)} coefficients weight a zero-multiplicity filtration; all vanish"
            if not failures
            else f"nonzero at {failures[0][0]}: {failures[0][1]}",
        )
    )

    if not positives:
        checks.append(Check("survivors-match-reduced", True, "no surviving indices"))
        checks.append(Check("survivors-positive", True, "no surviving indices"))
    elif len(positives) == r:
        survivors = list(report.coeffs.items())
        neg = [
            (t, e.value)
            for t, e in survivors
            if not _classify_positive(e.value, e.method, zero_threshold)
        ]
        checks.append(Check("survivors-match-reduced", True, "all indices survive"))
        checks.append(
            Check(
                "survivors-positive",
                not neg,
                "all coefficients positive"
                if not neg
                else f"not positive at {neg[0][0]}: {neg[0][1]}",
            )
        )
    else:
        sub = mixed_multiplicities(
            [fs[j] for j in positives],
            backend=backend,
            trunc_level=trunc_level,
            ladder=ladder,
            check_bound=check_bound,
            order=order,
        )
        mismatches = []
        not_positive = []
        for t_sub, e_sub in sub.coeffs.items():
            t_full = [0] * r
            for k, j in enumerate(positives):
                t_full[j] = t_sub[k]
            e_full = report.coeffs[tuple(t_full)]
            diff = abs(e_full.value - e_sub.value)
            tol = Fraction(0) if backend == TRUNCATION_EXACT else zero_threshold
            if diff > tol:
                mismatches.append((tuple(t_full), e_full.value, e_sub.value))
            if not _classify_positive(e_full.value, e_full.method, zero_threshold):
                not_positive.append((tuple(t_full), e_full.value))
        checks.append(
            Check(
                "survivors-match-reduced",
                not mismatches,
                f"{len(sub.coeffs)} surviving coefficients equal the reduced instance"
                if not mismatches
                else f"mismatch at {mismatches[0][0]}: {mismatches[0][1]} vs {mismatches[0][2]}",
            )
        )
        checks.append(
            Check(
                "survivors-positive",
                not not_positive,
                "surviving coefficients positive"
                if not not_positive
                else f"not positive at {not_positive[0][0]}: {not_positive[0][1]}",
            )
        )

    return PositivityReport(
        backend=backend,
        zero_threshold=zero_threshold,
        single=tuple(single),
        positive_indices=tuple(positives),
        report=report,
        checks=tuple(checks),
        ok=all(c.passed for c in checks),
    )
