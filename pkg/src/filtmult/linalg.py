"""Exact linear algebra over the rationals.

Small dense problems only: the geometry kernel works in dimension <= 4 and
the polynomial fits have at most a few dozen unknowns.  Everything is done
with ``fractions.Fraction`` (or plain ints where inputs are integral), so
results are exact and reproducible.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Vector = Sequence[Fraction]
Matrix = Sequence[Sequence[Fraction]]


def solve_linear(a: Matrix, b: Vector) -> list[Fraction]:
    """Solve the square system a x = b exactly.

    Raises ValueError if the matrix is singular.
    """
    n = len(a)
    if any(len(row) != n for row in a) or len(b) != n:
        raise ValueError("solve_linear needs a square system")
    m = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(a, b)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            raise ValueError("singular matrix")
        m[col], m[pivot] = m[pivot], m[col]
        inv = 1 / m[col][col]
        m[col] = [v * inv for v in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [v - f * w for v, w in zip(m[r], m[col])]
    return [m[r][n] for r in range(n)]


def matrix_rank(a: Matrix) -> int:
    """Rank of a rational matrix, by fraction-exact elimination."""
    if not a:
        return 0
    m = [[Fraction(x) for x in row] for row in a]
    rows, cols = len(m), len(m[0])
    rank = 0
    for col in range(cols):
        pivot = next((r for r in range(rank, rows) if m[r][col] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = 1 / m[rank][col]
        m[rank] = [v * inv for v in m[rank]]
        for r in range(rows):
            if r != rank and m[r][col] != 0:
                f = m[r][col]
                m[r] = [v - f * w for v, w in zip(m[r], m[rank])]
        rank += 1
        if rank == rows:
            break
    return rank


def int_det(a: Sequence[Sequence[int]]) -> int:
    """Determinant of an integer matrix via fraction-free (Bareiss) elimination."""
    n = len(a)
    if n == 0:
        return 1
    m = [list(map(int, row)) for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            pivot = next((r for r in range(k + 1, n) if m[r][k] != 0), None)
            if pivot is None:
                return 0
            m[k], m[pivot] = m[pivot], m[k]
            sign = -sign
        pkk = m[k][k]
        for i in range(k + 1, n):
            row_i = m[i]
            row_k = m[k]
            mik = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (pkk * row_i[j] - mik * row_k[j]) // prev
            row_i[k] = 0
        prev = pkk
    return sign * m[n - 1][n - 1]


def frac_det(a: Matrix) -> Fraction:
    """Determinant of a rational matrix. Clears denominators, then uses int_det."""
    n = len(a)
    if n == 0:
        return Fraction(1)
    rows = [[Fraction(x) for x in row] for row in a]
    scale = Fraction(1)
    int_rows: list[list[int]] = []
    for row in rows:
        den = 1
        for x in row:
            den = den * x.denominator // _gcd(den, x.denominator)
        scale /= den
        int_rows.append([int(x * den) for x in row])
    return scale * int_det(int_rows)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def fit_affine(xs: Sequence[Fraction], ys: Sequence[Fraction]) -> tuple[Fraction, Fraction]:
    """Exact least-squares fit of y = c0 + c1*x. Returns (c0, c1).

    With two points this is interpolation; with more it solves the normal
    equations in rational arithmetic, so a dataset lying exactly on a line
    is reproduced with zero residual.
    """
    if len(xs) != len(ys) or len(xs) < 2:
        raise ValueError("need at least two points")
    n = len(xs)
    sx = sum(xs, Fraction(0))
    sxx = sum((x * x for x in xs), Fraction(0))
    sy = sum(ys, Fraction(0))
    sxy = sum((x * y for x, y in zip(xs, ys)), Fraction(0))
    denom = n * sxx - sx * sx
    if denom == 0:
        raise ValueError("degenerate abscissae")
    c1 = (n * sxy - sx * sy) / denom
    c0 = (sy - c1 * sx) / n
    return c0, c1


def lp_feasible(a: Matrix, b: Vector) -> bool:
    """Decide whether {x >= 0 : a x = b} is nonempty, exactly.

    Phase-one simplex with Bland's rule, rational pivots throughout.  Row
    count is tiny in all callers (at most dimension + 1), column count can
    reach a few hundred, so pivots are cheap and termination is guaranteed.
    """
    m = len(a)
    if m == 0:
        return True
    n = len(a[0])
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    for i in range(m):
        bi = Fraction(b[i])
        if bi < 0:
            rows.append([-Fraction(x) for x in a[i]])
            rhs.append(-bi)
        else:
            rows.append([Fraction(x) for x in a[i]])
            rhs.append(bi)
    # Tableau columns: n structural vars, m artificials, rhs.
    tab = [rows[i] + [Fraction(1 if j == i else 0) for j in range(m)] + [rhs[i]] for i in range(m)]
    basis = [n + i for i in range(m)]
    ncols = n + m
    # Objective: minimize sum of artificials; reduced-cost row starts as the
    # column sums of the constraint rows (artificials net to zero).
    obj = [sum(tab[i][j] for i in range(m)) for j in range(ncols + 1)]
    for j in range(n, ncols):
        obj[j] = Fraction(0)
    while True:
        enter = next((j for j in range(n) if obj[j] > 0), None)
        if enter is None:
            break
        leave = None
        best: Fraction | None = None
        for i in range(m):
            coef = tab[i][enter]
            if coef > 0:
                ratio = tab[i][ncols] / coef
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave is None:
            # Objective unbounded below cannot happen for a sum of
            # nonnegative artificials; defensive only.
            return False
        piv = tab[leave][enter]
        tab[leave] = [v / piv for v in tab[leave]]
        for i in range(m):
            if i != leave and tab[i][enter] != 0:
                f = tab[i][enter]
                tab[i] = [v - f * w for v, w in zip(tab[i], tab[leave])]
        if obj[enter] != 0:
            f = obj[enter]
            obj = [v - f * w for v, w in zip(obj, tab[leave])]
        basis[leave] = enter
    return obj[ncols] == 0
