"""Exact rational linear algebra on tuples of Fraction.

Everything here is branch-free exact arithmetic; no floats anywhere.
Vectors are tuples of Fraction, matrices are tuples of such tuples.
Sizes are tiny (lattice ranks below ~16), so plain Gaussian elimination
over Fraction is both exact and fast enough.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import gcd

Vec = tuple[Fraction, ...]
Mat = tuple[Vec, ...]


def frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def vec(xs) -> Vec:
    return tuple(frac(x) for x in xs)


def mat(rows) -> Mat:
    return tuple(vec(r) for r in rows)


def dot(a, b) -> Fraction:
    return sum((x * y for x, y in zip(a, b, strict=True)), Fraction(0))


def vadd(a, b) -> Vec:
    return tuple(x + y for x, y in zip(a, b, strict=True))


def vsub(a, b) -> Vec:
    return tuple(x - y for x, y in zip(a, b, strict=True))


def vscale(c, a) -> Vec:
    c = frac(c)
    return tuple(c * x for x in a)


def vzero(n: int) -> Vec:
    return (Fraction(0),) * n


def is_zero_vec(a) -> bool:
    return all(x == 0 for x in a)


def mat_vec(m, v) -> Vec:
    return tuple(dot(row, v) for row in m)


def parse_rational(s: str) -> Fraction:
    """Parse "p/q" or "n" with exact integer parts."""
    s = s.strip()
    try:
        if "/" in s:
            num, den = s.split("/")
            return Fraction(int(num), int(den))
        return Fraction(int(s))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational literal: {s!r}") from exc


def format_rational(x: Fraction) -> str:
    """Canonical "p/q" (q > 0, gcd 1) or "n" when integral."""
    x = frac(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def primitive(v) -> Vec:
    """Scale a nonzero rational vector to coprime integers.

    Only positive scaling is applied, so the orientation (the ray) is
    preserved; this is the canonical representative of a directed ray.
    """
    v = vec(v)
    if is_zero_vec(v):
        return v
    denom = 1
    for x in v:
        denom = denom * x.denominator // gcd(denom, x.denominator)
    ints = [int(x * denom) for x in v]
    g = 0
    for n in ints:
        g = gcd(g, n)
    return vec(n // g for n in ints)


def solve_unique(a: Mat, b: Vec) -> Vec:
    """Solve a·x = b for square nonsingular a; raises on singular input."""
    n = len(a)
    aug = [list(row) + [b[i]] for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise ValueError("singular matrix")
        aug[col], aug[piv] = aug[piv], aug[col]
        pval = aug[col][col]
        for r in range(n):
            if r == col:
                continue
            f = aug[r][col] / pval
            if f:
                for c in range(col, n + 1):
                    aug[r][c] -= f * aug[col][c]
    return tuple(aug[i][n] / aug[i][i] for i in range(n))


def solve_exact(columns: list[Vec], target: Vec):
    """Coefficients x with sum x_i * columns[i] = target, or None.

    The columns need not be independent or square; any exact solution is
    returned (free variables are pinned to zero).
    """
    m = len(target)
    k = len(columns)
    aug = [[columns[j][i] for j in range(k)] + [target[i]] for i in range(m)]
    pivots = []
    row = 0
    for col in range(k):
        piv = next((r for r in range(row, m) if aug[r][col] != 0), None)
        if piv is None:
            continue
        aug[row], aug[piv] = aug[piv], aug[row]
        pval = aug[row][col]
        for r in range(m):
            if r == row:
                continue
            f = aug[r][col] / pval
            if f:
                for c in range(col, k + 1):
                    aug[r][c] -= f * aug[row][c]
        pivots.append((row, col))
        row += 1
        if row == m:
            break
    for r in range(row, m):
        if aug[r][k] != 0:
            return None
    x = [Fraction(0)] * k
    for r, c in pivots:
        x[c] = aug[r][k] / aug[r][c]
    return tuple(x)


def rank(a: list[Vec]) -> int:
    rows = [list(r) for r in a]
    m = len(rows)
    if m == 0:
        return 0
    n = len(rows[0])
    rk = 0
    for col in range(n):
        piv = next((r for r in range(rk, m) if rows[r][col] != 0), None)
        if piv is None:
            continue
        rows[rk], rows[piv] = rows[piv], rows[rk]
        for r in range(rk + 1, m):
            f = rows[r][col] / rows[rk][col]
            if f:
                for c in range(col, n):
                    rows[r][c] -= f * rows[rk][c]
        rk += 1
        if rk == m:
            break
    return rk


def det(a: Mat) -> Fraction:
    n = len(a)
    rows = [list(r) for r in a]
    sign = 1
    result = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if rows[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            sign = -sign
        pval = rows[col][col]
        result *= pval
        for r in range(col + 1, n):
            f = rows[r][col] / pval
            if f:
                for c in range(col, n):
                    rows[r][c] -= f * rows[col][c]
    return sign * result


def leading_minors(a: Mat) -> list[Fraction]:
    n = len(a)
    return [det(tuple(tuple(a[i][j] for j in range(k)) for i in range(k)))
            for k in range(1, n + 1)]


def is_negative_definite(a: Mat) -> bool:
    """Sylvester test: (-1)^k * (k-th leading minor) > 0 for all k.

    Valid without pivoting tricks: a definite matrix has no singular
    leading principal submatrix.
    """
    if len(a) == 0:
        return True
    for k, minor in enumerate(leading_minors(a), start=1):
        if (minor if k % 2 == 0 else -minor) <= 0:
            return False
    return True


def matmul(a: Mat, b: Mat) -> Mat:
    n, k = len(a), len(b)
    cols = len(b[0]) if k else 0
    return tuple(tuple(sum((a[i][r] * b[r][j] for r in range(k)), Fraction(0))
                       for j in range(cols)) for i in range(n))


def char_poly(a: Mat) -> list[Fraction]:
    """Coefficients of det(xI - a), highest degree first (Faddeev-LeVerrier)."""
    n = len(a)
    coeffs = [Fraction(1)]
    m = tuple(vzero(n) for _ in range(n))
    for k in range(1, n + 1):
        # M_k = a·M_{k-1} + c_{k-1}·I ; c_k = -trace(a·M_k)/k
        m = matmul(a, m)
        m = tuple(tuple(m[i][j] + (coeffs[-1] if i == j else 0)
                        for j in range(n)) for i in range(n))
        am = matmul(a, m)
        trace = sum((am[i][i] for i in range(n)), Fraction(0))
        coeffs.append(Fraction(-1, k) * trace)
    return coeffs


def eigenvalue_signs(a: Mat) -> tuple[int, int, int]:
    """(positive, zero, negative) eigenvalue counts of a symmetric matrix.

    Uses Descartes' rule on the characteristic polynomial, which is exact
    for real-rooted polynomials. Works where leading-minor arguments fail
    (e.g. hyperbolic planes with zero diagonal).
    """
    coeffs = char_poly(a)
    zeros = 0
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
        zeros += 1

    def sign_changes(cs):
        signs = [1 if c > 0 else -1 for c in cs if c != 0]
        return sum(1 for s, t in zip(signs, signs[1:]) if s != t)

    pos = sign_changes(coeffs)
    neg = sign_changes([c if (len(coeffs) - 1 - i) % 2 == 0 else -c
                        for i, c in enumerate(coeffs)])
    return pos, zeros, neg


def nonneg_combination(generators: list[Vec], target: Vec):
    """Express target as a nonnegative combination of generators, or None.

    By Caratheodory for cones a member is a nonnegative combination of a
    linearly independent subset, so searching subsets of size <= dim is
    complete. Returns a coefficient list aligned with generators.
    """
    n = len(target)
    if is_zero_vec(target):
        return [Fraction(0)] * len(generators)
    idx = [i for i, g in enumerate(generators) if not is_zero_vec(g)]
    maxsize = min(len(idx), n)
    for size in range(1, maxsize + 1):
        for subset in combinations(idx, size):
            cols = [generators[i] for i in subset]
            if rank(cols) < size:
                continue
            sol = solve_exact(cols, target)
            if sol is not None and all(c >= 0 for c in sol):
                out = [Fraction(0)] * len(generators)
                for i, c in zip(subset, sol):
                    out[i] = c
                return out
    return None
