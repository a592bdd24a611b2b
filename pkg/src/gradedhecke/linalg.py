"""Exact linear algebra over the rationals and Gaussian rationals.

Vectors are tuples of scalars, matrices are tuples of row tuples.  Scalars
are `fractions.Fraction` or `QI` (Gaussian rationals); every routine here is
field-generic over those two types.  No floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

Q = Fraction

Vec = Tuple[Q, ...]
Mat = Tuple[Vec, ...]


class QI:
    """Gaussian rational a + b*i with exact Fraction parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @staticmethod
    def of(x) -> "QI":
        if isinstance(x, QI):
            return x
        return QI(x, 0)

    def __add__(self, other):
        o = QI.of(other)
        return QI(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return QI(-self.re, -self.im)

    def __sub__(self, other):
        o = QI.of(other)
        return QI(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return QI.of(other) - self

    def __mul__(self, other):
        o = QI.of(other)
        return QI(self.re * o.re - self.im * o.im,
                  self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = QI.of(other)
        n = o.re * o.re + o.im * o.im
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return QI((self.re * o.re + self.im * o.im) / n,
                  (self.im * o.re - self.re * o.im) / n)

    def __rtruediv__(self, other):
        return QI.of(other) / self

    def conj(self) -> "QI":
        return QI(self.re, -self.im)

    def __eq__(self, other):
        if isinstance(other, QI):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def is_rational(self) -> bool:
        return self.im == 0

    def __repr__(self):
        if self.im == 0:
            return str(self.re)
        return f"({self.re}+{self.im}i)"


def vec(items) -> Vec:
    return tuple(x if isinstance(x, QI) else Fraction(x) for x in items)


def mat(rows) -> Mat:
    return tuple(vec(r) for r in rows)


def zero_vec(n: int) -> Vec:
    return (Fraction(0),) * n


def identity(n: int) -> Mat:
    return tuple(tuple(Fraction(1 if i == j else 0) for j in range(n))
                 for i in range(n))


def zero_mat(r: int, c: int) -> Mat:
    return tuple(zero_vec(c) for _ in range(r))


def vec_add(u: Vec, v: Vec) -> Vec:
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u: Vec, v: Vec) -> Vec:
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c, u: Vec) -> Vec:
    return tuple(c * a for a in u)


def dot(u: Vec, v: Vec):
    if len(u) != len(v):
        raise ValueError(f"dimension mismatch: {len(u)} vs {len(v)}")
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def mat_vec(m: Mat, v: Vec) -> Vec:
    return tuple(dot(row, v) for row in m)


def mat_mul(a: Mat, b: Mat) -> Mat:
    bt = transpose(b)
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def mat_add(a: Mat, b: Mat) -> Mat:
    return tuple(vec_add(r, s) for r, s in zip(a, b))


def mat_sub(a: Mat, b: Mat) -> Mat:
    return tuple(vec_sub(r, s) for r, s in zip(a, b))


def mat_scale(c, a: Mat) -> Mat:
    return tuple(vec_scale(c, r) for r in a)


def transpose(a: Mat) -> Mat:
    if not a:
        return ()
    return tuple(zip(*a))


def mat_pow(a: Mat, k: int) -> Mat:
    out = identity(len(a))
    for _ in range(k):
        out = mat_mul(out, a)
    return out


def trace(a: Mat):
    return sum((a[i][i] for i in range(len(a))), Fraction(0))


def rref(rows: Sequence[Sequence]) -> Tuple[List[List], List[int]]:
    """Reduced row echelon form; returns (rows, pivot column list)."""
    m = [list(r) for r in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, len(m)):
            if m[i][c]:
                pr = i
                break
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows: Sequence[Sequence]) -> int:
    if not rows:
        return 0
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence], ncols: Optional[int] = None) -> List[Vec]:
    """Basis of {x : A x = 0}, canonical (one free column set to 1 each)."""
    rows = [list(r) for r in rows]
    if ncols is None:
        if not rows:
            raise ValueError("nullspace of empty system needs ncols")
        ncols = len(rows[0])
    if not rows:
        return [tuple(Fraction(1 if i == j else 0) for j in range(ncols))
                for i in range(ncols)]
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for i, p in enumerate(pivots):
            x[p] = -red[i][f]
        basis.append(tuple(x))
    return basis


def solve(a: Sequence[Sequence], b: Sequence) -> Optional[Vec]:
    """One exact solution of A x = b, or None if inconsistent."""
    rows = [list(r) + [bb] for r, bb in zip(a, b)]
    if not rows:
        return ()
    n = len(rows[0]) - 1
    red, pivots = rref(rows)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for i, p in enumerate(pivots):
        x[p] = red[i][n]
    return tuple(x)


def inverse(a: Mat) -> Mat:
    n = len(a)
    rows = [list(a[i]) + [Fraction(1 if j == i else 0) for j in range(n)]
            for i in range(n)]
    red, pivots = rref(rows)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return tuple(tuple(red[i][n:]) for i in range(n))


def det(a: Mat):
    n = len(a)
    m = [list(r) for r in a]
    d = Fraction(1)
    for c in range(n):
        pr = None
        for i in range(c, n):
            if m[i][c]:
                pr = i
                break
        if pr is None:
            return Fraction(0)
        if pr != c:
            m[c], m[pr] = m[pr], m[c]
            d = -d
        d = d * m[c][c]
        inv = 1 / m[c][c]
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] * inv
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return d


def charpoly(a: Mat) -> Tuple:
    """Characteristic polynomial det(xI - A), coefficients highest first.

    Faddeev-LeVerrier; exact over any characteristic-zero field.
    """
    n = len(a)
    coeffs = [Fraction(1)]
    m = identity(n)
    for k in range(1, n + 1):
        am = mat_mul(a, m)
        ck = -trace(am) / k
        coeffs.append(ck)
        m = mat_add(am, mat_scale(ck, identity(n)))
    return tuple(coeffs)


def coords_in_basis(basis: Sequence[Vec], v: Vec) -> Optional[Vec]:
    """Coordinates of v in the given basis (columns), or None."""
    if not basis:
        return () if not any(v) else None
    a = [[b[i] for b in basis] for i in range(len(v))]
    return solve(a, list(v))


def restrict_matrix(m: Mat, basis: Sequence[Vec]) -> Mat:
    """Matrix of m on span(basis); raises if the span is not invariant."""
    cols = []
    for b in basis:
        c = coords_in_basis(basis, mat_vec(m, b))
        if c is None:
            raise ValueError("subspace is not invariant")
        cols.append(c)
    return tuple(tuple(cols[j][i] for j in range(len(basis)))
                 for i in range(len(basis)))


def intertwiner_matrices(pairs: Sequence[Tuple[Mat, Mat]], nrows: int,
                         ncols: int) -> List[Mat]:
    """Basis of {M : X M = M Y for all (X, Y) in pairs}; M is nrows x ncols."""
    sys_rows = []
    for x, y in pairs:
        for i in range(nrows):
            for j in range(ncols):
                row = [Fraction(0)] * (nrows * ncols)
                for a in range(nrows):
                    row[a * ncols + j] = row[a * ncols + j] + x[i][a]
                for b in range(ncols):
                    row[i * ncols + b] = row[i * ncols + b] - y[b][j]
                sys_rows.append(row)
    basis = nullspace(sys_rows, nrows * ncols)
    out = []
    for v in basis:
        out.append(tuple(tuple(v[i * ncols + j] for j in range(ncols))
                         for i in range(nrows)))
    return out


# ---------------------------------------------------------------------------
# Univariate polynomials: dense coefficient tuples, lowest degree first.
# ---------------------------------------------------------------------------

def poly1_trim(p: Sequence) -> Tuple:
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return tuple(p)


def poly1_add(p, q):
    n = max(len(p), len(q))
    return poly1_trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0)
                       for i in range(n)])


def poly1_scale(c, p):
    return poly1_trim([c * a for a in p])


def poly1_mul(p, q):
    if not p or not q:
        return ()
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if not a:
            continue
        for j, b in enumerate(q):
            out[i + j] = out[i + j] + a * b
    return poly1_trim(out)


def poly1_divmod(p, q):
    q = poly1_trim(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(poly1_trim(p))
    quo = [Fraction(0)] * max(0, len(r) - len(q) + 1)
    while len(r) >= len(q):
        f = r[-1] / q[-1]
        d = len(r) - len(q)
        quo[d] = f
        for i, b in enumerate(q):
            r[d + i] = r[d + i] - f * b
        while r and not r[-1]:
            r.pop()
    return poly1_trim(quo), poly1_trim(r)


def poly1_gcd(p, q):
    p, q = poly1_trim(p), poly1_trim(q)
    while q:
        p, q = q, poly1_divmod(p, q)[1]
    if p:
        lead = p[-1]
        p = tuple(a / lead for a in p)
    return p


def poly1_deriv(p):
    return poly1_trim([i * a for i, a in enumerate(p)][1:])


def poly1_eval(p, x):
    out = Fraction(0)
    for a in reversed(p):
        out = out * x + a
    return out


def series_inverse(p: Sequence, order: int) -> Tuple:
    """Power series inverse of p to the given order; p[0] must be nonzero."""
    if not p or not p[0]:
        raise ValueError("series has no inverse (zero constant term)")
    inv = [Fraction(0)] * (order + 1)
    inv[0] = 1 / p[0]
    for n in range(1, order + 1):
        s = Fraction(0)
        for k in range(1, min(n, len(p) - 1) + 1):
            s += p[k] * inv[n - k]
        inv[n] = -s / p[0]
    return tuple(inv)


# ---------------------------------------------------------------------------
# Root extraction for characteristic polynomials.
# ---------------------------------------------------------------------------

def _divisors(n: int) -> List[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _to_integer_poly(coeffs_highest_first) -> List[int]:
    denom = 1
    for c in coeffs_highest_first:
        denom = denom * Fraction(c).denominator // _gcd(denom, Fraction(c).denominator)
    ints = [int(Fraction(c) * denom) for c in coeffs_highest_first]
    g = 0
    for c in ints:
        g = _gcd(g, abs(c))
    if g > 1:
        ints = [c // g for c in ints]
    return ints


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a if a else 1


def rational_roots(coeffs_highest_first) -> Tuple[List[Tuple[Q, int]], Tuple]:
    """All rational roots with multiplicities, plus the rootless residual.

    Input and residual are highest-degree-first Fraction coefficients.
    """
    p = [Fraction(c) for c in coeffs_highest_first]
    while p and p[0] == 0:
        p.pop(0)
    if not p:
        raise ValueError("zero polynomial")
    roots: List[Tuple[Q, int]] = []
    zero_mult = 0
    while len(p) > 1 and p[-1] == 0:
        p.pop()
        zero_mult += 1
    if zero_mult:
        roots.append((Fraction(0), zero_mult))
    ints = _to_integer_poly(p)
    candidates = set()
    if len(ints) > 1:
        for num in _divisors(ints[-1]):
            for den in _divisors(ints[0]):
                candidates.add(Fraction(num, den))
                candidates.add(Fraction(-num, den))
    for cand in sorted(candidates):
        mult = 0
        while len(p) > 1 and poly1_eval(list(reversed(p)), cand) == 0:
            # synthetic division by (x - cand)
            out = [p[0]]
            for c in p[1:-1]:
                out.append(c + out[-1] * cand)
            p = out
            mult += 1
        if mult:
            roots.append((cand, mult))
    roots.sort(key=lambda t: t[0])
    return roots, tuple(p)


def _rational_sqrt(x: Q) -> Optional[Q]:
    if x < 0:
        return None
    n, d = x.numerator, x.denominator
    rn = _isqrt(n)
    rd = _isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def _isqrt(n: int) -> int:
    if n < 0:
        return -1
    r = int(n ** 0.5)
    while r * r > n:
        r -= 1
    while (r + 1) * (r + 1) <= n:
        r += 1
    return r


def _quadratic_factors(coeffs_highest_first) -> List[Tuple[Q, Q]]:
    """Monic rational quadratics x^2 + u x + v dividing the given polynomial.

    Kronecker-style search on a rational-root-free integer polynomial.
    """
    ints = _to_integer_poly(coeffs_highest_first)
    if len(ints) < 3:
        return []
    p_rev = [Fraction(c) for c in reversed(ints)]  # lowest first
    p0 = poly1_eval(p_rev, Fraction(0))
    p1 = poly1_eval(p_rev, Fraction(1))
    pm1 = poly1_eval(p_rev, Fraction(-1))
    if p0 == 0 or p1 == 0 or pm1 == 0:
        raise ValueError("quadratic factor search requires root-free input")
    out = []
    seen = set()
    lead = abs(ints[0])
    for a in _divisors(lead):
        for c0 in _divisors(int(p0)):
            for csign in (1, -1):
                c = c0 * csign
                for t0 in _divisors(int(p1)):
                    for tsign in (1, -1):
                        b = t0 * tsign - a - c
                        if (a - b + c) == 0 or int(pm1) % (a - b + c) != 0:
                            continue
                        u, v = Fraction(b, a), Fraction(c, a)
                        if (u, v) in seen:
                            continue
                        seen.add((u, v))
                        _, rem = poly1_divmod(p_rev, (v, u, Fraction(1)))
                        if not rem:
                            out.append((u, v))
    return out


def gaussian_roots(coeffs_highest_first) -> Tuple[List[Tuple[QI, int]], Tuple]:
    """Gaussian-rational roots with multiplicities, plus the residual.

    Coefficients may be Fraction or QI; residual is highest-first.
    """
    p = [QI.of(c) for c in coeffs_highest_first]
    while p and not p[0]:
        p.pop(0)
    if not p:
        raise ValueError("zero polynomial")
    conj = [c.conj() for c in p]
    norm = poly1_mul(tuple(reversed(p)), tuple(reversed(conj)))
    norm_hf = [c.re for c in reversed(norm)]  # real by construction
    rroots, residual = rational_roots(norm_hf)
    candidates: List[QI] = [QI(r) for r, _ in rroots]
    if len(residual) > 2:
        for u, v in _quadratic_factors(residual):
            disc = u * u - 4 * v
            s = _rational_sqrt(-disc)
            if s is not None:
                candidates.append(QI(-u / 2, s / 2))
                candidates.append(QI(-u / 2, -s / 2))
    roots: List[Tuple[QI, int]] = []
    for z in sorted(set(candidates), key=lambda q: (q.re, q.im)):
        mult = 0
        while len(p) > 1:
            # synthetic division by (x - z)
            out = [p[0]]
            for c in p[1:-1]:
                out.append(c + out[-1] * z)
            rem = p[-1] + out[-1] * z
            if rem:
                break
            p = out
            mult += 1
        if mult:
            roots.append((z, mult))
    return roots, tuple(p)
