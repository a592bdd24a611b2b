"""Sparse exact polynomials on t with the W'-action, and Molien series.

Coordinates are the dual basis of the chosen ambient basis of `a` (so the
setup works when Pi does not span).  Exponent keys are tuples, coefficients
Fractions; zero coefficients are never stored.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .linalg import (Mat, Q, Vec, inverse, poly1_add, poly1_divmod,
                     poly1_gcd, poly1_mul, poly1_scale, poly1_trim,
                     series_inverse, transpose)
from .rootdata import RootDatum


class Poly:
    """Element of S(t*): finite map from exponent multi-indices to Q."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Optional[Dict[Tuple[int, ...], Q]] = None):
        self.nvars = nvars
        self.terms: Dict[Tuple[int, ...], Q] = {}
        if terms:
            for e, c in terms.items():
                if c:
                    self.terms[tuple(e)] = Fraction(c)

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero(nvars: int) -> "Poly":
        return Poly(nvars)

    @staticmethod
    def constant(nvars: int, c) -> "Poly":
        return Poly(nvars, {(0,) * nvars: Fraction(c)})

    @staticmethod
    def variable(nvars: int, i: int) -> "Poly":
        e = [0] * nvars
        e[i] = 1
        return Poly(nvars, {tuple(e): Fraction(1)})

    @staticmethod
    def from_covector(x: Vec) -> "Poly":
        n = len(x)
        p = Poly(n)
        for i, c in enumerate(x):
            if c:
                e = [0] * n
                e[i] = 1
                p.terms[tuple(e)] = Fraction(c)
        return p

    # -- basic structure ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def __eq__(self, other):
        return isinstance(other, Poly) and self.nvars == other.nvars and \
            self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __add__(self, other: "Poly") -> "Poly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, Fraction(0)) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Poly(self.nvars, out)

    def __neg__(self) -> "Poly":
        return Poly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            c = Fraction(other)
            return Poly(self.nvars, {e: c * v for e, v in self.terms.items()})
        out: Dict[Tuple[int, ...], Q] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, Fraction(0)) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return Poly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        out = Poly.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def evaluate(self, point: Sequence) -> Q:
        out = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for i, p in enumerate(e):
                for _ in range(p):
                    v = v * point[i]
            out = out + v
        return out

    def graded_parts(self) -> Dict[int, "Poly"]:
        parts: Dict[int, Poly] = {}
        for e, c in self.terms.items():
            d = sum(e)
            parts.setdefault(d, Poly(self.nvars)).terms[e] = c
        return parts

    # -- canonical text form -------------------------------------------------

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        keys = sorted(self.terms, key=lambda e: (-sum(e), tuple(-x for x in e)))
        chunks = []
        for e, first in zip(keys, [True] + [False] * (len(keys) - 1)):
            c = self.terms[e]
            body = "*".join(
                f"x{i + 1}" + (f"^{p}" if p > 1 else "")
                for i, p in enumerate(e) if p)
            mag = abs(c)
            if body:
                coef = "" if mag == 1 else f"{mag}*"
                text = coef + body
            else:
                text = str(mag)
            if first:
                chunks.append(("-" if c < 0 else "") + text)
            else:
                chunks.append((" - " if c < 0 else " + ") + text)
        return "".join(chunks)

    def __repr__(self):
        return f"Poly({self.to_text()})"


def substitute_linear(p: Poly, images: Sequence[Poly]) -> Poly:
    """p with each variable x_i replaced by the polynomial images[i]."""
    cache: Dict[Tuple[int, int], Poly] = {}

    def power(i: int, k: int) -> Poly:
        if (i, k) not in cache:
            cache[(i, k)] = images[i] ** k
        return cache[(i, k)]

    out = Poly(p.nvars)
    for e, c in p.terms.items():
        term = Poly.constant(p.nvars, c)
        for i, k in enumerate(e):
            if k:
                term = term * power(i, k)
        out = out + term
    return out


def act_matrix(matrix: Mat, p: Poly) -> Poly:
    """Action of a group element with the given matrix on `a`.

    Covector coordinates transform by the transpose-inverse of the matrix
    (orthogonal for the Gram form, not necessarily for the standard one, so
    the inverse is computed exactly).
    """
    minv = inverse(matrix)
    images = [Poly.from_covector(tuple(minv[i])) for i in range(len(minv))]
    return substitute_linear(p, images)


def act(element, p: Poly) -> Poly:
    """Action of an ExtendedWeylElement on a polynomial."""
    return act_matrix(element.matrix, p)


def divided_difference(datum: RootDatum, i: int, p: Poly) -> Poly:
    """Delta_i(p) = (p - s_i(p)) / alpha_i, exact.

    Implemented by a rational change of coordinates making alpha_i a
    coordinate; a nonzero remainder indicates an action bug and raises.
    """
    alpha = datum.simple_roots[i]
    s_p = act_matrix(datum.reflection_matrix(i), p)
    q = p - s_p
    if q.is_zero():
        return Poly(p.nvars)
    pivot = next(j for j, c in enumerate(alpha) if c)
    n = p.nvars
    # forward: x_pivot = (y_pivot - sum_{j != pivot} alpha_j y_j) / alpha_pivot
    fwd = []
    for j in range(n):
        if j != pivot:
            fwd.append(Poly.variable(n, j))
        else:
            img = Poly.variable(n, pivot) * (Fraction(1) / alpha[pivot])
            for jj in range(n):
                if jj != pivot and alpha[jj]:
                    img = img - Poly.variable(n, jj) * \
                        (alpha[jj] / alpha[pivot])
            fwd.append(img)
    q_y = substitute_linear(q, fwd)
    divided: Dict[Tuple[int, ...], Q] = {}
    for e, c in q_y.terms.items():
        if e[pivot] == 0:
            raise AssertionError(
                "divided difference: numerator not divisible by the root")
        e2 = list(e)
        e2[pivot] -= 1
        divided[tuple(e2)] = c
    back = [Poly.variable(n, j) if j != pivot else Poly.from_covector(alpha)
            for j in range(n)]
    out = substitute_linear(Poly(n, divided), back)
    if out.degree() >= p.degree():
        raise AssertionError("divided difference did not drop the degree")
    return out


def reynolds(p: Poly, elements) -> Poly:
    """Group average |H|^-1 sum_h h(p); idempotent, image H-invariant."""
    elements = list(elements)
    out = Poly(p.nvars)
    for h in elements:
        out = out + act(h, p)
    return out * Fraction(1, len(elements))


def monomials_of_degree(nvars: int, d: int) -> List[Tuple[int, ...]]:
    if nvars == 0:
        return [()] if d == 0 else []
    out = []

    def rec(prefix, rem, pos):
        if pos == nvars - 1:
            out.append(tuple(prefix + [rem]))
            return
        for k in range(rem, -1, -1):
            rec(prefix + [k], rem - k, pos + 1)

    rec([], d, 0)
    return out


def invariant_polys(elements, nvars: int, degree: int) -> List[Poly]:
    """Basis of the degree-d invariants, from Reynolds-averaged monomials."""
    monos = monomials_of_degree(nvars, degree)
    averaged = []
    for e in monos:
        avg = reynolds(Poly(nvars, {e: Fraction(1)}), elements)
        if not avg.is_zero():
            averaged.append(avg)
    # reduce to an independent set by exact elimination on coefficient vectors
    basis: List[Poly] = []
    echelon: List[Tuple[Dict, Tuple[int, ...], Q]] = []
    for p in averaged:
        terms = dict(p.terms)
        for rowterms, lead, leadc in echelon:
            c = terms.get(lead)
            if c:
                f = c / leadc
                for e2, c2 in rowterms.items():
                    s = terms.get(e2, Fraction(0)) - f * c2
                    if s:
                        terms[e2] = s
                    else:
                        terms.pop(e2, None)
        if terms:
            lead = sorted(terms)[0]
            echelon.append((terms, lead, terms[lead]))
            basis.append(p)
    return basis


# ---------------------------------------------------------------------------
# Poincare series of invariant differential forms (Molien averaging).
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PoincareSeries:
    """Truncated dimension series c_0..c_N, optionally with a rational witness.

    The witness (num, den) is in lowest-first coefficient form and, when
    present, expands to the stored coefficients.
    """

    order: int
    coeffs: Tuple[int, ...]
    witness: Optional[Tuple[Tuple[Q, ...], Tuple[Q, ...]]] = None

    def __post_init__(self):
        if any(c < 0 for c in self.coeffs):
            raise ValueError("Poincare coefficients must be dimensions >= 0")
        if self.witness is not None:
            num, den = self.witness
            expand = poly1_mul(num, series_inverse(den, self.order))
            got = tuple(int(expand[i]) if i < len(expand) else 0
                        for i in range(self.order + 1))
            if got != self.coeffs:
                raise ValueError("witness does not expand to the coefficients")

    def __add__(self, other: "PoincareSeries") -> "PoincareSeries":
        order = min(self.order, other.order)
        coeffs = tuple(a + b for a, b in zip(self.coeffs, other.coeffs))
        witness = None
        if self.witness and other.witness:
            n1, d1 = self.witness
            n2, d2 = other.witness
            num = poly1_add(poly1_mul(n1, d2), poly1_mul(n2, d1))
            den = poly1_mul(d1, d2)
            num, den = _reduce_fraction(num, den)
            if len(den) - 1 <= order:
                witness = (num, den)
        return PoincareSeries(order=order, coeffs=coeffs[:order + 1],
                              witness=witness)


def _reduce_fraction(num, den):
    if not num:
        return (), (Fraction(1),)
    g = poly1_gcd(num, den)
    if len(g) > 1:
        num = poly1_divmod(num, g)[0]
        den = poly1_divmod(den, g)[0]
    lead = den[-1]
    num = poly1_scale(1 / lead, num)
    den = poly1_scale(1 / lead, den)
    return poly1_trim(num), poly1_trim(den)


def _char_series(matrix: Mat) -> Tuple[Q, ...]:
    """det(1 - t*M) as lowest-first coefficients (degree = dim)."""
    from .linalg import charpoly
    cp = charpoly(matrix)  # highest-first det(xI - M)
    # det(I - tM) = sum_k c_k t^k with cp = (1, c_1, ..., c_n)
    return poly1_trim(tuple(cp))


def _exterior_coefficient(matrix: Mat, n: int) -> Q:
    """Trace of the n-th exterior power = coefficient of y^n in det(1 + yM)."""
    from .linalg import charpoly
    cp = charpoly(matrix)
    if n >= len(cp):
        return Fraction(0)
    return cp[n] * (-1) ** n


def molien_forms(action_matrices: Sequence[Mat], n: int,
                 order: int = 16) -> PoincareSeries:
    """Graded dimensions of H-invariant polynomial n-forms on V.

    `action_matrices` give the H-action on V (one matrix per group element,
    the full group).  Coefficient c_d is the dimension of the degree-d part
    of (S(V*) (x) Lambda^n V*)^H, computed by classical Molien averaging of
    det(1 + y h*)/det(1 - t h*) on the dual action.
    """
    group = list(action_matrices)
    if not group:
        raise ValueError("need at least the identity matrix")
    dim = len(group[0])
    if n < 0:
        raise ValueError("form degree must be >= 0")
    if n > dim:
        return PoincareSeries(order=order, coeffs=(0,) * (order + 1),
                              witness=((), (Fraction(1),)))
    total = [Fraction(0)] * (order + 1)
    wnum: Tuple[Q, ...] = ()
    wden: Tuple[Q, ...] = (Fraction(1),)
    for m in group:
        dual = transpose(inverse(m)) if dim else ()
        numer = _exterior_coefficient(dual, n) if dim else \
            (Fraction(1) if n == 0 else Fraction(0))
        den = _char_series(dual) if dim else (Fraction(1),)
        inv = series_inverse(den, order)
        for i in range(order + 1):
            total[i] += numer * inv[i]
        wnum = poly1_add(poly1_mul(wnum, den), poly1_scale(numer, wden))
        wden = poly1_mul(wden, den)
        wnum, wden = _reduce_fraction(wnum, wden)
    size = Fraction(len(group))
    coeffs = []
    for c in total:
        c = c / size
        if c.denominator != 1 or c < 0:
            raise ValueError("Molien coefficient is not a dimension")
        coeffs.append(int(c))
    wnum = poly1_scale(Fraction(1, len(group)), wnum)
    wnum, wden = _reduce_fraction(wnum, wden)
    witness = (wnum, wden) if len(wden) - 1 <= order else None
    return PoincareSeries(order=order, coeffs=tuple(coeffs), witness=witness)


# ---------------------------------------------------------------------------
# Canonical polynomial text parsing.
# ---------------------------------------------------------------------------

class PolyParseError(ValueError):
    pass


def parse_poly(text: str, nvars: int) -> Poly:
    """Parse the canonical sorted monomial form, e.g. '3/2*x1^2*x3 - x2'."""
    s = text.strip()
    if s == "0":
        return Poly(nvars)
    out = Poly(nvars)
    pos = 0
    sign = Fraction(1)
    first = True
    while pos < len(s):
        if not first:
            while pos < len(s) and s[pos] == " ":
                pos += 1
            if pos >= len(s):
                break
            if s[pos] == "+":
                sign = Fraction(1)
            elif s[pos] == "-":
                sign = Fraction(-1)
            else:
                raise PolyParseError(f"expected '+' or '-' at {pos} in {text!r}")
            pos += 1
            while pos < len(s) and s[pos] == " ":
                pos += 1
        else:
            if s[pos] == "-":
                sign = Fraction(-1)
                pos += 1
            first = False
        coeff = Fraction(1)
        expo = [0] * nvars
        saw_factor = False
        while True:
            start = pos
            if pos < len(s) and s[pos].isdigit():
                while pos < len(s) and s[pos].isdigit():
                    pos += 1
                num = int(s[start:pos])
                den = 1
                if pos < len(s) and s[pos] == "/":
                    pos += 1
                    d0 = pos
                    while pos < len(s) and s[pos].isdigit():
                        pos += 1
                    if d0 == pos:
                        raise PolyParseError(f"bad fraction at {start} in {text!r}")
                    den = int(s[d0:pos])
                coeff *= Fraction(num, den)
                saw_factor = True
            elif pos < len(s) and s[pos] == "x":
                pos += 1
                d0 = pos
                while pos < len(s) and s[pos].isdigit():
                    pos += 1
                if d0 == pos:
                    raise PolyParseError(f"bad variable at {start} in {text!r}")
                idx = int(s[d0:pos]) - 1
                if not 0 <= idx < nvars:
                    raise PolyParseError(f"variable x{idx + 1} out of range")
                power = 1
                if pos < len(s) and s[pos] == "^":
                    pos += 1
                    e0 = pos
                    while pos < len(s) and s[pos].isdigit():
                        pos += 1
                    if e0 == pos:
                        raise PolyParseError(f"bad exponent at {start}")
                    power = int(s[e0:pos])
                expo[idx] += power
                saw_factor = True
            else:
                raise PolyParseError(f"expected factor at {pos} in {text!r}")
            if pos < len(s) and s[pos] == "*":
                pos += 1
                continue
            break
        if not saw_factor:
            raise PolyParseError(f"empty term in {text!r}")
        out = out + Poly(nvars, {tuple(expo): sign * coeff})
    return out
