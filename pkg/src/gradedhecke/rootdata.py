"""Degenerate root data, parameters, parabolic subdata and positivity cones.

A root datum lives on a rational ambient space `a` of dimension d.  Simple
coroots are realized as the first standard basis vectors, simple roots as
covectors whose coordinate rows reproduce the Cartan matrix, and the inner
product on `a` is a symmetric positive-definite Gram matrix chosen so that
every reflection is orthogonal.  The ambient space may strictly contain the
coroot span; the orthocomplement is carried explicitly.
"""

from __future__ import annotations

import re as _re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .linalg import (Mat, Q, Vec, dot, identity, mat, mat_vec, nullspace,
                     rank, solve, vec, zero_vec)

ROOT_CLOSURE_BOUND = 10000


class RootDatumError(ValueError):
    pass


def pairing(x: Vec, lam: Vec) -> Q:
    """Canonical pairing of a covector with a vector (exact, bilinear)."""
    return dot(x, lam)


@dataclass(frozen=True)
class RootDatum:
    """The tuple (a*, R, a, R^vee, Pi) with rational coordinates."""

    label: str
    ambient_dim: int
    gram: Mat
    simple_roots: Tuple[Vec, ...]
    simple_coroots: Tuple[Vec, ...]
    roots: Tuple[Vec, ...] = field(default=())
    coroots: Tuple[Vec, ...] = field(default=())
    crystallographic: bool = True

    @property
    def rank(self) -> int:
        return len(self.simple_roots)

    def cartan(self) -> Mat:
        return tuple(tuple(pairing(a, bv) for bv in self.simple_coroots)
                     for a in self.simple_roots)

    def reflection_matrix(self, i: int) -> Mat:
        """Matrix of s_i acting on `a`:  lam -> lam - <alpha_i, lam> alpha_i^vee."""
        a, av = self.simple_roots[i], self.simple_coroots[i]
        n = self.ambient_dim
        return tuple(tuple((1 if r == c else 0) - av[r] * a[c]
                           for c in range(n)) for r in range(n))

    def reflect_covector(self, i: int, x: Vec) -> Vec:
        a, av = self.simple_roots[i], self.simple_coroots[i]
        c = pairing(x, av)
        return tuple(xx - c * aa for xx, aa in zip(x, a))

    def positive_roots(self) -> Tuple[Vec, ...]:
        pos = []
        for r in self.roots:
            coeffs = coords_in_simple_roots(self, r)
            if coeffs is not None and all(c >= 0 for c in coeffs):
                pos.append(r)
        return tuple(pos)

    def norm2(self, lam: Vec) -> Q:
        """Gram norm squared of a vector of `a`."""
        return dot(lam, mat_vec(self.gram, lam))


def coords_in_simple_roots(datum: RootDatum, x: Vec) -> Optional[Vec]:
    rows = [[a[i] for a in datum.simple_roots] for i in range(datum.ambient_dim)]
    return solve(rows, list(x))


def _close_under_reflections(datum_like) -> Tuple[Tuple[Vec, ...], Tuple[Vec, ...]]:
    """Reflection closure of (Pi, Pi^vee); returns matched (roots, coroots)."""
    simple_roots, simple_coroots = datum_like
    pairs = {}
    frontier = list(zip(simple_roots, simple_coroots))
    for r, cv in frontier:
        pairs[r] = cv
    while frontier:
        new = []
        for r, cv in frontier:
            for a, av in zip(simple_roots, simple_coroots):
                c = pairing(r, av)
                r2 = tuple(x - c * y for x, y in zip(r, a))
                d = pairing(a, cv)
                cv2 = tuple(x - d * y for x, y in zip(cv, av))
                if r2 not in pairs:
                    pairs[r2] = cv2
                    new.append((r2, cv2))
                elif pairs[r2] != cv2:
                    raise RootDatumError("inconsistent coroot closure")
        frontier = new
        if len(pairs) > ROOT_CLOSURE_BOUND:
            raise RootDatumError("reflection closure exceeds size bound")
    roots = tuple(sorted(pairs))
    return roots, tuple(pairs[r] for r in roots)


def _validate(datum: RootDatum) -> None:
    d = datum.ambient_dim
    if len(datum.gram) != d or any(len(r) != d for r in datum.gram):
        raise RootDatumError("Gram matrix has wrong shape")
    for i in range(d):
        for j in range(d):
            if datum.gram[i][j] != datum.gram[j][i]:
                raise RootDatumError("Gram matrix is not symmetric")
    # positive definiteness via leading principal minors
    from .linalg import det
    for k in range(1, d + 1):
        minor = tuple(tuple(datum.gram[i][j] for j in range(k)) for i in range(k))
        if det(minor) <= 0:
            raise RootDatumError("Gram matrix is not positive definite")
    for a, av in zip(datum.simple_roots, datum.simple_coroots):
        if pairing(a, av) != 2:
            raise RootDatumError("<alpha, alpha^vee> must equal 2")
    if datum.simple_roots:
        rows = [list(a) for a in datum.simple_roots]
        if rank(rows) != len(datum.simple_roots):
            raise RootDatumError("simple roots are not linearly independent")
    # reflections must preserve the Gram form
    from .linalg import mat_mul, transpose
    for i in range(datum.rank):
        s = datum.reflection_matrix(i)
        if mat_mul(transpose(s), mat_mul(datum.gram, s)) != datum.gram:
            raise RootDatumError(
                f"reflection s_{i} does not preserve the Gram form")
    for a, av in zip(datum.roots, datum.coroots):
        if pairing(a, av) != 2:
            raise RootDatumError("root/coroot pairing drifted from 2")
    # reduced: the only proportional pairs are r and -r
    for i, r in enumerate(datum.roots):
        piv = next((t for t, c in enumerate(r) if c), None)
        if piv is None:
            raise RootDatumError("zero root in closure")
        for r2 in datum.roots[i + 1:]:
            if r2[piv] == 0:
                continue
            c = r2[piv] / r[piv]
            if c != -1 and tuple(c * x for x in r) == r2:
                raise RootDatumError(
                    "closure produced a non-reduced root system")


def make_root_datum(label: str, ambient_dim: int, gram, simple_roots,
                    simple_coroots) -> RootDatum:
    """Construct and validate a root datum from explicit rational data."""
    sr = tuple(vec(r) for r in simple_roots)
    sc = tuple(vec(r) for r in simple_coroots)
    g = mat(gram)
    roots, coroots = _close_under_reflections((sr, sc))
    crys = all(pairing(a, bv).denominator == 1
               for a in roots for bv in coroots)
    datum = RootDatum(label=label, ambient_dim=ambient_dim, gram=g,
                      simple_roots=sr, simple_coroots=sc,
                      roots=roots, coroots=coroots, crystallographic=crys)
    _validate(datum)
    return datum


# ---------------------------------------------------------------------------
# Standard crystallographic families.
# ---------------------------------------------------------------------------

def _family_cartan(family: str, n: int) -> Tuple[List[List[int]], List[Q]]:
    """Cartan matrix a[i][j] = <alpha_i, alpha_j^vee> and symmetrizers d_i."""
    A = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    d = [Fraction(1)] * n

    def chain(upto):
        for i in range(upto):
            A[i][i + 1] = -1
            A[i + 1][i] = -1

    if family == "A":
        chain(n - 1)
    elif family == "B":
        if n < 2:
            raise RootDatumError("B_n needs n >= 2")
        chain(n - 2)
        A[n - 2][n - 1] = -2
        A[n - 1][n - 2] = -1
        d[n - 1] = Fraction(1, 2)
    elif family == "C":
        if n < 2:
            raise RootDatumError("C_n needs n >= 2")
        chain(n - 2)
        A[n - 2][n - 1] = -1
        A[n - 1][n - 2] = -2
        d[n - 1] = Fraction(2)
    elif family == "D":
        if n < 2:
            raise RootDatumError("D_n needs n >= 2")
        chain(n - 2)
        if n >= 3:
            A[n - 3][n - 1] = -1
            A[n - 1][n - 3] = -1
            A[n - 2][n - 1] = 0
            A[n - 1][n - 2] = 0
    elif family == "G" and n == 2:
        A[0][1] = -1
        A[1][0] = -3
        d[1] = Fraction(3)
    elif family == "F" and n == 4:
        chain(3)
        A[1][2] = -2
        A[2][1] = -1
        d[2] = Fraction(1, 2)
        d[3] = Fraction(1, 2)
    else:
        raise RootDatumError(f"unknown family {family}{n}")
    # symmetrizer sanity: d_j a_ij = d_i a_ji
    for i in range(n):
        for j in range(n):
            if d[j] * A[i][j] != d[i] * A[j][i]:
                raise RootDatumError("internal: bad symmetrizer table")
    return A, d


_LABEL_RE = _re.compile(r"^([ABCDGF])(\d+)$")


def build_root_datum(label: str, ambient_dim: int,
                     gram_override=None) -> RootDatum:
    """Standard datum for labels A_n, B_n, C_n, D_n, G2, F4, empty.

    Product labels are joined with 'x' (e.g. "A1xA1").  The total rank must
    not exceed `ambient_dim`; extra ambient directions are carried as an
    orthogonal complement with the identity Gram block.
    """
    parts = [p for p in label.split("x") if p]
    if label.lower() == "empty" or not parts:
        cartans: List[Tuple[List[List[int]], List[Q]]] = []
    else:
        cartans = []
        for part in parts:
            m = _LABEL_RE.match(part)
            if not m:
                raise RootDatumError(f"unknown root system label {part!r}")
            cartans.append(_family_cartan(m.group(1), int(m.group(2))))
    total_rank = sum(len(c[0]) for c in cartans)
    if total_rank > ambient_dim:
        raise RootDatumError(
            f"rank {total_rank} exceeds ambient dimension {ambient_dim}")
    simple_roots = []
    gram_rows = [[Fraction(0)] * ambient_dim for _ in range(ambient_dim)]
    off = 0
    for A, d in cartans:
        k = len(A)
        for i in range(k):
            row = [Fraction(0)] * ambient_dim
            for j in range(k):
                row[off + j] = Fraction(A[i][j])
            simple_roots.append(tuple(row))
            for j in range(k):
                gram_rows[off + i][off + j] = Fraction(A[i][j]) / d[i]
        off += k
    for i in range(total_rank, ambient_dim):
        gram_rows[i][i] = Fraction(1)
    gram = gram_override if gram_override is not None else gram_rows
    simple_coroots = [tuple(Fraction(1 if j == i else 0)
                            for j in range(ambient_dim))
                      for i in range(total_rank)]
    return make_root_datum(label, ambient_dim, gram, simple_roots,
                           simple_coroots)


# ---------------------------------------------------------------------------
# Parameters.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ParameterMap:
    """Map Pi -> Q of deformation parameters k_alpha, one per simple root."""

    values: Tuple[Q, ...]

    def __getitem__(self, i: int) -> Q:
        return self.values[i]

    def scaled(self, z) -> "ParameterMap":
        z = Fraction(z)
        return ParameterMap(tuple(z * v for v in self.values))

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.values)


def make_parameter_map(datum: RootDatum, values) -> ParameterMap:
    if isinstance(values, (int, Fraction)):
        values = [values] * datum.rank
    vals = tuple(Fraction(v) for v in values)
    if len(vals) != datum.rank:
        raise RootDatumError(
            f"need {datum.rank} parameter values, got {len(vals)}")
    return ParameterMap(vals)


def check_parameters_conjugation(datum: RootDatum, kmap: ParameterMap,
                                 group_elements) -> None:
    """k must be constant on W'-orbits of simple roots (as roots, up to sign)."""
    simple = {a: i for i, a in enumerate(datum.simple_roots)}
    for g in group_elements:
        for a, i in simple.items():
            img = tuple(dot(a, col) for col in _columns_as_rows(g.matrix))
            for sgn in (1, -1):
                j = simple.get(tuple(sgn * x for x in img))
                if j is not None and kmap[i] != kmap[j]:
                    raise RootDatumError(
                        f"k must agree on conjugate simple roots {i} and {j}")


def _columns_as_rows(m: Mat):
    return list(zip(*m)) if m else []


# ---------------------------------------------------------------------------
# Parabolic data.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ParabolicDatum:
    """Subspace decompositions and induced data attached to P subset of Pi."""

    datum: RootDatum
    P: Tuple[int, ...]
    a_P_basis: Tuple[Vec, ...]      # span of the P-coroots
    a_upP_basis: Tuple[Vec, ...]    # annihilator of the P-roots
    tstar_P_basis: Tuple[Vec, ...]  # span of the P-roots (covectors)
    tstar_upP_basis: Tuple[Vec, ...]
    sub_datum: RootDatum            # R~_P on ambient a_P
    ambient_sub_datum: RootDatum    # R~^P: same roots, full ambient

    def decompose_covector(self, x: Vec) -> Tuple[Vec, Vec]:
        """Exact splitting x = x_P + x^P along t*_P + t^{P*}."""
        basis = list(self.tstar_P_basis) + list(self.tstar_upP_basis)
        rows = [[b[i] for b in basis] for i in range(self.datum.ambient_dim)]
        c = solve(rows, list(x))
        if c is None:
            raise RootDatumError("covector decomposition failed")
        np = len(self.tstar_P_basis)
        x_p = zero_vec(self.datum.ambient_dim)
        for coeff, b in zip(c[:np], self.tstar_P_basis):
            x_p = tuple(a + coeff * bb for a, bb in zip(x_p, b))
        x_up = tuple(a - b for a, b in zip(x, x_p))
        return x_p, x_up

    def restrict_covector(self, x: Vec) -> Vec:
        """Coordinates of x|_{a_P} in the sub-datum's dual basis."""
        return tuple(x[i] for i in self.P)

    def embed_point(self, c: Vec) -> Vec:
        """Point of a_P given in sub coordinates, as an ambient vector."""
        out = [Fraction(0)] * self.datum.ambient_dim
        for coeff, i in zip(c, self.P):
            out[i] = coeff
        return tuple(out)

    def in_t_upP(self, lam: Vec) -> bool:
        return all(pairing(self.datum.simple_roots[i], lam) == 0
                   for i in self.P)


def parabolic(datum: RootDatum, P: Sequence[int]) -> ParabolicDatum:
    """Parabolic datum for a subset P of simple-root indices."""
    P = tuple(sorted(set(P)))
    if any(i < 0 or i >= datum.rank for i in P):
        raise RootDatumError(f"P must be a subset of the simple roots, got {P}")
    d = datum.ambient_dim
    a_P_basis = tuple(datum.simple_coroots[i] for i in P)
    rows = [list(datum.simple_roots[i]) for i in P]
    a_upP_basis = tuple(nullspace(rows, d)) if P else tuple(identity(d))
    tstar_P_basis = tuple(datum.simple_roots[i] for i in P)
    rows_v = [list(datum.simple_coroots[i]) for i in P]
    tstar_upP_basis = tuple(nullspace(rows_v, d)) if P else tuple(identity(d))
    k = len(P)
    sub_cartan_roots = [tuple(pairing(datum.simple_roots[i],
                                      datum.simple_coroots[j]) for j in P)
                        for i in P]
    sub_gram = tuple(tuple(datum.norm2(datum.simple_coroots[i])
                           if i == j else
                           dot(datum.simple_coroots[i],
                               mat_vec(datum.gram, datum.simple_coroots[j]))
                           for j in P) for i in P)
    sub_coroots = [tuple(Fraction(1 if jj == ii else 0) for jj in range(k))
                   for ii in range(k)]
    sub_datum = make_root_datum(f"{datum.label}|P={list(P)}", k, sub_gram,
                                sub_cartan_roots, sub_coroots)
    ambient_sub = make_root_datum(f"{datum.label}^P={list(P)}", d, datum.gram,
                                  [datum.simple_roots[i] for i in P],
                                  [datum.simple_coroots[i] for i in P])
    return ParabolicDatum(datum=datum, P=P, a_P_basis=a_P_basis,
                          a_upP_basis=a_upP_basis,
                          tstar_P_basis=tstar_P_basis,
                          tstar_upP_basis=tstar_upP_basis,
                          sub_datum=sub_datum, ambient_sub_datum=ambient_sub)


# ---------------------------------------------------------------------------
# Cones.
# ---------------------------------------------------------------------------

CONE_TAGS = ("a*+", "a-", "a_P+", "aP+", "aP++")


@dataclass(frozen=True)
class Cone:
    """One of the positivity cones attached to the datum (and optionally P)."""

    datum: RootDatum
    tag: str
    P: Tuple[int, ...] = ()

    def __post_init__(self):
        if self.tag not in CONE_TAGS:
            raise RootDatumError(f"unknown cone tag {self.tag!r}")


def _antidual_coefficients(datum: RootDatum, lam: Vec):
    """Expand lam over the simple coroots plus the Gram-orthocomplement."""
    basis = list(datum.simple_coroots)
    if basis:
        comp = nullspace(
            [[mat_vec(datum.gram, cv)[i] for i in range(datum.ambient_dim)]
             for cv in datum.simple_coroots], datum.ambient_dim)
    else:
        comp = list(identity(datum.ambient_dim))
    full = basis + list(comp)
    rows = [[b[i] for b in full] for i in range(datum.ambient_dim)]
    c = solve(rows, list(lam))
    if c is None:
        raise RootDatumError("antidual expansion failed")
    return c[:len(basis)], c[len(basis):]


def cone_contains(cone: Cone, lam: Vec, strict: bool = False) -> bool:
    """Exact membership of lam in the closed cone (strict for aP++)."""
    datum = cone.datum
    lam = vec(lam)
    if cone.tag == "a*+":
        return all(pairing(lam, cv) >= 0 for cv in datum.simple_coroots)
    if cone.tag == "a-":
        coeffs, rest = _antidual_coefficients(datum, lam)
        if any(r != 0 for r in rest):
            return False
        if strict:
            return all(c < 0 for c in coeffs) and len(coeffs) == datum.ambient_dim
        return all(c <= 0 for c in coeffs)
    if cone.tag == "a_P+":
        basis = [datum.simple_coroots[i] for i in cone.P]
        if basis:
            rows = [[b[i] for b in basis] for i in range(datum.ambient_dim)]
            if solve(rows, list(lam)) is None:
                return False
        elif any(lam):
            return False
        return all(pairing(datum.simple_roots[i], lam) >= 0 for i in cone.P)
    if cone.tag in ("aP+", "aP++"):
        if any(pairing(datum.simple_roots[i], lam) != 0 for i in cone.P):
            return False
        others = [i for i in range(datum.rank) if i not in cone.P]
        if cone.tag == "aP++" or strict:
            return all(pairing(datum.simple_roots[i], lam) > 0 for i in others)
        return all(pairing(datum.simple_roots[i], lam) >= 0 for i in others)
    raise RootDatumError(f"unknown cone tag {cone.tag!r}")


def in_antidual(datum: RootDatum, lam: Vec, strict: bool = False) -> bool:
    """Membership of lam in a^- (or its interior a^-- when strict).

    The interior is nonempty only when Pi spans a*; for strict membership
    every ambient direction must be accounted for by a negative coroot
    coefficient.
    """
    return cone_contains(Cone(datum, "a-"), lam, strict=strict)
