"""Hochschild/cyclic homology engines and the basis-theorem verification.

Finite-dimensional algebras get the literal bar and mixed complexes with
exact rank computations.  The crossed product W' x| S(t*) is handled through
its closed-form census: per-conjugacy-class Molien series of invariant forms
on the fixed spaces, with HP_0 = #classes and HP_1 = 0 forced by the
contractibility of each fixed space.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .hecke import HeckeAlgebra
from .linalg import Mat, Q, Vec, nullspace, rank, restrict_matrix
from .modules import DSCatalogEntry, auto_catalog, irr0_census
from .poly import PoincareSeries, molien_forms
from .rootdata import RootDatum
from .weyl import WeylGroup, conjugacy_census, enumerate_group

SIZE_BOUND = 10 ** 6


class HomologyError(ValueError):
    pass


class SizeBoundExceeded(HomologyError):
    pass


@dataclass
class FinDimAlgebra:
    """A finite-dimensional unital algebra by structure constants over Q.

    mult[i][j] is the coordinate vector of e_i * e_j; associativity and the
    unit laws are checked at construction.
    """

    dim: int
    mult: Tuple[Tuple[Vec, ...], ...]
    unit: Vec
    label: str = ""

    def __post_init__(self):
        d = self.dim
        for i in range(d):
            for j in range(d):
                if len(self.mult[i][j]) != d:
                    raise HomologyError("structure constants have wrong shape")
        for i in range(d):
            for j in range(d):
                for k in range(d):
                    left = self._mul_vec(self.mult[i][j],
                                         self._basis_vec(k))
                    right = self._mul_vec(self._basis_vec(i),
                                          self.mult[j][k])
                    if left != right:
                        raise HomologyError(
                            f"associativity fails at ({i},{j},{k})")
        for i in range(d):
            if self._mul_vec(self.unit, self._basis_vec(i)) != \
                    self._basis_vec(i) or \
                    self._mul_vec(self._basis_vec(i), self.unit) != \
                    self._basis_vec(i):
                raise HomologyError("unit laws fail")

    def _basis_vec(self, i: int) -> Vec:
        return tuple(Fraction(1 if t == i else 0) for t in range(self.dim))

    def _mul_vec(self, a: Vec, b: Vec) -> Vec:
        out = [Fraction(0)] * self.dim
        for i, ca in enumerate(a):
            if not ca:
                continue
            for j, cb in enumerate(b):
                if not cb:
                    continue
                for k, c in enumerate(self.mult[i][j]):
                    if c:
                        out[k] += ca * cb * c
        return tuple(out)

    # -- constructors ---------------------------------------------------------

    @staticmethod
    def ground_field() -> "FinDimAlgebra":
        one = (Fraction(1),)
        return FinDimAlgebra(dim=1, mult=((one,),), unit=one, label="Q")

    @staticmethod
    def matrix_algebra(n: int) -> "FinDimAlgebra":
        d = n * n

        def idx(r, c):
            return r * n + c

        mult = [[None] * d for _ in range(d)]
        for r1 in range(n):
            for c1 in range(n):
                for r2 in range(n):
                    for c2 in range(n):
                        out = [Fraction(0)] * d
                        if c1 == r2:
                            out[idx(r1, c2)] = Fraction(1)
                        mult[idx(r1, c1)][idx(r2, c2)] = tuple(out)
        unit = [Fraction(0)] * d
        for r in range(n):
            unit[idx(r, r)] = Fraction(1)
        return FinDimAlgebra(dim=d, mult=tuple(tuple(r) for r in mult),
                             unit=tuple(unit), label=f"M{n}(Q)")

    @staticmethod
    def group_algebra(elements, mult_fn, label="Q[G]") -> "FinDimAlgebra":
        """Group algebra from an element list and a multiplication callback."""
        elements = list(elements)
        index = {g: i for i, g in enumerate(elements)}
        d = len(elements)
        mult = []
        for a in elements:
            row = []
            for b in elements:
                out = [Fraction(0)] * d
                out[index[mult_fn(a, b)]] = Fraction(1)
                row.append(tuple(out))
            mult.append(tuple(row))
        identity_idx = None
        for i, g in enumerate(elements):
            if all(mult_fn(g, h) == h and mult_fn(h, g) == h
                   for h in elements):
                identity_idx = i
                break
        if identity_idx is None:
            raise HomologyError("group has no identity element")
        unit = [Fraction(0)] * d
        unit[identity_idx] = Fraction(1)
        return FinDimAlgebra(dim=d, mult=tuple(mult), unit=tuple(unit),
                             label=label)

    @staticmethod
    def of_weyl_group(group: WeylGroup) -> "FinDimAlgebra":
        return FinDimAlgebra.group_algebra(
            list(group.elements), group.mult,
            label=f"Q[W'({group.datum.label})]")


# ---------------------------------------------------------------------------
# Bar and mixed complexes.
# ---------------------------------------------------------------------------

def _check_bound(dim: int, n_max: int, bound: int) -> None:
    if dim ** (n_max + 1) > bound:
        raise SizeBoundExceeded(
            f"chain space dimension {dim}**{n_max + 1} exceeds bound {bound}")


def _tensor_basis(dim: int, n: int) -> List[Tuple[int, ...]]:
    out = [()]
    for _ in range(n):
        out = [t + (i,) for t in out for i in range(dim)]
    return out


def _basis_index(dim: int, t: Tuple[int, ...]) -> int:
    out = 0
    for i in t:
        out = out * dim + i
    return out


def hochschild_boundary(algebra: FinDimAlgebra, n: int) -> List[List[Q]]:
    """Matrix of b : A^{(x)(n+1)} -> A^{(x)n+... } on tensor basis vectors.

    b(a_0 (x) ... (x) a_n) = sum_{i=0}^{n-1} (-1)^i ... a_i a_{i+1} ...
                             + (-1)^n a_n a_0 (x) a_1 (x) ... (x) a_{n-1}.
    """
    d = algebra.dim
    rows = d ** n
    cols = d ** (n + 1)
    m = [[Fraction(0)] * cols for _ in range(rows)]
    for t in _tensor_basis(d, n + 1):
        col = _basis_index(d, t)
        for i in range(n):
            prod = algebra.mult[t[i]][t[i + 1]]
            sgn = Fraction(-1) ** i
            for k, c in enumerate(prod):
                if c:
                    tgt = t[:i] + (k,) + t[i + 2:]
                    m[_basis_index(d, tgt)][col] += sgn * c
        prod = algebra.mult[t[n]][t[0]]
        sgn = Fraction(-1) ** n
        for k, c in enumerate(prod):
            if c:
                tgt = (k,) + t[1:n]
                m[_basis_index(d, tgt)][col] += sgn * c
    return m


def connes_boundary(algebra: FinDimAlgebra, n: int) -> List[List[Q]]:
    """Matrix of B = (1 - t) s N : A^{(x)(n+1)} -> A^{(x)(n+2)}."""
    d = algebra.dim
    cols = d ** (n + 1)
    rows = d ** (n + 2)
    m = [[Fraction(0)] * cols for _ in range(rows)]
    unit = algebra.unit
    for t in _tensor_basis(d, n + 1):
        col = _basis_index(d, t)
        # N = sum_i t^i with t(a_0...a_n) = (-1)^n a_n (x) a_0 ... a_{n-1}
        for i in range(n + 1):
            shifted = t[n + 1 - i:] + t[:n + 1 - i]
            sgn_n = (Fraction(-1) ** n) ** i
            # s: prepend the unit; then (1 - t') on n+2 tensor factors
            for u_idx, u_c in enumerate(unit):
                if not u_c:
                    continue
                s_t = (u_idx,) + shifted
                coeff = sgn_n * u_c
                m[_basis_index(d, s_t)][col] += coeff
                cyc = s_t[-1:] + s_t[:-1]
                sgn2 = Fraction(-1) ** (n + 1)
                m[_basis_index(d, cyc)][col] -= coeff * sgn2
    return m


def hochschild_homology(algebra: FinDimAlgebra, n_max: int,
                        bound: int = SIZE_BOUND) -> List[int]:
    """Exact Betti numbers HH_0..HH_{n_max} of the Hochschild complex."""
    _check_bound(algebra.dim, n_max, bound)
    d = algebra.dim
    ranks = [0]  # rank of b_0 = 0
    for n in range(1, n_max + 2):
        ranks.append(rank(hochschild_boundary(algebra, n)))
    out = []
    for n in range(n_max + 1):
        dim_cn = d ** (n + 1)
        out.append(dim_cn - ranks[n] - ranks[n + 1])
    return out


def _mixed_total_boundary(algebra: FinDimAlgebra, n: int) -> List[List[Q]]:
    """Total differential b + B : B_n -> B_{n-1} of the mixed bicomplex."""
    d = algebra.dim
    src_sizes = [d ** (n + 1 - 2 * j) for j in range((n // 2) + 1)]
    dst_sizes = [d ** (n - 2 * j) for j in range(((n - 1) // 2) + 1)]
    rows = sum(dst_sizes)
    cols = sum(src_sizes)
    m = [[Fraction(0)] * cols for _ in range(rows)]
    src_off = [sum(src_sizes[:j]) for j in range(len(src_sizes))]
    dst_off = [sum(dst_sizes[:j]) for j in range(len(dst_sizes))]
    for j, size in enumerate(src_sizes):
        deg = n - 2 * j  # tensor power is deg + 1
        if deg >= 1:
            b = hochschild_boundary(algebra, deg)
            for r in range(len(b)):
                for c in range(size):
                    v = b[r][c]
                    if v:
                        m[dst_off[j] + r][src_off[j] + c] += v
        if j >= 1:
            bmat = connes_boundary(algebra, deg)
            for r in range(len(bmat)):
                for c in range(size):
                    v = bmat[r][c]
                    if v:
                        m[dst_off[j - 1] + r][src_off[j] + c] += v
    return m


def verify_mixed_identities(algebra: FinDimAlgebra, n: int,
                            trials: int = 5, seed: int = 7) -> None:
    """Check b b = 0 and b B + B b = 0 exactly on random chains."""
    rng = random.Random(seed)
    d = algebra.dim
    b_n = hochschild_boundary(algebra, n)
    b_nm1 = hochschild_boundary(algebra, n - 1) if n >= 2 else None
    b_np1 = hochschild_boundary(algebra, n + 1)
    big_b = connes_boundary(algebra, n)
    small_b = connes_boundary(algebra, n - 1)
    for _ in range(trials):
        chain = [Fraction(rng.randint(-3, 3)) for _ in range(d ** (n + 1))]
        bx = _apply(b_n, chain)
        if b_nm1 is not None:
            if any(_apply(b_nm1, bx)):
                raise HomologyError("b o b != 0")
        bBx = _apply(b_np1, _apply(big_b, chain))
        Bbx = _apply(small_b, bx)
        if any(x + y for x, y in zip(bBx, Bbx)):
            raise HomologyError("b B + B b != 0")


def _apply(m: List[List[Q]], v: Sequence[Q]) -> List[Q]:
    return [sum((row[i] * v[i] for i in range(len(v)) if v[i]), Fraction(0))
            for row in m]


def cyclic_homology(algebra: FinDimAlgebra, n_max: int,
                    bound: int = SIZE_BOUND) -> List[int]:
    """HC_0..HC_{n_max} from the mixed bicomplex with total differential b + B."""
    _check_bound(algebra.dim, n_max, bound)
    verify_mixed_identities(algebra, min(2, n_max + 1))
    d = algebra.dim
    mats = {n: _mixed_total_boundary(algebra, n)
            for n in range(1, n_max + 2)}
    out = []
    for n in range(n_max + 1):
        dim_bn = sum(d ** (n + 1 - 2 * j) for j in range((n // 2) + 1))
        rank_dn = rank(mats[n]) if n >= 1 else 0
        rank_dn1 = rank(mats[n + 1])
        out.append(dim_bn - rank_dn - rank_dn1)
    return out


# ---------------------------------------------------------------------------
# Crossed-product censuses: closed forms from fixed-space invariant forms.
# ---------------------------------------------------------------------------

@dataclass
class CensusClassEntry:
    rep_word: str
    size: int
    fixed_dim: int
    series: Tuple[PoincareSeries, ...]  # per form degree 0..dim t


@dataclass
class HomologyCensus:
    datum_label: str
    group_order: int
    class_count: int
    truncation: int
    entries: Tuple[CensusClassEntry, ...]
    totals: Tuple[PoincareSeries, ...]
    hp0: int
    hp1: int

    def __post_init__(self):
        if self.hp1 != 0 or self.hp0 != self.class_count:
            raise HomologyError(
                "HP census must satisfy HP0 = #classes, HP1 = 0")


def crossed_product_census(datum: RootDatum, gammas=(), truncation: int = 16,
                           group: Optional[WeylGroup] = None) -> HomologyCensus:
    """Per-class Poincare series of invariant forms on fixed spaces.

    HH_n of W' x| S(t*) is the sum over conjugacy classes of the degree-n
    invariant-form series on t^w under the centralizer; HH_n vanishes for
    n > dim t, HP_0 = #classes and HP_1 = 0.
    """
    if group is None:
        group = enumerate_group(datum, gammas)
    census = conjugacy_census(group)
    dim_t = datum.ambient_dim
    entries = []
    totals = [PoincareSeries(order=truncation,
                             coeffs=(0,) * (truncation + 1),
                             witness=((), (Fraction(1),)))
              for _ in range(dim_t + 1)]
    for cls in census.entries:
        basis = cls.fixed_basis
        restricted = [restrict_matrix(z.matrix, basis)
                      for z in cls.centralizer]
        series = tuple(molien_forms(restricted, n, truncation)
                       for n in range(dim_t + 1))
        entries.append(CensusClassEntry(rep_word=repr(cls.rep), size=cls.size,
                                        fixed_dim=cls.fixed_dim,
                                        series=series))
        totals = [t + s for t, s in zip(totals, series)]
    if totals[0].coeffs[0] != len(census.entries):
        raise HomologyError("degree-0 census must count one constant per class")
    return HomologyCensus(datum_label=datum.label, group_order=len(group),
                          class_count=len(census.entries),
                          truncation=truncation, entries=tuple(entries),
                          totals=tuple(totals), hp0=len(census.entries),
                          hp1=0)


@dataclass
class HPReport:
    datum_label: str
    k_values: Tuple[Q, ...]
    class_count: int
    hp0: int
    hp1: int


def hp_census_hecke(algebra: HeckeAlgebra) -> HPReport:
    """HP_*(H') = HP_*(C[W']): (#classes(W'), 0), independent of k.

    The parameters are recorded to document the k-independence; the value is
    k-free by construction.
    """
    census = conjugacy_census(algebra.group)
    return HPReport(datum_label=algebra.datum.label,
                    k_values=algebra.kmap.values,
                    class_count=len(census), hp0=len(census), hp1=0)


# ---------------------------------------------------------------------------
# Crossed-product point modules (induced from a point of a finite orbit).
# ---------------------------------------------------------------------------

@dataclass
class PointModuleReport:
    orbit: Tuple[int, ...]
    stabilizer_order: int
    stabilizer_classes: int
    constituents: int
    match: bool
    iso_within_orbit: bool
    noniso_across_orbits: Optional[bool]


def _perm_mult(a: Tuple[int, ...], b: Tuple[int, ...]) -> Tuple[int, ...]:
    return tuple(a[b[i]] for i in range(len(a)))


def _perm_group_closure(perms: Sequence[Tuple[int, ...]], bound: int = 10000):
    n = len(perms[0])
    ident = tuple(range(n))
    elems = {ident}
    frontier = [ident]
    while frontier:
        new = []
        for g in frontier:
            for p in perms:
                h = _perm_mult(p, g)
                if h not in elems:
                    elems.add(h)
                    new.append(h)
                    if len(elems) > bound:
                        raise HomologyError("permutation group too large")
        frontier = new
    return sorted(elems)


def _point_module_matrices(group: Sequence[Tuple[int, ...]],
                           domain: Sequence[int], x: int):
    """I_x = Ind_A^{A x| G} C_x on basis {v_g}; returns generator matrices.

    `domain` fixes the function algebra A: one separating function taking
    the position of a point in the sorted domain.  Comparing modules from
    different orbits requires a common domain.
    """
    group = list(group)
    idx = {g: i for i, g in enumerate(group)}
    d = len(group)
    gens = []
    # group action h . v_g = v_{hg} for a small generating set
    gen_set = _generating_set(group)
    for h in gen_set:
        m = [[Fraction(0)] * d for _ in range(d)]
        for g in group:
            m[idx[_perm_mult(h, g)]][idx[g]] = Fraction(1)
        gens.append(tuple(tuple(r) for r in m))
    pos = {y: i for i, y in enumerate(sorted(domain))}
    m = [[Fraction(0)] * d for _ in range(d)]
    for g in group:
        m[idx[g]][idx[g]] = Fraction(pos[g[x]])
    gens.append(tuple(tuple(r) for r in m))
    return gens


def _generating_set(group: Sequence[Tuple[int, ...]]):
    n = len(group[0])
    ident = tuple(range(n))
    gens: List[Tuple[int, ...]] = []
    span = {ident}
    for g in sorted(group):
        if g in span:
            continue
        gens.append(g)
        span = set(_perm_group_closure([*gens]))
        if len(span) == len(group):
            break
    return gens or [ident]


def crossed_point_module(perms: Sequence[Tuple[int, ...]], x: int,
                         bound: int = 3000,
                         compare_point: Optional[int] = None) -> PointModuleReport:
    """Build I_x for functions on the orbit Gx, count its constituents.

    The number of inequivalent irreducible constituents is the dimension of
    the center of the commutant (a field-independent count of the complex
    constituents); it must equal the number of conjugacy classes of the
    stabilizer G_x.
    """
    group = _perm_group_closure(list(perms))
    if len(group) ** 2 > bound * 10:
        raise HomologyError("group exceeds the point-module bound")
    orbit = tuple(sorted({g[x] for g in group}))
    stab = [g for g in group if g[x] == x]
    # conjugacy classes of the stabilizer, by brute-force conjugation
    seen = set()
    classes = 0
    stab_set = set(stab)
    inv = {g: tuple(sorted(range(len(g)), key=lambda i: g[i])) for g in stab}
    for g in stab:
        if g in seen:
            continue
        classes += 1
        for h in stab:
            seen.add(_perm_mult(_perm_mult(h, g), inv[h]))
    gens = _point_module_matrices(group, orbit, x)
    d = len(group)
    from .linalg import intertwiner_matrices
    comm = intertwiner_matrices([(m, m) for m in gens], d, d)
    # center of the commutant: elements commuting with every basis element
    center = intertwiner_matrices([(c, c) for c in comm], d, d)
    center_in_comm = _intersect_spans(comm, center, d)
    constituents = len(center_in_comm)
    iso_within = True
    noniso = None
    for y in orbit:
        if y != x:
            gens_y = _point_module_matrices(group, orbit, y)
            pairs = list(zip(gens, gens_y))
            hom = intertwiner_matrices(pairs, d, d)
            iso_within = iso_within and bool(hom)
            break
    if compare_point is not None and compare_point not in orbit:
        orbit2 = tuple(sorted({g[compare_point] for g in group}))
        common = tuple(sorted(set(orbit) | set(orbit2)))
        gens_c = _point_module_matrices(group, common, x)
        gens2 = _point_module_matrices(group, common, compare_point)
        hom = intertwiner_matrices(list(zip(gens_c, gens2)), d, d)
        noniso = not hom
    return PointModuleReport(orbit=orbit, stabilizer_order=len(stab),
                             stabilizer_classes=classes,
                             constituents=constituents,
                             match=(constituents == classes),
                             iso_within_orbit=iso_within,
                             noniso_across_orbits=noniso)


def _intersect_spans(span_a: Sequence[Mat], span_b: Sequence[Mat],
                     d: int) -> List[Vec]:
    """Basis of span(a) intersect span(b), matrices flattened to vectors."""
    from .linalg import rref
    if not span_a or not span_b:
        return []
    flat_a = [[m[i][j] for i in range(d) for j in range(d)] for m in span_a]
    flat_b = [[m[i][j] for i in range(d) for j in range(d)] for m in span_b]
    rows = [list(col) for col in zip(*(flat_a + flat_b))]
    combos = nullspace(rows, len(flat_a) + len(flat_b))
    vecs = []
    for c in combos:
        v = [Fraction(0)] * (d * d)
        for coeff, fa in zip(c[:len(flat_a)], flat_a):
            for i in range(d * d):
                v[i] += coeff * fa[i]
        vecs.append(tuple(v))
    red, pivots = rref(vecs)
    return [tuple(red[i]) for i in range(len(pivots))]


# ---------------------------------------------------------------------------
# The main theorem at desk scale.
# ---------------------------------------------------------------------------

@dataclass
class BasisTheoremReport:
    datum_label: str
    k_values: Tuple[Q, ...]
    class_count: int
    hp0: int
    irr0_count: int
    module_names: Tuple[str, ...]
    module_dims: Tuple[int, ...]
    trace_matrix: Tuple[Tuple[Q, ...], ...]
    matrix_rank: int
    counts_match: bool
    full_rank: bool
    passed: bool


def verify_basis_theorem(algebra: HeckeAlgebra,
                         catalog: Optional[Sequence[DSCatalogEntry]] = None,
                         warn_rank2: bool = True) -> BasisTheoremReport:
    """Check #Irr_0 = #classes(W') = HP_0 and full rank of the trace matrix.

    A rank or count failure is reported as a falsification flag, never
    silently absorbed.
    """
    if catalog is None:
        catalog = auto_catalog(algebra, warn_rank2=warn_rank2)
    census = conjugacy_census(algebra.group)
    hp = hp_census_hecke(algebra)
    modules = irr0_census(algebra, catalog)
    matrix = tuple(m.restriction_character().values for m in modules)
    mrank = rank([list(r) for r in matrix]) if matrix else 0
    counts_match = (len(modules) == len(census) == hp.hp0)
    full_rank = (mrank == len(census) and len(matrix) == len(census))
    return BasisTheoremReport(
        datum_label=algebra.datum.label, k_values=algebra.kmap.values,
        class_count=len(census), hp0=hp.hp0, irr0_count=len(modules),
        module_names=tuple(m.name for m in modules),
        module_dims=tuple(m.dim for m in modules),
        trace_matrix=matrix, matrix_rank=mrank,
        counts_match=counts_match, full_rank=full_rank,
        passed=counts_match and full_rank)
