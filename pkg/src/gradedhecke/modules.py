"""Finite-dimensional H'-modules: induction, weights, temperedness, censuses.

Modules are given by exact matrices for every simple reflection, every
diagram automorphism and every ambient coordinate of t*.  Coordinate
matrices may have Gaussian-rational entries (points of t are pairs of
rational vectors); group matrices are always rational.  All solves are
exact; nothing here touches floating point.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .hecke import HeckeAlgebra, HeckeElement
from .linalg import (Mat, Q, QI, Vec, charpoly, gaussian_roots, identity,
                     intertwiner_matrices, inverse, mat_mul, mat_vec,
                     nullspace, rational_roots, restrict_matrix, solve, trace,
                     zero_vec)
from .poly import Poly
from .rootdata import ParabolicDatum, in_antidual, pairing, parabolic
from .weyl import (ConjugacyClassCensus, ExtendedWeylElement,
                   conjugacy_census, coset_rep_map, coset_reps)


class ModuleError(ValueError):
    pass


class UnsplitSpectrumError(ModuleError):
    """Joint spectrum does not split over the working field."""

    def __init__(self, poly_coeffs):
        self.poly = tuple(poly_coeffs)
        text = " , ".join(str(c) for c in self.poly)
        super().__init__(
            f"unsplit spectrum: characteristic factor [{text}] "
            "(coefficients highest degree first)")


class FieldExtensionNeeded(ModuleError):
    """Decomposition requires adjoining a root of the carried polynomial."""

    def __init__(self, poly_coeffs):
        self.poly = tuple(poly_coeffs)
        text = " , ".join(str(c) for c in self.poly)
        super().__init__(
            f"extend field: adjoin a root of [{text}] "
            "(coefficients highest degree first)")


@dataclass
class FinModule:
    """A finite-dimensional module over a (possibly extended) Hecke algebra."""

    algebra: HeckeAlgebra
    dim: int
    refl: Dict[int, Mat]
    gammas: Dict[str, Mat]
    coord: Tuple[Mat, ...]
    labels: Tuple[str, ...] = ()
    name: str = ""
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.labels:
            self.labels = tuple(f"v{i}" for i in range(self.dim))

    def is_complex(self) -> bool:
        return any(isinstance(c, QI) and c.im != 0
                   for m in self.coord for row in m for c in row)

    def group_matrix(self, e: ExtendedWeylElement) -> Mat:
        m = self.gammas.get(e.gamma) if e.gamma != "e" else None
        out = m if m is not None else identity(self.dim)
        for i in e.word:
            out = mat_mul(out, self.refl[i])
        return out

    def covector_matrix(self, x: Vec, x_im: Optional[Vec] = None) -> Mat:
        """Action of a (complex) covector x + i*x_im of t*."""
        n = self.dim
        out = [[Fraction(0)] * n for _ in range(n)]
        for k, c in enumerate(x):
            if c:
                for i in range(n):
                    for j in range(n):
                        out[i][j] = out[i][j] + c * self.coord[k][i][j]
        if x_im is not None:
            ii = QI(0, 1)
            for k, c in enumerate(x_im):
                if c:
                    for i in range(n):
                        for j in range(n):
                            out[i][j] = out[i][j] + ii * c * self.coord[k][i][j]
        return tuple(tuple(r) for r in out)

    def generator_matrices(self) -> List[Mat]:
        gens = [self.refl[i] for i in range(self.algebra.datum.rank)]
        gens += [self.gammas[g.label]
                 for g in self.algebra.group.gamma.elements if g.label != "e"]
        gens += list(self.coord)
        return gens

    def verify(self) -> None:
        """Check every defining relation of H' exactly as a matrix identity."""
        alg = self.algebra
        datum = alg.datum
        ident = identity(self.dim)
        for i in range(datum.rank):
            if mat_mul(self.refl[i], self.refl[i]) != ident:
                raise ModuleError(f"s_{i}^2 != 1 in module {self.name!r}")
        # braid relations via the order of s_i s_j in W
        for i in range(datum.rank):
            for j in range(i + 1, datum.rank):
                prod = mat_mul(datum.reflection_matrix(i),
                               datum.reflection_matrix(j))
                rep = mat_mul(self.refl[i], self.refl[j])
                acc_w, acc_m = prod, rep
                order = 1
                while acc_w != identity(datum.ambient_dim):
                    acc_w = mat_mul(acc_w, prod)
                    acc_m = mat_mul(acc_m, rep)
                    order += 1
                    if order > 64:
                        raise ModuleError("runaway braid order")
                if acc_m != ident:
                    raise ModuleError(
                        f"braid relation ({i},{j}) fails in {self.name!r}")
        gamma = alg.group.gamma
        for a in gamma.elements:
            if a.label == "e":
                continue
            if a.label not in self.gammas:
                raise ModuleError(f"missing matrix for gamma {a.label!r}")
        for a in gamma.elements:
            ma = self.gammas.get(a.label, ident)
            for b in gamma.elements:
                mb = self.gammas.get(b.label, ident)
                mc = self.gammas.get(gamma.compose(a, b).label, ident)
                if mat_mul(ma, mb) != mc:
                    raise ModuleError("gamma composition fails")
            for i in range(datum.rank):
                lhs = mat_mul(ma, mat_mul(self.refl[i], inverse(ma)))
                if lhs != self.refl[a.perm[i]]:
                    raise ModuleError("gamma conjugation of s_i fails")
        for a in range(len(self.coord)):
            for b in range(a + 1, len(self.coord)):
                if mat_mul(self.coord[a], self.coord[b]) != \
                        mat_mul(self.coord[b], self.coord[a]):
                    raise ModuleError("coordinate matrices do not commute")
        # cross relation x s_i - s_i s_i(x) = k_i <x, alpha_i^vee>
        for i in range(datum.rank):
            for k in range(datum.ambient_dim):
                x = tuple(Fraction(1 if t == k else 0)
                          for t in range(datum.ambient_dim))
                sx = datum.reflect_covector(i, x)
                lhs = mat_sub_(mat_mul(self.coord[k], self.refl[i]),
                               mat_mul(self.refl[i], self.covector_matrix(sx)))
                c = alg.kmap[i] * pairing(x, datum.simple_coroots[i])
                rhs = tuple(tuple(c if r == s else Fraction(0)
                                  for s in range(self.dim))
                            for r in range(self.dim))
                if lhs != rhs:
                    raise ModuleError(
                        f"cross relation (x_{k}, alpha_{i}) fails "
                        f"in {self.name!r}")
        # x gamma = gamma gamma^{-1}(x)
        for a in gamma.elements:
            if a.label == "e":
                continue
            ma = self.gammas[a.label]
            ainv = gamma.inv(a)
            for k in range(datum.ambient_dim):
                x = tuple(Fraction(1 if t == k else 0)
                          for t in range(datum.ambient_dim))
                gx = tuple(dot_row(x, ainv.matrix))
                lhs = mat_mul(self.coord[k], ma)
                rhs = mat_mul(ma, self.covector_matrix(gx))
                if lhs != rhs:
                    raise ModuleError("gamma cross relation fails")

    def restriction_character(self) -> "Character":
        census = _algebra_census(self.algebra)
        values = tuple(trace(self.group_matrix(e.rep)) for e in census.entries)
        return Character(census=census, values=values)


def dot_row(x: Vec, m: Mat) -> Vec:
    """Coordinates of the covector x transported by the matrix m: x o m."""
    return tuple(sum((x[r] * m[r][c] for r in range(len(x))), Fraction(0))
                 for c in range(len(x)))


def mat_sub_(a: Mat, b: Mat) -> Mat:
    return tuple(tuple(x - y for x, y in zip(ra, rb))
                 for ra, rb in zip(a, b))


_census_cache: "weakref.WeakKeyDictionary" = None


def _algebra_census(algebra: HeckeAlgebra) -> ConjugacyClassCensus:
    global _census_cache
    if _census_cache is None:
        import weakref
        _census_cache = weakref.WeakKeyDictionary()
    group = algebra.group
    if group not in _census_cache:
        _census_cache[group] = conjugacy_census(group)
    return _census_cache[group]


@dataclass(frozen=True)
class Character:
    """Class function on W', stored by the census's canonical class order."""

    census: ConjugacyClassCensus
    values: Tuple[Q, ...]

    def __eq__(self, other):
        return isinstance(other, Character) and self.values == other.values

    def __hash__(self):
        return hash(self.values)

    def dimension(self) -> Q:
        return self.values[0]


# ---------------------------------------------------------------------------
# One-dimensional modules and induction data.
# ---------------------------------------------------------------------------

def one_dim_modules(algebra: HeckeAlgebra) -> List[FinModule]:
    """All one-dimensional modules with lambda in the coroot span.

    A sign pattern eps : Pi -> {+-1} must be constant on braid-odd-linked
    components; lambda then solves <alpha_i, lambda> = eps_i k_i.  The
    all-minus solution is tagged 'steinberg', the all-plus one 'trivial'.
    """
    if len(algebra.group.gamma) != 1:
        raise ModuleError("one_dim_modules expects an unextended algebra")
    datum = algebra.datum
    rank = datum.rank
    if rank == 0:
        mod = FinModule(algebra=algebra, dim=1, refl={}, gammas={},
                        coord=tuple(((Fraction(0),),)
                                    for _ in range(datum.ambient_dim)),
                        name="trivial",
                        meta={"lambda": zero_vec(datum.ambient_dim)})
        mod.verify()
        return [mod]
    # link i ~ j when the braid order m_ij is odd
    parent = list(range(rank))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i in range(rank):
        for j in range(i + 1, rank):
            prod = mat_mul(datum.reflection_matrix(i),
                           datum.reflection_matrix(j))
            acc, order = prod, 1
            while acc != identity(datum.ambient_dim):
                acc = mat_mul(acc, prod)
                order += 1
            if order % 2 == 1:
                parent[find(i)] = find(j)
    comps = sorted({find(i) for i in range(rank)})
    cartan = datum.cartan()
    out: List[FinModule] = []
    for bits in range(1 << len(comps)):
        eps = [Fraction(0)] * rank
        for ci, croot in enumerate(comps):
            sign = Fraction(-1 if (bits >> ci) & 1 else 1)
            for i in range(rank):
                if find(i) == croot:
                    eps[i] = sign
        target = [eps[i] * algebra.kmap[i] for i in range(rank)]
        coeffs = solve([list(r) for r in cartan], target)
        if coeffs is None:
            continue
        lam = zero_vec(datum.ambient_dim)
        for c, cv in zip(coeffs, datum.simple_coroots):
            lam = tuple(a + c * b for a, b in zip(lam, cv))
        refl = {i: ((eps[i],),) for i in range(rank)}
        coord = tuple(((lam[k],),) for k in range(datum.ambient_dim))
        if all(e == 1 for e in eps):
            name = "trivial"
        elif all(e == -1 for e in eps):
            name = "steinberg"
        else:
            name = "onedim[" + "".join("+" if e == 1 else "-" for e in eps) + "]"
        mod = FinModule(algebra=algebra, dim=1, refl=refl, gammas={},
                        coord=coord, name=name, meta={"lambda": lam})
        mod.verify()
        out.append(mod)
    # at k = 0 distinct sign patterns share lambda = 0 but remain distinct
    seen = set()
    dedup = []
    for m in out:
        key = (tuple(m.refl[i] for i in range(rank)), m.coord)
        if key not in seen:
            seen.add(key)
            dedup.append(m)
    return dedup


@dataclass
class InductionDatum:
    """A triple (P, delta, lambda) with delta over H_P and lambda in t^P."""

    P: Tuple[int, ...]
    delta: FinModule
    lam_re: Vec
    lam_im: Vec
    discrete_series: bool = True

    def is_unitary(self) -> bool:
        return all(c == 0 for c in self.lam_re)


def parabolic_algebra(algebra: HeckeAlgebra,
                      P: Sequence[int]) -> Tuple[ParabolicDatum, HeckeAlgebra]:
    """The parabolic datum and the algebra H_P (unextended, restricted k)."""
    parab = parabolic(algebra.datum, P)
    sub_k = [algebra.kmap[i] for i in parab.P]
    return parab, HeckeAlgebra(parab.sub_datum, sub_k)


def _poly_at_coordinates(p: Poly, mats: Sequence[Mat], dim: int) -> Mat:
    """Evaluate p at commuting coordinate matrices (exact)."""
    out = [[Fraction(0)] * dim for _ in range(dim)]
    cache: Dict[Tuple[int, int], Mat] = {}

    def power(i, k):
        if (i, k) not in cache:
            if k == 1:
                cache[(i, k)] = mats[i]
            else:
                cache[(i, k)] = mat_mul(power(i, k - 1), mats[i])
        return cache[(i, k)]

    for e, c in p.terms.items():
        m = None
        for i, k in enumerate(e):
            if k:
                m = power(i, k) if m is None else mat_mul(m, power(i, k))
        if m is None:
            for r in range(dim):
                out[r][r] = out[r][r] + c
        else:
            for r in range(dim):
                for s in range(dim):
                    out[r][s] = out[r][s] + c * m[r][s]
    return tuple(tuple(r) for r in out)


def induce(algebra: HeckeAlgebra, xi: InductionDatum,
           extended: bool = True) -> FinModule:
    """Parabolic induction Ind_{H^P}^{H} (extended=False) or Ind_{H^P}^{H'}.

    Basis u (x) v over minimal-length coset representatives u; a generator h
    acts by normal-ordering h*u in H', splitting along H' = (+)_u u H^P and
    applying delta_lambda, where H^P = S(t^{P*}) (x) H_P acts through
    delta_lambda(x) = delta(x_P) + <x^P, lambda>.
    """
    datum = algebra.datum
    if not datum.crystallographic:
        raise ModuleError("induction requires a crystallographic datum")
    parab, sub_alg = parabolic_algebra(algebra, xi.P)
    delta = xi.delta
    if delta.algebra.datum.cartan() != sub_alg.datum.cartan() or \
            delta.algebra.kmap.values != sub_alg.kmap.values:
        raise ModuleError("delta is not a module over the parabolic algebra")
    if not parab.in_t_upP(xi.lam_re) or not parab.in_t_upP(xi.lam_im):
        raise ModuleError("lambda does not lie in t^P")
    work = algebra if extended else algebra.unextended()
    group = work.group
    reps = coset_reps(group, xi.P)
    rep_index = {r.matrix: i for i, r in enumerate(reps)}
    rep_of = coset_rep_map(group, xi.P)
    # map W_P elements of the big group to words in the sub datum
    sub_group = delta.algebra.group
    wp_words: Dict[Mat, Tuple[int, ...]] = {}
    for e in sub_group.elements:
        m = identity(datum.ambient_dim)
        for i in e.word:
            m = mat_mul(m, datum.reflection_matrix(parab.P[i]))
        wp_words[m] = e.word
    d = delta.dim
    n = len(reps) * d
    complex_lam = any(c != 0 for c in xi.lam_im)
    # coordinate matrices of delta_lambda on V_delta
    coord_small: List[Mat] = []
    for k in range(datum.ambient_dim):
        lam_k = QI(xi.lam_re[k], xi.lam_im[k]) if complex_lam \
            else xi.lam_re[k]
        if k in parab.P:
            base = delta.coord[parab.P.index(k)]
        else:
            base = tuple(tuple(Fraction(0) for _ in range(d))
                         for _ in range(d))
        coord_small.append(tuple(tuple(base[r][s] +
                                       (lam_k if r == s else 0)
                                       for s in range(d)) for r in range(d)))

    def delta_of_word(word: Tuple[int, ...]) -> Mat:
        m = identity(d)
        for i in word:
            m = mat_mul(m, delta.refl[i])
        return m

    def act_matrix_of(h: HeckeElement) -> Mat:
        big = [[Fraction(0)] * n for _ in range(n)]
        for a, u in enumerate(reps):
            prod = work.multiply(h, work.from_group(u))
            for g, p in prod.terms.items():
                u2 = rep_of[g.matrix]
                m_el = group.mult(group.inv(u2), g)
                word = wp_words.get(m_el.matrix)
                if word is None:
                    raise ModuleError("coset decomposition left W_P")
                block = mat_mul(delta_of_word(word),
                                _poly_at_coordinates(p, coord_small, d))
                r0 = rep_index[u2.matrix] * d
                c0 = a * d
                for r in range(d):
                    for s in range(d):
                        v = block[r][s]
                        if v:
                            big[r0 + r][c0 + s] = big[r0 + r][c0 + s] + v
        return tuple(tuple(r) for r in big)

    refl = {i: act_matrix_of(work.s(i)) for i in range(datum.rank)}
    gammas = {}
    if extended:
        for gm in algebra.group.gamma.elements:
            if gm.label != "e":
                gammas[gm.label] = act_matrix_of(work.gamma(gm.label))
    coord = tuple(act_matrix_of(work.x(k)) for k in range(datum.ambient_dim))
    labels = tuple(f"{u!r}(x){lbl}" for u in reps for lbl in delta.labels)
    name = f"pi'({list(xi.P)},{delta.name},lam)" if extended else \
        f"pi({list(xi.P)},{delta.name},lam)"
    mod = FinModule(algebra=work, dim=n, refl=refl, gammas=gammas,
                    coord=coord, labels=labels, name=name,
                    meta={"P": xi.P, "delta": delta.name,
                          "lam_re": xi.lam_re, "lam_im": xi.lam_im})
    if mod.dim != len(reps) * delta.dim:
        raise ModuleError("induced dimension mismatch")
    mod.verify()
    return mod


# ---------------------------------------------------------------------------
# Weights, central characters, temperedness.
# ---------------------------------------------------------------------------

def weights(module: FinModule) -> List[Tuple[Tuple[Vec, Vec], int]]:
    """Generalized joint spectrum of the coordinate matrices.

    Returns [((re, im), multiplicity)] with multiplicities summing to the
    dimension; raises UnsplitSpectrumError naming the offending
    characteristic factor when the spectrum is not Gaussian rational.
    """
    n = module.dim
    cmplx = module.is_complex()
    spaces: List[Tuple[List[Vec], List]] = [
        ([tuple(Fraction(1 if i == j else 0) for j in range(n))
          for i in range(n)], [])]
    for m in module.coord:
        new_spaces = []
        for basis, vals in spaces:
            a = restrict_matrix(m, basis)
            cp = charpoly(a)
            if cmplx:
                roots, residual = gaussian_roots(cp)
            else:
                roots, residual = rational_roots(cp)
                roots = [(QI(r), mult) for r, mult in roots]
            if len(residual) > 1:
                raise UnsplitSpectrumError(residual)
            total = 0
            dim_b = len(basis)
            for lam, mult in roots:
                lam_s = lam if cmplx else lam.re
                shifted = tuple(tuple(a[r][c] - (lam_s if r == c else 0)
                                      for c in range(dim_b))
                                for r in range(dim_b))
                powm = identity(dim_b)
                for _ in range(dim_b):
                    powm = mat_mul(powm, shifted)
                ker = nullspace([list(r) for r in powm], dim_b)
                if len(ker) != mult:
                    raise UnsplitSpectrumError(cp)
                lifted = []
                for v in ker:
                    w = zero_vec(n)
                    for c, bvec in zip(v, basis):
                        w = tuple(x + c * y for x, y in zip(w, bvec))
                    lifted.append(w)
                new_spaces.append((lifted, vals + [lam]))
                total += mult
            if total != dim_b:
                raise UnsplitSpectrumError(cp)
        spaces = new_spaces
    agg: Dict[Tuple[Vec, Vec], int] = {}
    for basis, vals in spaces:
        re = tuple(v.re for v in vals)
        im = tuple(v.im for v in vals)
        agg[(re, im)] = agg.get((re, im), 0) + len(basis)
    out = sorted(agg.items(), key=lambda t: t[0])
    if sum(mult for _, mult in out) != n:
        raise ModuleError("weight multiplicities do not sum to the dimension")
    return out


def central_character(module: FinModule) -> Tuple[Tuple[Tuple[Vec, Vec], ...], bool]:
    """The W'-orbit of the weights and whether it is real (im = 0).

    Raises if the weights fall into more than one W'-orbit.
    """
    wts = weights(module)
    group = module.algebra.group
    first = wts[0][0]
    orbit = set()
    for g in group.elements:
        orbit.add((mat_vec(g.matrix, first[0]), mat_vec(g.matrix, first[1])))
    points = {pt for pt, _ in wts}
    if not points <= orbit:
        others = sorted(points - orbit)
        raise ModuleError(
            f"multiple central characters: {first} vs {others[0]}")
    is_real = all(all(c == 0 for c in im) for _, im in orbit)
    return tuple(sorted(orbit)), is_real


def is_real_central_character(module: FinModule) -> bool:
    return central_character(module)[1]


def cc_norm2(module: FinModule) -> Q:
    """Gram norm^2 of the central character (same for every orbit point)."""
    orbit, _ = central_character(module)
    re, im = orbit[0]
    g = module.algebra.datum
    return g.norm2(re) + g.norm2(im)


def is_tempered(module: FinModule) -> bool:
    """All weights have real part in the antidual cone a^-."""
    datum = module.algebra.datum
    if not datum.crystallographic:
        raise ModuleError("temperedness is defined for crystallographic data")
    return all(in_antidual(datum, re) for (re, _), _ in weights(module))


def is_discrete_series(module: FinModule) -> bool:
    """Irreducible with all weight real parts in the open cone a^--."""
    datum = module.algebra.datum
    if not datum.crystallographic:
        raise ModuleError("discrete series require a crystallographic datum")
    if not all(in_antidual(datum, re, strict=True)
               for (re, _), _ in weights(module)):
        return False
    return is_irreducible(module)


# ---------------------------------------------------------------------------
# Commutants, irreducibility, decomposition, intertwiners.
# ---------------------------------------------------------------------------

def hom_space(src: FinModule, dst: FinModule) -> List[Mat]:
    """Exact basis of Hom_{H'}(src, dst) (C-dimension when data are complex)."""
    if src.algebra.datum.cartan() != dst.algebra.datum.cartan():
        raise ModuleError("modules live over different algebras")
    pairs = list(zip(dst.generator_matrices(), src.generator_matrices()))
    return intertwiner_matrices(pairs, dst.dim, src.dim)


def commutant(module: FinModule) -> List[Mat]:
    return hom_space(module, module)


def is_irreducible(module: FinModule) -> bool:
    """Commutant dimension 1 certifies irreducibility over the working field."""
    return len(commutant(module)) == 1


def commutant_radical_dim(module: FinModule) -> int:
    """Kernel dimension of the trace form on the commutant (0 = semisimple)."""
    basis = commutant(module)
    gram = [[trace(mat_mul(a, b)) for b in basis] for a in basis]
    return len(nullspace(gram, len(basis)))


def submodule(module: FinModule, basis: Sequence[Vec],
              name: str = "") -> FinModule:
    """Restriction of every generator matrix to an invariant subspace."""
    refl = {i: restrict_matrix(m, basis) for i, m in module.refl.items()}
    gammas = {lbl: restrict_matrix(m, basis)
              for lbl, m in module.gammas.items()}
    coord = tuple(restrict_matrix(m, basis) for m in module.coord)
    sub = FinModule(algebra=module.algebra, dim=len(basis), refl=refl,
                    gammas=gammas, coord=coord,
                    name=name or f"{module.name}|sub",
                    meta=dict(module.meta))
    sub.verify()
    return sub


def _eigen_split_element(basis_mats: List[Mat], dim: int, cmplx: bool):
    """Find (c, lam) with a proper eigenkernel, or the obstruction poly."""
    ident = identity(dim)
    obstruction = None
    candidates = list(basis_mats)
    # deterministic combinations in case no single basis element splits
    for i in range(len(basis_mats)):
        for j in range(i + 1, len(basis_mats)):
            candidates.append(mat_mul(basis_mats[i], basis_mats[j]))
    for c in candidates:
        if all(c[r][s] == (c[0][0] if r == s else 0)
               for r in range(dim) for s in range(dim)):
            continue  # scalar
        cp = charpoly(c)
        if cmplx:
            roots, residual = gaussian_roots(cp)
        else:
            rroots, residual = rational_roots(cp)
            roots = [(QI(r), m) for r, m in rroots]
        for lam, _ in roots:
            lam_s = lam if cmplx else lam.re
            shifted = tuple(tuple(c[r][s] - (lam_s if r == s else 0)
                                  for s in range(dim)) for r in range(dim))
            ker = nullspace([list(r) for r in shifted], dim)
            if 0 < len(ker) < dim:
                return c, lam_s, ker, None
        if len(residual) > 1 and obstruction is None:
            obstruction = residual
    return None, None, None, obstruction


def _split_bases(module: FinModule, basis: List[Vec]) -> List[List[Vec]]:
    """Bases of irreducible submodules spanning the given invariant space."""
    sub = submodule(module, basis)
    comm = commutant(sub)
    if len(comm) == 1:
        return [list(basis)]
    cmplx = sub.is_complex()
    c, lam, ker, obstruction = _eigen_split_element(comm, sub.dim, cmplx)
    if c is None:
        raise FieldExtensionNeeded(
            obstruction if obstruction is not None else (Fraction(1),))
    # idempotent e in span(comm) with image exactly span(ker)
    kmat_rows = [list(v) for v in ker]
    ann = nullspace(kmat_rows, sub.dim)  # z with <z, ker> = 0
    rows = []
    rhs = []
    for w in ker:  # e w = w
        for r in range(sub.dim):
            rows.append([sum((cb[r][s] * w[s] for s in range(sub.dim)),
                             Fraction(0)) for cb in comm])
            rhs.append(w[r])
    for j in range(sub.dim):  # e e_j in span(ker):  z . (e e_j) = 0
        col = [tuple(cb[r][j] for r in range(sub.dim)) for cb in comm]
        for z in ann:
            rows.append([sum((z[r] * cv[r] for r in range(sub.dim)),
                             Fraction(0)) for cv in col])
            rhs.append(Fraction(0))
    coeffs = solve(rows, rhs)
    if coeffs is None:
        raise ModuleError("no idempotent projection; module not completely "
                          "reducible over the working field")
    e = [[sum((coeffs[t] * comm[t][r][s] for t in range(len(comm))),
              Fraction(0)) for s in range(sub.dim)] for r in range(sub.dim)]
    ker_e = nullspace(e, sub.dim)
    if len(ker) + len(ker_e) != sub.dim:
        raise ModuleError("idempotent split has wrong rank")

    def lift(vecs):
        out = []
        for v in vecs:
            w = zero_vec(module.dim)
            for cvf, bvec in zip(v, basis):
                w = tuple(x + cvf * y for x, y in zip(w, bvec))
            out.append(w)
        return out

    return _split_bases(module, lift(ker)) + _split_bases(module, lift(ker_e))


def equivalent(a: FinModule, b: FinModule) -> bool:
    """Equal central character, equal restriction character, nonzero Hom."""
    if a.dim != b.dim:
        return False
    if a.restriction_character() != b.restriction_character():
        return False
    if central_character(a)[0] != central_character(b)[0]:
        return False
    return bool(hom_space(a, b))


def decompose(module: FinModule) -> List[Tuple[FinModule, int]]:
    """Split a completely reducible module into irreducibles with multiplicity.

    Orthogonal idempotents are found inside the commutant; a commutant whose
    elements have no rational eigenvalues raises FieldExtensionNeeded with
    the polynomial to adjoin.
    """
    n = module.dim
    full = [tuple(Fraction(1 if i == j else 0) for j in range(n))
            for i in range(n)]
    bases = _split_bases(module, full)
    mods = [submodule(module, b, name=f"{module.name}#{i}")
            for i, b in enumerate(bases)]
    groups: List[Tuple[FinModule, int]] = []
    for m in mods:
        placed = False
        for i, (rep, count) in enumerate(groups):
            if equivalent(rep, m):
                groups[i] = (rep, count + 1)
                placed = True
                break
        if not placed:
            groups.append((m, 1))
    if sum(c * m.dim for m, c in groups) != module.dim:
        raise ModuleError("decomposition does not fill the module")
    groups.sort(key=lambda t: (t[0].dim, t[0].restriction_character().values))
    return groups


def intertwiner_space(algebra: HeckeAlgebra, xi: InductionDatum,
                      eta: InductionDatum, extended: bool = True) -> List[Mat]:
    """Basis of Hom_{H'}(pi'(xi), pi'(eta)) by exact linear solve."""
    v = induce(algebra, xi, extended=extended)
    w = induce(algebra, eta, extended=extended)
    return hom_space(v, w)


# ---------------------------------------------------------------------------
# Discrete-series catalog and the Irr_0 census.
# ---------------------------------------------------------------------------

@dataclass
class DSCatalogEntry:
    """A discrete-series module of H_P with a provenance note."""

    P: Tuple[int, ...]
    module: FinModule
    note: str = ""


def auto_catalog(algebra: HeckeAlgebra,
                 user_entries: Sequence[DSCatalogEntry] = (),
                 warn_rank2: bool = True) -> List[DSCatalogEntry]:
    """One-dimensional discrete series for every parabolic, plus user entries.

    Higher-dimensional discrete series cannot be derived here; a parabolic of
    rank >= 2 without user entries triggers a warning because its catalog may
    be incomplete.
    """
    datum = algebra.datum
    rank = datum.rank
    subsets = []
    for size in range(rank + 1):
        level = [tuple(sorted(c))
                 for c in _subsets_of_size(tuple(range(rank)), size)]
        subsets.extend(sorted(level))
    out: List[DSCatalogEntry] = []
    user_by_p: Dict[Tuple[int, ...], List[DSCatalogEntry]] = {}
    for entry in user_entries:
        user_by_p.setdefault(tuple(sorted(entry.P)), []).append(entry)
    for P in subsets:
        _, sub_alg = parabolic_algebra(algebra, P)
        autos = [m for m in one_dim_modules(sub_alg) if is_discrete_series(m)]
        for m in autos:
            out.append(DSCatalogEntry(P=P, module=m,
                                      note=f"auto one-dimensional ({m.name})"))
        for entry in user_by_p.get(P, []):
            entry.module.verify()
            if not is_discrete_series(entry.module):
                raise ModuleError(
                    f"catalog entry for P={list(P)} is not discrete series")
            out.append(entry)
        if len(P) >= 2 and P not in user_by_p and warn_rank2:
            warnings.warn(
                f"parabolic P={list(P)} has rank >= 2 and no user catalog "
                "entries; higher discrete series may be missing",
                stacklevel=2)
    return out


def _subsets_of_size(items: Tuple[int, ...], size: int):
    if size == 0:
        yield ()
        return
    for i, x in enumerate(items):
        for rest in _subsets_of_size(items[i + 1:], size - 1):
            yield (x,) + rest


def transport_module(algebra: HeckeAlgebra, P: Tuple[int, ...],
                     delta: FinModule, w: ExtendedWeylElement,
                     Q_target: Tuple[int, ...],
                     target_alg: HeckeAlgebra) -> FinModule:
    """delta o psi_w^{-1} over H_Q, for w in W'(P, Q)."""
    datum = algebra.datum
    refl = {}
    for pos, qi in enumerate(Q_target):
        pre = algebra.group.act_covector(algebra.group.inv(w),
                                         datum.simple_roots[qi])
        src = datum.simple_roots.index(pre)
        refl[pos] = delta.refl[P.index(src)]
    coord = []
    for qi in Q_target:
        x = tuple(Fraction(1 if t == qi else 0)
                  for t in range(datum.ambient_dim))
        pre = dot_row(x, w.matrix)  # coordinates of x o w = w^{-1} . x
        m = [[Fraction(0)] * delta.dim for _ in range(delta.dim)]
        for pos, pi_idx in enumerate(P):
            c = pre[pi_idx]
            if c:
                for r in range(delta.dim):
                    for s in range(delta.dim):
                        m[r][s] = m[r][s] + c * delta.coord[pos][r][s]
        coord.append(tuple(tuple(r) for r in m))
    mod = FinModule(algebra=target_alg, dim=delta.dim, refl=refl, gammas={},
                    coord=tuple(coord), name=f"{delta.name}^w",
                    meta=dict(delta.meta))
    mod.verify()
    return mod


def association_classes(algebra: HeckeAlgebra,
                        catalog: Sequence[DSCatalogEntry]):
    """Partition catalog pairs (P, delta) into W'-association classes."""
    pairs = list(catalog)
    sub_algebras: Dict[Tuple[int, ...], HeckeAlgebra] = {}
    for e in pairs:
        if e.P not in sub_algebras:
            sub_algebras[e.P] = parabolic_algebra(algebra, e.P)[1]
    n = len(pairs)
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    from .weyl import elements_mapping_parabolic
    for i in range(n):
        for j in range(i + 1, n):
            if find(i) == find(j):
                continue
            Pi, Pj = pairs[i].P, pairs[j].P
            if len(Pi) != len(Pj):
                continue
            for w in elements_mapping_parabolic(algebra.group, Pi, Pj):
                moved = transport_module(algebra, Pi, pairs[i].module, w, Pj,
                                         sub_algebras[Pj])
                if equivalent(moved, pairs[j].module):
                    parent[find(i)] = find(j)
                    break
    classes: Dict[int, List[DSCatalogEntry]] = {}
    for i in range(n):
        classes.setdefault(find(i), []).append(pairs[i])
    ordered = []
    for _, members in sorted(classes.items(),
                             key=lambda kv: (len(kv[1][0].P), kv[1][0].P)):
        members.sort(key=lambda e: (len(e.P), e.P, e.module.name))
        ordered.append(members)
    ordered.sort(key=lambda ms: (len(ms[0].P), ms[0].P, ms[0].module.name))
    return ordered


def irr0_census(algebra: HeckeAlgebra,
                catalog: Optional[Sequence[DSCatalogEntry]] = None
                ) -> List[FinModule]:
    """Irreducible tempered modules with real central character.

    Decomposes pi'(P, delta, 0) over one representative (P, delta) per
    W'-association class, deduplicates, and orders the result by decreasing
    central-character norm (the strata order), then by parabolic.
    """
    datum = algebra.datum
    if not datum.crystallographic:
        raise ModuleError("the census requires a crystallographic datum")
    if catalog is None:
        catalog = auto_catalog(algebra)
    classes = association_classes(algebra, catalog)
    found: List[FinModule] = []
    for members in classes:
        entry = members[0]
        lam0 = zero_vec(datum.ambient_dim)
        xi = InductionDatum(P=entry.P, delta=entry.module,
                            lam_re=lam0, lam_im=lam0)
        big = induce(algebra, xi, extended=True)
        for mod, mult in decompose(big):
            if not is_tempered(mod):
                raise ModuleError(
                    f"summand of pi'({list(entry.P)},{entry.module.name},0) "
                    "is not tempered; census invariant violated")
            _, real = central_character(mod)
            if not real:
                raise ModuleError("summand has non-real central character")
            mod.meta["P"] = entry.P
            mod.meta["delta"] = entry.module.name
            mod.meta["multiplicity_in_induced"] = mult
            found.append(mod)
    # dedup across association classes: a summand of pi'(P, delta, 0) may
    # realize a stratum with larger central-character norm and reappear
    unique: List[FinModule] = []
    for m in found:
        if any(equivalent(m, u) for u in unique):
            continue
        unique.append(m)
    unique.sort(key=lambda m: (-cc_norm2(m), len(m.meta.get("P", ())),
                               m.meta.get("P", ()), m.dim,
                               m.restriction_character().values))
    return unique
