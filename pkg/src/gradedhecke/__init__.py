"""Exact computational engine for extended graded Hecke algebras.

Algebra arithmetic, parabolically induced modules, intertwiners and
Hochschild/cyclic/periodic homology censuses over exact rational (and
Gaussian-rational) arithmetic.
"""

from .rootdata import (Cone, ParabolicDatum, ParameterMap, RootDatum,
                       RootDatumError, build_root_datum, cone_contains,
                       in_antidual, make_parameter_map, make_root_datum,
                       pairing, parabolic)
from .weyl import (ConjugacyClassCensus, DiagramAutomorphism,
                   ExtendedWeylElement, GammaGroup, WeylGroup,
                   association_action, conjugacy_census, coset_reps,
                   enumerate_group, make_diagram_automorphism)
from .poly import (PoincareSeries, Poly, act, divided_difference,
                   invariant_polys, molien_forms, parse_poly, reynolds)
from .hecke import (HeckeAlgebra, HeckeElement, filtration_degree,
                    k_sensitive_part, parse_element, scale_map)
from .modules import (Character, DSCatalogEntry, FieldExtensionNeeded,
                      FinModule, InductionDatum, UnsplitSpectrumError,
                      auto_catalog, central_character, commutant, decompose,
                      hom_space, induce, intertwiner_space, irr0_census,
                      is_discrete_series, is_irreducible, is_tempered,
                      one_dim_modules, parabolic_algebra, weights)
from .homology import (FinDimAlgebra, HomologyCensus, HPReport,
                       crossed_point_module, crossed_product_census,
                       cyclic_homology, hochschild_homology, hp_census_hecke,
                       verify_basis_theorem)

__version__ = "0.1.0"
