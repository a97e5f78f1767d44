"""Exact structure constants for the Kauffman bracket skein algebras of
the 4-punctured sphere and the 1-punctured torus, computed by
enumerating quantum broken lines on their scattering diagrams, with
independent verification against the noncommutative cubic-surface
presentations."""

from .alaurent import ALaurent, bar_involution, chebyshev, qbinom
from .base import (BPoint, LiftVec, Matrix2, OriginCrossing, RationalPoint,
                   canonicalize, crossings_on_segment, f_norm,
                   pairing_exponent, psl2_apply)
from .coeffpoly import (CoeffPoly, RaySeries, expand_rational_series,
                        s04_to_s11, specialize_A4_to_A2)
from .diagrams import (DiagramConfig, S04, S11, choose_basepoint, config,
                       ray_series, relevant_rays)
from .broken import (AlgebraElement, BrokenLineTrace, bend_factor,
                     enumerate_broken_lines, product_theta, structure_constant)
from .algebra import (NormalElement, element_product, monomials_to_theta,
                      nc_product, presentation_algebra, theta_to_monomials)
from .weights import peripheral_substitute
from .verify import (Report, verify_associativity, verify_consistency,
                     verify_oracle_equivalence, verify_positivity,
                     verify_presentation_relations, verify_psl2_equivariance,
                     verify_specialization, verify_torus_limit,
                     verify_weight_identity)

__version__ = "0.1.0"
