"""Exact-arithmetic workbench for Koszul quadratic algebras: Koszul
duals, Frobenius pairing and Nakayama automorphism, the cobar DG
algebra with its twisted bi-symplectic 2-form, twisted Hochschild
homology with graded Poincare duality, and derived representation
schemes.  Everything is computed over Q with no floating point.
"""

from .presentations import (QuadraticPresentation, PresentationError,
                            quantum_affine_presentation,
                            dimension2_presentation, quantum_plane,
                            commutative_plane, quantum_affine_space)
from .linalg import (Matrix, GradedBasis, BigradedComplex, HomologyReport,
                     rank_kernel, membership)
from .koszul import (build_algebra, koszul_dual, dual_coalgebra,
                     frobenius_check, nakayama, koszulity_certificate,
                     FrobeniusData, NotFrobeniusError, DualNotFiniteError)
from .ncforms import (CobarAlgebra, FormCalculus, build_omega,
                      de_rham_d, twisted_d, twisted_dr_zero_test,
                      verify_closed_invariant, contract_generator,
                      phi_matrix, phi_chain_check, phi_bimodule_check)
from .hochschild import (hh_cohomology_table, hh_twisted_homology_table,
                         bar_oracle_compare, duality_report)
from .drep import (drep_build, rep_homology, trace_form, rho_map,
                   omega_V, verify_omega_V, phi_V_generator_matrix,
                   phi_V_chain_check, TangentModule)

__version__ = "0.1.0"
