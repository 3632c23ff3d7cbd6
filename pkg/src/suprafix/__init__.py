"""Generalized-metric toolkit: axiom classification, constant fitting,
comparison-function analysis, and Picard fixed-point solving."""

__version__ = "0.1.0"

from .axioms import (AxiomReport, ConstantsFit, FitLimits, TripleWitness,
                     check_semimetric, classify, falsify, fit_b_index,
                     fit_interpolative_c, fit_strong_b_index,
                     fit_strong_suprametric_constants, fit_suprametric_constants,
                     interpolative_to_b_index, parse_claim, verify_b_metric,
                     verify_b_suprametric, verify_interpolative,
                     verify_strong_b_metric, verify_strong_b_suprametric,
                     young_gap)
from .comparison import (Compose, Linear, Power, RationalDecay, SqrtShift,
                         TableTheta, check_monotone, check_subdiagonal,
                         check_theta1, check_theta2, iterate_theta,
                         load_table_theta, theta_from_ref)
from .errors import (DegenerateSampleError, DomainEscapeError, EvaluationError,
                     SemimetricFileError, SpaceFormatError, SupraError)
from .gallery import (GalleryItem, export_finite, list_gallery, load_gallery,
                      random_feasible_space)
from .picard import (AffineMap, ContractionCertificate, OrbitTrace, SolveConfig,
                     SolveResult, TableMap, cauchy_diagnostic,
                     check_ciric_contraction, check_orbit_bounded,
                     check_plain_contraction, map_from_ref,
                     probe_separate_continuity, run_orbit, solve_fixed_point,
                     uniqueness_probe)
from .sampling import SampleSpec, sample_pairs, sample_points, sample_triples
from .spaces import (AnalyticSpace, FiniteSpace, finite_from_analytic,
                     load_space, save_space)
