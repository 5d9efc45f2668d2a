"""Exception hierarchy.

Every error carries a short machine-readable ``code`` so the CLI can emit it
as JSON without string matching.
"""

from __future__ import annotations


class WallcrossError(Exception):
    code = "error"


class NegativeDiscriminant(WallcrossError, ValueError):
    code = "negative_discriminant"


class DegenerateLeadingCoefficient(WallcrossError, ValueError):
    code = "degenerate_leading_coefficient"


class OutOfDomain(WallcrossError, ValueError):
    code = "out_of_domain"


class PoleAtPoint(WallcrossError, ZeroDivisionError):
    code = "pole_at_point"


class MixedRadicalError(WallcrossError, ArithmeticError):
    code = "mixed_radical"


class UnsupportedAlgebraicDegree(WallcrossError, ArithmeticError):
    code = "unsupported_algebraic_degree"


class NonCoprime(WallcrossError, ValueError):
    code = "non_coprime"


class NonPrimitiveWeights(WallcrossError, ValueError):
    code = "non_primitive_weights"


class InvalidFan(WallcrossError, ValueError):
    code = "invalid_fan"


class UnboundedPolygon(WallcrossError, ValueError):
    code = "unbounded_polygon"


class DimensionMismatch(WallcrossError, ValueError):
    code = "dimension_mismatch"


class IncompleteConeDeclared(WallcrossError, ValueError):
    code = "incomplete_cone_declared"


class NonConvexAmpleSet(WallcrossError, ValueError):
    code = "non_convex_ample_set"


class EmptySupport(WallcrossError, ValueError):
    code = "empty_support"


class SubstitutionDegreeOverflow(WallcrossError, OverflowError):
    code = "substitution_degree_overflow"


class UnsupportedSurfaceRank(WallcrossError, ValueError):
    code = "unsupported_surface_rank"


class EmptyCandidateSet(WallcrossError, ValueError):
    code = "empty_candidate_set"


class DegenerateDenominator(WallcrossError, ZeroDivisionError):
    code = "degenerate_denominator"


class CoefficientOutOfFanoWindow(WallcrossError, ValueError):
    code = "coefficient_out_of_fano_window"


class UnsupportedDimension(WallcrossError, ValueError):
    code = "unsupported_dimension"


class CoefficientIncompatible(WallcrossError, ValueError):
    code = "coefficient_incompatible"


class DegreeTooSmall(WallcrossError, ValueError):
    code = "degree_too_small"


class ScenarioError(WallcrossError, ValueError):
    code = "invalid_scenario"
