"""Exception hierarchy.

Every failure mode named by the toolkit has its own class so callers can
catch precisely what they expect.  ``code`` carries the upper-case name used
in reports and CLI diagnostics.
"""


class MFStructError(Exception):
    code = "ERROR"


class EvaluatorDomainError(MFStructError):
    code = "EVALUATOR_DOMAIN"


class BoundViolationError(MFStructError):
    code = "BOUND_VIOLATION"


class RangeMismatchError(MFStructError):
    code = "RANGE_MISMATCH"


class CheckpointRangeError(MFStructError):
    code = "CHECKPOINT_RANGE"


class RangeError(MFStructError):
    code = "RANGE"


class DerivativeOrderError(MFStructError):
    code = "DERIVATIVE_ORDER"


class TruncationExceedsTableError(MFStructError):
    code = "TRUNCATION_EXCEEDS_TABLE"


class InfeasibleError(MFStructError):
    code = "INFEASIBLE"


class DenominatorSmallError(MFStructError):
    code = "DENOMINATOR_SMALL"


class ClassViolationError(MFStructError):
    """The function is not in the class the analysis assumes."""

    code = "CLASS_VIOLATION"


class MembershipError(ClassViolationError):
    code = "MEMBERSHIP"


class MultiplicityOverflowError(ClassViolationError):
    code = "MULTIPLICITY_OVERFLOW"


class NonzeroNotFoundError(ClassViolationError):
    code = "NONZERO_NOT_FOUND"


class EnumerationCapError(MFStructError):
    code = "ENUMERATION_CAP"


class AmbiguousRelationError(MFStructError):
    code = "AMBIGUOUS_RELATION"


class QuadratureBudgetError(MFStructError):
    code = "QUADRATURE_BUDGET"


class ConfigError(MFStructError):
    code = "PARSE"


class UnknownKeyError(ConfigError):
    code = "UNKNOWN_KEY"


class CacheFormatError(MFStructError):
    code = "CACHE_FORMAT"


class CatalogError(MFStructError):
    code = "CATALOG"
