"""Exception hierarchy.

Every error carries a stable ``code`` string so reports and the CLI can
name the failure without matching on class names.
"""


class LPError(Exception):
    code = "LP_ERROR"

    def __init__(self, message: str = "", **details):
        super().__init__(message or self.code)
        self.details = details


class DimensionMismatch(LPError):
    code = "DIMENSION_MISMATCH"


class RankDeficient(LPError):
    code = "RANK_DEFICIENT"


class SingularBasis(LPError):
    code = "SINGULAR_BASIS"


class ZeroColumn(LPError):
    code = "ZERO_COLUMN"


class OptimalDictionary(LPError):
    code = "OPTIMAL_DICTIONARY"


class InfeasibleStart(LPError):
    code = "INFEASIBLE_START"


class Infeasible(LPError):
    code = "INFEASIBLE"


class UnboundedLP(LPError):
    code = "UNBOUNDED_LP"


class NoSecondValue(LPError):
    code = "NO_SECOND_VALUE"


class TooLarge(LPError):
    code = "TOO_LARGE"


class DualCertificateError(LPError):
    code = "DUAL_INFEASIBLE_CERT"


class PreconditionError(LPError):
    code = "PRECONDITION"


class NoNegativeCosts(LPError):
    code = "NO_NEGATIVE_COSTS"


class ParseError(LPError):
    code = "PARSE_ERROR"


class GenerationExhausted(LPError):
    code = "GENERATION_EXHAUSTED"


class ConfigError(LPError):
    code = "CONFIG_ERROR"
