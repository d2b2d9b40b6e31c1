"""Exception taxonomy shared by every module and surfaced by the CLI."""

from __future__ import annotations


class ChowlabError(Exception):
    """Base class; ``kind`` is the machine-readable error tag."""

    kind = "error"


class ParseError(ChowlabError):
    kind = "parse"


class SpecMismatchError(ChowlabError):
    kind = "spec-mismatch"


class MissingImageError(ChowlabError):
    kind = "missing-image"


class HomogeneityError(ChowlabError):
    kind = "homogeneity"


class InvalidFieldError(ChowlabError):
    kind = "invalid-field"


class InvalidFamilyError(ChowlabError):
    kind = "invalid-family"


class ResourceBoundError(ChowlabError):
    kind = "resource-bound"


class HypothesisError(ChowlabError):
    kind = "hypothesis"


class ScopeError(ChowlabError):
    kind = "scope"


class NotAUnitModQError(ChowlabError):
    kind = "not-a-unit-mod-Q"


class XiNotFoundError(ChowlabError):
    """Raised when P meets T_m trivially; must never happen for in-scope rings."""

    kind = "xi-not-found"


class ImproperIdealError(ChowlabError):
    kind = "improper-ideal"


class DimensionMismatchError(ChowlabError):
    kind = "dimension-mismatch"
