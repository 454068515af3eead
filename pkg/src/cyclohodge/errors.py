"""Exception hierarchy.

Every error carries a stable ``code`` string; the CLI reports it verbatim in
its machine-readable error object.
"""

from __future__ import annotations


class CycloHodgeError(Exception):
    code = "ERROR"


class ResourceLimit(CycloHodgeError):
    code = "RESOURCE_LIMIT"


class ConductorOverflow(ResourceLimit):
    code = "CONDUCTOR_OVERFLOW"


class InvalidForm(CycloHodgeError, ValueError):
    code = "INVALID_FORM"


class BranchDataError(CycloHodgeError, ValueError):
    code = "INVALID_BRANCH_DATA"


class SumNotZeroModN(BranchDataError):
    code = "SUM_NOT_ZERO_MOD_N"


class FewerThanThreePoints(BranchDataError):
    code = "FEWER_THAN_THREE_POINTS"


class DuplicateLabel(BranchDataError):
    code = "DUPLICATE_LABEL"


class DisconnectedCover(BranchDataError):
    code = "DISCONNECTED_COVER"


class InvalidCharacter(BranchDataError):
    code = "INVALID_CHARACTER"


class TrivialLocalMonodromy(CycloHodgeError, ValueError):
    code = "TRIVIAL_LOCAL_MONODROMY"

    def __init__(self, label: str, j: int):
        super().__init__(f"character {j} has trivial local monodromy at {label!r}")
        self.label = label
        self.j = j


class NonIntegralGenus(CycloHodgeError, ValueError):
    code = "NON_INTEGRAL_GENUS"


class NotFourPoints(CycloHodgeError, ValueError):
    code = "NOT_FOUR_POINTS"


class ResonantInput(CycloHodgeError, ValueError):
    code = "RESONANT_INPUT"


class GcdNotOne(CycloHodgeError, ValueError):
    code = "GCD_NOT_ONE"


class InconsistentSpec(CycloHodgeError, ValueError):
    code = "INCONSISTENT_SPEC"


class SchemaError(CycloHodgeError, ValueError):
    code = "SCHEMA_VIOLATION"
