"""Exception hierarchy.

Every error raised by the package derives from :class:`EconForcesError` and
carries the process exit code the command line maps it to: data problems
exit 1, numerical problems exit 2, configuration problems exit 3.
"""

from __future__ import annotations


class EconForcesError(Exception):
    exit_code = 1


class DataError(EconForcesError):
    """Input data is missing, malformed or cannot support a computation."""

    exit_code = 1


class NumericalError(EconForcesError):
    """A computation is numerically undefined (rank loss, zero variance...)."""

    exit_code = 2


class ConfigError(EconForcesError):
    exit_code = 3


# data errors


class NonPositiveValue(DataError):
    def __init__(self, series_id: str, month, value: float):
        self.series_id = series_id
        self.month = month
        self.value = value
        super().__init__(
            f"NonPositiveValue: series {series_id!r} has value {value!r} at {month}; "
            "logs and returns need strictly positive values"
        )


class TooShort(DataError):
    pass


class EmptyIntersection(DataError):
    pass


class MalformedRow(DataError):
    def __init__(self, line: int, detail: str, source: str = ""):
        self.line = line
        where = f"{source}:" if source else "line "
        super().__init__(f"MalformedRow: {where}{line}: {detail}")


class DuplicateMonth(DataError):
    pass


class EmptyFile(DataError):
    pass


class MissingColumn(DataError):
    def __init__(self, name: str, source: str = ""):
        self.name = name
        suffix = f" in {source}" if source else ""
        super().__init__(f"MissingColumn: no column named {name!r}{suffix}")


class EmptyAfterClip(DataError):
    pass


class MissingSource(DataError):
    """A data file named in the manifest does not exist or cannot be read."""


class UnconstructibleFactors(DataError):
    def __init__(self, factors, roles):
        self.factors = tuple(factors)
        self.roles = tuple(roles)
        super().__init__(
            "UnconstructibleFactors: cannot build "
            + ", ".join(self.factors)
            + " without input role(s) "
            + ", ".join(self.roles)
        )


# numerical errors


class ZeroVariance(NumericalError):
    pass


class RankDeficient(NumericalError):
    def __init__(self, column: str, detail: str = ""):
        self.column = column
        msg = f"RankDeficient: column {column!r} is linearly dependent on the others"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class TooFewRows(NumericalError):
    pass


class DegenerateResponse(NumericalError):
    pass


class AllZero(NumericalError):
    pass


class DomainError(NumericalError, ValueError):
    pass
