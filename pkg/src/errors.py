"""Exception hierarchy shared by the library and the CLI.

Every error carries the process exit code the CLI maps it to.
"""


class BsfError(ValueError):
    """Base class for all toolkit errors."""

    exit_code = 1


class ParseError(BsfError):
    """Malformed circuit, state or character text."""

    exit_code = 2

    def __init__(self, message, line=1, column=1):
        self.line = line
        self.column = column
        super().__init__(f"{message} (line {line}, column {column})")


class SizeLimitError(BsfError):
    """A basis, permanent or oracle run exceeds its configured guard."""

    exit_code = 3


class FormalismError(BsfError):
    """The stabilizer formalism does not apply to the given inputs."""

    exit_code = 4


class NotMonomialError(FormalismError):
    pass


class NotDiagonalGroupError(FormalismError):
    pass


class NonAbelianGroupError(FormalismError):
    pass


class ConsistencyError(BsfError):
    """Two independent computations of the same quantity disagree."""

    exit_code = 5


class NonSquareMatrixError(BsfError):
    pass


class NotUnitaryError(BsfError):
    pass


class PhotonNumberMismatchError(BsfError):
    pass


class IndexOutOfRangeError(BsfError):
    pass


class DuplicateModeError(BsfError):
    pass


class GroupTooLargeError(BsfError):
    pass


class InexactPhaseError(BsfError):
    pass


class InconsistentCharacterError(BsfError):
    pass


class InvalidPhotonCountError(BsfError):
    pass


class NotRankOneError(BsfError):
    pass
