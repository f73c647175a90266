# errors.py
"""
    Exceptions raised by foldsaddle.
    Every exception carries the process exit code the command layer returns for it:
        0 ok, 1 usage or invalid input, 2 structural mismatch, 3 verification failure
"""


class FoldSaddleError(Exception):
    exit_code = 1


class UsageError(FoldSaddleError):
    pass


class ParameterError(FoldSaddleError, ValueError):
    pass


class DomainError(FoldSaddleError):
    pass


class UnsupportedOrder(FoldSaddleError):
    pass


class IllDefinedSliding(FoldSaddleError):
    pass


class NotARoot(FoldSaddleError):
    pass


class NoReturn(FoldSaddleError):
    pass


class NoBracket(FoldSaddleError):
    pass


class NoSaddleNode(FoldSaddleError):
    pass


class NumericalFailure(FoldSaddleError):
    pass


class EscapingStart(FoldSaddleError):
    pass


class StructuralMismatch(FoldSaddleError):
    exit_code = 2

    def __init__(self, msg: str, *args, label=None, field: str = None, **kwargs):
        super().__init__(msg)
        self.label = label
        self.field = field


class CodimensionTwo(FoldSaddleError):
    exit_code = 2

    def __init__(self, msg: str, *args, joint_label: str = None, **kwargs):
        super().__init__(msg)
        self.joint_label = joint_label


class VerificationFailure(FoldSaddleError):
    exit_code = 3

    def __init__(self, msg: str, *args, failed: list = None, **kwargs):
        super().__init__(msg)
        self.failed = failed or []
