"""Exception hierarchy shared by every module."""


class ProbError(ValueError):
    """Base class for all errors raised by chanprob."""


class SumNotOne(ProbError):
    pass


class OutOfRange(ProbError):
    pass


class UnknownElement(ProbError, KeyError):
    def __str__(self):
        return ValueError.__str__(self)


class DomainMismatch(ProbError):
    pass


class ZeroValidity(ProbError):
    """Evidence has validity zero in the current state, so it cannot be used."""


class IndexOutOfRange(ProbError, IndexError):
    pass


class EmptyKeepSet(ProbError):
    pass


class IndexOverlap(ProbError):
    pass


class EmptyGroup(ProbError):
    pass


class TypeMismatch(ProbError):
    """Ill-typed channel expression; ``path`` locates the offending node."""

    def __init__(self, path, message):
        super().__init__(f"{path}: {message}")
        self.path = path


class MethodMismatch(ProbError):
    """The two inference engines disagreed. Reaching this is a bug."""


class InvalidNetwork(ProbError):
    def __init__(self, errors):
        self.errors = list(errors)
        super().__init__("; ".join(str(e) for e in self.errors))


class UnknownNode(ProbError, KeyError):
    def __str__(self):
        return ValueError.__str__(self)
