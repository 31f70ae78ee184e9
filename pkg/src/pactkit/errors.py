"""Exception hierarchy shared by every module of the package."""


class PactError(ValueError):
    """Base class for all errors raised by pactkit."""


class OutOfRange(PactError):
    pass


class NotAssociative(PactError):
    def __init__(self, a, b, c):
        super().__init__(f"(a*b)*c != a*(b*c) for a={a}, b={b}, c={c}")
        self.a, self.b, self.c = a, b, c


class BadIdentity(PactError):
    def __init__(self, a):
        super().__init__(f"declared identity does not act trivially on {a}")
        self.a = a


class ClosureTooLarge(PactError):
    pass


class SizeMismatch(PactError):
    pass


class NotMono(PactError):
    pass


class NotGlobal(PactError):
    pass


class NotPartial(PactError):
    pass


class NotCoequalizing(PactError):
    pass


class NotSurjective(PactError):
    pass


class NotContinuous(PactError):
    def __init__(self, m, what="structure map"):
        super().__init__(f"{what} for monoid element {m} is not continuous")
        self.m = m


class InvalidTopology(PactError):
    pass


class EnumerationTooLarge(PactError):
    pass


class GiveUp(PactError):
    pass


class ParseError(PactError):
    def __init__(self, message, path=None, line=None):
        where = ""
        if path is not None:
            where = f"{path}:{line}: " if line is not None else f"{path}: "
        super().__init__(where + message)
        self.path, self.line = path, line
