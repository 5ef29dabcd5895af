"""Exception hierarchy shared by every module of the package."""


class MGraphError(Exception):
    """Base class for all package errors."""


class InvalidSpecError(MGraphError, ValueError):
    """A group description is malformed (bad literal, modulus < 2, ...)."""


class InvalidArgumentError(MGraphError, ValueError):
    pass


class ResourceLimitError(MGraphError):
    """The requested object exceeds the configured size limit."""


class OutOfDomainError(MGraphError, ValueError):
    """A closed form was asked about an input outside its proven domain."""


class HypothesisNotMetError(OutOfDomainError):
    pass


class IsomorphismConstructionError(MGraphError):
    """An explicit vertex map failed to be a bijection.

    ``collisions`` lists ``(image, sources)`` pairs where several sources
    land on the same image.
    """

    def __init__(self, message, collisions=()):
        super().__init__(message)
        self.collisions = list(collisions)
