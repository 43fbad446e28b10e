"""Exception types shared across the package."""


class DomainError(ValueError):
    """A mathematical precondition was violated (bad prime, wrong divisor, ...)."""


class GroupMismatchError(ValueError):
    """Two elements from different groups were combined."""


class CertificationError(RuntimeError):
    """An identity the pipeline asserts about its own intermediate results failed.

    This never fires on valid inputs; if it does, the certificate must not be
    trusted and the run aborts rather than emitting a silent pass.
    """
