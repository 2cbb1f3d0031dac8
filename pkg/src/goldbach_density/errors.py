"""Exception types shared across the package."""


class PreconditionError(ValueError):
    """An input violates the stated hypotheses of an operation."""


class ModulusError(PreconditionError):
    """A modulus is not of the required shape (odd, square-free, prime...)."""


class CertificateError(RuntimeError):
    """A step that the underlying mathematics guarantees has failed.

    Raising this means either a bug or a genuine counterexample; the message
    always carries the offending data.
    """
