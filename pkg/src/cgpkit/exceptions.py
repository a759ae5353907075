"""Exception hierarchy shared by every cgpkit module."""


class CgpError(Exception):
    """Base class for all cgpkit errors."""


class ValidationError(CgpError, ValueError):
    """An input failed a structural check (shape, normalization, unitarity)."""


class NotHermitian(ValidationError):
    pass


class NotUnitary(ValidationError):
    pass


class NotTracePreserving(ValidationError):
    pass


class NotBiStochastic(ValidationError):
    pass


class DimensionMismatch(ValidationError):
    pass


class BadParameter(ValidationError):
    pass


class SupportViolation(CgpError, ValueError):
    """Relative entropy is infinite: the first argument leaves the support of the second."""


class NotUnital(CgpError):
    """The channel does not satisfy sum_mu M_mu M_mu^dagger = I."""


class NoConvergence(CgpError, ArithmeticError):
    pass


class DerivativeUnavailable(CgpError, ArithmeticError):
    pass


class ParseError(CgpError, ValueError):
    """A gate or channel file could not be decoded."""
