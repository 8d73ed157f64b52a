"""Exception hierarchy.

Every error raised by the library derives from :class:`LUError`. The CLI maps
:class:`InputError` subclasses to exit code 2 and :class:`NumericalError`
subclasses to exit code 3.
"""


class LUError(Exception):
    pass


class InputError(LUError, ValueError):
    """Invalid user-supplied data (shapes, norms, parameters, files)."""


class NumericalError(LUError, ArithmeticError):
    """A numerical kernel failed to reach its tolerance."""


class NonConvergence(NumericalError):
    pass


class NotHermitian(InputError):
    pass


class NotOrthonormal(InputError):
    pass


class NotUnitary(InputError):
    pass


class BadShape(InputError):
    pass


class NotNormalized(InputError):
    pass


class ZeroVector(InputError):
    pass


class DimensionMismatch(InputError):
    pass


class BadParams(InputError):
    pass


class NotSquareDims(InputError):
    pass


class DegenerateState(InputError):
    pass


class NoTwoSidedWitness(InputError):
    """The Schmidt spectra differ, so no V (x) W relation exists."""


class ParseError(InputError):
    pass


class SchemaError(InputError):
    pass


class ValidationError(InputError):
    pass
