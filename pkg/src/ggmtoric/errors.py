"""Exception hierarchy shared by all modules."""


class GGMError(Exception):
    """Base class for every error raised by this package."""


class GraphFormatError(GGMError, ValueError):
    pass


class NotConnected(GGMError):
    pass


class NotUnique(GGMError):
    pass


class NotCentral(GGMError):
    pass


class MultipleCenters(GGMError):
    pass


class SizeLimit(GGMError):
    """A symbolic computation would exceed its configured cost guard."""


class ZeroPolynomial(GGMError, ValueError):
    pass


class MissingVariable(GGMError, KeyError):
    pass


class DegenerateSampling(GGMError):
    """Random evaluation points kept landing on singular matrices."""


class ColumnMismatch(GGMError, ValueError):
    pass


class DimensionMismatch(GGMError, ValueError):
    pass


class NotInKernel(GGMError, ValueError):
    pass


class DegreeTooLow(GGMError, ValueError):
    pass
