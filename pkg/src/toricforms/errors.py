"""Exception hierarchy.  Each class carries the diagnostic code shown by the CLI."""


class ToricError(Exception):
    code = "ERROR"

    def __str__(self):
        msg = super().__str__()
        return f"{self.code}: {msg}" if msg else self.code


class DimError(ToricError):
    code = "DIM_ERROR"


class NotInSupport(ToricError):
    code = "NOT_IN_SUPPORT"


class Unbounded(ToricError):
    code = "UNBOUNDED"


class DimMismatch(ToricError):
    code = "DIM_MISMATCH"


class NotSemiample(ToricError):
    code = "NOT_SEMIAMPLE"


class OutOfRange(ToricError):
    code = "OUT_OF_RANGE"


class DegreeMismatch(ToricError):
    code = "DEGREE_MISMATCH"


class ParseError(ToricError):
    code = "PARSE_ERROR"


class FanValidationError(ToricError):
    """Raised when a fan fails validation; ``report`` lists every violation."""

    def __init__(self, report):
        self.report = report
        codes = sorted({e.code for e in report.errors})
        self.code = codes[0] if len(codes) == 1 else ",".join(codes)
        super().__init__("; ".join(e.message for e in report.errors))


class RouteMismatch(ToricError):
    code = "ROUTE_MISMATCH"

    def __init__(self, k, l, values):
        self.k, self.l, self.values = k, l, dict(values)
        super().__init__(f"(k, l) = ({k}, {l}): {self.values}")
