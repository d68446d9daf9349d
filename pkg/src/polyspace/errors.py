"""Exception hierarchy shared by all polyspace modules."""


class PolyspaceError(Exception):
    """Base class for every error raised by this package."""


class InvalidWeights(PolyspaceError, ValueError):
    """The weight vector cannot define a nonempty polygon space."""


class NonPositiveEntry(InvalidWeights):
    def __init__(self, index):
        self.index = index
        super().__init__(f"weight m_{index} is not positive")


class TooFewSides(InvalidWeights):
    def __init__(self, n):
        self.n = n
        super().__init__(f"need at least 3 weights, got {n}")


class TooManySides(InvalidWeights):
    def __init__(self, n, cap):
        self.n = n
        self.cap = cap
        super().__init__(f"n = {n} exceeds the supported maximum {cap}")


class PolygonInequalityViolated(InvalidWeights):
    def __init__(self, index):
        self.index = index
        super().__init__(
            f"m_{index} is not smaller than the sum of the other weights; "
            "the polygon space is empty"
        )


class ParseError(PolyspaceError, ValueError):
    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class NotSmooth(PolyspaceError):
    """Raised when some subset has mass exactly half the total."""

    def __init__(self, wall_subset):
        # wall_subset: sorted tuple of 1-based indices
        self.wall_subset = tuple(wall_subset)
        shown = " ".join(str(i) for i in self.wall_subset)
        super().__init__(f"weights lie on a wall: subset {{{shown}}} has half the total mass")


class NonExactDivision(PolyspaceError, ArithmeticError):
    pass


class DegreeError(PolyspaceError, ValueError):
    """A degree argument is out of range or does not match dim M = n - 3."""


class DegreeOutOfRange(DegreeError):
    pass


class WrongDegree(DegreeError):
    pass


class NotHomogeneousTop(DegreeError):
    pass


class TooFewParts(PolyspaceError, ValueError):
    pass


class WallHit(PolyspaceError, ArithmeticError):
    pass


class EqualIndices(PolyspaceError, ValueError):
    pass


class BadCenter(PolyspaceError, ValueError):
    pass
