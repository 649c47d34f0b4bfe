"""Exception hierarchy shared by all sfkit modules."""


class SfkitError(Exception):
    """Base class for every error raised by sfkit."""


# geometry
class SingularMatrix(SfkitError):
    pass


class DegenerateTriple(SfkitError):
    pass


class NotTangent(SfkitError):
    def __init__(self, gap: float, msg: str = ""):
        self.gap = gap
        super().__init__(msg or f"circles are not tangent (signed gap {gap:.3e})")


# schwarzians
class InvalidFace(SfkitError):
    pass


class NotParabolic(SfkitError):
    pass


class NonRealSchwarzian(SfkitError):
    pass


class NonRealIncrement(SfkitError):
    pass


class SchwarzianOutOfRange(SfkitError):
    pass


class PlacementDegenerate(SfkitError):
    pass


# flowers
class NonPositiveU(SfkitError):
    pass


class InvalidRadii(SfkitError):
    pass


class LayoutFailA(SfkitError):
    """The second to last petal came out as a half plane."""


class LayoutFailB(SfkitError):
    """The forced last petal lies left of the origin, so s0 >= 1."""


class ConstraintViolated(SfkitError):
    def __init__(self, j: int, value: float):
        self.j = j
        self.value = value
        super().__init__(f"constraint C_{j} = {value:.6g} is not positive")


class PoleOnCircle(SfkitError):
    pass


class NoSolution(SfkitError):
    pass


class AlphaOutOfRange(SfkitError):
    pass


# complexes
class ComplexError(SfkitError):
    pass


class NonManifold(ComplexError):
    pass


class OrientationMismatch(ComplexError):
    pass


class NotSimplyConnected(ComplexError):
    pass


class ChartFailure(SfkitError):
    pass
