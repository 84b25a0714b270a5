"""Exception types raised by the toolkit."""


class DetpairsError(Exception):
    pass


class ArgumentError(DetpairsError, ValueError):
    pass


class CapError(ArgumentError):
    """Ground set too large for a full rank table."""


class InvalidBasesError(ArgumentError):
    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness


class PreconditionError(DetpairsError):
    pass


class DegenerateMatroidError(DetpairsError):
    """An operation would produce a matroid on the empty set."""


class ParseError(DetpairsError, ValueError):
    def __init__(self, msg, position=None):
        if position is not None:
            msg = f"{msg} (at {position})"
        super().__init__(msg)
        self.position = position


class ParameterError(ArgumentError):
    pass


class UnsupportedParametersError(DetpairsError):
    pass


class ConstructionError(DetpairsError):
    def __init__(self, msg, certificate=None):
        super().__init__(msg)
        self.certificate = certificate


class SamplingError(DetpairsError):
    pass


class SearchCapExceeded(DetpairsError):
    def __init__(self, msg, nodes=None):
        super().__init__(msg)
        self.nodes = nodes


class LemmaViolation(DetpairsError):
    """A structural fact that must hold for 3-connected matroids failed."""
