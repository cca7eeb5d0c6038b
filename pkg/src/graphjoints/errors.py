"""Exception hierarchy shared by all modules."""


class GraphJointsError(Exception):
    """Base class for every error raised by this package."""


class InvalidVertex(GraphJointsError, ValueError):
    pass


class SelfLoop(GraphJointsError, ValueError):
    pass


class InvalidParam(GraphJointsError, ValueError):
    pass


class NotAnEdge(GraphJointsError, ValueError):
    pass


class NotAClique(GraphJointsError, ValueError):
    pass


class HypothesisViolated(GraphJointsError, ValueError):
    """The input does not satisfy the hypothesis of the theorem being exercised."""


class IsTuranGraph(GraphJointsError, ValueError):
    """The input is the Turán graph itself, the one excluded extremal case."""


class IndivisibleOrder(GraphJointsError, ValueError):
    pass


class UnknownBound(GraphJointsError, KeyError):
    pass


class MissingInput(GraphJointsError, KeyError):
    pass


class ResourceLimit(GraphJointsError, RuntimeError):
    """An exact search ran out of its node budget; the verdict is unknown."""


class FormatError(GraphJointsError, ValueError):
    pass
