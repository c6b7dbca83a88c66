"""Exception hierarchy shared by every module."""


class SchwarzRegionsError(Exception):
    pass


# jets
class InvalidOrder(SchwarzRegionsError, ValueError):
    pass


class CenterMismatch(SchwarzRegionsError, ValueError):
    pass


class DivisionBySingularJet(SchwarzRegionsError, ZeroDivisionError):
    pass


class OrderExceeded(SchwarzRegionsError, IndexError):
    pass


# instances and disks
class InvalidInstance(SchwarzRegionsError, ValueError):
    pass


class RigidCase(SchwarzRegionsError):
    """A lower-order parameter is unimodular, so the disk collapses to a point."""


class Infeasible(SchwarzRegionsError):
    """No analytic self-map of the disk attains the prescribed data."""


class MissingData(SchwarzRegionsError, ValueError):
    pass


class InvalidDerivative(SchwarzRegionsError, ValueError):
    pass


class NotASelfMapValue(SchwarzRegionsError, ValueError):
    pass


# region
class DegenerateFrame(SchwarzRegionsError):
    pass


class SolverBracketFailure(SchwarzRegionsError, RuntimeError):
    pass


class ConvexityViolation(SchwarzRegionsError, RuntimeError):
    pass
