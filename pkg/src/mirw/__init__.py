__version__ = "1.0.0"


class MirwError(Exception):
    """Custom mirw error for more graceful error handling"""

    pass


class EdgeListParseError(MirwError):
    """Malformed line in an edge list file"""

    def __init__(self, msg, line_number=None):
        super().__init__(msg)
        self.line_number = line_number


class InvalidNodeError(MirwError, IndexError):
    """Node index outside of the graph"""

    pass


class InvalidArgumentError(MirwError, ValueError):
    """Argument violates a documented precondition"""

    pass


class UndefinedGraphError(MirwError):
    """Quantity is undefined on this graph (no nodes or no edges)"""

    pass


class ConvergenceError(MirwError):
    """Iterative solver did not reach the requested tolerance"""

    def __init__(self, msg, residual=None, iterations=None):
        super().__init__(msg)
        self.residual = residual
        self.iterations = iterations


class UndefinedMetricError(MirwError):
    """Evaluation metric is undefined for the provided candidate universe"""

    pass


class DatasetNotFoundError(MirwError, FileNotFoundError):
    """Dataset is neither an existing file nor a resolvable registry name"""

    pass
