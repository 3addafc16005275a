"""Exception hierarchy shared by every module."""


class LatticeKitError(Exception):
    """Base class for all errors raised by latticekit."""


class InputError(LatticeKitError):
    """Malformed or inconsistent user input (CLI exit code 1)."""


class NotALattice(InputError):
    def __init__(self, x, y, what="join"):
        super().__init__(f"elements {x} and {y} have no unique {what}")
        self.pair = (x, y)
        self.what = what


class NotLinearExtension(InputError):
    pass


class NoExtremum(InputError):
    pass


class NotACover(InputError):
    pass


class NotConvex(InputError):
    def __init__(self, msg, step=None):
        if step is not None:
            msg = f"step {step}: {msg}"
        super().__init__(msg)
        self.step = step


class EmptyConvexSet(NotConvex):
    pass


class InvalidParameter(InputError):
    pass


class NotGentle(InputError):
    pass


class GraphNotOrderable(InputError):
    pass


class SuiteUnknown(InputError):
    pass


class UnsupportedFormat(InputError):
    pass


class NotExtremal(LatticeKitError):
    pass


class NotSemidistributive(LatticeKitError):
    pass


class TrivialLattice(LatticeKitError):
    pass


class NotTriangleFree(LatticeKitError):
    pass


class CapExceeded(LatticeKitError):
    def __init__(self, what, cap):
        super().__init__(f"{what} exceeds cap {cap}")
        self.cap = cap


class Timeout(LatticeKitError):
    def __init__(self, budget):
        super().__init__(f"solver budget of {budget:.3g}s exhausted")
        self.budget = budget


class AssertionFailure(LatticeKitError):
    """A mathematical property failed to hold (CLI exit code 2)."""


class TheoremViolation(AssertionFailure):
    pass


class NumberingFailure(AssertionFailure):
    pass


class PipelineAssertionFailed(AssertionFailure):
    def __init__(self, stage, detail=""):
        super().__init__(f"stage {stage!r} failed{': ' + detail if detail else ''}")
        self.stage = stage
