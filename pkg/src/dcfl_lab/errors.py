"""Exception types shared across the package."""


class DcflLabError(Exception):
    pass


class BudgetExhausted(DcflLabError):
    """The step budget ran out before the machine halted."""

    def __init__(self, budget, steps=None):
        self.budget = budget
        self.steps = steps
        super().__init__(f"step budget {budget} exhausted")


class InvalidMachine(DcflLabError):
    def __init__(self, violations):
        self.violations = list(violations)
        lines = "; ".join(str(v) for v in self.violations[:5])
        more = "" if len(self.violations) <= 5 else f" (+{len(self.violations) - 5} more)"
        super().__init__(f"invalid machine: {lines}{more}")


class StuckMachine(DcflLabError):
    """The machine reached a configuration with no applicable move."""


class NotRealTime(DcflLabError):
    pass


class NoTurningPoint(DcflLabError):
    pass


class CutMisaligned(DcflLabError):
    pass


class ArityUnknown(DcflLabError):
    pass


class UnsupportedParams(DcflLabError):
    pass


class HeadOutOfTape(DcflLabError):
    pass


class PreconditionError(DcflLabError, ValueError):
    pass
