"""Exception hierarchy shared by every module."""


class LatticeError(ValueError):
    """Base class for all errors raised by thicklat."""


class NotALattice(LatticeError):
    def __init__(self, a, b, reason="no unique bound"):
        self.a, self.b = a, b
        super().__init__(f"not a lattice: pair ({a}, {b}) has {reason}")


class CyclicCovers(LatticeError):
    pass


class DuplicateLabel(LatticeError):
    def __init__(self, label):
        self.label = label
        super().__init__(f"duplicate element label {label!r}")


class UnknownLabel(LatticeError):
    def __init__(self, label):
        self.label = label
        super().__init__(f"unknown element label {label!r}")


class SizeGuard(LatticeError):
    def __init__(self, what, size, limit):
        self.size, self.limit = size, limit
        super().__init__(f"{what}: size {size} exceeds limit {limit}")


class NotMonotone(LatticeError):
    def __init__(self, a, b):
        self.a, self.b = a, b
        super().__init__(f"map is not monotone: {a} <= {b} but images are not ordered")


class FlagFailed(LatticeError):
    def __init__(self, flag, witness):
        self.flag, self.witness = flag, witness
        super().__init__(f"{flag} fails at {witness}")


class NotClosed(LatticeError):
    def __init__(self, a, b, op):
        self.a, self.b, self.op = a, b, op
        super().__init__(f"subset not closed under {op}: ({a}, {b})")


class MissingBounds(LatticeError):
    pass


class NotAutomorphism(LatticeError):
    def __init__(self, witness, reason):
        self.witness = witness
        super().__init__(f"not a lattice automorphism ({reason}): {witness}")


class NotDistributive(LatticeError):
    pass


class NotApplicable(LatticeError):
    pass


class InvariantViolation(LatticeError):
    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(f"{message}: {witness}" if witness is not None else message)


class NotJoinPreserving(LatticeError):
    pass


class NotSober(LatticeError):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"space is not sober; offending closed set {witness}")


class RestrictionNotPoint(LatticeError):
    pass


class NotASpace(LatticeError):
    pass
