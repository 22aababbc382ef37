"""Exception hierarchy shared by all modules."""


class AlgebraError(ValueError):
    """Base class for every structural failure raised by the package."""


class BadIndex(AlgebraError):
    pass


class NotLatin(AlgebraError):
    def __init__(self, side, index, value):
        self.side = side
        self.index = index
        self.value = value
        super().__init__(f"{side} {index} repeats element {value}")


class NoIdentity(AlgebraError):
    pass


class NotAssociative(AlgebraError):
    pass


class OrderCap(AlgebraError):
    """An operation would exceed the configured size bound."""


class NotNormal(AlgebraError):
    pass


class UnsupportedParams(AlgebraError):
    pass


class PairMissing(AlgebraError):
    def __init__(self, p, q):
        self.pair = (p, q)
        super().__init__(f"pair {{{p}, {q}}} lies in no block")


class PairDuplicated(AlgebraError):
    def __init__(self, p, q):
        self.pair = (p, q)
        super().__init__(f"pair {{{p}, {q}}} lies in more than one block")


class BadBlock(AlgebraError):
    pass


class BadResidue(AlgebraError):
    pass


class NotSteiner(AlgebraError):
    pass


class NotAbelian(AlgebraError):
    pass


class NotSteinerLike(AlgebraError):
    """A criterion needs the weight function h but only a raw factor table was given."""


class HypothesisFailed(AlgebraError):
    def __init__(self, which):
        self.which = which
        super().__init__(f"hypothesis failed: {which}")


class BlockViolation(AlgebraError):
    def __init__(self, block):
        self.block = tuple(block)
        super().__init__(f"weight equation fails on block {self.block}")


class DegenerateAbelian(AlgebraError):
    pass


class NotBijective(AlgebraError):
    pass


class ClosureCap(AlgebraError):
    pass
