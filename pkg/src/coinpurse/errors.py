"""Exception types raised across the package."""


class CoinpurseError(Exception):
    """Base class for every error raised by coinpurse."""


class UnrepresentableAmount(CoinpurseError, ValueError):
    def __init__(self, amount, denominations):
        self.amount = amount
        self.denominations = tuple(denominations)
        super().__init__(f"{amount} cents cannot be made from denominations {self.denominations}")


class AmbiguousChange(CoinpurseError, ValueError):
    """Raised by the ``minimal_unique`` cashier when an amount has several minimal partitions."""


class InsufficientFunds(CoinpurseError, ValueError):
    pass


class ConstraintViolation(CoinpurseError):
    """A transaction produced a wallet outside the strategy's admissible set."""


class ClosureViolation(CoinpurseError):
    """A transaction produced a state that is missing from the enumerated state space."""


class NoConvergence(CoinpurseError):
    def __init__(self, iterations, residual):
        self.iterations = iterations
        self.residual = residual
        super().__init__(f"power iteration did not converge after {iterations} iterations "
                         f"(last L1 residual {residual:.3e})")


class AlignmentError(CoinpurseError, ValueError):
    pass


class DimensionMismatch(CoinpurseError, ValueError):
    pass


class ConfigurationError(CoinpurseError, ValueError):
    pass
