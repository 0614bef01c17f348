from typing import Iterable


class KnapsackError(Exception):
    """Base class for all custom exceptions in knapsackga."""

    pass


class DimensionError(KnapsackError, ValueError):
    """Raised when a chromosome or block length does not match its counterpart."""

    def __init__(self, expected: int, actual: int, what: str = "chromosome"):
        self.expected = expected
        self.actual = actual
        super().__init__(f"{what} has length {actual}, expected {expected}")


class CapacityError(KnapsackError):
    """Raised when exhaustive enumeration would exceed the oracle guard."""

    def __init__(self, n: int, limit: int):
        self.n = n
        self.limit = limit
        super().__init__(
            f"Oracle refuses {n} weights: 2^{n} subsets exceed "
            f"the guard of n <= {limit}"
        )


class MalformedCiphertextError(KnapsackError):
    """Raised when the trapdoor greedy pass leaves a nonzero residue."""

    def __init__(self, value: int, residue: int):
        super().__init__(
            f"Ciphertext {value} is not a subset sum of this key "
            f"(residue {residue} after greedy decryption)"
        )


class InfeasibleCiphertextError(KnapsackError, ValueError):
    """Raised when no subset of the public weights can reach a ciphertext value."""

    def __init__(self, value: int, capacity: int, index: int | None = None):
        where = f"block {index}: " if index is not None else ""
        super().__init__(
            f"{where}ciphertext value {value} is infeasible for a key "
            f"with capacity {capacity}"
        )


class EmptySummaryError(KnapsackError):
    """Raised when a trend summary is requested for no cells."""

    def __init__(self):
        super().__init__("Cannot summarize an empty list of sweep cells")


class MissingCellsError(KnapsackError):
    """Raised when a sweep grid is incomplete."""

    def __init__(self, missing: Iterable[tuple]):
        self.missing = sorted(missing)
        listing = ", ".join(
            f"(instance={i}, cx={c:g}, mut={m:g}, run={r})"
            for i, c, m, r in self.missing[:20]
        )
        more = "" if len(self.missing) <= 20 else f" and {len(self.missing) - 20} more"
        super().__init__(f"Sweep grid is incomplete, missing {listing}{more}")


class ConfigError(KnapsackError, ValueError):
    """Raised when a configuration, key or ciphertext file cannot be parsed."""

    def __init__(self, source: str, error: str):
        super().__init__(f"Invalid input in {source}: {error}")


class CommandNotFoundError(KnapsackError):
    """Raised when a subcommand is not found in the registry."""

    def __init__(self, name: str):
        super().__init__(f"Command {name} not found")
