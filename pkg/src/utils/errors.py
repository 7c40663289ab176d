"""Exception types shared by the solver, the frontends and the CLI."""


class CoverError(Exception):
    """Base class for every error raised by this package"""


class InstanceError(CoverError, ValueError):
    """Malformed input: bad ids, bad coordinates, schema problems, cyclic orders"""


class ModelViolationError(CoverError, ValueError):
    """A graph is not a subgraph of a layer, or a model does not fit the solver"""


class OracleLimitError(CoverError):
    """An exact computation was refused because the instance is above the cap"""

    def __init__(self, what: str, n: int, cap: int):
        super().__init__(f"{what}: n={n} exceeds oracle cap {cap}")
        self.what = what
        self.n = n
        self.cap = cap


class ContractViolationError(CoverError, RuntimeError):
    """A base solver returned something that breaks its contract"""
