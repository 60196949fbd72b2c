"""Exception hierarchy."""


class OmegaReaError(Exception):
    """Base class for every error raised by this package."""


class IncompatibleError(OmegaReaError, ValueError):
    """Two partial functions disagree at some position."""


class AxiomError(OmegaReaError, ValueError):
    """An axiom violates its structural constraints."""


class GuessError(OmegaReaError, ValueError):
    """A guess (C, delta) pair is malformed or inconsistent."""


class OracleError(OmegaReaError):
    """The brute-force oracle found no solution, or more than one."""


class FixtureError(OmegaReaError, ValueError):
    """A fixture file is malformed or fails validation."""


class ConstructionError(OmegaReaError):
    """A strategy or engine error aborted a construction run."""

    def __init__(self, stage: int, message: str) -> None:
        super().__init__(f"stage {stage}: {message}")
        self.stage = stage


class TraceError(OmegaReaError, ValueError):
    """A trace file cannot be parsed."""
