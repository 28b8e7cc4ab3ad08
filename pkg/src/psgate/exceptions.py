"""Exception types shared across the package."""


class GateSynthesisError(Exception):
    """Base class for every error raised by this package."""


class NonUnitaryError(GateSynthesisError):
    """A matrix expected to be unitary is not, within tolerance."""


class NotPSDError(GateSynthesisError):
    """A matrix expected to be Hermitian positive semidefinite is not."""


class InvalidPairError(GateSynthesisError):
    """A two-photon input pair is malformed (equal modes or out of range)."""


class NotContractionError(GateSynthesisError):
    """Largest singular value exceeds 1 beyond tolerance; no unitary embedding."""


class NotAchievableError(GateSynthesisError):
    """The gate cannot be realized with two photons and post-selection."""


class ZeroWeightError(GateSynthesisError):
    """A canonical weight vanishes; the non-zero construction does not apply."""


class NotZeroCaseError(GateSynthesisError):
    """No canonical weight vanishes; the zero-case construction does not apply."""


class InvalidBranchError(GateSynthesisError):
    """A sign branch violates its defining constraint for the given weights."""


class DegenerateInputError(GateSynthesisError):
    """Inputs hit a degenerate configuration (vanishing parameter or weight)."""


class NotProportionalError(GateSynthesisError):
    """A post-selected block is not proportional to the requested gate."""


class NumericalFailureError(GateSynthesisError):
    """An internal numerical verification failed beyond its tolerance."""


class NoConvergenceError(GateSynthesisError):
    """Every optimizer start failed to produce a usable solution."""
