"""Exception types raised by state/channel validation and the numeric measure paths."""


class DimensionMismatch(ValueError):
    """Vector/matrix shapes are inconsistent with the declared mode count."""


class AsymmetricCM(ValueError):
    """Covariance matrix is not symmetric within tolerance."""


class UncertaintyViolation(ValueError):
    """Covariance matrix violates the uncertainty principle (cm + i*Delta not PSD)."""


class AsymmetricNoise(ValueError):
    """Channel noise matrix is not symmetric within tolerance."""


class PhysicalityViolation(ValueError):
    """Channel triple (T, N, d0) does not describe a physical Gaussian channel."""


class ComplexSqrtBranchFailure(ArithmeticError):
    """Principal matrix square root is undefined or numerically unreliable."""


class NonRealResult(ArithmeticError):
    """A quantity that must be real carries an imaginary residue above tolerance."""


class InvalidMu(ValueError):
    """Tsallis order mu must lie strictly between 0 and 1."""


class WrongModeCount(ValueError):
    """Operation requires a specific number of modes."""


class WilliamsonResidualError(ArithmeticError):
    """Symplectic normal-form reconstruction residual exceeded tolerance."""
