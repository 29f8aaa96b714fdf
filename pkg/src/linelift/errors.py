"""Exception types shared across the toolkit.

The CLI maps these onto exit codes: verdict failures are reported in the
document (exit 1), usage problems raise ConfigError (exit 2), and numerical
breakdowns raise AccuracyError (exit 3).
"""


class DomainError(ValueError):
    """A point or path left the chart atlas."""


class OverlapError(ValueError):
    """Chart-overlap data disagree beyond tolerance (names the overlap)."""


class AccuracyError(RuntimeError):
    """A quadrature or integrator failed its step-doubling check."""


class IntegralityError(ValueError):
    """Input class failed the integrality certificate required by a solver."""


class CertificateError(IntegralityError):
    """A kernel-lattice generator had nontrivial monodromy despite the certificate."""


class ConfigError(ValueError):
    """Malformed experiment configuration."""
