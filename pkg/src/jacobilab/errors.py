"""Exception types shared across the package."""


class JacobilabError(Exception):
    """Base class for all package-specific errors."""


class FieldError(JacobilabError):
    """Invalid sampled field (too few samples, non-finite data, grid mismatch)."""


class ModelError(JacobilabError):
    """Invalid submersion model construction or use (e.g. noncompact fibers
    where a compact fiber is required)."""


class SurfaceError(JacobilabError):
    """Invalid surface construction (period mismatch, topology inconsistent
    with total curvature, tau nonzero along a slice)."""


class RegimeMismatchError(JacobilabError):
    """A bound was requested under a regime its hypothesis excludes."""


class ConvergenceError(JacobilabError):
    """Eigenvalue solve did not reach the requested accuracy at the given
    truncation."""


class ScenarioError(JacobilabError):
    """Scenario file is malformed. ``paths`` lists every offending location."""

    def __init__(self, paths: list[str]):
        self.paths = list(paths)
        super().__init__("invalid scenario: " + "; ".join(self.paths))
