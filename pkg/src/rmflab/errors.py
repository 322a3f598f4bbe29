"""Exception types shared across the package.

Domain errors (bad argument values) raise plain ValueError; the classes here
cover the two failure modes that deserve their own type.
"""


class ResourceLimitError(RuntimeError):
    """A requested computation exceeds a documented size or memory cap."""


class UnsupportedModelError(ValueError):
    """The requested random model is not covered by this operation."""
