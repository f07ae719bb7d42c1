"""Root of the toolkit's exception hierarchy.

Each sub-package derives its own errors from ``ToolkitError`` so the CLI can
tell module failures apart from configuration problems.
"""


class ToolkitError(Exception):
    """Base exception for all schottkit failures."""

    pass
