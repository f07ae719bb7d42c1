from importlib.metadata import PackageNotFoundError
from importlib.metadata import version as _pkg_version

try:
    __version__ = _pkg_version("schottkit")
except PackageNotFoundError:
    __version__ = "0.1.0"

__all__ = ["__version__"]
