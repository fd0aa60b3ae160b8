"""Short laws for finite groups: construction, verification and statistics."""

from .freeword import Word

__version__ = "0.1.0"

__all__ = ["Word", "__version__"]
