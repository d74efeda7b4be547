"""Information cohomology of finite information structures."""

__version__ = "0.1.0"
