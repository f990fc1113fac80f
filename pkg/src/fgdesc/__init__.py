"""First-order descriptions of finite groups."""

__version__ = "0.1.0"
