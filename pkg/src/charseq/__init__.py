"""Binary sequences from linear combinations of finite field characters."""

__version__ = "0.1.0"
