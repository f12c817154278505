"""ringcomp: comparison invariants of concrete finite and symbolic rings."""

from .kernels import BACKEND

__all__ = ["BACKEND"]
__version__ = "0.1.0"
