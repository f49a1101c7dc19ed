"""Maximum-kernel σ-linearized trinomials over finite fields."""

from ._core import BACKEND
from .gf import Field, FrobExponent, field_new

__all__ = ["BACKEND", "Field", "FrobExponent", "field_new"]
__version__ = "0.1.0"
