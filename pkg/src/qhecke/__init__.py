"""Exact computations with two-parameter quantum matrix algebras, their graded
coalgebra quotients, induction functors between comodule categories and the
Demazure operators they categorify."""

from .exactmath import BACKEND, ParamSpec, QHeckeError

__version__ = "0.1.0"
__all__ = ["BACKEND", "ParamSpec", "QHeckeError", "__version__"]
