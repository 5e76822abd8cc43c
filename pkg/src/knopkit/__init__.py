"""Exact computations in the categories T0(A, delta) built from relations in
finite regular categories, with degree functions as the interpolation data."""

__version__ = "0.1.0"

from .categories import category, parse_object  # noqa: E402
from .degree import make_degree, standard_degree  # noqa: E402
from .t0 import T0, FormalMorphism, Relation  # noqa: E402

__all__ = ["T0", "FormalMorphism", "Relation", "category", "make_degree", "parse_object",
           "standard_degree", "__version__"]
