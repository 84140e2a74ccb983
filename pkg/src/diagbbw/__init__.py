"""Bott-Borel-Weil computations for diagonal ind-groups of classical type."""

__version__ = "0.1.0"

from .rootdata import (  # noqa: E402
    LinearOrder, PreconditionError, RootSystemLevel, SINGULAR, Singular, Straightened,
    ValidationError, WeylElt, length, straighten,
)
from .diagsys import DiagonalSystem, RestrictionMap, GENERATORS  # noqa: E402
from .borel import BorelSystem, check_compatibility, make_named  # noqa: E402
from .weights import WeightSystem  # noqa: E402
from .weyl_limit import Branch, LimitWeylElt, act_dot, length_B  # noqa: E402
from .bbw import Verdict, analyze, level_cohomology  # noqa: E402

__all__ = [
    "__version__", "LinearOrder", "PreconditionError", "RootSystemLevel", "SINGULAR", "Singular",
    "Straightened", "ValidationError", "WeylElt", "length", "straighten", "DiagonalSystem",
    "RestrictionMap", "GENERATORS", "BorelSystem", "check_compatibility", "make_named",
    "WeightSystem", "Branch", "LimitWeylElt", "act_dot", "length_B", "Verdict", "analyze",
    "level_cohomology",
]
