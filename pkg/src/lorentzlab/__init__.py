"""lorentzlab: a numerical laboratory for light-observation inverse problems
on globally hyperbolic Lorentzian manifolds.

The package computes light-observation data from known metrics (geodesics,
cut loci, earliest observation times), reconstructs region topology,
coordinates and the conformal metric class blind from that data, and checks
the four-wave nonlinear-interaction mechanism both in closed form
(Minkowski asymptotics) and with a small finite-difference wave solver.
"""

__version__ = "0.1.0"

from .metrics import (
    Point,
    TangentVector,
    Metric,
    Minkowski,
    ProductSphere,
    WarpedProduct,
    BumpMinkowski,
    make_metric,
    causal_character,
)

__all__ = [
    "Point",
    "TangentVector",
    "Metric",
    "Minkowski",
    "ProductSphere",
    "WarpedProduct",
    "BumpMinkowski",
    "make_metric",
    "causal_character",
    "__version__",
]
