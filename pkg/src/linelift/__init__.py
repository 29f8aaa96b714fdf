"""linelift: lifting torus actions on compact surfaces to Hermitian line bundles.

Catalog scenarios live in `linelift.geometry`; bundles and connections in
`linelift.bundle`; holonomy and the monodromy map in `linelift.transport`;
degree-2 equivariant checks in `linelift.cartan`; the solver, classification,
and lift pipelines in `linelift.lifting`; the experiment runner in
`linelift.cli`.
"""

from .geometry import CATALOG, get_scenario

__version__ = "0.1.0"

__all__ = ["CATALOG", "get_scenario", "__version__"]
