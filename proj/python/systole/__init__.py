"""Arithmetic invariants of totally geodesic surfaces in arithmetic
hyperbolic 3-manifolds: covolume formulas, compatible-Fuchsian area spectra,
prescribed-splitting field families, and commensurability-class censuses.

Exact quantities (areas, indices, ratios) are returned as strings like
"4*pi" or "1/3"; validated reals come back as {"value": ..., "err": ...}.
"""

from systole._core import *  # noqa: F401,F403
