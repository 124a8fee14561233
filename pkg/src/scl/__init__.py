"""Resolvent criteria for similarity to normal operators with spectrum on a smooth curve.

Modules: ``linalg`` (spectra, resolvent norms), ``curves`` (Jordan curves,
projection, curve families), ``pseudoanalytic`` (jet extensions),
``dynkin`` (Cauchy-Green calculus, transplantation), ``criteria``
(pointwise and mean-square tests), ``zoo`` (example operators), ``cli``.
"""

from .curves import JordanCurve, circle, ellipse, blob, parse_curve, radial_diffeo, nice_family
from .dynkin import QuadratureSpec, apply_function, cauchy_green_apply, transplant
from .linalg import resolvent_norm, spectrum

__all__ = [
    "JordanCurve", "QuadratureSpec", "apply_function", "blob", "cauchy_green_apply", "circle",
    "ellipse", "nice_family", "parse_curve", "radial_diffeo", "resolvent_norm", "spectrum",
    "transplant",
]
__version__ = "0.1.0"
