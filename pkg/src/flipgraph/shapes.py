"""Shape parameters of ideal tetrahedra.

A tetrahedron's shape is a complex number z outside {0, 1}; its companions

    z' = 1/(1-z)        z'' = (z-1)/z

satisfy z z' z'' = -1.  The parameter z lives on the edge pair {01, 23},
z' on {03, 12} and z'' on {02, 13}; with the package's orientation
convention (all tetrahedra positively oriented, odd gluing permutations),
corner parameters around every vertex link run z, z', z'' counterclockwise,
so a positively oriented tetrahedron has Im z, Im z', Im z'' > 0 and the
three arguments sum to pi.
"""

import cmath
import math
from enum import Enum

import numpy as np
from scipy.special import zeta

#: z for the default Newton seed: the regular ideal tetrahedron.
REGULAR = complex(0.5, 0.8660254037844386)


def zp(z):
    return 1.0 / (1.0 - z)


def zpp(z):
    return (z - 1.0) / z


def param_triple(z):
    return (z, zp(z), zpp(z))


class ShapeClass(Enum):
    POSITIVELY_ORIENTED = "PositivelyOriented"
    FLAT = "Flat"
    NEGATIVELY_ORIENTED = "NegativelyOriented"
    DEGENERATE = "Degenerate"


def classify_shape(z, eps_flat=1e-9, eps_deg=1e-9):
    """Orientation class of one shape.

    Degenerate means within eps_deg of 0, 1 or infinity (the latter measured
    by 1/|z|); otherwise the sign of Im z decides, with a flat band of
    half-width eps_flat around the real axis.
    """
    az = abs(z)
    if az <= eps_deg or abs(z - 1.0) <= eps_deg or (az > 0 and 1.0 / az <= eps_deg):
        return ShapeClass.DEGENERATE
    if abs(z.imag) <= eps_flat:
        return ShapeClass.FLAT
    if z.imag > 0:
        return ShapeClass.POSITIVELY_ORIENTED
    return ShapeClass.NEGATIVELY_ORIENTED


def is_degenerate(z, eps_deg=1e-9):
    return classify_shape(z, eps_deg=eps_deg) is ShapeClass.DEGENERATE


#: zeta(2n)/(n(2n+1) pi^2n) for the Lobachevsky series; 30 terms give
#: full double precision on [0, pi/2].
_LOB_COEFF = np.array([float(zeta(2 * n, 1))
                       / (n * (2 * n + 1) * math.pi ** (2 * n))
                       for n in range(1, 31)])
_LOB_POWERS = np.arange(3, 63, 2)


def lobachevsky(theta):
    """The Lobachevsky function -int_0^theta log|2 sin t| dt.

    Odd, pi-periodic; evaluated by the classical series
    theta (1 - log 2 theta) + sum zeta(2n) theta^(2n+1) / (n (2n+1) pi^2n)
    after folding the argument into [0, pi/2].
    """
    r = math.fmod(theta, math.pi)
    if r < 0:
        r += math.pi
    sign = 1.0
    if r > math.pi / 2:
        r = math.pi - r
        sign = -1.0
    if r < 1e-300:
        return 0.0
    series = float(np.dot(_LOB_COEFF, r ** _LOB_POWERS))
    return sign * (r * (1.0 - math.log(2.0 * r)) + series)


def tetrahedron_volume(z, eps_flat=1e-9, eps_deg=1e-9):
    """Hyperbolic volume of the ideal tetrahedron with shape z.

    Sum of the Lobachevsky function over the three corner angles; flat and
    degenerate shapes contribute 0, negatively oriented ones negatively.
    """
    cls = classify_shape(z, eps_flat, eps_deg)
    if cls in (ShapeClass.FLAT, ShapeClass.DEGENERATE):
        return 0.0
    return sum(lobachevsky(cmath.phase(p)) for p in param_triple(z))
