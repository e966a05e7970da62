"""The two worked example curves used across the test and repro surfaces.

Both come with the seed line that generates every printed sequence; the
genus-2 pair is also the orbit plotted in the phase-portrait figure.
"""

from __future__ import annotations

from .cfrac import CurveSpec, SeedLine
from .exactnum import rat
from .upoly import Poly


def example3() -> tuple:
    """Genus 1: Y^2 = (X^2-3)^2 - 4(X+2), seed u0=-2, d0=1, v0=-1."""
    A = Poly([-3, 0, 1])
    R = Poly([-2, -1])
    P0 = Poly([-1, 0, 1])  # A + 2
    Q0 = Poly([-2, -2])  # -2(X+1)
    return CurveSpec(1, A, R), SeedLine(P0, Q0)


def example4() -> tuple:
    """Genus 2: Y^2 = (X^3-5X-1)^2 - 4(X^2+2X+3), seed u0=-4, d0=5/4, e0=3/5,
    v0=-1/2, w0=-3/2."""
    A = Poly([-1, -5, 0, 1])
    R = Poly([-3, -2, -1])
    P0 = A + Poly([rat(3, 2), rat(5, 2)])  # A + 2 d0 (X + e0)
    Q0 = Poly([6, -2, -4])  # -4(X^2 + X/2 - 3/2)
    return CurveSpec(2, A, R), SeedLine(P0, Q0)
