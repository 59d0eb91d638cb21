"""Shape-operator arithmetic for the interface.

The interface enters the symbol computations only through the normal jet
of its mean curvature H = kappa_1 + kappa_2 (trace normalization, see
module note below).  Along the normal line, the parallel surface at
signed distance s has mean curvature sum_i kappa_i / (1 + s kappa_i);
its s-derivatives at s = 0 give the closed form

    d^J H / d nu^J = (-1)^J J! sum_i kappa_i^(J+1),

which is what the engines consume.  The profile itself is kept as an
independent oracle for that formula.

Normalization note: some texts define mean curvature as the *average* of
the principal curvatures; here H is the trace of the shape operator
(c_n = 1).  The convention is global and cancels in every forward/inverse
round trip.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import FocalPoint
from .jets import Jet


@dataclass(frozen=True)
class CurvatureSpectrum:
    """Principal curvatures of the interface at one point (1/length)."""

    kappas: tuple

    def __post_init__(self):
        object.__setattr__(self, "kappas", tuple(float(k) for k in self.kappas))
        if not all(math.isfinite(k) for k in self.kappas):
            raise ValueError("principal curvatures must be finite")

    @property
    def mean(self) -> float:
        return sum(self.kappas)


def mean_curvature_normal_derivatives(spec: CurvatureSpectrum, order: int) -> float:
    """J-th normal derivative of the mean curvature; J = 0 returns H."""
    if order < 0:
        raise ValueError("derivative order must be non-negative")
    sign = -1.0 if order % 2 else 1.0
    return sign * math.factorial(order) * sum(k ** (order + 1) for k in spec.kappas)


def level_set_curvature_profile(spec: CurvatureSpectrum, s: float) -> float:
    """Mean curvature of the parallel surface at signed normal distance s.

    Independent oracle for `mean_curvature_normal_derivatives`: its J-th
    s-derivative at s = 0 equals the closed-form value.  Crossing a focal
    point (1 + s kappa_i = 0) is rejected.
    """
    total = 0.0
    for k in spec.kappas:
        denom = 1.0 + s * k
        if denom == 0.0:
            raise FocalPoint(f"focal point at s={s} for curvature {k}")
        total += k / denom
    return total


def mean_curvature_jet(spec: CurvatureSpectrum, depth: int) -> Jet:
    """Jet of H along the normal, coefficients from the closed form."""
    return Jet(mean_curvature_normal_derivatives(spec, j) for j in range(depth + 1))


def tangential_stretch_profile(spec: CurvatureSpectrum, xi, s: float) -> float:
    """|xi'|^2 of the frozen phase on the parallel surface at distance s.

    In interface-normal coordinates the tangential metric spreads with
    the principal curvatures, so the squared tangential wavenumber of a
    phase with fixed interface trace is q(s) = sum_a xi_a^2/(1+s k_a)^2
    (principal axes along the interface coordinates).  Together with the
    mean-curvature profile this is the entire shape-operator content of
    the frozen model.
    """
    total = 0.0
    for k, x in zip(spec.kappas, xi):
        denom = 1.0 + s * k
        if denom == 0.0:
            raise FocalPoint(f"focal point at s={s} for curvature {k}")
        total += (x / denom) ** 2
    return total


def richardson_derivative(func, x, order: int, step=1e-3):
    """Richardson-extrapolated central difference of d^order f / dx^order.

    Independent differentiation oracle used to validate the closed-form
    curvature derivatives against the parallel-surface profiles.  The
    arithmetic follows the argument types: passing Fraction x/step with
    a Fraction-valued func keeps the differences exact, which is what
    the 1e-6 oracle tolerance needs at order 4 (float cancellation at
    step 1e-3 is ~1e-3 there).
    """
    if order == 0:
        return func(x)

    def central(h):
        total = 0
        for i in range(order + 1):
            weight = (-1) ** i * math.comb(order, i)
            total += weight * func(x + (Fraction(order, 2) - i) * h)
        return total / h ** order

    coarse = central(step)
    fine = central(step / 2)
    return (4 * fine - coarse) / 3


def rational_curvature_profile(spec: CurvatureSpectrum, s) -> "Fraction":
    """level_set_curvature_profile in exact rational arithmetic."""
    total = Fraction(0)
    for k in spec.kappas:
        kf = Fraction(k)
        denom = 1 + s * kf
        if denom == 0:
            raise FocalPoint(f"focal point at s={s} for curvature {k}")
        total += kf / denom
    return total


def tangential_stretch_jet(spec: CurvatureSpectrum, xi, depth: int) -> Jet:
    """Jet of the stretched squared tangential wavenumber along the normal.

    d^j q / ds^j at 0 is (-1)^j (j+1)! sum_a kappa_a^j xi_a^2; like the
    mean-curvature derivatives, it depends only on the shape operator.
    """
    coeffs = []
    for j in range(depth + 1):
        sign = -1.0 if j % 2 else 1.0
        coeffs.append(sign * math.factorial(j + 1)
                      * sum((k ** j) * (x * x)
                            for k, x in zip(spec.kappas, xi)))
    return Jet(coeffs)
