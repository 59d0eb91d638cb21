"""Acoustic reflection/transmission symbol series at an interface.

The engine evaluates the polyhomogeneous symbol orders (aR)_J, (aT)_J,
J = 0, -1, ..., -K, of the interface reflection and transmission
operators at one covector, for a laterally frozen model: material jets
along the normal only, with the interface shape entering through the
mean-curvature profile (divergence term) and the metric stretch of the
tangential wavenumber (vertical-wavenumber jet).

Construction, order by order:

* order 0 is the classical two-point solve
      R0 = (mu- xi3I - mu+ xi3T) / (mu- xi3I + mu+ xi3T),  T0 = 1 + R0;
* each amplitude (a)_J is carried as a jet along the normal whose
  higher coefficients follow from the transport recursion
      d(a)_J/dnu = G * (a)_J + S_J,
  with G = (P phi) / (2 rho c^2 zeta) and S_J built from the wave
  operator applied to the already-known order J+1 amplitude jet.  The
  value coefficient of (a)_J for J < 0 comes from the jump condition,
  which ties (aR)_J = (aT)_J to the normal derivatives of the three
  order J+1 amplitudes;
* remainder terms are never dropped: they are exactly the lower jet
  coefficients propagated by the recursion.

Sign conventions (fixed once, used by forward and inverse paths): the
vertical wavenumber is the positive root, the reflected branch carries
-xi3, and the order-0 transport bracket is

    d(a)_0/dnu = -[dlog(sqrt rho) + dlog(c)(1 - tau^2/(2 c^2 xi3^2))
                   + H/2 + (k1 xi1^2 + k2 xi2^2)/(2 xi3^2)] (a)_0,

i.e. the plus sign on the dlog(c) term, re-derived once from the
transport equations and pinned by the independently written order -1
closed form in the test suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DepthExceeded
from .jets import (
    Jet,
    jet_derivative,
    jet_inv,
    jet_mul,
    jet_scale,
    jet_sqrt,
)
from .jets import _binom_row
from .medium import (
    GLANCING_TOL,
    AcousticSideJet,
    Covector,
    InterfaceModel,
    curvature_jets,
    vertical_wavenumber,
)


@dataclass(frozen=True)
class AcousticSymbolSeries:
    """Symbol orders at one covector: orders[k] = (J, aR_J, aT_J), J = -k."""

    orders: tuple
    covector: Covector
    depth: int

    def reflection(self, order: int) -> complex:
        return self.orders[-order][1]

    def transmission(self, order: int) -> complex:
        return self.orders[-order][2]


class _BranchState:
    """Per-branch transport data: G jet plus material jets for sources."""

    __slots__ = ("g", "inv_rcz", "mu", "zeta0")

    def __init__(self, g, inv_rcz, mu, zeta0):
        self.g = g            # tuple, depth K-1: d(a)/dnu = g*a + s
        self.inv_rcz = inv_rcz  # tuple, 1/(rho c^2 zeta), depth K-1
        self.mu = mu          # tuple, depth K
        self.zeta0 = zeta0    # signed vertical wavenumber value


def _convolve_coeff(m, a, b):
    """Coefficient m of the Leibniz product of coefficient sequences."""
    row = _binom_row(m)
    return sum(row[j] * a[j] * b[m - j] for j in range(m + 1))


def _fill(value, branch: _BranchState, source, depth: int):
    """Amplitude jet coefficients from d(a)/dnu = g*a + source."""
    coeffs = [value]
    g = branch.g
    for m in range(depth):
        cm = _convolve_coeff(m, g, coeffs)
        if source is not None:
            cm = cm + source[m]
        coeffs.append(cm)
    return coeffs


def _wave_operator_source(branch: _BranchState, amp, h_coeffs, depth):
    """S_J = (1/(2i rho c^2 zeta)) * P(a_{J+1}), coefficients 0..depth-1.

    P(a) in the frozen model is -(mu a')' - mu H a'; `amp` is the order
    J+1 coefficient list (depth+2 entries), which is exactly enough to
    fill a depth-`depth` jet at order J.
    """
    if depth == 0:
        return ()
    da = amp[1:]
    mu = branch.mu
    mu_da = [_convolve_coeff(m, mu, da) for m in range(depth + 1)]
    out = []
    for m in range(depth):
        val = -mu_da[m + 1]
        if h_coeffs is not None:
            val -= _convolve_coeff(m, h_coeffs, mu_da)
        out.append(val)
    # 1/(2i) = -i/2 times 1/(rho c^2 zeta)
    inv = branch.inv_rcz
    return [(-0.5j) * _convolve_coeff(m, inv, out) for m in range(depth)]


def _branch_state(side: AcousticSideJet, zeta: Jet, h: Jet | None, depth: int):
    """Transport data for one branch (side jets + signed zeta jet)."""
    rho = side.rho.truncate(depth)
    cs = side.cs.truncate(depth)
    mu = jet_mul(rho, jet_mul(cs, cs))
    if depth == 0:
        return _BranchState((), (), mu.coeffs, zeta[0])
    d = depth - 1
    mu_zeta = jet_mul(mu, zeta)
    p_phi = jet_scale(jet_derivative(mu_zeta), -1.0)
    if h is not None:
        p_phi = p_phi - jet_mul(h.truncate(d), mu_zeta.truncate(d))
    rcz = jet_mul(rho.truncate(d), jet_mul(jet_mul(cs, cs).truncate(d), zeta.truncate(d)))
    inv_rcz = jet_inv(rcz)
    g = jet_mul(p_phi, jet_scale(inv_rcz, 0.5))
    return _BranchState(g.coeffs, inv_rcz.coeffs, mu.coeffs, zeta[0])


def _zeta_jet(side: AcousticSideJet, tau: float, stretch: Jet, depth: int,
              tol: float) -> Jet:
    """Jet of the (positive) vertical wavenumber along the normal.

    `stretch` is the jet of the squared tangential wavenumber along the
    normal line (constant |xi'|^2 for a flat interface, the shape-
    operator spreading profile otherwise).
    """
    # Regime check on the interface value before the jet square root.
    vertical_wavenumber(Covector(tau, (math.sqrt(stretch[0]), 0.0)),
                        side.cs[0], tol)
    cs = side.cs.truncate(depth)
    inv_c2 = jet_inv(jet_mul(cs, cs))
    radicand = jet_scale(inv_c2, tau * tau) - stretch.truncate(depth)
    return jet_sqrt(radicand)


def forward_series(
    cov: Covector,
    minus: AcousticSideJet,
    plus: AcousticSideJet,
    geometry,
    depth: int,
    tol: float = GLANCING_TOL,
) -> list:
    """Symbol orders [(aR_J, aT_J) for J = 0..-depth] at one covector.

    `geometry` is an InterfaceGeometry or None (flat).  This is the
    entry point the inversion linearizes against.
    """
    if depth < 0:
        raise ValueError("depth must be non-negative")
    if minus.depth < depth or plus.depth < depth:
        raise DepthExceeded(
            f"symbol depth {depth} exceeds model depth {min(minus.depth, plus.depth)}"
        )
    tau = cov.tau
    h, stretch = curvature_jets(cov, geometry, depth)

    z_minus = _zeta_jet(minus, tau, stretch, depth, tol)
    z_plus = _zeta_jet(plus, tau, stretch, depth, tol)

    br_i = _branch_state(minus, z_minus, h, depth)
    br_r = _branch_state(minus, jet_scale(z_minus, -1.0), h, depth)
    br_t = _branch_state(plus, z_plus, h, depth)

    mu_m, mu_p = br_i.mu[0], br_t.mu[0]
    denom = mu_m * br_i.zeta0 + mu_p * br_t.zeta0
    r0 = (mu_m * br_i.zeta0 - mu_p * br_t.zeta0) / denom

    amp_i = [_fill(1.0 + 0.0j, br_i, None, depth)]
    amp_r = [_fill(complex(r0), br_r, None, depth)]
    amp_t = [_fill(complex(1.0 + r0), br_t, None, depth)]
    out = [(complex(r0), complex(1.0 + r0))]

    h_coeffs = h.coeffs if h is not None else None
    for k in range(1, depth + 1):
        d = depth - k
        s_i = _wave_operator_source(br_i, amp_i[-1], h_coeffs, d)
        s_r = _wave_operator_source(br_r, amp_r[-1], h_coeffs, d)
        s_t = _wave_operator_source(br_t, amp_t[-1], h_coeffs, d)
        jump = mu_m * (amp_i[-1][1] + amp_r[-1][1]) - mu_p * amp_t[-1][1]
        val = -1j * jump / denom
        amp_i.append(_fill(0.0j, br_i, s_i, d))
        amp_r.append(_fill(val, br_r, s_r, d))
        amp_t.append(_fill(val, br_t, s_t, d))
        out.append((val, val))
    return out


def forward_symbols(cov: Covector, model: InterfaceModel, depth: int,
                    tol: float = GLANCING_TOL) -> AcousticSymbolSeries:
    """Full symbol series (aR)_J, (aT)_J, J = 0..-depth, at one covector."""
    if model.is_elastic:
        raise TypeError("acoustic engine requires an acoustic model")
    if depth > model.depth:
        raise DepthExceeded(f"depth {depth} exceeds model depth {model.depth}")
    values = forward_series(cov, model.minus, model.plus, model.geometry,
                            depth, tol)
    orders = tuple((-k, aR, aT) for k, (aR, aT) in enumerate(values))
    return AcousticSymbolSeries(orders=orders, covector=cov, depth=depth)


def principal_rt(cov: Covector, model: InterfaceModel, tol: float = GLANCING_TOL):
    """Order-0 reflection/transmission coefficients (R0, T0 = 1 + R0)."""
    if model.is_elastic:
        raise TypeError("acoustic engine requires an acoustic model")
    minus, plus = model.minus, model.plus
    xi_i = vertical_wavenumber(cov, minus.cs[0], tol)
    xi_t = vertical_wavenumber(cov, plus.cs[0], tol)
    mu_m = minus.rho[0] * minus.cs[0] ** 2
    mu_p = plus.rho[0] * plus.cs[0] ** 2
    r0 = (mu_m * xi_i - mu_p * xi_t) / (mu_m * xi_i + mu_p * xi_t)
    return r0, 1.0 + r0


def flux_residual(cov: Covector, model: InterfaceModel, tol: float = GLANCING_TOL) -> float:
    """Order-0 energy-flux identity mu- xi3I (1 - R0^2) - mu+ xi3T T0^2.

    Algebraically zero; the returned round-off residual is bounded by
    1e-12 * mu- xi3I for well-scaled inputs.
    """
    r0, t0 = principal_rt(cov, model, tol)
    minus, plus = model.minus, model.plus
    xi_i = vertical_wavenumber(cov, minus.cs[0], tol)
    xi_t = vertical_wavenumber(cov, plus.cs[0], tol)
    mu_m = minus.rho[0] * minus.cs[0] ** 2
    mu_p = plus.rho[0] * plus.cs[0] ** 2
    return mu_m * xi_i * (1.0 - r0 * r0) - mu_p * xi_t * t0 * t0
