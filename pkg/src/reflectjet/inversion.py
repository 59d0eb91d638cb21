"""Reconstruction of the plus-side jets and interface curvature from
sampled reflection symbols.

Order 0 is closed form.  Every lower order exploits the exact affine
dependence of the order -k symbol on the top (k-th) derivative values
(and, at order -1, on the principal curvatures): the measured symbol
minus a forward run with those unknowns zeroed is linear in them, with
coefficients obtained by differencing unit-perturbation runs of the same
engine.  This avoids re-deriving any remainder closed forms; forward and
inverse share one truth.

Curvature identifiability: the mean curvature alone is invisible in the
scalar reflection data (scaling rho and mu by exp of its integral along
the normal converts a curved model into a flat one with identical
interface symbols), so the curvatures are pinned through the metric-
stretch signature of the vertical-wavenumber jet, which couples each
principal curvature to the covector component along its axis.
Recovering (kappa1, kappa2) therefore needs samples in at least two
tangential directions; the design-matrix condition number is always
reported rather than identifiability assumed.

With more samples than unknowns every solve is least squares and the
relative residual is reported; on noise-free data it sits at round-off,
on inconsistent data it trips `InconsistentData`.
"""

from __future__ import annotations

import logging
import math
import time
from dataclasses import dataclass, field

import numpy as np

from . import acoustic, elastic
from .errors import (
    AmbiguousRoot,
    ComplexCurvatures,
    DegenerateAngles,
    IllConditioned,
    InconsistentData,
    MissingOrder,
    NoRoot,
)
from .jets import Jet
from .medium import (
    GLANCING_TOL,
    AcousticSideJet,
    Covector,
    ElasticSideJet,
    InterfaceGeometry,
)

log = logging.getLogger("reflectjet.inversion")

RESIDUAL_TOL = 1e-8
CONDITION_LIMIT = 1e8
ROOT_TOL = 1e-12
DISCRIMINANT_SNAP = 1e-10

_ROOT_SCAN_POINTS = 96


@dataclass(frozen=True)
class SymbolSample:
    """One measured symbol value: covector, order J <= 0, value.

    `value` is a complex scalar for acoustic data and a 3x3 complex
    matrix (mode-coefficient basis) for elastic data.
    """

    covector: Covector
    order: int
    value: object

    @property
    def slowness(self) -> float:
        return self.covector.slowness


class SymbolSamples:
    """Reflection-symbol samples at one interface point."""

    def __init__(self, samples):
        self.samples = tuple(samples)
        self._by_order = {}
        for s in self.samples:
            self._by_order.setdefault(s.order, []).append(s)
        for group in self._by_order.values():
            group.sort(key=lambda s: (abs(s.slowness), s.covector.xi))

    def orders(self):
        return sorted(self._by_order, reverse=True)

    def at_order(self, order: int):
        try:
            return self._by_order[order]
        except KeyError:
            raise MissingOrder(f"no samples at symbol order {order}") from None

    def require_orders(self, depth: int):
        for k in range(depth + 1):
            if -k not in self._by_order:
                raise MissingOrder(
                    f"samples missing order {-k} (depth {depth} requested)"
                )

    @staticmethod
    def from_acoustic_series(series_list):
        """Reflection samples from forward AcousticSymbolSeries runs."""
        out = []
        for series in series_list:
            for j, a_r, _ in series.orders:
                out.append(SymbolSample(series.covector, j, a_r))
        return SymbolSamples(out)

    @staticmethod
    def from_elastic_series(series_list):
        out = []
        for series in series_list:
            for j, r, _ in series.orders:
                out.append(SymbolSample(series.covector, j, r))
        return SymbolSamples(out)


@dataclass(frozen=True)
class RecoveryReport:
    """Recovered plus side with per-order solve diagnostics."""

    plus: object
    mean_curvature: float | None = None
    mean_curvature_derivative: float | None = None
    kappas: tuple | None = None
    residuals: dict = field(default_factory=dict)
    conditions: dict = field(default_factory=dict)
    timings: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = {
            "residuals": {str(k): v for k, v in self.residuals.items()},
            "conditions": {str(k): v for k, v in self.conditions.items()},
            "timings": {str(k): v for k, v in self.timings.items()},
        }
        side = {"rho_jet": list(self.plus.rho.coeffs),
                "cs_jet": list(self.plus.cs.coeffs)}
        if isinstance(self.plus, ElasticSideJet):
            side["cp_jet"] = list(self.plus.cp.coeffs)
        out["plus"] = side
        if self.mean_curvature is not None:
            out["mean_curvature"] = self.mean_curvature
        if self.mean_curvature_derivative is not None:
            out["mean_curvature_derivative"] = self.mean_curvature_derivative
        if self.kappas is not None:
            out["kappas"] = list(self.kappas)
        return out


def shape_operator_from_mean_jet(mean: float, mean_derivative: float,
                                 snap_tol: float = DISCRIMINANT_SNAP):
    """Principal curvatures from H = k1 + k2 and dH/dnu = -(k1^2 + k2^2).

    The pair solves z^2 - H z + (H^2 + dH)/2 = 0; a discriminant below
    -snap_tol signals inconsistent inputs, within tolerance it snaps to
    the double root.  The pair is identifiable only as an unordered set.
    """
    product = (mean * mean + mean_derivative) / 2.0
    disc = mean * mean - 4.0 * product
    if disc < -snap_tol:
        raise ComplexCurvatures(
            f"no real curvature pair for H={mean:.6g}, dH={mean_derivative:.6g} "
            f"(discriminant {disc:.3e})"
        )
    root = math.sqrt(max(disc, 0.0))
    return ((mean + root) / 2.0, (mean - root) / 2.0)


# --- sample-set diagnostics --------------------------------------------------


def _distinct_abs(values, rtol=1e-12):
    out = []
    for v in sorted(abs(v) for v in values):
        if not out or v - out[-1] > rtol * max(1.0, out[-1]):
            out.append(v)
    return out


def _distinct_directions(covs, tol=1e-9):
    dirs = []
    for cov in covs:
        n = cov.xi_norm
        if n <= tol:
            continue
        d = (cov.xi[0] / n, cov.xi[1] / n)
        if not any(abs(d[0] * e[1] - d[1] * e[0]) <= tol for e in dirs):
            dirs.append(d)
    return len(dirs)


def _as_samples(samples) -> SymbolSamples:
    if isinstance(samples, SymbolSamples):
        return samples
    return SymbolSamples(samples)


# --- order-0 closed form -----------------------------------------------------


def _order0_fit(b_values, reflections, mu_minus, cs_minus, residual_tol):
    """Least-squares fit of A - B b^2 = q^2 with q = L mu- xi3I / tau.

    Returns (cs_plus, rho_plus, mu_plus, residual, condition).
    """
    if len(_distinct_abs(b_values)) < 2:
        raise DegenerateAngles(
            "order-0 recovery needs two samples with b1 != +-b2"
        )
    rows, rhs = [], []
    for b, r in zip(b_values, reflections):
        r = float(np.real(r))
        if not abs(r) < 1.0:
            raise InconsistentData(
                f"order-0 reflection |R| = {abs(r):.6g} >= 1 is outside the "
                "hyperbolic regime"
            )
        lam = (1.0 - r) / (1.0 + r)
        radicand = 1.0 / cs_minus ** 2 - b * b
        if radicand <= 0.0:
            raise InconsistentData(
                f"sample slowness b={b:.6g} is post-critical for the minus side"
            )
        q = lam * mu_minus * math.sqrt(radicand)
        rows.append([1.0, -b * b])
        rhs.append(q * q)
    a = np.asarray(rows)
    y = np.asarray(rhs)
    sol, _, _, sv = np.linalg.lstsq(a, y, rcond=None)
    cond = sv[0] / sv[-1] if sv[-1] > 0 else math.inf
    resid = float(np.linalg.norm(a @ sol - y))
    scale = max(float(np.linalg.norm(y)), 1e-300)
    big_a, big_b = float(sol[0]), float(sol[1])
    if big_b <= 0.0 or big_a <= 0.0:
        raise InconsistentData(
            "order-0 fit produced a non-physical impedance"
        )
    if resid > residual_tol * scale:
        raise InconsistentData(
            f"order-0 samples disagree (relative residual {resid/scale:.3e})"
        )
    mu_plus = math.sqrt(big_b)
    cs_plus = math.sqrt(big_b / big_a)
    rho_plus = mu_plus / cs_plus ** 2
    b_max = max(abs(b) for b in b_values)
    if 1.0 / cs_plus <= b_max:
        raise InconsistentData(
            "recovered plus-side speed is post-critical for the sample grid"
        )
    return cs_plus, rho_plus, mu_plus, resid / scale, cond


def acoustic_recover_order0(samples, minus: AcousticSideJet,
                            residual_tol: float = RESIDUAL_TOL):
    """(cs_plus, rho_plus) at the interface from order-0 samples."""
    samples = _as_samples(samples)
    group = samples.at_order(0)
    mu_minus = minus.rho[0] * minus.cs[0] ** 2
    cs_plus, rho_plus, _, _, _ = _order0_fit(
        [s.slowness for s in group],
        [s.value for s in group],
        mu_minus, minus.cs[0], residual_tol,
    )
    return cs_plus, rho_plus


# --- linearized per-order solves ---------------------------------------------


def _lstsq_real(design_cols, y_complex, order, cond_limit, residual_tol):
    """Real least squares over stacked (Re, Im) rows of a complex system.

    Columns are normalized before solving so the reported condition
    number measures identifiability rather than unit choices.
    """
    a = np.column_stack([np.concatenate([c.real, c.imag]) for c in design_cols])
    y = np.concatenate([y_complex.real, y_complex.imag])
    norms = np.linalg.norm(a, axis=0)
    if np.any(norms == 0.0):
        raise IllConditioned(
            f"design matrix at order {order} has an identically zero column",
            order=order, condition=math.inf,
        )
    sol, _, _, sv = np.linalg.lstsq(a / norms, y, rcond=None)
    sol = sol / norms
    cond = sv[0] / sv[-1] if sv[-1] > 0 else math.inf
    if not np.isfinite(cond) or cond > cond_limit:
        raise IllConditioned(
            f"design matrix at order {order} has condition {cond:.3e}",
            order=order, condition=cond,
        )
    resid = float(np.linalg.norm(a @ sol - y))
    scale = max(float(np.linalg.norm(y)), 1e-300)
    if resid > residual_tol * scale:
        raise InconsistentData(
            f"samples at order {order} disagree "
            f"(relative residual {resid/scale:.3e})"
        )
    return sol, resid / scale, cond


def acoustic_recover_jets(samples, minus: AcousticSideJet, depth: int,
                          geometry=None,
                          residual_tol: float = RESIDUAL_TOL,
                          cond_limit: float = CONDITION_LIMIT,
                          glancing_tol: float = GLANCING_TOL) -> RecoveryReport:
    """Plus-side (rho, cs) jets to `depth`, plus interface curvature.

    Requires samples at every order 0..-depth.  If `geometry` (an
    InterfaceGeometry) is supplied it is treated as known; with
    `geometry=None` the principal curvatures join the order -1 solve as
    two extra unknowns, which needs samples in at least two tangential
    directions (see the module note on identifiability).
    """
    samples = _as_samples(samples)
    samples.require_orders(depth)
    if minus.depth < depth:
        raise ValueError("minus-side jets shallower than requested depth")
    group0 = samples.at_order(0)
    t0 = time.perf_counter()
    mu_minus = minus.rho[0] * minus.cs[0] ** 2
    cs0, rho0, _, res0, cond0 = _order0_fit(
        [s.slowness for s in group0],
        [s.value for s in group0],
        mu_minus, minus.cs[0], residual_tol,
    )
    residuals, conditions = {0: res0}, {0: cond0}
    timings = {0: time.perf_counter() - t0}

    rho_coeffs, cs_coeffs = [rho0], [cs0]
    geom = geometry  # None until recovered
    recovered_kappas = None

    for k in range(1, depth + 1):
        t_start = time.perf_counter()
        group = samples.at_order(-k)
        covs = [s.covector for s in group]
        measured = np.array([complex(s.value) for s in group])
        recover_here = geometry is None and k == 1
        n_unknowns = 4 if recover_here else 2
        if len(_distinct_abs([s.slowness for s in group])) < min(n_unknowns, 3):
            raise DegenerateAngles(
                f"order {-k} needs >= {min(n_unknowns, 3)} distinct |b| samples"
            )
        if recover_here and _distinct_directions(covs) < 2:
            raise DegenerateAngles(
                "curvature recovery needs samples in two tangential "
                "directions (the mean curvature alone is gauge-equivalent "
                "to a density gradient)"
            )
        minus_k = minus.truncate(k)

        def run(cs_top, rho_top, gm):
            plus = AcousticSideJet(Jet(rho_coeffs + [rho_top]),
                                   Jet(cs_coeffs + [cs_top]))
            return np.array([
                acoustic.forward_series(cov, minus_k, plus, gm, k,
                                        glancing_tol)[k][0]
                for cov in covs
            ])

        base_geom = geom if geom is not None else InterfaceGeometry()
        base = run(0.0, 0.0, base_geom)
        cols = [run(1.0, 0.0, base_geom) - base,
                run(0.0, 1.0, base_geom) - base]
        if recover_here:
            cols.append(run(0.0, 0.0, InterfaceGeometry(1.0, 0.0)) - base)
            cols.append(run(0.0, 0.0, InterfaceGeometry(0.0, 1.0)) - base)
        sol, res, cond = _lstsq_real(cols, measured - base, -k,
                                     cond_limit, residual_tol)
        cs_coeffs.append(float(sol[0]))
        rho_coeffs.append(float(sol[1]))
        if recover_here:
            recovered_kappas = (float(sol[2]), float(sol[3]))
            geom = InterfaceGeometry(*recovered_kappas)
        residuals[-k], conditions[-k] = res, cond
        timings[-k] = time.perf_counter() - t_start
        log.debug("order %d solved: residual %.3e cond %.3e", -k, res, cond)

    plus = AcousticSideJet(Jet(rho_coeffs), Jet(cs_coeffs))
    mean_h = d_h = None
    if recovered_kappas is not None:
        k1, k2 = recovered_kappas
        mean_h = k1 + k2
        d_h = -(k1 * k1 + k2 * k2)
    return RecoveryReport(plus=plus, mean_curvature=mean_h,
                          mean_curvature_derivative=d_h,
                          kappas=recovered_kappas,
                          residuals=residuals, conditions=conditions,
                          timings=timings)


# --- relative-amplitude mode -------------------------------------------------


def acoustic_recover_relative(ratios, minus: AcousticSideJet,
                              reference: Covector,
                              speed_max: float | None = None,
                              root_tol: float = ROOT_TOL,
                              residual_tol: float = 1e-6):
    """(mu_plus, cs_plus) from order-0 reflection ratios R(b)/R(b_ref).

    `ratios` is a list of order-0 SymbolSample whose values are the
    normalized reflections; the reference covector's own ratio (1) need
    not be included.  The nonlinear consistency equation is solved for
    cs_plus by bracketed root finding over the slowness-compatible speed
    range; every consistent root is validated against all samples and
    multiple survivors raise AmbiguousRoot carrying them all.
    """
    from scipy.optimize import brentq

    samples = [s for s in _as_samples(ratios).at_order(0)
               if abs(s.slowness - reference.slowness) > 1e-12]
    if len(samples) < 2:
        raise DegenerateAngles(
            "relative-amplitude recovery needs >= 2 non-reference samples"
        )
    b_ref = reference.slowness
    mu_minus = minus.rho[0] * minus.cs[0] ** 2
    inv_cm2 = 1.0 / minus.cs[0] ** 2
    b_all = [b_ref] + [s.slowness for s in samples]
    b_max = max(abs(b) for b in b_all)
    ratios_v = [float(np.real(s.value)) for s in samples]
    if all(abs(r - 1.0) <= 1e-12 for r in ratios_v):
        raise AmbiguousRoot(
            "ratios identically 1: transparent interface leaves (mu+, cs+) "
            "undetermined", roots=(),
        )

    def xi_minus(b):
        return math.sqrt(inv_cm2 - b * b)

    def mu_estimate(i, w):
        """mu+ candidate from sample i at trial plus-side slowness w = 1/c+."""
        b = samples[i].slowness
        f = xi_minus(b) / math.sqrt(w * w - b * b)
        f_ref = xi_minus(b_ref) / math.sqrt(w * w - b_ref * b_ref)
        lam = (ratios_v[i] - 1.0) / (ratios_v[i] + 1.0)
        if lam == 0.0:
            return None
        alpha = mu_minus * (f - f_ref)
        beta = mu_minus ** 2 * f * f_ref
        disc = alpha * alpha + 4.0 * lam * lam * beta
        root = math.sqrt(disc)
        # exactly one positive root: the product of the pair is -beta < 0
        c1 = (-alpha + root) / (2.0 * lam)
        return c1 if c1 > 0 else (-alpha - root) / (2.0 * lam)

    def mismatch(w):
        m0 = mu_estimate(0, w)
        m1 = mu_estimate(1, w)
        if m0 is None or m1 is None:
            return 0.0
        return m0 - m1

    w_lo = b_max * (1.0 + 1e-9) + 1e-12
    w_hi = 1.0 / speed_max if speed_max else max(10.0 / minus.cs[0],
                                                 10.0 * b_max)
    if w_hi <= w_lo:
        raise NoRoot("empty slowness bracket for the plus-side speed")
    grid = np.linspace(w_lo * (1 + 1e-9), w_hi, _ROOT_SCAN_POINTS)
    values = [mismatch(w) for w in grid]
    roots = []
    for i in range(len(grid) - 1):
        v0, v1 = values[i], values[i + 1]
        if v0 == 0.0:
            roots.append(grid[i])
        elif v0 * v1 < 0.0:
            roots.append(brentq(mismatch, grid[i], grid[i + 1], xtol=root_tol))
    def ratio_misfit(mu_p, w):
        """Worst reproduction error of the measured ratios; the trivial
        transparent root solves the quadratic formally but fails here."""
        def refl(b):
            zi = mu_minus * xi_minus(b)
            zt = mu_p * math.sqrt(w * w - b * b)
            return (zi - zt) / (zi + zt)

        r_ref = refl(b_ref)
        if abs(r_ref) <= 1e-300:
            return math.inf
        return max(abs(refl(s.slowness) / r_ref - rv)
                   for s, rv in zip(samples, ratios_v))

    consistent = []
    for w in roots:
        mus = [mu_estimate(i, w) for i in range(len(samples))]
        mus = [m for m in mus if m is not None]
        if not mus:
            continue
        spread = max(mus) - min(mus)
        mu_p = float(np.mean(mus))
        if spread <= residual_tol * max(abs(max(mus)), 1.0) \
                and ratio_misfit(mu_p, w) <= residual_tol * max(
                    1.0, max(abs(r) for r in ratios_v)):
            consistent.append((mu_p, 1.0 / w))
    # collapse near-identical roots found from adjacent grid cells
    unique = []
    for mu_p, cs_p in consistent:
        if not any(abs(cs_p - c) <= 1e-9 * max(1.0, abs(c))
                   for _, c in unique):
            unique.append((mu_p, cs_p))
    if not unique:
        raise NoRoot("no consistent plus-side speed in the bracket")
    if len(unique) > 1:
        raise AmbiguousRoot(
            f"{len(unique)} plus-side parameter sets are consistent with the "
            "relative amplitudes", roots=tuple(unique),
        )
    return unique[0]


# --- elastic recovery --------------------------------------------------------


def elastic_recover_order0(samples, minus: ElasticSideJet,
                           residual_tol: float = RESIDUAL_TOL,
                           root_tol: float = ROOT_TOL,
                           glancing_tol: float = GLANCING_TOL):
    """(rho_plus, cs_plus, cp_plus) at the interface from order-0 matrices.

    (rho, cs) come from the SH entry r33 alone via the acoustic-style
    closed form; cp follows by bracketed root finding on the P-P entry
    of the 6x6 solve, confirmed by least squares over all entries.
    """
    from scipy.optimize import brentq

    samples = _as_samples(samples)
    group = samples.at_order(0)
    b_values = [s.slowness for s in group]
    r33 = [complex(np.asarray(s.value)[2, 2]).real for s in group]
    mu_minus = minus.rho[0] * minus.cs[0] ** 2
    cs_plus, rho_plus, _, _, _ = _order0_fit(
        b_values, r33, mu_minus, minus.cs[0], residual_tol,
    )

    b_max = max(abs(b) for b in b_values)
    cp_lo = math.sqrt(4.0 / 3.0) * cs_plus * (1.0 + 1e-9)
    cp_hi = (1.0 - 1e-9) / b_max if b_max > 0 else 100.0 * cs_plus
    if cp_hi <= cp_lo:
        raise NoRoot(
            "no admissible plus-side compressional speed: the sample grid "
            "is post-critical for every convex cp"
        )

    probe = group[0]  # smallest |b|: P-P entry is monotone in impedance there
    meas = np.asarray(probe.value, dtype=complex)

    def forward_r(cp, sample):
        plus = ElasticSideJet(Jet([rho_plus]), Jet([cs_plus]), Jet([cp]))
        run = elastic._ElasticRun(sample.covector, minus.truncate(0), plus,
                                  None, 0, glancing_tol)
        return run.order0_matrices()[0]

    def gap(cp):
        return float((forward_r(cp, probe) - meas)[0, 0].real)

    grid = np.linspace(cp_lo, cp_hi, _ROOT_SCAN_POINTS)
    values = [gap(c) for c in grid]
    roots = []
    for i in range(len(grid) - 1):
        if values[i] == 0.0:
            roots.append(grid[i])
        elif values[i] * values[i + 1] < 0.0:
            roots.append(brentq(gap, grid[i], grid[i + 1], xtol=root_tol))
    if not roots:
        raise NoRoot("no compressional speed matches the P-P reflection")

    def total_misfit(cp):
        err = 0.0
        for s in group:
            err += float(np.linalg.norm(
                forward_r(cp, s) - np.asarray(s.value, dtype=complex)))
        return err

    best = min(roots, key=total_misfit)
    misfit = total_misfit(best)
    if misfit > max(residual_tol, 1e3 * root_tol) * max(1.0, len(group)):
        raise InconsistentData(
            f"order-0 elastic matrices disagree with the recovered parameters "
            f"(misfit {misfit:.3e})"
        )
    return rho_plus, cs_plus, best


def elastic_recover_jets(samples, minus: ElasticSideJet, depth: int,
                         geometry=None,
                         residual_tol: float = RESIDUAL_TOL,
                         cond_limit: float = CONDITION_LIMIT,
                         glancing_tol: float = GLANCING_TOL) -> RecoveryReport:
    """Plus-side (rho, cs, cp) jets to `depth` (<= 2) from matrix samples.

    Same baseline-linearization as the acoustic recovery, with all nine
    matrix entries of every sample feeding the per-order least squares.
    With `geometry=None` the principal curvatures join the order -1
    solve as two extra unknowns (two tangential sample directions
    required, as in the acoustic case).
    """
    if depth > elastic.ELASTIC_DEPTH_CAP:
        raise ValueError(
            f"elastic recovery depth is capped at {elastic.ELASTIC_DEPTH_CAP}"
        )
    samples = _as_samples(samples)
    samples.require_orders(depth)
    if minus.depth < depth:
        raise ValueError("minus-side jets shallower than requested depth")
    t0 = time.perf_counter()
    rho0, cs0, cp0 = elastic_recover_order0(
        samples, minus, residual_tol=residual_tol, glancing_tol=glancing_tol)
    residuals, conditions = {0: 0.0}, {0: 1.0}
    timings = {0: time.perf_counter() - t0}

    rho_coeffs, cs_coeffs, cp_coeffs = [rho0], [cs0], [cp0]
    geom = geometry
    recovered_kappas = None

    for k in range(1, depth + 1):
        t_start = time.perf_counter()
        group = samples.at_order(-k)
        covs = [s.covector for s in group]
        measured = np.concatenate(
            [np.asarray(s.value, dtype=complex).ravel() for s in group])
        recover_here = geometry is None and k == 1
        n_unknowns = 5 if recover_here else 3
        if len(_distinct_abs([s.slowness for s in group])) < 3:
            raise DegenerateAngles(
                f"order {-k} needs >= 3 distinct |b| samples"
            )
        if recover_here and _distinct_directions(covs) < 2:
            raise DegenerateAngles(
                "curvature recovery needs samples in two tangential directions"
            )
        minus_k = minus.truncate(k)

        def run(cs_top, cp_top, rho_top, gm):
            plus = ElasticSideJet(Jet(rho_coeffs + [rho_top]),
                                  Jet(cs_coeffs + [cs_top]),
                                  Jet(cp_coeffs + [cp_top]))
            return np.array([
                elastic.forward_series_elastic(cov, minus_k, plus, gm, k,
                                               glancing_tol)[k][0].ravel()
                for cov in covs
            ]).ravel()

        base_geom = geom if geom is not None else InterfaceGeometry()
        base = run(0.0, 0.0, 0.0, base_geom)
        cols = [run(1.0, 0.0, 0.0, base_geom) - base,
                run(0.0, 1.0, 0.0, base_geom) - base,
                run(0.0, 0.0, 1.0, base_geom) - base]
        if recover_here:
            cols.append(run(0.0, 0.0, 0.0, InterfaceGeometry(1.0, 0.0)) - base)
            cols.append(run(0.0, 0.0, 0.0, InterfaceGeometry(0.0, 1.0)) - base)
        sol, res, cond = _lstsq_real(cols, measured - base, -k,
                                     cond_limit, residual_tol)
        cs_coeffs.append(float(sol[0]))
        cp_coeffs.append(float(sol[1]))
        rho_coeffs.append(float(sol[2]))
        if recover_here:
            recovered_kappas = (float(sol[3]), float(sol[4]))
            geom = InterfaceGeometry(*recovered_kappas)
        residuals[-k], conditions[-k] = res, cond
        timings[-k] = time.perf_counter() - t_start
        log.debug("elastic order %d solved: residual %.3e cond %.3e",
                  -k, res, cond)

    plus = ElasticSideJet(Jet(rho_coeffs), Jet(cs_coeffs), Jet(cp_coeffs))
    mean_h = d_h = None
    if recovered_kappas is not None:
        k1, k2 = recovered_kappas
        mean_h = k1 + k2
        d_h = -(k1 * k1 + k2 * k2)
    return RecoveryReport(plus=plus, mean_curvature=mean_h,
                          mean_curvature_derivative=d_h,
                          kappas=recovered_kappas,
                          residuals=residuals, conditions=conditions,
                          timings=timings)
