"""Reconstruction: closed-form order 0, linearized jet recovery, relative
amplitudes, elastic recovery, and the curvature factorization."""

import numpy as np
import pytest

from conftest import max_rel_err, two_direction_grid

from reflectjet.acoustic import forward_symbols
from reflectjet.elastic import forward_symbols_elastic, sh_reflection
from reflectjet.errors import (
    AmbiguousRoot,
    ComplexCurvatures,
    DegenerateAngles,
    InconsistentData,
    MissingOrder,
)
from reflectjet.inversion import (
    SymbolSample,
    SymbolSamples,
    acoustic_recover_jets,
    acoustic_recover_order0,
    acoustic_recover_relative,
    elastic_recover_jets,
    elastic_recover_order0,
    shape_operator_from_mean_jet,
)
from reflectjet.jets import Jet
from reflectjet.medium import (
    AcousticSideJet,
    Covector,
    ElasticSideJet,
    InterfaceGeometry,
    InterfaceModel,
)
from reflectjet.sampling import (
    hyperbolic_grid,
    random_acoustic_model,
    random_elastic_model,
)

CONTRAST = InterfaceModel(
    AcousticSideJet(Jet([1.0]), Jet([1.0])),
    AcousticSideJet(Jet([1.0]), Jet([2.0])),
)


def _acoustic_samples(model, covs, depth):
    return SymbolSamples.from_acoustic_series(
        [forward_symbols(c, model, depth) for c in covs])


def _elastic_samples(model, covs, depth):
    return SymbolSamples.from_elastic_series(
        [forward_symbols_elastic(c, model, depth) for c in covs])


# --- order 0 ------------------------------------------------------------------


def test_order0_two_angle_example():
    covs = [Covector(1.0, (0.0, 0.0)), Covector(1.0, (0.3, 0.0))]
    samples = _acoustic_samples(CONTRAST, covs, 0)
    cs_plus, rho_plus = acoustic_recover_order0(samples, CONTRAST.minus)
    assert cs_plus == pytest.approx(2.0, rel=1e-12)
    assert rho_plus == pytest.approx(1.0, rel=1e-12)


def test_order0_transparent():
    side = AcousticSideJet(Jet([1.2]), Jet([0.9]))
    model = InterfaceModel(side, side)
    covs = [Covector(1.0, (0.0, 0.0)), Covector(1.0, (0.4, 0.0))]
    cs_plus, rho_plus = acoustic_recover_order0(
        _acoustic_samples(model, covs, 0), side)
    assert cs_plus == pytest.approx(0.9, rel=1e-9)
    assert rho_plus == pytest.approx(1.2, rel=1e-9)


def test_order0_degenerate_angles():
    covs = [Covector(1.0, (0.3, 0.0)), Covector(-1.0, (-0.3, 0.0))]
    samples = _acoustic_samples(CONTRAST, covs, 0)
    with pytest.raises(DegenerateAngles):
        acoustic_recover_order0(samples, CONTRAST.minus)


def test_order0_inconsistent_samples():
    covs = [Covector(1.0, (0.0, 0.0)), Covector(1.0, (0.2, 0.0)),
            Covector(1.0, (0.35, 0.0))]
    samples = list(_acoustic_samples(CONTRAST, covs, 0).samples)
    broken = samples[:-1] + [SymbolSample(samples[-1].covector, 0,
                                          samples[-1].value + 0.05)]
    with pytest.raises(InconsistentData):
        acoustic_recover_order0(broken, CONTRAST.minus)


# --- jet recovery -------------------------------------------------------------


def test_flat_round_trip_depth3(rng):
    model = random_acoustic_model(rng, 3)
    covs = hyperbolic_grid(model, 6)
    report = acoustic_recover_jets(_acoustic_samples(model, covs, 3),
                                   model.minus, 3,
                                   geometry=InterfaceGeometry())
    assert max_rel_err(report.plus.rho, model.plus.rho) <= 1e-6
    assert max_rel_err(report.plus.cs, model.plus.cs) <= 1e-6
    assert all(v <= 1e-8 for v in report.residuals.values())


def test_depth0_reduces_to_order0(rng):
    model = random_acoustic_model(rng, 0)
    covs = hyperbolic_grid(model, 4)
    samples = _acoustic_samples(model, covs, 0)
    report = acoustic_recover_jets(samples, model.minus, 0,
                                   geometry=InterfaceGeometry())
    direct = acoustic_recover_order0(samples, model.minus)
    assert report.plus.cs[0] == direct[0]
    assert report.plus.rho[0] == direct[1]


def test_curved_round_trip_recovers_kappas(rng):
    model = random_acoustic_model(rng, 2, contrast=4.0, min_contrast=1.3,
                                  curved=True)
    covs = two_direction_grid(model, 5)
    report = acoustic_recover_jets(_acoustic_samples(model, covs, 2),
                                   model.minus, 2, geometry=None)
    assert max_rel_err(report.plus.rho, model.plus.rho) <= 1e-8
    assert max_rel_err(report.plus.cs, model.plus.cs) <= 1e-8
    rec = sorted(report.kappas)
    true = sorted((model.geometry.kappa1, model.geometry.kappa2))
    assert max(abs(a - b) for a, b in zip(rec, true)) <= 1e-8
    assert report.mean_curvature == pytest.approx(sum(true), abs=1e-8)


def test_curved_recovery_named_pair():
    # kappa = (0.5, -0.2): H = 0.3 and the unordered pair come back
    model = InterfaceModel(
        AcousticSideJet(Jet([1.1, 0.3, -0.2]), Jet([1.0, -0.2, 0.4])),
        AcousticSideJet(Jet([0.9, -0.4, 0.3]), Jet([1.5, 0.5, -0.3])),
        InterfaceGeometry(0.5, -0.2),
    )
    covs = two_direction_grid(model, 5)
    report = acoustic_recover_jets(_acoustic_samples(model, covs, 2),
                                   model.minus, 2, geometry=None)
    assert report.mean_curvature == pytest.approx(0.3, abs=1e-9)
    assert sorted(report.kappas) == pytest.approx([-0.2, 0.5], abs=1e-9)


def test_curvature_needs_two_directions(rng):
    model = random_acoustic_model(rng, 2, curved=True)
    covs = hyperbolic_grid(model, 8)  # single direction
    with pytest.raises(DegenerateAngles):
        acoustic_recover_jets(_acoustic_samples(model, covs, 2),
                              model.minus, 2, geometry=None)


def test_known_curved_geometry(rng):
    model = random_acoustic_model(rng, 3, curved=True)
    covs = hyperbolic_grid(model, 8)
    report = acoustic_recover_jets(_acoustic_samples(model, covs, 3),
                                   model.minus, 3, geometry=model.geometry)
    assert max_rel_err(report.plus.rho, model.plus.rho) <= 1e-7
    assert max_rel_err(report.plus.cs, model.plus.cs) <= 1e-7
    assert report.kappas is None


def test_missing_order():
    covs = [Covector(1.0, (0.0, 0.0)), Covector(1.0, (0.2, 0.0)),
            Covector(1.0, (0.35, 0.0))]
    samples = _acoustic_samples(CONTRAST, covs, 0)
    with pytest.raises(MissingOrder):
        acoustic_recover_jets(samples, CONTRAST.minus, 1,
                              geometry=InterfaceGeometry())


def test_order_independence(rng):
    model = random_acoustic_model(rng, 2)
    covs = hyperbolic_grid(model, 5)
    samples = list(_acoustic_samples(model, covs, 2).samples)
    rep_a = acoustic_recover_jets(SymbolSamples(samples), model.minus, 2,
                                  geometry=InterfaceGeometry())
    rep_b = acoustic_recover_jets(SymbolSamples(samples[::-1]), model.minus, 2,
                                  geometry=InterfaceGeometry())
    assert rep_a.plus.rho == rep_b.plus.rho
    assert rep_a.plus.cs == rep_b.plus.cs


def test_angle_set_invariance(rng):
    model = random_acoustic_model(rng, 2)
    grid_a = hyperbolic_grid(model, 5)
    b_crit = model.critical_slowness()
    grid_b = [Covector(1.0, (b, 0.0))
              for b in np.linspace(0.1, 0.7, 6) * b_crit]
    rep_a = acoustic_recover_jets(_acoustic_samples(model, grid_a, 2),
                                  model.minus, 2, geometry=InterfaceGeometry())
    rep_b = acoustic_recover_jets(_acoustic_samples(model, grid_b, 2),
                                  model.minus, 2, geometry=InterfaceGeometry())
    assert max_rel_err(rep_a.plus.rho, rep_b.plus.rho) <= 1e-8
    assert max_rel_err(rep_a.plus.cs, rep_b.plus.cs) <= 1e-8


def test_recovered_jets_reproduce_transmission(rng):
    model = random_acoustic_model(rng, 3)
    covs = hyperbolic_grid(model, 6)
    series = [forward_symbols(c, model, 3) for c in covs]
    report = acoustic_recover_jets(SymbolSamples.from_acoustic_series(series),
                                   model.minus, 3, geometry=InterfaceGeometry())
    rebuilt = InterfaceModel(model.minus, report.plus, model.geometry)
    for cov, truth in zip(covs, series):
        redo = forward_symbols(cov, rebuilt, 3)
        for (_, _, t_true), (_, _, t_rec) in zip(truth.orders, redo.orders):
            assert abs(t_rec - t_true) <= 1e-8


def test_symbol_is_affine_in_top_unknowns(rng):
    # the linearized per-order solves are exact because the order -k
    # symbol is affine in the k-th derivative values (at any fixed
    # geometry) and, at order -1 only, in the principal curvatures;
    # deeper orders are nonlinear in the curvatures, which is why the
    # recovery pins them at order -1 and fixes them afterwards
    from reflectjet.acoustic import forward_series

    minus = AcousticSideJet(Jet([1.1, 0.3, -0.2]), Jet([0.9, 0.2, 0.1]))
    cov = Covector(1.0, (0.4, 0.2))
    geom = InterfaceGeometry(0.6, -0.3)

    def run2(c2, r2):
        plus = AcousticSideJet(Jet([1.4, -0.3, r2]), Jet([1.2, 0.5, c2]))
        return forward_series(cov, minus, plus, geom, 2)[2][0]

    base = run2(0.0, 0.0)
    col_c = run2(1.0, 0.0) - base
    col_r = run2(0.0, 1.0) - base
    for _ in range(10):
        c2, r2 = rng.uniform(-1.0, 1.0, size=2)
        assert run2(c2, r2) - base == pytest.approx(c2 * col_c + r2 * col_r,
                                                    rel=1e-11, abs=1e-13)

    def run1(k1, k2):
        plus = AcousticSideJet(Jet([1.4, -0.3]), Jet([1.2, 0.5]))
        return forward_series(cov, minus.truncate(1), plus,
                              InterfaceGeometry(k1, k2), 1)[1][0]

    base1 = run1(0.0, 0.0)
    col1 = run1(1.0, 0.0) - base1
    col2 = run1(0.0, 1.0) - base1
    for _ in range(5):
        k1, k2 = rng.uniform(-1.0, 1.0, size=2)
        assert run1(k1, k2) - base1 == pytest.approx(k1 * col1 + k2 * col2,
                                                     rel=1e-11, abs=1e-14)


# --- relative amplitudes ------------------------------------------------------


def _relative_samples(model, b_ref, bs, noise=0.0, rng=None):
    ref = forward_symbols(Covector(1.0, (b_ref, 0.0)), model, 0).orders[0][1]
    out = []
    for b in bs:
        val = forward_symbols(Covector(1.0, (b, 0.0)), model, 0).orders[0][1]
        ratio = (val / ref).real
        if noise:
            ratio *= 1.0 + noise * rng.uniform(-1.0, 1.0)
        out.append(SymbolSample(Covector(1.0, (b, 0.0)), 0, ratio))
    return out


def test_relative_round_trip():
    samples = _relative_samples(CONTRAST, 0.05, [0.15, 0.25, 0.35, 0.42])
    mu_plus, cs_plus = acoustic_recover_relative(
        samples, CONTRAST.minus, Covector(1.0, (0.05, 0.0)))
    assert mu_plus == pytest.approx(4.0, rel=1e-9)
    assert cs_plus == pytest.approx(2.0, rel=1e-9)


def test_relative_transparent_is_ambiguous():
    side = AcousticSideJet(Jet([1.0]), Jet([1.0]))
    model = InterfaceModel(side, side)
    samples = [SymbolSample(Covector(1.0, (b, 0.0)), 0, 1.0)
               for b in (0.2, 0.3, 0.4)]
    with pytest.raises(AmbiguousRoot):
        acoustic_recover_relative(samples, side, Covector(1.0, (0.05, 0.0)))


def test_relative_noise_sensitivity(rng):
    samples = _relative_samples(CONTRAST, 0.05, [0.15, 0.25, 0.35, 0.42],
                                noise=1e-8, rng=rng)
    mu_plus, cs_plus = acoustic_recover_relative(
        samples, CONTRAST.minus, Covector(1.0, (0.05, 0.0)),
        residual_tol=1e-4)
    assert abs(mu_plus - 4.0) <= 1e-5 * 4.0
    assert abs(cs_plus - 2.0) <= 1e-5 * 2.0


# --- elastic ------------------------------------------------------------------


def test_elastic_order0_round_trip():
    minus = ElasticSideJet(Jet([1.0]), Jet([1.0]), Jet([2.0]))
    plus = ElasticSideJet(Jet([1.5]), Jet([1.2]), Jet([2.5]))
    model = InterfaceModel(minus, plus)
    covs = hyperbolic_grid(model, 6)
    rho, cs, cp = elastic_recover_order0(_elastic_samples(model, covs, 0),
                                         minus)
    assert rho == pytest.approx(1.5, rel=1e-8)
    assert cs == pytest.approx(1.2, rel=1e-8)
    assert cp == pytest.approx(2.5, rel=1e-8)


def test_elastic_order0_identical_media(rng):
    side = ElasticSideJet(Jet([1.1]), Jet([0.9]), Jet([1.8]))
    model = InterfaceModel(side, side)
    covs = hyperbolic_grid(model, 5)
    rho, cs, cp = elastic_recover_order0(_elastic_samples(model, covs, 0),
                                         side)
    assert rho == pytest.approx(1.1, rel=1e-7)
    assert cs == pytest.approx(0.9, rel=1e-7)
    assert cp == pytest.approx(1.8, rel=1e-6)


def test_r33_alone_determines_rho_cs(rng):
    # feed the closed-form SH values only: (rho+, cs+) come out without
    # any P-SV entry
    model = random_elastic_model(rng, 0)
    covs = hyperbolic_grid(model, 5)
    samples = [SymbolSample(c, 0, sh_reflection(c, model.minus, model.plus))
               for c in covs]
    from reflectjet.inversion import _order0_fit
    mu_minus = model.minus.rho[0] * model.minus.cs[0] ** 2
    cs_plus, rho_plus, _, _, _ = _order0_fit(
        [s.slowness for s in samples], [s.value for s in samples],
        mu_minus, model.minus.cs[0], 1e-8)
    assert cs_plus == pytest.approx(model.plus.cs[0], rel=1e-9)
    assert rho_plus == pytest.approx(model.plus.rho[0], rel=1e-9)


def test_elastic_jets_round_trip_depth1(rng):
    model = random_elastic_model(rng, 1)
    covs = hyperbolic_grid(model, 6)
    report = elastic_recover_jets(_elastic_samples(model, covs, 1),
                                  model.minus, 1, geometry=InterfaceGeometry())
    assert max_rel_err(report.plus.rho, model.plus.rho) <= 1e-6
    assert max_rel_err(report.plus.cs, model.plus.cs) <= 1e-6
    assert max_rel_err(report.plus.cp, model.plus.cp) <= 1e-6


def test_elastic_null_cp_derivative(rng):
    minus = ElasticSideJet(Jet([1.0, 0.2]), Jet([1.0, -0.1]), Jet([2.0, 0.3]))
    plus = ElasticSideJet(Jet([1.3, -0.4]), Jet([1.1, 0.5]), Jet([2.2, 0.0]))
    model = InterfaceModel(minus, plus)
    covs = hyperbolic_grid(model, 6)
    report = elastic_recover_jets(_elastic_samples(model, covs, 1),
                                  minus, 1, geometry=InterfaceGeometry())
    assert abs(report.plus.cp[1]) <= 1e-9


def test_elastic_curved_round_trip(rng):
    model = random_elastic_model(rng, 1, curved=True)
    covs = two_direction_grid(model, 4)
    report = elastic_recover_jets(_elastic_samples(model, covs, 1),
                                  model.minus, 1, geometry=None)
    assert max_rel_err(report.plus.rho, model.plus.rho) <= 1e-8
    rec = sorted(report.kappas)
    true = sorted((model.geometry.kappa1, model.geometry.kappa2))
    assert max(abs(a - b) for a, b in zip(rec, true)) <= 1e-7


# --- curvature factorization --------------------------------------------------


def test_shape_operator_sphere():
    r = 1.7
    k1, k2 = shape_operator_from_mean_jet(2.0 / r, -2.0 / r ** 2)
    assert k1 == pytest.approx(1.0 / r)
    assert k2 == pytest.approx(1.0 / r)


def test_shape_operator_mixed_pair():
    pair = shape_operator_from_mean_jet(0.3, -(0.25 + 0.04))
    assert sorted(pair) == pytest.approx([-0.2, 0.5])


def test_shape_operator_flat():
    assert shape_operator_from_mean_jet(0.0, 0.0) == (0.0, 0.0)


def test_shape_operator_complex_rejected():
    with pytest.raises(ComplexCurvatures):
        shape_operator_from_mean_jet(0.0, 1.0)
    # discriminant barely negative: snapped to the double root
    k1, k2 = shape_operator_from_mean_jet(1.0, -0.5 + 1e-12)
    assert k1 == k2 == pytest.approx(0.5)
