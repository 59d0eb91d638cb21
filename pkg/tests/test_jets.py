"""Jet arithmetic: worked values, algebraic properties, and agreement
with independent differentiation oracles."""

import math
from fractions import Fraction

import pytest

from reflectjet.errors import DepthMismatch, DivisionByZeroJet, NonPositiveBase
from reflectjet.geometry import richardson_derivative
from reflectjet.jets import (
    Jet,
    identity_jet,
    jet_derivative,
    jet_exp,
    jet_inv,
    jet_log,
    jet_mul,
    jet_sqrt,
)


def test_mul_identity():
    assert jet_mul(Jet([1, 0, 0]), Jet([2.5, -1.0, 3.0])) == Jet([2.5, -1.0, 3.0])


def test_mul_second_derivative():
    # (fg)'' = f''g + 2 f'g' + fg'' = 3 + 4 + 0
    assert jet_mul(Jet([1, 2, 3]), Jet([1, 1, 0])) == Jet([1, 3, 7])


def test_mul_constants():
    assert jet_mul(Jet([2.0, 0.0]), Jet([3.0, 0.0])) == Jet([6.0, 0.0])


def test_log_unit_slope():
    e = math.e
    out = jet_log(Jet([e, e]))
    assert out[0] == pytest.approx(1.0) and out[1] == pytest.approx(1.0)


def test_log_of_one():
    assert jet_log(Jet([1.0, 0.0, 0.0])) == Jet([0.0, 0.0, 0.0])


def test_log_second_derivative():
    # (log f)'' = f''/f - (f'/f)^2 = 1 - 4
    out = jet_log(Jet([2.0, 4.0, 2.0]))
    assert out[0] == pytest.approx(math.log(2.0))
    assert out[1] == pytest.approx(2.0)
    assert out[2] == pytest.approx(-3.0)


def test_inv_examples():
    assert jet_inv(Jet([1.0, 0.0, 0.0])) == Jet([1.0, 0.0, 0.0])
    assert jet_inv(Jet([2.0, 0.0])) == Jet([0.5, 0.0])
    out = jet_inv(Jet([1.0, 1.0, 0.0]))
    # (1/f)'' = 2(f')^2/f^3 - f''/f^2 = 2
    assert out == Jet([1.0, -1.0, 2.0])


def test_errors():
    with pytest.raises(DepthMismatch):
        jet_mul(Jet([1.0, 0.0]), Jet([1.0]))
    with pytest.raises(NonPositiveBase):
        jet_log(Jet([0.0, 1.0]))
    with pytest.raises(NonPositiveBase):
        jet_log(Jet([-2.0, 1.0]))
    with pytest.raises(DivisionByZeroJet):
        jet_inv(Jet([0.0, 1.0]))


def test_associativity(rng):
    for _ in range(50):
        a, b, c = (Jet(rng.normal(size=5)) for _ in range(3))
        left = jet_mul(a, jet_mul(b, c))
        right = jet_mul(jet_mul(a, b), c)
        scale = max(max(abs(x) for x in left.coeffs), 1.0)
        assert all(abs(x - y) <= 1e-12 * scale
                   for x, y in zip(left.coeffs, right.coeffs))


def test_inverse_round_trip(rng):
    for _ in range(50):
        coeffs = rng.normal(size=5)
        coeffs[0] = rng.uniform(0.5, 2.0) * (1 if rng.random() < 0.5 else -1)
        a = Jet(coeffs)
        inv = jet_inv(a)
        prod = jet_mul(a, inv)
        scale = 16.0 * max(abs(x) for x in a.coeffs) \
            * max(abs(x) for x in inv.coeffs)
        assert abs(prod[0] - 1.0) <= 1e-12 * max(scale, 1.0)
        assert all(abs(x) <= 1e-12 * max(scale, 1.0) for x in prod.coeffs[1:])


def test_exp_log_round_trip_against_brute_force(rng):
    # reconstruct a from jet_log(a) with an independently written
    # exponential recurrence e' = e * l'
    from reflectjet.jets import _binom_row

    for _ in range(50):
        coeffs = rng.normal(size=5)
        coeffs[0] = rng.uniform(0.5, 3.0)
        a = Jet(coeffs)
        lg = jet_log(a)
        rebuilt = [math.exp(lg[0])]
        for m in range(4):
            row = _binom_row(m)
            rebuilt.append(sum(row[j] * rebuilt[j] * lg[m + 1 - j]
                               for j in range(m + 1)))
        assert all(abs(x - y) <= 1e-12 * max(abs(y), 1.0)
                   for x, y in zip(rebuilt, a.coeffs))


def _poly_from_jet(a):
    """f(s) = sum a[k] s^k / k! realizing the jet's derivative values.

    Exact when fed Fraction arguments (coefficients are binary64, hence
    exact rationals)."""
    coeffs = [Fraction(float(c)) / math.factorial(k)
              for k, c in enumerate(a.coeffs)]

    def f(s):
        return sum(c * s ** k for k, c in enumerate(coeffs))
    return f


def test_finite_difference_oracle(rng):
    # numerically differentiate f*g, 1/f, log f built from sampled
    # polynomials; every operation must agree at 1e-6 for depth <= 4.
    # mul and inv are rational, so their differences run exactly; log
    # uses float differences on mildly varying jets.
    h = Fraction(1, 100)
    for _ in range(10):
        ac = rng.uniform(-0.4, 0.4, size=5)
        bc = rng.uniform(-0.4, 0.4, size=5)
        ac[0] = rng.uniform(1.0, 2.0)
        bc[0] = rng.uniform(1.0, 2.0)
        a, b = Jet(ac), Jet(bc)
        fa, fb = _poly_from_jet(a), _poly_from_jet(b)

        prod = jet_mul(a, b)
        fd = [float(richardson_derivative(lambda s: fa(s) * fb(s),
                                          Fraction(0), k, h))
              for k in range(5)]
        assert all(abs(x - y) <= 1e-6 * max(abs(y), 1.0)
                   for x, y in zip(prod.coeffs, fd))

        inv = jet_inv(a)
        fd = [float(richardson_derivative(lambda s: 1 / fa(s),
                                          Fraction(0), k, h))
              for k in range(5)]
        assert all(abs(x - y) <= 1e-6 * max(abs(y), 1.0)
                   for x, y in zip(inv.coeffs, fd))

        lg = jet_log(a)
        fd = [richardson_derivative(lambda s: math.log(fa(Fraction(s).limit_denominator(10**12))),
                                    0.0, k, 2e-2)
              for k in range(5)]
        assert all(abs(x - y) <= 1e-6 * max(abs(y), 1.0)
                   for x, y in zip(lg.coeffs, fd))


def test_sqrt_and_exp_consistency(rng):
    for _ in range(20):
        coeffs = rng.normal(size=4)
        coeffs[0] = rng.uniform(0.5, 4.0)
        a = Jet(coeffs)
        root = jet_sqrt(a)
        back = jet_mul(root, root)
        assert all(abs(x - y) <= 1e-12 * max(abs(y), 1.0)
                   for x, y in zip(back.coeffs, a.coeffs))
        assert jet_exp(Jet([0.0, 0.0])) == identity_jet(1)


def test_derivative_shift():
    assert jet_derivative(Jet([5.0, 1.0, 2.0])) == Jet([1.0, 2.0])
    with pytest.raises(DepthMismatch):
        jet_derivative(Jet([1.0]))


def test_truncate_pads_and_cuts():
    j = Jet([1.0, 2.0, 3.0])
    assert j.truncate(1) == Jet([1.0, 2.0])
    assert j.truncate(4) == Jet([1.0, 2.0, 3.0, 0.0, 0.0])
