"""Truncated jet (normal-derivative) arithmetic.

A jet stores raw derivative values (f, f', f'', ...) of a scalar field
along the interface normal, truncated at a fixed depth.  Coefficients are
*not* factorial-normalized Taylor coefficients: coeffs[k] is the k-th
derivative itself, so the product rule is the Leibniz convolution with
binomial weights.  All recurrences below are closed-form; the only error
is floating-point round-off.

Coefficients may be real or complex (amplitude jets in the forward
engines are complex).
"""

from __future__ import annotations

import cmath
import math

from .errors import DepthMismatch, DivisionByZeroJet, NonPositiveBase

_BINOM_ROWS = [(1,)]


def _binom_row(n: int):
    """Row n of Pascal's triangle, cached."""
    while len(_BINOM_ROWS) <= n:
        prev = _BINOM_ROWS[-1]
        row = (1,) + tuple(prev[i] + prev[i + 1] for i in range(len(prev) - 1)) + (1,)
        _BINOM_ROWS.append(row)
    return _BINOM_ROWS[n]


class Jet:
    """Derivative values (coeffs[k] = d^k f / d nu^k at the interface)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        coeffs = tuple(coeffs)
        if not coeffs:
            raise ValueError("a jet needs at least the value coefficient")
        self.coeffs = coeffs

    @property
    def depth(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k):
        return self.coeffs[k]

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __repr__(self):
        return f"Jet({list(self.coeffs)!r})"

    def __eq__(self, other):
        return isinstance(other, Jet) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    # operator sugar for the engines; the primary surface is the
    # module-level functions below
    def __mul__(self, other):
        if isinstance(other, Jet):
            return jet_mul(self, other)
        return jet_scale(self, other)

    __rmul__ = __mul__

    def __add__(self, other):
        return jet_add(self, other)

    def __sub__(self, other):
        return jet_add(self, jet_scale(other, -1.0))

    def __neg__(self):
        return jet_scale(self, -1.0)

    def truncate(self, depth: int) -> "Jet":
        """Drop derivatives above `depth` (extend with zeros if shorter)."""
        n = depth + 1
        if len(self.coeffs) >= n:
            return Jet(self.coeffs[:n])
        return Jet(self.coeffs + (0.0,) * (n - len(self.coeffs)))


def constant_jet(value, depth: int) -> Jet:
    return Jet((value,) + (0.0,) * depth)


def identity_jet(depth: int) -> Jet:
    """The multiplicative identity [1, 0, ..., 0]."""
    return constant_jet(1.0, depth)


def _check_depths(a: Jet, b: Jet):
    if a.depth != b.depth:
        raise DepthMismatch(f"jet depths differ: {a.depth} vs {b.depth}")


def jet_mul(a: Jet, b: Jet) -> Jet:
    """Leibniz product: out[k] = sum_j C(k,j) a[j] b[k-j]."""
    _check_depths(a, b)
    ac, bc = a.coeffs, b.coeffs
    out = []
    for k in range(len(ac)):
        row = _binom_row(k)
        out.append(sum(row[j] * ac[j] * bc[k - j] for j in range(k + 1)))
    return Jet(out)


def jet_add(a: Jet, b: Jet) -> Jet:
    _check_depths(a, b)
    return Jet(x + y for x, y in zip(a.coeffs, b.coeffs))


def jet_scale(a: Jet, s) -> Jet:
    return Jet(s * x for x in a.coeffs)


def jet_inv(a: Jet) -> Jet:
    """Multiplicative inverse: jet_mul(a, jet_inv(a)) == identity."""
    if a.coeffs[0] == 0:
        raise DivisionByZeroJet("jet value at the interface is zero")
    ac = a.coeffs
    inv0 = 1.0 / ac[0]
    out = [inv0]
    for k in range(1, len(ac)):
        row = _binom_row(k)
        acc = sum(row[j] * ac[j] * out[k - j] for j in range(1, k + 1))
        out.append(-acc * inv0)
    return Jet(out)


def jet_log(a: Jet) -> Jet:
    """Jet of log(f), from f' = f * (log f)' and Leibniz.

    Requires a real positive value coefficient; derivatives may be any
    sign.  out[m+1] solves a[m+1] = sum_j C(m,j) a[j] out[m+1-j].
    """
    a0 = a.coeffs[0]
    if isinstance(a0, complex) or not a0 > 0.0:
        raise NonPositiveBase("jet_log requires a positive value at the interface")
    ac = a.coeffs
    out = [math.log(a0)]
    for m in range(len(ac) - 1):
        row = _binom_row(m)
        acc = sum(row[j] * ac[j] * out[m + 1 - j] for j in range(1, m + 1))
        out.append((ac[m + 1] - acc) / a0)
    return Jet(out)


def jet_exp(a: Jet) -> Jet:
    """Jet of exp(f): out' = out * f'."""
    exp0 = cmath.exp(a.coeffs[0]) if isinstance(a.coeffs[0], complex) \
        else math.exp(a.coeffs[0])
    out = [exp0]
    ac = a.coeffs
    for m in range(len(ac) - 1):
        row = _binom_row(m)
        out.append(sum(row[j] * out[j] * ac[m + 1 - j] for j in range(m + 1)))
    return Jet(out)


def jet_sqrt(a: Jet) -> Jet:
    """Jet of sqrt(f) via exp(log(f)/2); needs a[0] > 0."""
    return jet_exp(jet_scale(jet_log(a), 0.5))


def jet_derivative(a: Jet) -> Jet:
    """Shift: the jet of f' (depth drops by one)."""
    if a.depth == 0:
        raise DepthMismatch("cannot differentiate a depth-0 jet")
    return Jet(a.coeffs[1:])


def jet_pow_int(a: Jet, n: int) -> Jet:
    """a**n for small non-negative integer n."""
    out = identity_jet(a.depth)
    for _ in range(n):
        out = jet_mul(out, a)
    return out
