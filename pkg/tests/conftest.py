import numpy as np
import pytest

from reflectjet.medium import Covector


def max_rel_err(recovered_jet, true_jet):
    return max(abs(r - t) / max(abs(t), 1e-12)
               for r, t in zip(recovered_jet.coeffs, true_jet.coeffs))


def two_direction_grid(model, count, tau=1.0, fraction=0.8):
    """Slowness grid along both tangential axes (curvature recovery)."""
    b_crit = model.critical_slowness()
    bs = np.linspace(0.0, fraction * b_crit, count)
    covs = [Covector(tau, (float(b) * tau, 0.0)) for b in bs]
    covs += [Covector(tau, (0.0, float(b) * tau)) for b in bs[1:]]
    return covs


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
