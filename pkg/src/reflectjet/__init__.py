"""Forward/inverse engine for wave scattering at a material interface.

Forward: the full asymptotic symbol of the acoustic and isotropic-elastic
reflection and transmission operators at a covector, with interface
curvature corrections.  Inverse: reconstruction of the normal-derivative
jet of density and wave speeds below the interface, plus the principal
curvatures, from sampled reflection-symbol data.
"""

import logging
import os

from .jets import Jet, jet_inv, jet_log, jet_mul
from .geometry import (
    CurvatureSpectrum,
    level_set_curvature_profile,
    mean_curvature_normal_derivatives,
)
from .medium import (
    AcousticSideJet,
    Covector,
    ElasticSideJet,
    InterfaceGeometry,
    InterfaceModel,
    Regime,
    classify_regime,
    derive_lame_jets,
    vertical_wavenumber,
)
from .acoustic import (
    AcousticSymbolSeries,
    flux_residual,
    forward_symbols,
    principal_rt,
)
from .elastic import (
    ElasticSymbolSeries,
    PolarizationBasis,
    RecursionMatrices,
    forward_symbols_elastic,
    polarization_basis,
    principal_rt_matrices,
    recursion_matrices,
    sh_reflection,
)
from .inversion import (
    RecoveryReport,
    SymbolSample,
    SymbolSamples,
    acoustic_recover_jets,
    acoustic_recover_order0,
    acoustic_recover_relative,
    elastic_recover_jets,
    elastic_recover_order0,
    shape_operator_from_mean_jet,
)

__version__ = "0.1.0"

_level = os.environ.get("REFLECTJET_LOG")
if _level:
    logging.basicConfig()
    logging.getLogger("reflectjet").setLevel(_level.upper())

__all__ = [
    "Jet",
    "jet_mul",
    "jet_log",
    "jet_inv",
    "CurvatureSpectrum",
    "mean_curvature_normal_derivatives",
    "level_set_curvature_profile",
    "AcousticSideJet",
    "ElasticSideJet",
    "InterfaceGeometry",
    "InterfaceModel",
    "Covector",
    "Regime",
    "classify_regime",
    "vertical_wavenumber",
    "derive_lame_jets",
    "AcousticSymbolSeries",
    "forward_symbols",
    "principal_rt",
    "flux_residual",
    "ElasticSymbolSeries",
    "PolarizationBasis",
    "RecursionMatrices",
    "polarization_basis",
    "principal_rt_matrices",
    "sh_reflection",
    "forward_symbols_elastic",
    "recursion_matrices",
    "SymbolSample",
    "SymbolSamples",
    "RecoveryReport",
    "acoustic_recover_order0",
    "acoustic_recover_jets",
    "acoustic_recover_relative",
    "elastic_recover_order0",
    "elastic_recover_jets",
    "shape_operator_from_mean_jet",
]
