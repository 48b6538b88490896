"""Conjugate conics in neutral four-space and the ultrahyperbolic mean-value property."""

from .conics import (Conic, ConicPair, PairClass, classify_pair, extract_case2_data, line_pair,
                     pair_from_basis, parabola_pair, parametrize, standard_pair)
from .conformal import ConformalMap, Dilation, Inversion, LinearIsometry, Translation, from_generators, lift
from .dpc import Hypersphere, Kind, dpc_from_hypersphere, hypersphere_from_dpc, phi
from .errors import ConicsError
from .harness import asgeirsson_check, generate_pairs, integrate_conic, mean_value_check, run_grid
from .lines import LineABCD, PluckerLine, fit_quadric, verify_rulsurf
from .neutral import Signature, Subspace33, inner22, inner33, signature
from .quadrature import QuadratureSpec, Status
from .uhe import GaussianBlob, PlaneWave, Quadratic, XRayGaussianMix, builtin_solutions, uhe_certificate

__version__ = "0.1.0"

__all__ = [
    "Conic", "ConicPair", "PairClass", "classify_pair", "extract_case2_data", "line_pair",
    "pair_from_basis", "parabola_pair", "parametrize", "standard_pair",
    "ConformalMap", "Dilation", "Inversion", "LinearIsometry", "Translation", "from_generators", "lift",
    "Hypersphere", "Kind", "dpc_from_hypersphere", "hypersphere_from_dpc", "phi",
    "ConicsError",
    "asgeirsson_check", "generate_pairs", "integrate_conic", "mean_value_check", "run_grid",
    "LineABCD", "PluckerLine", "fit_quadric", "verify_rulsurf",
    "Signature", "Subspace33", "inner22", "inner33", "signature",
    "QuadratureSpec", "Status",
    "GaussianBlob", "PlaneWave", "Quadratic", "XRayGaussianMix", "builtin_solutions", "uhe_certificate",
]
