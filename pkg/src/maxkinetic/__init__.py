"""Numerics for Maxwell-type kinetic models in Fourier/Laplace representation.

Model construction, spectral analysis of the linearized gain operator,
time evolution of characteristic functions, self-similar profile solving,
moment/tail analysis, and reconstruction of velocity densities.
"""

from .gridfn import GridFunction, make_grid
from .kernels import AffineMap, SKernel
from .models import (InteractionModel, MultilinearOperator, MultilinearTerm,
                     make_atomic_model, make_model_A, make_model_B,
                     make_model_C, make_multilinear)
from .operators import apply_L, apply_gamma, lipschitz_gap
from .evolution import (Trajectory, contraction_metric, decay_rate_fit,
                        evolve, rescale)
from .selfsimilar import (SelfSimilarProfile, check_profile, gamma_mu,
                          solve_profile)
from .spectral import (SpectralProfile, classify, find_p0, lambda_p, mu_p,
                       mu_prime, spectral_profile, tail_root, theta_star)
from .moments import (MomentTable, moment_recursion, profile_moment_check,
                      tail_classification)
from .transforms import (RadialDistribution, maxwellian_density,
                         radial_inverse_fourier_3d)

__version__ = "0.1.0"

__all__ = [
    "AffineMap", "GridFunction", "InteractionModel", "MomentTable",
    "MultilinearOperator", "MultilinearTerm", "RadialDistribution",
    "SelfSimilarProfile", "SpectralProfile", "Trajectory",
    "apply_L", "apply_gamma", "check_profile", "classify",
    "contraction_metric", "decay_rate_fit", "evolve", "find_p0", "gamma_mu",
    "lambda_p", "lipschitz_gap", "make_atomic_model", "make_grid",
    "make_model_A", "make_model_B", "make_model_C", "make_multilinear",
    "maxwellian_density", "moment_recursion", "mu_p", "mu_prime",
    "profile_moment_check", "radial_inverse_fourier_3d", "rescale",
    "solve_profile", "spectral_profile", "tail_classification", "tail_root",
    "theta_star",
]
