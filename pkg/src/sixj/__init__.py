"""Wigner 6j-symbols, exact and uniform."""
from .errors import SixJError, SolverError, ValidationError
from .exact import SixJArguments, eigen_6j_oracle, sixj_exact, sixj_exact_rational, wigner_d, wigner_d_matrix
from .kernels import BACKEND
from .tetra import Tetrahedron, ponzano_regge_phase
from .uniform import ponzano_regge_estimate, solve_beta, uniform_sixj

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "SixJArguments", "SixJError", "SolverError", "Tetrahedron", "ValidationError",
    "eigen_6j_oracle", "ponzano_regge_estimate", "ponzano_regge_phase", "sixj_exact",
    "sixj_exact_rational", "solve_beta", "uniform_sixj", "wigner_d", "wigner_d_matrix",
]
