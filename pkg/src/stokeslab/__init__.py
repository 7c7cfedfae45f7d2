"""Spectral laboratory for the Stokes problem with prescribed divergence on the unit disc.

Modules
-------
disc            polar grid, fields, differential operators and quadrature
elliptic        Dirichlet and Neumann Poisson solves
norms           space-time, dual and trace norms
boundary        boundary traces, extension kernel and divergence-free lift
divsolve        right inverse of the divergence with zero boundary values
stokes          time-dependent Stokes solver and a priori estimate report
counterexample  explicit weak solution that fails to be strong
localization    cutoff localization, iteration lemma and Young splitting
cli             command-line front end
"""

__version__ = "0.1.0"

from .boundary import BoundaryTrace, ExtensionKernel, solenoidal_lift
from .counterexample import CounterexampleSetup, norm_table
from .disc import DiscField, DiscGrid, SpaceTimeField, SpaceTimeGrid, load_field, save_field
from .divsolve import solve_div
from .elliptic import solve_dirichlet
from .norms import NormOrder, NormReport
from .stokes import ProblemData, solve_stokes

__all__ = [
    "BoundaryTrace",
    "CounterexampleSetup",
    "DiscField",
    "DiscGrid",
    "ExtensionKernel",
    "NormOrder",
    "NormReport",
    "ProblemData",
    "SpaceTimeField",
    "SpaceTimeGrid",
    "load_field",
    "norm_table",
    "save_field",
    "solenoidal_lift",
    "solve_dirichlet",
    "solve_div",
    "solve_stokes",
    "__version__",
]
