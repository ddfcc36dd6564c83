"""Local times of d-dimensional simple random walks on lattice subsets.

Simulation side: reproducible walker ensembles (counter-based streams),
visit-count ledgers restricted to balls, lines, hyperplanes and
codimension-2 subspaces, and the projected walks whose zeros mark the
subset visits.  Oracle side: exact return probabilities and first-return
laws, escape constants gamma_d and lambda_d, truncated Green values, the
planar potential kernel, hit-before-return probabilities, excursion laws
and the Cauchy walk.  The experiments module ties both together for the
scaling studies of the maximal-local-time limit theorems.
"""

import os as _os

# must precede any numba import; the TBB probe on this image is noisy
_os.environ.setdefault("NUMBA_THREADING_LAYER", "omp")

from .ledger import LocalTimeLedger
from .subsets import Ball, Codim2, Hyperplane, Intersection, Line2D, parse_subset
from .walk import StepLaw, WalkConfig, path_positions, run_path

__version__ = "0.1.0"

__all__ = [
    "Ball", "Codim2", "Hyperplane", "Intersection", "Line2D",
    "LocalTimeLedger", "StepLaw", "WalkConfig", "parse_subset",
    "path_positions", "run_path", "__version__",
]
