"""Modified Dirac oscillator in curved spacetime: spectra, su(1,1) structure and coherent states."""

__version__ = "0.1.0"

from .errors import (DegenerateEnergy, DegenerateResolvent, DiracOscillatorError, DomainError,
                     NegativeRadicand, NoConvergence, NoPhysicalRoot, TailNotConverged,
                     TruncationNotConverged)
from .quartic import QuarticCoefficients, RootSet, ferrari_roots, oracle_roots, solve_quartic
from .spectrum import (ModelParams, SpectrumSolution, SymmetryLimit, bargmann_index,
                       flat_spectrum, solve_spectrum)
from .wavefunctions import RadialState, eval_R1, eval_R2, normalize
from .coherent import (CoherentParams, TruncatedRep, coherent_R1_closed, coherent_R2_closed,
                       evolve, evolved_R1, evolved_R2, matrix_displacement_oracle,
                       perelomov_expansion)

__all__ = [
    "CoherentParams", "DegenerateEnergy", "DegenerateResolvent", "DiracOscillatorError",
    "DomainError", "ModelParams", "NegativeRadicand", "NoConvergence", "NoPhysicalRoot",
    "QuarticCoefficients", "RadialState", "RootSet", "SpectrumSolution", "SymmetryLimit",
    "TailNotConverged", "TruncatedRep", "TruncationNotConverged", "bargmann_index",
    "coherent_R1_closed", "coherent_R2_closed", "eval_R1", "eval_R2", "evolve", "evolved_R1",
    "evolved_R2", "ferrari_roots", "flat_spectrum", "matrix_displacement_oracle", "normalize",
    "oracle_roots", "perelomov_expansion", "solve_quartic", "solve_spectrum",
]
