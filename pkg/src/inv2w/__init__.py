"""Integer multiplicative inverse modulo 2**w."""

from .applications import (InexactDivision, MontgomeryContext, exact_divide,
                           mont_new, redc)
from .inverse import (AlgoKind, IterationTrace, TraceStep, inverse, invert,
                      invert_array, invert_dumas_original, invert_euclid,
                      invert_improved, invert_newton, iteration_count, residual)
from .latency import CostModel, Program, Schedule, build_program, render_timeline, schedule
from .modring import (MAX_WIDTH, InverseDoesNotExist, OddResidue, Residue,
                      WidthMismatchError, reduce)
from .seed_search import SearchOp, SeedCandidate, evaluate_candidate, search
from .seeds import SeedKind, correct_bits, seed_x0

__version__ = "0.1.0"
