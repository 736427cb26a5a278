"""Fixed points, derangements and common orbits in cosets of permutation groups."""

from .perm import Coset, PermGroup, Permutation, closure, parse_cycles, print_cycles
from .cosets import CosetSpectrum, spectrum
from .catalog import build
from .verify import analyze_triple, run_suite

__version__ = "0.1.0"

__all__ = [
    "Coset", "CosetSpectrum", "PermGroup", "Permutation", "analyze_triple", "build",
    "closure", "parse_cycles", "print_cycles", "run_suite", "spectrum",
]
