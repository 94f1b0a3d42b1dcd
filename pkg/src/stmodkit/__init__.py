"""Modules over small modular group algebras: module calculus, Tate cohomology,
and a constructive filtration solver producing cohomology-free subquotients."""
from .algebra import build_a4, build_case_a, build_case_b, build_d, presentation_from_descriptor, subalgebra
from .errors import InvalidModule, InvariantViolation, StModError, TooLarge, UnclassifiedSummand
from .fields import F2, F3, F4, Field
from .module import (
    ModuleRep,
    direct_sum,
    dual_module,
    free_module,
    projective_indecomposable,
    regular_module,
    restrict,
    simple_module,
)
from .calculus import hom_space, loewy_length, radical, radical_series, socle, socle_series
from .projectives import d_invariant, decompose_restriction, strip_projectives
from .cohomology import duality_check, ext_hat, no_cohomology_certificate, syzygy, tate_cohomology
from .solver import SolverConfig, solve, verify_filtration
from .io import read_module, write_module

__version__ = "0.1.0"
