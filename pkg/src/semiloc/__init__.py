"""Exact computations with finite-dimensional algebras over prime fields:
radicals and Wedderburn data, modules and their endomorphism rings, local
morphisms, and the ring morphisms out of End(M) into semisimple targets."""

__version__ = "0.1.0"

from ._accel import BACKEND
from .algebra import AlgebraMorphism, StructureAlgebra, compose, is_unit
from .bridges import (
    bigPhi_bridge,
    biuniform_classify,
    bounds_report,
    chi_bridge,
    dual_bridge,
    ideal_pair,
    pair_bridge,
    spectral_bridge,
    step1_psi,
)
from .constructions import (
    finite_field,
    matrix_algebra,
    path_algebra,
    prime_field,
    product,
    trivial_extension,
    truncated_polynomial,
    upper_triangular,
)
from .covers import build_top_complement, injective_envelope, projective_cover
from .io import dump, load, parse, serialize
from .linalg import Subspace
from .local import camps_dicks_check, dos_classify, is_local, lemma21_suite, producte_decompose, support_profile
from .modules import (
    FdModule,
    ModuleHom,
    endo_algebra,
    goldie_dims,
    module_from_presentation,
    regular_module,
    restrict_scalars,
    structural_series,
)
from .radical import radical_bruteforce, radical_trace, ring_codim, structure
