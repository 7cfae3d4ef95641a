"""Exact-arithmetic construction and verification of torus vector-field algebras,
their divergence-free and Hamiltonian subalgebras, map extensions by a
commutative coefficient algebra, and the associated weight modules on
degree-truncated windows."""

from .balgebra import BAlgebra, BElem, scalars_algebra, truncated_poly_algebra
from .lie import (
    LieContext,
    LieElem,
    bracket,
    divergence,
    elem_D,
    elem_I,
    elem_d,
    elem_dab,
    elem_h,
    elem_monomial,
    in_divergence_free_span,
    in_hamiltonian_span,
    jacobi_defect,
    trivial_context,
)
from .modules import (
    JetModuleH,
    JetModuleS,
    MapModule,
    ModVec,
    Window,
    WindowOverflowError,
    apply_word,
    injectivity_diagnostic,
    weight_multiplicities,
)
from .reps import MatrixRep, natural_rep, traceless_natural_rep, trivial_rep, validate_rep
from .scalars import CoefVec, ExpVec, Scalar, bar, pair
from .verify import SUITE_NAMES, SuiteConfig, Verdict, run_all, run_suite

__all__ = [
    "BAlgebra",
    "BElem",
    "CoefVec",
    "ExpVec",
    "JetModuleH",
    "JetModuleS",
    "LieContext",
    "LieElem",
    "MapModule",
    "MatrixRep",
    "ModVec",
    "SUITE_NAMES",
    "Scalar",
    "SuiteConfig",
    "Verdict",
    "Window",
    "WindowOverflowError",
    "apply_word",
    "bar",
    "bracket",
    "divergence",
    "elem_D",
    "elem_I",
    "elem_d",
    "elem_dab",
    "elem_h",
    "elem_monomial",
    "in_divergence_free_span",
    "in_hamiltonian_span",
    "injectivity_diagnostic",
    "jacobi_defect",
    "natural_rep",
    "pair",
    "run_all",
    "run_suite",
    "scalars_algebra",
    "traceless_natural_rep",
    "trivial_context",
    "trivial_rep",
    "truncated_poly_algebra",
    "validate_rep",
    "weight_multiplicities",
]

__version__ = "0.1.0"
