"""Exact structure-constant computations for ternary algebras.

The package represents finite-dimensional ternary (and binary) algebras,
coherent actions, and embedding tensors over exact rationals; verifies
every defining law with explicit failing witnesses; constructs the derived
structures (combined, descendent, and induced brackets, induced
representations, trace lifts); and computes the associated cochain
complex, its cohomology dimensions, and the first-order deformation
classification.
"""

from .actions import (
    CoherentActionData,
    EmbeddingTensorProblem,
    NetHomomorphism,
    RepresentationData,
    check_coherent_action,
    check_net,
    check_net_hom,
    check_representation,
    descendent,
    graph_check,
    hemisemidirect,
    hemisemidirect_table,
    induced_3ll,
)
from .algebras import (
    LeibnizLieAlgebra,
    LieAlgebra,
    LinearMap,
    ThreeLeibnizAlgebra,
    ThreeLeibnizLieAlgebra,
    ThreeLieAlgebra,
    check_3leibniz,
    check_3lie,
    check_3ll,
    check_hom,
    check_leibniz_lie,
    check_lie,
    subadjacent,
)
from .cohomology import (
    Cochain,
    CochainComplex,
    ThreeLeibnizRep,
    check_3leibniz_rep,
    cohomology_dims,
    delta,
    delta0,
    delta_matrix,
    induced_rep,
    pushforward,
    pushforward_matrix,
)
from .deformations import (
    Classification,
    Deformation,
    EquivalenceWitness,
    are_equivalent,
    check_higher_order,
    check_infinitesimal,
    classify,
)
from .errors import InputError, PreconditionError
from .induced_lie import (
    LieCoherentAction,
    LieNet,
    TraceMap,
    check_lie_coherent,
    check_lie_net,
    check_trace,
    lift_net,
    rho_sigma,
    three_ll_from_leibniz_lie,
    threelie_from_lie,
)
from .linalg import (
    KERNEL_BACKEND,
    Matrix,
    Vector,
    fmt_rat,
    kernel_basis,
    rank,
    rat,
    solve_membership,
)
from .multilinear import (
    AlternatingTrilinearTable,
    PairAction,
    Space,
    TrilinearTable,
    WedgePairBasis,
)
from .report import Report
from .schema import Document, emit_document, load_document, parse_document

__version__ = "0.1.0"

__all__ = [
    "AlternatingTrilinearTable",
    "Classification",
    "Cochain",
    "CochainComplex",
    "CoherentActionData",
    "Deformation",
    "Document",
    "EmbeddingTensorProblem",
    "EquivalenceWitness",
    "InputError",
    "KERNEL_BACKEND",
    "LeibnizLieAlgebra",
    "LieAlgebra",
    "LieCoherentAction",
    "LieNet",
    "LinearMap",
    "Matrix",
    "NetHomomorphism",
    "PairAction",
    "PreconditionError",
    "Report",
    "RepresentationData",
    "Space",
    "ThreeLeibnizAlgebra",
    "ThreeLeibnizLieAlgebra",
    "ThreeLeibnizRep",
    "ThreeLieAlgebra",
    "TraceMap",
    "TrilinearTable",
    "Vector",
    "WedgePairBasis",
    "are_equivalent",
    "check_3leibniz",
    "check_3leibniz_rep",
    "check_3lie",
    "check_3ll",
    "check_coherent_action",
    "check_higher_order",
    "check_hom",
    "check_infinitesimal",
    "check_leibniz_lie",
    "check_lie",
    "check_lie_coherent",
    "check_lie_net",
    "check_net",
    "check_net_hom",
    "check_representation",
    "check_trace",
    "classify",
    "cohomology_dims",
    "delta",
    "delta0",
    "delta_matrix",
    "descendent",
    "emit_document",
    "fmt_rat",
    "graph_check",
    "hemisemidirect",
    "hemisemidirect_table",
    "induced_3ll",
    "induced_rep",
    "kernel_basis",
    "lift_net",
    "load_document",
    "parse_document",
    "pushforward",
    "pushforward_matrix",
    "rank",
    "rat",
    "rho_sigma",
    "solve_membership",
    "subadjacent",
    "three_ll_from_leibniz_lie",
    "threelie_from_lie",
]
