"""Concept lattices, Dowker complexes and Dowker (co)sheaves of finite binary relations.

All set-valued data are integer bitsets over a context's object or
attribute list; all linear algebra is exact over the rationals.
"""

from .complexes import (
    AbstractSimplicialComplex,
    Hypergraph,
    collapse,
    d_ctx,
    dowker_complex,
    edge_poset,
    face_poset,
    int_close_lattice,
    intersection_complex,
    is_simplicial_map,
    top,
    verify_theorem1,
)
from .concept import (
    ConceptLattice,
    GaloisPair,
    concept_of_attributes,
    concept_of_objects,
    context_from_lattice,
    enumerate_concepts,
    gamma,
    join,
    meet,
    mu,
    reduced_labels,
)
from .context import (
    ContextMap,
    FormalContext,
    check_galois_laws,
    close_attributes,
    close_objects,
    derive_attributes,
    derive_objects,
    is_ctx_morphism,
    is_rel_morphism,
    is_total,
    running_example,
    transpose,
)
from .cosheaf import (
    DowkerCosheaf,
    dowker_cosheaf,
    extension,
    m_hat,
    pos_rep,
    recover_concepts,
    unique_costalk_lattice,
    verify_cosheaf_recovery,
)
from .dot import export_dot, validate_dot
from .errors import (
    DowkerError,
    WitnessError,
    NotAPoset,
    NotReflexive,
    NotAntisymmetric,
    NotTransitive,
    NotALattice,
    SearchExhausted,
    UniverseMismatch,
    UnknownLabel,
    TooLarge,
    FaceBudgetExceeded,
    TheoremMismatch,
    EmptyDowkerComplex,
    NotAFacePair,
    NotAComplex,
    NotTotal,
    ParseError,
    DimensionMismatch,
    NotCompleteLattice,
)
from .homology import (
    ChainComplex,
    CosheafOfChainComplexes,
    betti,
    column_homology,
    cosheaf_of_chain_complexes,
    dowker_sheaf_cochain,
    sheaf_cohomology,
    simplicial_chain_complex,
    verify_dual_homology,
    zeroth_cosheaf_homology,
)
from .io import parse_csv, parse_cxt, write_csv, write_cxt
from .linalg import RationalMatrix, image_dim, kernel_basis, rank
from .order import (
    Poset,
    hasse,
    is_complete_lattice,
    is_join_dense,
    is_meet_dense,
    make_poset,
    meet_join_sets,
    order_isomorphism,
)
from .verify import RunConfig, run_verify

__version__ = "0.1.0"
