"""Verification toolkit for cyclically presented groups as 3-manifold spines."""

from .words import (
    CyclicPresentation,
    FamilySpec,
    TwoGeneratorPresentation,
    Word,
    build_family,
    cyclic_reduce,
    exponent_vector,
    free_reduce,
    parse_family,
    parse_word,
    presentations_equal,
    rewrite_kernel,
    shift,
    shift_extension,
)
from .whitehead import (
    PatternType,
    WhiteheadGraph,
    canonical_embedding,
    face_census,
    is_connected,
    is_planar,
    match_family_pattern,
    planarity_criterion_G,
    reduce_graph,
    shift_mixed_edges,
    whitehead_graph,
)
from .homology import (
    INFINITE,
    FractionalParams,
    IntPolynomial,
    abelian_invariants,
    abelianization_order,
    distinguish_f0_fhalf,
    lemma42_closed_forms,
    lucas_value,
    representer_polynomial,
    resultant,
    resultant_closed_forms,
    resultant_split,
)
from .polyhedra import (
    FacePairingScheme,
    HeegaardDiagram,
    build_scheme,
    canonical_lens_diagram,
    edge_orbits,
    heegaard_H,
    odd_f_obstruction,
    quotient,
    rho_quotient,
    seifert_threlfall,
    spine_decision,
    validate_scheme,
)
from .enumeration import (
    DEFAULT_MAX_COSETS,
    EnumerationResult,
    coset_enumerate,
    order_of,
    verify_order_independence,
)

__version__ = "0.1.0"
