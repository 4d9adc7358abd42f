"""Exact minimization of hybrid set-vector automata.

States live in a finite glued space: finitely many rational vector spaces,
identified along subspaces by partial linear isomorphisms.  Plain weighted
automata and deterministic automata are the two extreme cases.
"""

from .automaton import (
    DEFAULT_BUDGET, GluedAutomaton, Minimization, ObsResult, ReachResult, auto_check, auto_equiv,
    auto_eval, auto_iso, auto_validate, from_wfa, import_dfa, import_duvs, is_automaton_morphism,
    linearize, minimize, minimize_report, moore_refine, obs, observational_relation, output_object,
    reach, stats,
)
from .errors import (
    DimensionMismatch, GlueminError, IncompatibleGluing, InvalidAutomaton, MalformedInput,
    NonInjectiveGluing, NotAMono, ProfileMismatch, SelfFolding, UnknownSymbol,
)
from .families import (
    SubspaceFamily, antichain_reduce, family_equal, minimal_cover_points, union_includes_family,
    union_includes_subspace, widen,
)
from .glued import (
    GluedMorphism, GluedSpace, Point, Subobject, agreement_subspace, embed_set, embed_vec,
    equalizer, factor, glue, glued_iso, identity_morphism, is_epi, is_iso, is_mono, is_normalized,
    make_space, morphism_compose, morphism_equal, morphism_validate, normalize, normalize_map,
    point_eq, subobject_from_pieces, subobject_intersect, subobject_preimage,
)
from .linalg import (
    Matrix, Subspace, annihilator, contains, image, includes, intersect, kernel, preimage, rank,
    rref, span, subspace_sum,
)
from .wfa import WFA, change_basis, wfa_equiv, wfa_eval, wfa_minimize

__version__ = "0.1.0"
