"""Verification toolkit for Cayley-digraph isomorphism properties.

The package decides, for small groups, whether isomorphic Cayley
digraphs are always related by a group automorphism, by exhaustive
connection-set scans, canonical labeling, automorphism groups,
2-closures and regular-subgroup conjugacy.
"""

from .cases import reproduce_case_analysis
from .ci import (
    RegularSubgroupWitness,
    VerificationReport,
    babai_strong_check,
    is_dci_graph_babai,
    is_dci_graph_direct,
    scan_group,
    sym3_dichotomy_check,
)
from .closure import (
    OrbitalColoring,
    block_restriction,
    in_two_closure,
    orbital_partition,
    restriction_in_two_closure,
    stabilizer_equivalence,
    two_closure,
)
from .digraph import (
    CanonicalCertificate,
    Digraph,
    are_isomorphic,
    automorphism_group,
    canonical_form,
    cayley_digraph,
    complement,
    is_connected,
)
from .groups import (
    FiniteGroup,
    GroupAutomorphism,
    alt4,
    apply_automorphism,
    automorphisms,
    dihedral,
    isomorphisms,
    parse_connection_set,
    quasidihedral18,
    right_regular,
)
from .perm import (
    CycleFormatError,
    DegreeMismatch,
    InfeasibleError,
    Partition,
    PermGroup,
    Permutation,
    are_conjugate_subgroups,
    compose,
    conjugate,
    parse_cycles,
)
from .wreath import normal_p_subgroup

__version__ = "0.1.0"

__all__ = [
    "CanonicalCertificate",
    "CycleFormatError",
    "DegreeMismatch",
    "Digraph",
    "FiniteGroup",
    "GroupAutomorphism",
    "InfeasibleError",
    "OrbitalColoring",
    "Partition",
    "PermGroup",
    "Permutation",
    "RegularSubgroupWitness",
    "VerificationReport",
    "alt4",
    "apply_automorphism",
    "are_conjugate_subgroups",
    "are_isomorphic",
    "automorphism_group",
    "automorphisms",
    "babai_strong_check",
    "block_restriction",
    "canonical_form",
    "cayley_digraph",
    "compose",
    "complement",
    "conjugate",
    "dihedral",
    "in_two_closure",
    "is_connected",
    "is_dci_graph_babai",
    "is_dci_graph_direct",
    "isomorphisms",
    "normal_p_subgroup",
    "orbital_partition",
    "parse_connection_set",
    "parse_cycles",
    "quasidihedral18",
    "reproduce_case_analysis",
    "restriction_in_two_closure",
    "right_regular",
    "scan_group",
    "stabilizer_equivalence",
    "sym3_dichotomy_check",
    "two_closure",
]
