"""Exact invariants of modular group algebras F_pG of finite p-groups."""

from .catalog import (
    auxiliary_groups,
    corpus,
    corpus_entry,
    load_annotations,
    load_group,
    parse_group,
)
from .decomp import elementary_decomposition, elementary_ideal, reduce_and_compare
from .families import FamilySpec, build_family, qs_distinguisher, trichotomy_check
from .groups import (
    AbelianType,
    Group,
    SubgroupSet,
    abelian_group,
    abelian_type,
    cyclic_group,
    direct_product,
    group_from_permutations,
    isomorphic,
    quotient_group,
    subgroup_closure,
)
from .invariants import Fingerprint, compare, fingerprint, section_invariants
from .modalg import GroupAlgebra

__version__ = "0.1.0"

__all__ = [
    "AbelianType", "Fingerprint", "FamilySpec", "Group", "GroupAlgebra", "SubgroupSet", "abelian_group",
    "abelian_type", "auxiliary_groups", "build_family", "compare", "corpus", "corpus_entry", "cyclic_group",
    "direct_product", "elementary_decomposition", "elementary_ideal", "fingerprint", "group_from_permutations",
    "isomorphic", "load_annotations", "load_group", "parse_group", "qs_distinguisher", "quotient_group",
    "reduce_and_compare", "subgroup_closure", "section_invariants", "trichotomy_check",
]
