"""Finite loops built as extensions of groups by weighted Steiner loops."""

from .errors import AlgebraError
from .extension import ExtensionSpec, Variant, build_extension, spec_from_weighted
from .fischer import (affine_covering, affine_weighted_sts, distributive_quasigroup,
                      fischer_space, hall_system_check, is_restricted_fischer)
from .harness import HarnessConfig, equivalence_harness
from .identities import IdentityName, brute_check, criterion
from .morphisms import automorphism_group, find_isomorphisms
from .steiner import construct_sts, fano, klein, loop_from_sts, sts_from_loop
from .tables import GroupTable, LoopTable, MagmaTable, make_group, named_group
from .translations import translation_groups
from .weighted import WeightedSteinerLoop, analyze_weight_group, check_core_identity

__all__ = [
    "AlgebraError", "ExtensionSpec", "GroupTable", "HarnessConfig", "IdentityName",
    "LoopTable", "MagmaTable", "Variant", "WeightedSteinerLoop", "affine_covering",
    "affine_weighted_sts", "analyze_weight_group", "automorphism_group", "brute_check",
    "build_extension", "check_core_identity", "construct_sts", "criterion",
    "distributive_quasigroup", "equivalence_harness", "fano", "find_isomorphisms",
    "fischer_space", "hall_system_check", "is_restricted_fischer", "klein",
    "loop_from_sts", "make_group", "named_group", "spec_from_weighted", "sts_from_loop",
    "translation_groups",
]
__version__ = "0.1.0"
