"""Finiteness analysis for semigroups and groups generated by Mealy automata.

The package models letter-to-letter transducers, their structural
transformations (dual, inverse, powers, disjoint unions, extensions),
minimization and the alternating machine/dual reduction, helix graphs,
breadth-first (semi)group enumeration with canonical element machines,
a family of finiteness/infiniteness criteria combined by a recursive
decision procedure, and exhaustive censuses of all small machines up to
isomorphism.
"""

from __future__ import annotations

from .census import (
    CLASS_TAGS,
    CensusConfig,
    CensusReport,
    enumerate_classes,
    partition_class,
    run_census,
)
from .core import (
    ClassificationFlags,
    FormatError,
    MealyMachine,
    PreconditionError,
    SizeLimitError,
    canonical_form,
    classify,
    cross_product_machine,
    is_invertible,
    is_isomorphic,
    is_reversible,
    relabel,
)
from .criteria import (
    CRITERIA_ORDER,
    DecideConfig,
    FINITE,
    INFINITE,
    TRANSFORM_RULES,
    UNKNOWN,
    Verdict,
    cayley_criterion,
    cayley_identifications,
    cycles_criterion,
    decide,
    finitary_criterion,
    limitary_cycles_criterion,
    md_trivial_criterion,
    sidki_criterion,
)
from .fixtures import fixture, fixture_names, msharp
from .formats import (
    machine_from_json,
    machine_from_text,
    machine_to_dot,
    machine_to_json,
    machine_to_text,
    parse_machine,
)
from .helix import (
    CycleProfile,
    HelixGraph,
    cycle_lengths,
    cycle_profile,
    helix_graph,
    helix_to_dot,
    is_union_of_cycles,
    profile_to_csv,
)
from .minimize import (
    NerodePartition,
    ReductionTrace,
    is_md_trivial,
    md_reduce,
    minimize,
    nerode_partition,
)
from .semigroup import (
    BUDGET_EXCEEDED,
    Element,
    ElementOrder,
    EnumerationResult,
    compose,
    element_of_word,
    element_order,
    enumerate_order,
    growth_series,
    identity_element,
    is_identity,
)
from .transform import (
    disjoint_union,
    dual,
    extend_ir,
    inverse,
    power,
    run,
    sum_components,
)

__version__ = "1.0.0"

__all__ = [
    "BUDGET_EXCEEDED",
    "CLASS_TAGS",
    "CRITERIA_ORDER",
    "CensusConfig",
    "CensusReport",
    "ClassificationFlags",
    "CycleProfile",
    "DecideConfig",
    "Element",
    "ElementOrder",
    "EnumerationResult",
    "FINITE",
    "FormatError",
    "HelixGraph",
    "INFINITE",
    "MealyMachine",
    "NerodePartition",
    "PreconditionError",
    "ReductionTrace",
    "SizeLimitError",
    "TRANSFORM_RULES",
    "UNKNOWN",
    "Verdict",
    "canonical_form",
    "cayley_criterion",
    "cayley_identifications",
    "classify",
    "compose",
    "cross_product_machine",
    "cycle_lengths",
    "cycle_profile",
    "cycles_criterion",
    "decide",
    "disjoint_union",
    "dual",
    "element_of_word",
    "element_order",
    "enumerate_classes",
    "enumerate_order",
    "extend_ir",
    "finitary_criterion",
    "fixture",
    "fixture_names",
    "growth_series",
    "helix_graph",
    "helix_to_dot",
    "identity_element",
    "inverse",
    "is_identity",
    "is_invertible",
    "is_isomorphic",
    "is_md_trivial",
    "is_reversible",
    "is_union_of_cycles",
    "limitary_cycles_criterion",
    "machine_from_json",
    "machine_from_text",
    "machine_to_dot",
    "machine_to_json",
    "machine_to_text",
    "md_reduce",
    "md_trivial_criterion",
    "minimize",
    "msharp",
    "nerode_partition",
    "parse_machine",
    "partition_class",
    "power",
    "profile_to_csv",
    "relabel",
    "run",
    "run_census",
    "sidki_criterion",
    "sum_components",
]
