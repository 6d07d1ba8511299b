"""Exact tools for isotone, order-decreasing partial injections on a finite
chain: family enumeration, starred relation analysis, abundance and ample
checks, generating sets, ranks, and a claim verification battery.
"""

from .errors import (
    CapExceededError,
    CatalanLabError,
    ChainMismatchError,
    ContractError,
    FamilySpecError,
    InjectivityError,
    ParseError,
    RangeError,
    UnsupportedTableError,
    ValidationError,
)
from .families import FamilySpec, SemigroupTable, enumerate_family, is_member
from .formulas import catalan, count_formula, rank_formula, t
from .genrank import (
    GeneratorReport,
    RankCheck,
    closure,
    essential_factorization,
    expand_quasi_to_essentials,
    factor_idempotent_quasi_chain,
    factor_requisite,
    indecomposables,
    kind_census,
    lift_height,
    maximal_subsemigroups,
    minimal_generating_set,
    rank_check,
)
from .greens import IndexPartition, green, relation_compose, relations_equal, starred
from .pinj import PartialInjection, canonical_text, classify, compose, parse_text
from .structure import (
    PropertyReport,
    idempotent_census,
    is_abundant,
    is_adequate,
    is_ample,
    is_inverse_ideal,
    is_left_abundant,
    is_regular_semigroup,
    is_right_abundant,
    is_right_adequate,
    is_right_ample,
    is_right_inverse_ideal,
    is_semilattice_of_idempotents,
    unique_idempotent_per_rstar_class,
)

__version__ = "0.1.0"

__all__ = [
    "CapExceededError",
    "CatalanLabError",
    "ChainMismatchError",
    "ContractError",
    "FamilySpec",
    "FamilySpecError",
    "GeneratorReport",
    "IndexPartition",
    "InjectivityError",
    "ParseError",
    "PartialInjection",
    "PropertyReport",
    "RangeError",
    "RankCheck",
    "SemigroupTable",
    "UnsupportedTableError",
    "ValidationError",
    "canonical_text",
    "catalan",
    "classify",
    "closure",
    "compose",
    "count_formula",
    "enumerate_family",
    "essential_factorization",
    "expand_quasi_to_essentials",
    "factor_idempotent_quasi_chain",
    "factor_requisite",
    "green",
    "idempotent_census",
    "indecomposables",
    "is_abundant",
    "is_adequate",
    "is_ample",
    "is_inverse_ideal",
    "is_left_abundant",
    "is_member",
    "is_regular_semigroup",
    "is_right_abundant",
    "is_right_adequate",
    "is_right_ample",
    "is_right_inverse_ideal",
    "is_semilattice_of_idempotents",
    "kind_census",
    "lift_height",
    "maximal_subsemigroups",
    "minimal_generating_set",
    "parse_text",
    "rank_check",
    "rank_formula",
    "relation_compose",
    "relations_equal",
    "starred",
    "t",
    "unique_idempotent_per_rstar_class",
]
