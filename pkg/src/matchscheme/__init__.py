"""The association scheme of perfect matchings of K_2n and lambda-factorisations."""
from .partitions import (
    dominates,
    dominating_partitions,
    odd_double_factorial,
    parse_partition,
    partitions_of,
    refinement_count,
    set_partitions_of_shape,
)
from .symmetric import Permutation, character_degree, character_value
from .matchings import FormatError, Matching, MatchingSet, all_matchings, coset_distance, parse_matching_set
from .scheme import (
    RationalMatrix,
    ZonalTable,
    dual_distribution,
    eigenvalue_matrices,
    idempotents,
    inner_distribution,
    krein_q_mumumu,
    sphere_sizes,
    zonal_table,
)
from .factorisation import (
    FactorisationReport,
    InfeasibleParameters,
    check_by_definition,
    check_by_design,
    derive,
    dominance_consequences,
    expected_size,
    feasibility_screen,
    index_conversion,
    screen_table,
)
from .constructions import agl11_factorisation, full_set, hyperoval_factorisation, round_robin
from .search import SearchOutcome, build_system, seed_from_derivation, solve

__version__ = "0.1.0"
