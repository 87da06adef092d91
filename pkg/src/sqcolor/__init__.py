"""Exact tools for list-coloring squares of sparse graphs.

Immutable graphs, exact rational maximum average degree, list-coloring
solvers, reducible-configuration detection with a reducibility oracle,
a discharging engine with four built-in rule programs, generators for
the tight extremal constructions, and a text format for rule programs.
"""

from .graph import (
    Graph,
    complete_graph,
    cycle_graph,
    disjoint_union,
    path_graph,
    petersen_graph,
    with_edges,
)
from .madbounds import (
    DensityCertificate,
    average_degree,
    beta,
    girth_mad_bound,
    mad_exact,
    main_threshold,
    min_girth_for_delta,
)
from .coloring import (
    ExtendFailure,
    ListAssignment,
    available_colors,
    chromatic_number,
    common_neighbor_graph,
    degree_choosable_solve,
    extend_in_order,
    injective_list_color,
    is_choosable,
    is_proper,
    list_color,
)
from .configurations import (
    ConfigurationInstance,
    Thread,
    ThreadSet,
    count_check,
    detect,
    detect_all,
    detect_local,
    find_threads,
    revalidate,
    verify_reducible,
    vertex_partition,
    weak_neighbors,
)
from .discharging import (
    ChargeLedger,
    DegreeRange,
    DischargeError,
    DischargeReport,
    Rule,
    RuleSet,
    SponsorRule,
    SponsorshipMap,
    assign_sponsors,
    builtin_ruleset,
    classify,
    verify,
)
from .discharging import apply as discharge
from .extremal import (
    ConstructionRecipe,
    biregular_bipartite,
    example1,
    example2,
    regular_graph,
    replay,
    verify_example_degree,
)
from .rulesfmt import (
    RulesDocument,
    RulesParseError,
    compile_rules,
    parse_rules,
    serialize_rules,
    shipped_rules,
)

__version__ = "0.1.0"
