"""Flexible list colouring: exact flexibility parameters, constructive
algorithms, packings and bound evaluators for small graphs."""

__version__ = "0.1.0"

from .errors import (BudgetExceeded, ChoosabilityViolation, FalsificationAlarm,
                     FlexicolorError, InputError, ParseError, RetryCapExhausted)
from .graph import (DegeneracyOrder, Graph, cartesian_product, chromatic_number,
                    degeneracy, degeneracy_order, generate, hall_ratio, hall_ratio_witness,
                    independence_number, join, maximum_independent_set, optimal_coloring,
                    parse_graph, serialize_graph, square_graph)
from .lists import (ListAssignment, Request, canonical_form, count_k_assignments,
                    count_satisfied, enumerate_k_assignments, enumerate_requests,
                    parse_lists, parse_request, random_assignment, random_request,
                    serialize_lists, serialize_request, validate)
from .exact import (ChiFlexReport, FlexReport, chi_flex, chi_flex_report, epsilon_of,
                    epsilon_report, find_packing, find_proper_coloring, flex_value,
                    is_choosable, is_flexible, list_chromatic_number, list_packing_number,
                    satisfy_max, worst_request)
from .algorithms import (bounded_palette_color, cartesian_flexible_color, exact_solver,
                         greedy_flexible, join_split_color, random_degenerate_color,
                         square_class_color)
from .bounds import (binary_entropy, join_bound, join_bound_report, joinpath_check,
                     joinpath_condition, oddrequest_check, oddrequest_condition)
from .packing import (ColoringFamily, FamilyReport, best_of_family, grid_balanced_family,
                      ladder_flexible_color, packing_family, path_two_packing, verify_family)
from .orientation import (Orientation, parse_orientation, search_order, single_request_color,
                          sink_orientation)
from .instances import (K37Report, k37_single_request_color, oddrequest_instance, t0,
                        verify_k37_flexibility)
from .estimate import Estimate, estimate
from .rng import make_rng


__all__ = [
    "BudgetExceeded", "ChiFlexReport", "ChoosabilityViolation", "ColoringFamily",
    "DegeneracyOrder", "Estimate", "FalsificationAlarm", "FamilyReport", "FlexReport",
    "FlexicolorError", "Graph", "InputError", "K37Report", "ListAssignment", "Orientation",
    "ParseError", "Request", "RetryCapExhausted", "best_of_family", "binary_entropy",
    "bounded_palette_color", "canonical_form", "cartesian_flexible_color", "cartesian_product",
    "chi_flex", "chi_flex_report", "chromatic_number", "count_k_assignments",
    "count_satisfied", "degeneracy", "degeneracy_order", "enumerate_k_assignments",
    "enumerate_requests", "epsilon_of", "epsilon_report", "estimate", "exact_solver",
    "find_packing", "find_proper_coloring", "flex_value", "generate", "greedy_flexible",
    "grid_balanced_family", "hall_ratio", "hall_ratio_witness", "independence_number",
    "is_choosable", "is_flexible", "join", "join_bound", "join_bound_report",
    "join_split_color", "joinpath_check", "joinpath_condition", "k37_single_request_color",
    "ladder_flexible_color", "list_chromatic_number", "list_packing_number", "make_rng",
    "maximum_independent_set", "oddrequest_check", "oddrequest_condition",
    "oddrequest_instance", "optimal_coloring", "packing_family", "parse_graph", "parse_lists",
    "parse_orientation", "parse_request", "path_two_packing", "random_assignment",
    "random_degenerate_color", "random_request", "satisfy_max", "search_order",
    "serialize_graph", "serialize_lists", "serialize_request", "single_request_color",
    "sink_orientation", "square_class_color", "square_graph", "t0", "validate",
    "verify_family", "verify_k37_flexibility", "worst_request",
]
