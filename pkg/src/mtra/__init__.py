"""Exact-arithmetic mechanisms and checkers for multi-type resource allocation."""
from .analysis import (has_generalized_cycle, improvable_tuples, is_itemwise_ordinal_fair,
                       is_sd_envy_free, leximin_compare, leximin_vector, lexi_dominates, peel,
                       sd_dominates, sd_dominates_assignment)
from .assignment import (DiscreteAssignment, FractionalAssignment, product_compose, type_marginal,
                         validate)
from .mechanisms import (EatingSchedule, SpeedFunction, eating, lexips, mps, ps_single_type,
                         speeds_from_assignment)
from .model import (Instance, LexicographicPreference, LinearPreference, Profile, enumerate_bundles,
                    expand_lexicographic, lexicographic, linear, recognize_lexicographic,
                    upper_contour_set)
from .oracles import (audit_strategyproofness, birkhoff_decompose, is_decomposable, is_lexi_efficient,
                      is_sd_efficient, is_sd_weak_efficient, is_sd_weak_envy_free,
                      leximin_optimal_assignment, product_decomposition, verify_impossibility_instance)
