"""Stable Kneser graphs: construction, automorphism groups, independence and coloring."""

__version__ = "0.1.0"

from .graph import (Graph, Permutation, PermutationGroup, ResourceLimitError, group_closure,
                    groups_equal, is_automorphism)
from .generators import (Params, StableSet, build_g_closed_form, build_g_definitional,
                         build_stable_kneser, count_formula, cycle_power, enumerate_stable_sets,
                         gap_vector)
from .autgroup import (automorphisms, certify_dihedral, consecutive_criterion, induced_dihedral,
                       orbits, star_map)
from .independence import all_maximum_independent_sets, build_stars, max_independent_set
from .coloring import chromatic_number, fractional_chromatic, verify_chromatic_bounds
