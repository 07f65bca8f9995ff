"""Polycyclic presentations: collection, subgroups, maps and central series."""

from .io import format_automorphism, format_presentation, load_automorphism_images, load_presentation, parse_word
from .maps import (GroupMap, Projection, automorphism, check_map, complete_images, identity_map, induced_map,
                   inner_automorphism)
from .presentation import PcPresentation, abelian, free_abelian, heisenberg
from .series import (AbelianSection, CentralSeriesData, abelian_section, abelianization, center,
                     inferred_weights, is_weighted, kernel_of_central_hom, lower_central_series,
                     nilpotency_class, quotient_mod, top_layer, upper_central_series)
from .subgroup import (Subgroup, commutator_subgroup, join, member_decompose, normal_closure,
                       subgroup_from_generators, trivial_subgroup, whole_group)
