"""Reidemeister numbers and twisted conjugacy in finitely generated nilpotent groups."""

from .errors import TwistConjError
from .freenil import HallBasis, build_free_nilpotent, hall_basis, magnus_model, malcev_coordinates, witt_rank
from .intlat import INFINITE, AbelianGroup, IntMatrix, Lattice, hnf, lattice_index, snf, transversal
from .oracle import bounded_witness_search, brute_force_reidemeister
from .pc import (GroupMap, PcPresentation, Subgroup, abelian, automorphism, check_map, complete_images, free_abelian,
                 heisenberg, identity_map, load_automorphism_images, load_presentation)
from .twisted import (InfinityWitness, ReidemeisterResult, TwistedClass, L_subgroup, decide, fix_subgroup,
                      formanek_fixed, infinity_witness_uc, lift_classes, random_automorphism, reidemeister,
                      reidemeister_abelian, spectrum_sample, theorem2_rinf)

__version__ = "0.1.0"
