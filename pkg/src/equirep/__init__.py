"""Equivariant simplicial homology for finite group actions.

Permutation groups and their subgroup lattices, simplicial G-complexes,
exact integer linear algebra, Bredon (co)homology, a chain-level
Lefschetz duality check, Tor over finite categories, and joins of spheres.
"""

from .algebra import FgAbGroup, IntChainComplex, IntMatrix, cohomology, homology, snf
from .bredon import GMap, GSet, bredon_cohomology, bredon_complex, bredon_homology, check_natural_isos
from .complex import (
    GComplex,
    Subcomplex,
    fixed_subcomplex,
    join,
    n_fold_join,
    quotient_complex,
    sd,
    singular_subcomplex,
    star_neighborhood,
    validate,
    weyl_fixed_complex,
)
from .duality import verify_lefschetz
from .functor import group_homology, orbit_category, tor_over_category
from .groups import FiniteGroup, Subgroup, conjugacy_classes_of_subgroups, cyclic_group, symmetric_group
from .lab import emit, join_structure_check, linear_sphere, orbit_filtration, stabilization_experiment
from .scene import load_scene

__version__ = "0.1.0"
