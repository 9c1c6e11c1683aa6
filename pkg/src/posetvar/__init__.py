"""Euler and Tits forms, admissibility and variety dimensions for finite posets."""

from .dimension import (
    DimReport,
    PeelStep,
    generic_sum_dim,
    grassmann_dim,
    lemma2_defect,
    variety_dim,
    variety_dim_recursive,
)
from .errors import *  # noqa: F401,F403
from .ffield import (
    PrimeField,
    SubspaceBasis,
    count_points,
    enumerate_points,
    enumerate_subspaces,
    fit_dimension,
    gaussian_binomial,
    max_sum_dim_empirical,
)
from .fileformat import PosetFile, dot_export, parse_poset_file, render_poset_file
from .forms import (
    DimVector,
    coordinate_vector,
    euler_form,
    is_admissible,
    is_p0_nonnegative,
    iteration_sequence,
    summand_scan,
    summands,
    tits_form,
    tits_matrix,
)
from .matrix import (
    IntMatrix,
    frobenius_factors,
    incidence_inverse,
    incidence_matrix,
    incidence_restriction,
    mobius_matrix,
)
from .poset import Poset, build_poset

__version__ = "0.1.0"
