"""Long-jump random walks on finite nilpotent groups.

Exact tooling for the quasi-norm cost and its diameter, walk spectra and the
gap-diameter sandwich, ball-volume growth, and mixing curves, with a
signed-remainder Euclidean algorithm that pins the diameter of two-generator
cyclic walks up to explicit constants.
"""

from ._kernels import backend as kernel_backend
from .cost import (
    CostTable,
    cost_table,
    cost_table_abelian,
    cost_table_pareto,
    diameter,
    heisenberg_cost_estimate,
    heisenberg_split_cost_estimate,
    phi_alpha,
    word_diameter,
)
from .euclid import EuclidExpansion, diameter_formula, expand, hard_element, step_length
from .geometry import (
    VolumeProfile,
    annulus_witness,
    doubling_constant,
    moderate_growth_check,
    reverse_doubling_check,
    volume_profile,
)
from .groups import (
    GroupSpec,
    WalkSpec,
    heisenberg_standard_triple,
    make_walk,
    parse_element,
    parse_group,
    verify_generates,
)
from .measure import (
    LongJumpMeasure,
    PowerLawDistribution,
    alpha_star,
    build_measure,
    build_power_law,
    check_regularity_A,
    check_wrapped_comparability,
    tail_mass,
)
from .mixing import (
    MixingCurve,
    evolve_abelian,
    evolve_continuous,
    evolve_dense,
    l2_sandwich_report,
    mixing_time,
    mixing_time_bisect,
    monte_carlo_walk,
)
from .spectral import (
    SpectrumReport,
    dirichlet_form,
    gap_sandwich_report,
    pseudo_poincare_check,
    rayleigh_quotient,
    spectrum,
    spectrum_abelian,
    spectrum_dense,
    zeta_test_function,
)

__version__ = "0.1.0"
