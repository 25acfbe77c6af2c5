"""Young functions, Orlicz exponents and Luxemburg norms.

Submodules:

* ``young``: Young functions (catalog, splices, normalization) and axiom checks
* ``exponents``: Lebesgue exponents, limit exponents, Delta_2 and scaling bounds
* ``constructors``: splices with prescribed exponents, equivalent to a base
* ``norms``: modulars, Luxemburg norms and the closed form for power sums
* ``mixed``: trace-type mixed norms on the plane
* ``analysis``: equivalence scans, class exponents, multiplicativity, inclusions
* ``spec_format``: text format for functions and integrands
* ``cli``: the ``orlicz`` command
"""

from .analysis import (
    class_exponents,
    combine_equivalent,
    derivative_equivalence_constant,
    equivalence_scan,
    inclusion_report,
    modular_norm_multiplicativity_check,
    multiplicativity_scan,
)
from .constructors import (
    construct_epsilon_tight,
    construct_target_exponents,
    construct_widened,
    item3_splice,
    item4_splice,
    make_equivalent_power_family,
)
from .errors import *  # noqa: F401,F403
from .exponents import (
    delta2_check,
    exponent_report,
    lebesgue_exponents,
    limit_exponents_g,
    limit_exponents_r,
    normalized_bounds_check,
    scaling_inequality_check,
)
from .integrands import CauchyPower, FiniteSum, GaussQuad, Indicator, Separable, Zero, from_moments
from .mixed import counterexample_partial_sums, gaussian_family_values, mixed_norm, profiles_G_H
from .norms import luxemburg_norm, modular, power_sum_norm_closed_form, trichotomy_check
from .spec_format import parse_integrand, parse_spec, parse_young, render
from .young import (
    Combination,
    GridSpec,
    Scaled,
    Segment,
    Splice,
    catalog,
    eval_deriv,
    eval_inverse,
    evaluate,
    g_ratio,
    r_exponent,
    validate,
)

__version__ = "0.1.0"
