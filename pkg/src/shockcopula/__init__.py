"""Shock-model copulas, their generator calculus, and p-box bounds.

Three copula families arise when component lifetimes share one exogenous
shock: the max-type family (shock competes with each component, joint
maxima), the mixed max/min family, and the reflected variant of the mixed
family whose generators vanish at both endpoints.  This package builds
those copulas from distribution functions, extends them to interval-valued
(p-box) inputs with pointwise bounds, and ships the verification suites
that check every claimed property against independent oracles.
"""

from .distfn import (
    Clamp,
    Convex,
    DiracStep,
    Discrete,
    DistributionFn,
    Exponential,
    PiecewiseLinearWithJumps,
    Switch,
    Uniform,
    from_spec,
    lifetime_max,
    lifetime_min,
    to_spec,
)
from .genfn import (
    DegenerateModelError,
    Generator,
    GeneratorDomainError,
    IdentityGenerator,
    PiecewiseLinearGenerator,
    TruncatedLinear,
    UnitGenerator,
    ZeroGenerator,
    extend_chi,
    extend_phi,
    extend_psi,
    generator_from_spec,
    tabulate,
    to_rmm,
    validate,
)
from .copulas import (
    GeneratorVector,
    MAX_DIMENSION,
    joint_marshall_H,
    joint_maxmin_H,
    joint_rmm_Hsigma,
    joint_rmm_product,
    marshall2,
    marshall_n,
    maxmin2,
    maxmin_n,
    rmm2,
    rmm_n,
)
from .imprecise import (
    BoundFamily,
    PBox,
    ShockModel,
    build_bounds,
    marshall_H_bounds,
    marshall_bound_copulas,
    maxmin_H_bounds,
    maxmin_bivariate_mixed_bounds,
    maxmin_bound_copulas,
    rmm_H_bounds,
    rmm_bivariate_copula_bounds,
    rmm_envelope,
    rmm_envelope_full_scan,
)
from .verify import (
    DiscreteModelOracle,
    check_copula,
    check_quasicopula,
    monte_carlo_joint,
    rectangle_volume,
    run_suite,
)

__version__ = "0.1.0"

__all__ = [
    "Clamp", "Convex", "DiracStep", "Discrete", "DistributionFn", "Exponential",
    "PiecewiseLinearWithJumps", "Switch", "Uniform", "from_spec", "lifetime_max",
    "lifetime_min", "to_spec",
    "DegenerateModelError", "Generator", "GeneratorDomainError", "IdentityGenerator",
    "PiecewiseLinearGenerator", "TruncatedLinear", "UnitGenerator", "ZeroGenerator",
    "extend_chi", "extend_phi", "extend_psi", "generator_from_spec", "tabulate",
    "to_rmm", "validate",
    "GeneratorVector", "MAX_DIMENSION", "joint_marshall_H", "joint_maxmin_H",
    "joint_rmm_Hsigma", "joint_rmm_product", "marshall2", "marshall_n", "maxmin2",
    "maxmin_n", "rmm2", "rmm_n",
    "BoundFamily", "PBox", "ShockModel", "build_bounds", "marshall_H_bounds",
    "marshall_bound_copulas", "maxmin_H_bounds", "maxmin_bivariate_mixed_bounds",
    "maxmin_bound_copulas", "rmm_H_bounds", "rmm_bivariate_copula_bounds",
    "rmm_envelope", "rmm_envelope_full_scan",
    "DiscreteModelOracle", "check_copula", "check_quasicopula", "monte_carlo_joint",
    "rectangle_volume", "run_suite",
    "__version__",
]
