"""Step-function smoothing of the empirical CDF via expected order statistics.

The central object is the m-step estimator that places mass 1/m at each
estimated expected order statistic of an m-sample, computed from the
empirical CDF.  Around it: the exact operator calculus on step CDFs and
L-functionals, distances between fitted and reference laws, a plug-in
Gaussian-kernel baseline, bootstrap and Brownian-bridge limit simulation,
and a reproducible simulation harness with a CLI.
"""

from .cdf_model import (
    StepCdf,
    ecdf,
    lp_distance_step_cont,
    lp_distance_step_step,
)
from .distributions import (
    DistributionSpec,
    catalog_lookup,
    catalog_names,
    mixture_law,
    substream,
)
from .hoeffding import (
    beta_average,
    ehcdf,
    h_m_step,
    hoeffding_cdf,
    i_m_apply,
    m_from_gamma,
    mu_hat,
    mu_true,
)
from .kernel_baseline import (
    ekcdf_eval,
    ekcdf_lp_error,
    ekcdf_sup_error,
    sj_bandwidth,
)
from .l_functionals import (
    LStats,
    WeightFunction,
    h_m_stats,
    l_moment,
    l_stats,
    p_m_weight,
    shifted_legendre_weight,
    t_w,
)
from .metrics import (
    ks_two_sample,
    wasserstein_step_cont,
    wasserstein_step_step,
    wp_power_equal_mass,
)
from .resampling import (
    LimitSampler,
    bootstrap_ecdf,
    bootstrap_ehcdf,
    brownian_bridge,
)

__version__ = "0.1.0"

__all__ = [
    "StepCdf",
    "ecdf",
    "lp_distance_step_cont",
    "lp_distance_step_step",
    "DistributionSpec",
    "catalog_lookup",
    "catalog_names",
    "mixture_law",
    "substream",
    "beta_average",
    "ehcdf",
    "h_m_step",
    "hoeffding_cdf",
    "i_m_apply",
    "m_from_gamma",
    "mu_hat",
    "mu_true",
    "ekcdf_eval",
    "ekcdf_lp_error",
    "ekcdf_sup_error",
    "sj_bandwidth",
    "LStats",
    "WeightFunction",
    "h_m_stats",
    "l_moment",
    "l_stats",
    "p_m_weight",
    "shifted_legendre_weight",
    "t_w",
    "ks_two_sample",
    "wasserstein_step_cont",
    "wasserstein_step_step",
    "wp_power_equal_mass",
    "LimitSampler",
    "bootstrap_ecdf",
    "bootstrap_ehcdf",
    "brownian_bridge",
    "__version__",
]
