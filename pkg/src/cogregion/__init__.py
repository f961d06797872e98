"""Achievable rate regions for three-user cognitive interference channels.

The pipeline runs from a :class:`GaussianChannelSpec` and a coding-parameter
draw to a covariance of the channel outputs and auxiliaries.  From there
it evaluates a catalog of mutual-information bounds on split rates, then
projects to total rates.  The union over many draws is taken by
:func:`explore`.
"""

from .catalog import BoundCatalog, RateBound, RatePolytope, catalog_for, instantiate, project_to_totals
from .channel import (
    CMS1,
    CMS2,
    PMS1,
    PMS2,
    GaussianChannelSpec,
    ModelVariant,
    SplittingParams,
    db_to_linear,
    sample_params,
    sample_params_batch,
    validate_spec,
)
from .errors import (
    DegenerateSystem,
    EmptySlice,
    MissingVariable,
    NonFiniteCoefficient,
    NonPositiveNoise,
    NonPositivePower,
    OverlappingSets,
    RegionError,
    SingularSubmatrix,
    SpecError,
    Unbounded,
    VariantUnsupported,
)
from .explorer import RegionEstimate, compare, explore, merge_estimates, slice2d
from .gaussian import THETA_NAMES, CovarianceModel, build_covariance
from .infotheory import MITerm, VarSet, entropy, evaluate_terms, mutual_information
from .polytope import HalfspaceSystem, enumerate_vertices, fm_eliminate, project_sums, support

__all__ = [name for name in dir() if not name.startswith("_")]
