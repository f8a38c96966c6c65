"""X-rank tools for polynomial decoupling: Veronese scrolls, catalecticant
membership, Terracini dimension probes, identifiability bounds and exact
coefficient recovery."""
from .bounds import (
    AHExceptionPolicy,
    BoundsReport,
    ah_generic_rank,
    bounds_report,
    defect_formula,
    dis_bound,
    identifiability_bound,
    partial_identifiability_range,
    r1,
    r2,
    r3,
    r4,
    r5,
    rgen_d1d_bounds,
    rmax_bounds,
)
from .catalecticant import (
    CatalecticantMatrix,
    ProfilePoint,
    catalecticant,
    minors_2x2,
    scroll_membership,
    stacked_catalecticant,
)
from .decouple import (
    DecoupledModel,
    RecoveryReport,
    embed,
    evaluate,
    parse_dense,
    recover_coefficients,
    synth,
)
from .polyspace import SymPoly, multi_index_set, multinomial, poly_eval, power_coords, space_dim
from .scroll import ScrollParams, jacobian_at, psi, psi_m, sample_params
from .terracini import (
    RankBackend,
    SecantProbe,
    generic_rank_probe,
    max_nondefective_rank,
    rank_of,
    secant_dim_probe,
)

__version__ = "0.1.0"
