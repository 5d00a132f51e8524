"""Chart-based geometry of Grassmann, Stiefel and fixed-rank matrix manifolds."""

import json as _json

from ._core import (
    DimensionMismatch,
    Error,
    FixedRankChart,
    GrassmannChart,
    LineSearchFailed,
    OptimizerConfig,
    OutOfChartDomain,
    ParseError,
    RankDeficient,
    RankMismatch,
    RankRPoint,
    SingularFactor,
    StiefelChart,
    Subspace,
    factor_rank_r,
    fixed_rank,
    grassmann,
    low_rank_approx,
    minimize,
    numerical_rank,
    orthogonal_complement,
    pseudo_inverse,
    random_full_rank,
    random_rank_r,
    stiefel,
    verify_json,
)

__version__ = "0.1.0"


def verify(suite="all", n=20, m=15, k=12, r=3, seed=0, trials=100):
    """Runs a seeded invariant suite and returns the report as a dict."""
    return _json.loads(verify_json(suite, n, m, k, r, seed, trials))
