"""Hyperbolic amoebas of surfaces in SL2(C)."""

from ._core import (
    HamoebaError,
    HPoint,
    __version__,
    busemann,
    distance,
    distance_from_origin,
    geodesic_from_origin,
    hausdorff_capped,
    kappa,
    lemma_check,
    poly_roots,
    rescale,
    run_cli,
    sample_trace_surface,
    set_worker_count,
    steer,
    trace_oracle_rmin,
    tropical_limit,
)

__all__ = [
    "HamoebaError",
    "HPoint",
    "__version__",
    "busemann",
    "distance",
    "distance_from_origin",
    "geodesic_from_origin",
    "hausdorff_capped",
    "kappa",
    "lemma_check",
    "poly_roots",
    "rescale",
    "run_cli",
    "sample_trace_surface",
    "set_worker_count",
    "steer",
    "trace_oracle_rmin",
    "tropical_limit",
]
