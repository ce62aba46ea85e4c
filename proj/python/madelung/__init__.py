"""Separable-phase quantum solution family.

Thin Python surface over the C++ core: configured runs with CSV/PGM/JSON
artifacts, finite-difference residual verification, pointwise field sampling,
the closed scenario formulas, and field-table comparison.
"""

from ._core import (
    Error,
    allowed_outputs,
    canonical_config,
    compare_csv,
    config_hash,
    free_particle_c2,
    free_particle_fields,
    run,
    sample,
    verify,
    waveguide_flow,
    waveguide_n1,
)

__all__ = [
    "Error",
    "allowed_outputs",
    "canonical_config",
    "compare_csv",
    "config_hash",
    "free_particle_c2",
    "free_particle_fields",
    "run",
    "sample",
    "verify",
    "waveguide_flow",
    "waveguide_n1",
]
