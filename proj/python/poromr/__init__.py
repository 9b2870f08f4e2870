"""Multirate finite-element solver for fluid-saturated poroelasticity.

Thin wrapper over the compiled core; see the project README for the model,
the scheme and the file formats.
"""

from ._core import (
    __version__,
    bench_config,
    derive_kappas,
    derive_lame,
    mesh_info,
    run,
    run_config,
    study_config,
    to_reformulated,
)

__all__ = [
    "__version__",
    "bench_config",
    "derive_kappas",
    "derive_lame",
    "mesh_info",
    "run",
    "run_config",
    "study_config",
    "to_reformulated",
]
