"""High-order differentiation stencils and the problems used to compare them."""

from stencil_lab.metrics import h1_seminorm_error, linf_error
from stencil_lab.operators import (
    BoundaryPolicy,
    DiffOperator,
    Grid,
    apply_stencil,
    build_matrix,
)
from stencil_lab.stencils import (
    SCHEMES,
    RSKParams,
    SechParams,
    StencilError,
    StencilSpec,
    WeightVector,
    dsc_rsk_weights,
    fd_weights,
    make_weights,
    sech_weights,
    sinc_weights,
    stencil_symbol,
)

__version__ = "0.1.0"

__all__ = [
    "SCHEMES",
    "StencilSpec",
    "WeightVector",
    "RSKParams",
    "SechParams",
    "StencilError",
    "fd_weights",
    "sinc_weights",
    "sech_weights",
    "dsc_rsk_weights",
    "make_weights",
    "stencil_symbol",
    "Grid",
    "BoundaryPolicy",
    "DiffOperator",
    "apply_stencil",
    "build_matrix",
    "linf_error",
    "h1_seminorm_error",
]
