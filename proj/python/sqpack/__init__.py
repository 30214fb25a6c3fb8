from ._sqpack import (
    BudgetExceeded,
    Instance,
    InvalidArgument,
    InvariantFailure,
    Packing,
    ParseError,
    StrictModeInfeasible,
    approx5322,
    bounds,
    exact,
    ffdh,
    ffds,
    fits,
    nfdh,
    ptas,
    render_svg,
    validate,
)

__all__ = [
    "BudgetExceeded",
    "Instance",
    "InvalidArgument",
    "InvariantFailure",
    "Packing",
    "ParseError",
    "StrictModeInfeasible",
    "approx5322",
    "bounds",
    "exact",
    "ffdh",
    "ffds",
    "fits",
    "nfdh",
    "ptas",
    "render_svg",
    "validate",
]
