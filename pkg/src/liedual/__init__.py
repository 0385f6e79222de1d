"""Exact-arithmetic Lie theory: root data, Chevalley bases, Langlands
duals, invariant differential forms, and T-duality verification."""

__version__ = "0.1.0"

from .rootdatum import (  # noqa: F401
    RootDatum,
    build_from_dynkin,
    cartan_matrix,
    dualize,
    fundamental_group,
    is_ade,
    parse_descriptor,
    validate,
)
from .chevalley import build_lie_algebra  # noqa: F401
from .tduality import verify_all  # noqa: F401
