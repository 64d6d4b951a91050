"""Exact generalized complex geometry on flat tori and mirror maps for elliptic curves."""

from .errors import (
    DegenerateFormError,
    DimensionError,
    GeometryError,
    InvalidStructureError,
    ParseError,
    RoleError,
)
from .gcs import (
    ClassifiedStructure,
    GCStructure,
    Kind,
    Modulus,
    Role,
    b_symplectic_from_modulus,
    b_transform,
    classify,
    complex_from_modulus,
    eigenbundle,
    from_complex,
    from_symplectic,
    modulus_from_complex,
    validate,
)
from .generalized_algebra import (
    GVector,
    SplitFrame,
    ThreeForm,
    TwoForm,
    apply_map,
    courant_bracket,
    exp_b,
    is_orthogonal,
    pairing,
)
from .mirror_maps import consistency_check, rho_to_tau, syz_mirror, tau_to_rho
from .scalars import GaussianRational
from .tduality import DualityData, lift, phi_apply, phi_matrix, transport, verify_isomorphism

__version__ = "0.1.0"
