"""Exact residue pairings for polynomials with an isolated critical point."""

from .errors import (
    InputValidationError,
    InternalInvariantError,
    ParseError,
    ResidueForgeError,
    UsageError,
)
from .groebner import MilnorAlgebra, milnor_data, quasi_homogeneous_weights
from .localized import DenominatorFamily, LocalizedRational
from .pairing import chern_delta, characteristic_slabs, hres_series, pairing_matrix, pairing_series
from .parse import parse_poly, parse_var_names
from .poly import MultiPoly, VarSet
from .residue import res_localized, res_monomial, res_pairing
from .series import USeries
from .twisted import b_coeff_closed, b_series, jacobian_family

__all__ = [
    "InputValidationError",
    "InternalInvariantError",
    "ParseError",
    "ResidueForgeError",
    "UsageError",
    "MilnorAlgebra",
    "milnor_data",
    "quasi_homogeneous_weights",
    "DenominatorFamily",
    "LocalizedRational",
    "chern_delta",
    "characteristic_slabs",
    "hres_series",
    "pairing_matrix",
    "pairing_series",
    "parse_poly",
    "parse_var_names",
    "MultiPoly",
    "VarSet",
    "res_localized",
    "res_monomial",
    "res_pairing",
    "USeries",
    "b_coeff_closed",
    "b_series",
    "jacobian_family",
]
