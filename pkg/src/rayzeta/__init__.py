"""Exact special values at s=0 of ray-class partial zeta functions of real
quadratic fields via cone decomposition, with quasi-polynomial analysis over
polynomial families and Hecke L-value assembly."""

from .contfrac import MinusCF, PeriodicCF, cf_value, minus_cf, plus_cf, plus_to_minus
from .family import (
    FamilySpec,
    FieldInstance,
    QuasiPoly,
    PRESETS,
    fit_oracle,
    get_preset,
    instantiate,
    k_to_n_form,
    n_to_k_form,
    norm_invariance_check,
    quasi_poly,
)
from .hecke import CharSpanValue, DirichletChar, hecke_L0, hecke_L0_family
from .quadfield import (
    ModuleBasis,
    QuadElem,
    QuadField,
    conj,
    coords_in_basis,
    fundamental_unit_totally_positive,
    is_totally_positive,
    norm,
    unit_index_lambda,
)
from .shintani import (
    ConeContext,
    RayLabel,
    eps_act,
    f_delta,
    orbit,
    partial_zeta0,
    xy_direct,
    yamamoto_xy,
)

__version__ = "0.1.0"
