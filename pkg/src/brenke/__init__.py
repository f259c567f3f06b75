"""Exact connection and linearization coefficients for Brenke-type polynomial families."""

from .brenke_core import (
    BrenkeFamily,
    Polynomial,
    TransferOperator,
    appell_family,
    brenke_poly,
    hypergeometric_transfer,
    inversion_coeffs,
    lowering_apply,
    monomial_family,
    transfer_between,
    xd_phi,
)
from .errors import (
    BrenkeError,
    InsufficientOrderError,
    NonTerminatingError,
    NotInvertibleError,
    ParameterError,
    PoleError,
    QuadratureError,
)
from .expansion import (
    ConnectionTable,
    LinearizationTable,
    connection_explicit,
    connection_gf,
    connection_gf_table,
    duplication_coeffs,
    linearization_explicit,
    linearization_gf,
)
from .oracle import BasisSet, expand_in_basis, oracle_connection, oracle_linearization
from .scalar_series import PowerSeries
from .special_families import (
    FamilySpec,
    generalized_hermite_family,
    gghps_family,
    hermite_family,
    make_family,
)

__version__ = "0.1.0"
