"""Python interface to the lscont C++ library."""

from ._core import (
    CheckEntry,
    JostZero,
    LscontError,
    PhysicalConfig,
    QuadratureSpec,
    RadialField,
    TestFunction,
    VerificationReport,
    bra,
    bump,
    chi,
    chi_on_grid,
    count_zeros,
    evolve,
    find_resonances,
    gauss_damped,
    jost,
    ket,
    load_config,
    parse_config,
    parse_test_function,
    relative_l2_difference,
    s_matrix,
    standard_family,
    suite_names,
    transform,
    verify,
)

__all__ = [name for name in dir() if not name.startswith("_")]
