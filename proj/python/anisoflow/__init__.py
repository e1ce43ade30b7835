from ._aniso import (
    Certificate,
    Grid,
    Law,
    SolveReport,
    Verdict,
    Violation,
    certify,
    certify_all,
    empirical_power_constant,
    falsify,
    mono_product,
    power_mono_strong_slack,
    solve_manufactured,
)

__all__ = [
    "Certificate",
    "Grid",
    "Law",
    "SolveReport",
    "Verdict",
    "Violation",
    "certify",
    "certify_all",
    "empirical_power_constant",
    "falsify",
    "mono_product",
    "power_mono_strong_slack",
    "solve_manufactured",
]
