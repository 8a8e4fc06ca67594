"""Numerical toolkit for harmonic analysis on tube domains over symmetric cones."""

import json as _json

from _symcone import (  # noqa: F401
    Cone,
    bergman_kernel,
    beta_closed,
    box_symbol,
    determinant,
    gamma_closed,
    gamma_integral,
    in_cone,
    in_wallach,
    inverse,
    jordan_product,
    laplace_power,
    mu_density,
    power_function,
    principal_minor,
    pw_synthesize,
    registered_suites,
    rotated_minor,
    run_suite,
    spectral,
    star,
    trace_inner,
)


def verify(suite, **kwargs):
    """Runs a verification suite and returns the parsed report."""
    return _json.loads(run_suite(suite, **kwargs))
