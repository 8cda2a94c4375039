# SPDX-License-Identifier: Apache-2.0
"""Python access to the fso-irs-lab channel models."""

from ._core import (
    __version__,
    builtin_names,
    erf,
    gamma_gamma_cdf,
    gg_params,
    gml,
    link_at_x,
    oracle_gml,
    owen_t,
    relay_gml,
    run_scenario,
)

__all__ = [
    "__version__",
    "builtin_names",
    "erf",
    "gamma_gamma_cdf",
    "gg_params",
    "gml",
    "link_at_x",
    "oracle_gml",
    "owen_t",
    "relay_gml",
    "run_scenario",
]
