"""
Closed-form estimators.
"""

from .closed_form import (
    Method,
    Estimate,
    VALID_SCENARIOS,
    CLOSED_FORM_METHODS,
    normalize_method,
    is_valid_for,
    methods_for_scenario,
    adhoc_estimate,
    hozo_estimate,
    bland_estimate,
    wan_mean,
    wan_sd,
    wan_estimate,
    closed_form_estimate,
)

__all__ = [
    "Method",
    "Estimate",
    "VALID_SCENARIOS",
    "CLOSED_FORM_METHODS",
    "normalize_method",
    "is_valid_for",
    "methods_for_scenario",
    "adhoc_estimate",
    "hozo_estimate",
    "bland_estimate",
    "wan_mean",
    "wan_sd",
    "wan_estimate",
    "closed_form_estimate",
]
