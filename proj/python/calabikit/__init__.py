"""Verification toolkit for isometric immersions into Hopf manifolds.

The heavy lifting lives in the C++ extension ``calabikit._core``; this
package re-exports it and adds dict-returning wrappers around the JSON
report commands.
"""

import json as _json

from ._core import (  # noqa: F401
    BiSeries,
    Surface,
    build_surface,
    calabi_matrix,
    character_rank,
    character_report_json,
    descent_report_json,
    diastasis_from_potential,
    go_derivative_check,
    go_eigenvalue_product,
    go_negative_witness,
    go_potential,
    lck_report_json,
    resolvability,
    resolvability_report_json,
    verify_report_json,
    witness_report_json,
)

__version__ = "1.0.0"

_COMMANDS = {
    "resolvability": resolvability_report_json,
    "verify": verify_report_json,
    "descent": descent_report_json,
    "character": character_report_json,
    "lck": lck_report_json,
}


def run(command, **kwargs):
    """Run a report command and return the parsed JSON report.

    ``run("verify", surface="parton:k=2", samples=100)``
    """
    if command == "witness":
        return _json.loads(witness_report_json(**kwargs))
    try:
        fn = _COMMANDS[command]
    except KeyError:
        raise ValueError(f"unknown command {command!r}") from None
    return _json.loads(fn(**kwargs))
