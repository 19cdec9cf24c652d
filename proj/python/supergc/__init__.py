"""Exact Grassmann-graded superfield calculus and a verification toolkit for
the structural equations of conformally parametrized surfaces and their
supersymmetric extensions.

The heavy lifting happens in the C++ core; this package exposes the Grassmann
algebra, the superspace expression engine and the scenario verifier.
"""

import json as _json

from ._core import Algebra, Expr, SgcError, Supernumber, Workspace
from ._core import scenario_names, scenario_text
from ._core import _verify_json


def verify(scenario, checks=("all",), generators=8):
    """Run verification checks on a built-in scenario name or a .scn path.

    Returns the report as a dict: scenario, generators, overall, verdict,
    witnesses and the per-check list.
    """
    if isinstance(checks, str):
        checks = (checks,)
    return _json.loads(_verify_json(scenario, list(checks), generators))


def workspace_verify(ws, checks=("all",), generators=8):
    """Same as verify() for an already-loaded Workspace."""
    if isinstance(checks, str):
        checks = (checks,)
    return _json.loads(ws._verify_json(list(checks), generators))


__all__ = [
    "Algebra",
    "Expr",
    "SgcError",
    "Supernumber",
    "Workspace",
    "scenario_names",
    "scenario_text",
    "verify",
    "workspace_verify",
]
