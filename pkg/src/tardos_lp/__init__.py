"""Exact primal-simplex based Tardos algorithm for totally unimodular LPs."""
from .lp_model import LPInstance, parse_instance, serialize_instance
from .tardos import SolveOutcome, SolveStatus, solve

__all__ = ["LPInstance", "SolveOutcome", "SolveStatus", "parse_instance", "serialize_instance", "solve"]
