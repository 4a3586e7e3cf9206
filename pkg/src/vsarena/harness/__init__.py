from .counters import behavior_counters
from .protocols import PROTOCOLS, EvalProtocol, EvalReport, compute_reference, run_protocol
from .references import (
    PUBLISHED,
    MissingOracleError,
    Reference,
    baseline_policy,
    normalize,
    opponent_policy,
    oracle_policies,
)

__all__ = [
    "PROTOCOLS",
    "PUBLISHED",
    "EvalProtocol",
    "EvalReport",
    "MissingOracleError",
    "Reference",
    "baseline_policy",
    "behavior_counters",
    "compute_reference",
    "normalize",
    "opponent_policy",
    "oracle_policies",
    "run_protocol",
]
