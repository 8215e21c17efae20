"""Pursuit games and geodesic geometry on the bundled model spaces.

Thin wrapper over the compiled extension: coordinates go in and out as
(c1, c2) tuples, play() returns the same JSON/CSV payloads the CLI writes.
"""

import json as _json

from . import _core as _impl
from ._core import (
    distance,
    extend_beyond,
    geodesic_point,
    is_between,
    lion_step,
    space_names,
    verify,
)

__all__ = [
    "distance",
    "extend_beyond",
    "geodesic_point",
    "is_between",
    "lion_step",
    "play",
    "space_names",
    "verify",
]


def play(space, jump_bound, l0, m0, strategy="stationary", domain="whole",
         horizon=100, eps=1e-6, seed=0):
    """Run one game and return the outcome record (dict) with the transcript.

    The dict mirrors the CLI's JSON output; the raw CSV transcript is added
    under the "csv" key.
    """
    outcome_json, csv = _impl.play(space, jump_bound, l0, m0, strategy, domain,
                                   horizon, eps, seed)
    record = _json.loads(outcome_json)
    record["csv"] = csv
    return record
