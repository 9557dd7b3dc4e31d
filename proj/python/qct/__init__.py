# Copyright 2026 The QCT Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Quantum coin-tossing protocol simulator, verifier and attacker.

Outcome tables are 3 x 3 arrays indexed [alice][bob] over (0, 1, abort).
"""

import json

from . import _qct
from ._qct import (
    ClassicalProtocol,
    DimensionError,
    ParseError,
    Party,
    PreconditionError,
    Protocol,
    ProtocolError,
    QctError,
    Strategy,
    ValidationError,
    classical_distribution,
    dk,
    fidelity,
    for_each_fair_protocol,
    forcing_probability,
    helstrom,
    partial_trace,
    run_exact,
    sample,
    trace_norm,
)

__all__ = [
    "ClassicalProtocol",
    "DimensionError",
    "ParseError",
    "Party",
    "PreconditionError",
    "Protocol",
    "ProtocolError",
    "QctError",
    "Strategy",
    "ValidationError",
    "alice_preparation_bound",
    "classical_distribution",
    "dilate",
    "dk",
    "fidelity",
    "for_each_fair_protocol",
    "forcing_probability",
    "helstrom",
    "optimize_cheat",
    "partial_trace",
    "run_exact",
    "sample",
    "solve_winning",
    "trace_norm",
]

__version__ = "0.1.0"


def _party(p):
    if isinstance(p, Party):
        return p
    return {"alice": Party.ALICE, "bob": Party.BOB}[p]


def dilate(protocol, party="alice", opponents=20, seed=0):
    """Unitary normal form of one party's strategy plus its verification report."""
    pure, report = _qct.dilate(protocol, _party(party), opponents, seed)
    return pure, json.loads(report)


def alice_preparation_bound(psi0, psi1, dims, mailbox_factor, restarts=32, budget=20000, seed=0,
                            claimed_bound=None):
    value, argmax, evaluations, diagnostics = _qct.alice_preparation_bound(
        psi0, psi1, list(dims), mailbox_factor, restarts, budget, seed, claimed_bound)
    return {"value": value, "argmax": argmax, "evaluations": evaluations, "diagnostics": diagnostics}


def optimize_cheat(protocol, family, party, target, restarts=32, budget=20000, seed=0, claimed_bound=None):
    """Search a named cheating family; returns the search report as a dict.

    The value is a lower bound on the optimal cheat, not a certificate.
    """
    return json.loads(_qct.optimize_cheat(protocol, family, _party(party), target, restarts, budget, seed,
                                          claimed_bound))


def solve_winning(protocol, winner_outcome):
    party, value, forced, strategy = _qct.solve_winning(protocol, winner_outcome)
    return {"party": party, "value": value, "forced": forced, "strategy": json.loads(strategy)}
