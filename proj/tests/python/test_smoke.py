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

import json

import numpy as np
import pytest

import qct


def test_honest_protocol():
    t = qct.run_exact(qct.dk.honest())
    assert t.shape == (3, 3)
    assert abs(t[0, 0] - 0.5) < 1e-10
    assert abs(t[1, 1] - 0.5) < 1e-10
    assert abs(t.sum() - 1.0) < 1e-9


def test_published_cheats():
    p = qct.dk.honest()
    for target in (0, 1):
        assert abs(qct.forcing_probability(p, qct.Party.BOB, target, qct.dk.bob_cheat(target)) - 0.75) < 1e-10
        assert abs(qct.forcing_probability(p, qct.Party.ALICE, target, qct.dk.alice_cheat(target)) - 0.75) < 1e-10


def test_helstrom_and_fidelity():
    r0 = np.diag([0.5, 0.0, 0.5]).astype(complex)
    r1 = np.diag([0.0, 0.5, 0.5]).astype(complex)
    assert abs(qct.helstrom(r0, r1) - 0.75) < 1e-12
    assert abs(qct.fidelity(r0, r1) - 0.5) < 1e-12
    assert abs(qct.trace_norm(r0 - r1) - 1.0) < 1e-12


def test_partial_trace():
    psi = qct.dk.psi(0)
    rho = np.outer(psi, psi.conj())
    np.testing.assert_allclose(qct.partial_trace(rho, [3, 3], [1]), np.diag([0.5, 0, 0.5]), atol=1e-15)


def test_sample_is_reproducible():
    p = qct.dk.honest()
    a = qct.sample(p, 1000, 5)
    assert a.sum() == 1000
    assert (a == qct.sample(p, 1000, 5)).all()


def test_json_round_trip():
    p = qct.dk.honest()
    q = qct.Protocol.from_json(p.to_json())
    np.testing.assert_array_equal(qct.run_exact(p), qct.run_exact(q))
    assert json.loads(p.to_json())["kind"] == "protocol"


def test_errors_map_to_python_exceptions():
    with pytest.raises(qct.ParseError):
        qct.Protocol.from_json("{")
    with pytest.raises(qct.PreconditionError):
        qct.dk.bob_cheat(2)
    assert issubclass(qct.ValidationError, qct.QctError)


def test_dilation():
    pure, report = qct.dilate(qct.dk.honest(), "bob", opponents=5, seed=1)
    assert len(report["deviations"]) == 5
    assert report["max_deviation"] < 1e-6
    assert pure.party == qct.Party.BOB


def test_preparation_bound():
    r = qct.alice_preparation_bound(qct.dk.psi(0), qct.dk.psi(1), [3, 3], 1, restarts=4, budget=4000, seed=0)
    assert 0.749 <= r["value"] <= 0.75 + 1e-6
    assert abs(np.trace(r["argmax"]) - 1.0) < 1e-12


def test_cheat_search():
    r = qct.optimize_cheat(qct.dk.honest(), "measure-respond", "bob", 0, restarts=4, budget=2000, seed=3)
    assert 0.749 <= r["best_value"] <= 0.75 + 1e-9
    assert r["family"] == "measure-respond"


def test_classical():
    r = qct.solve_winning(qct.ClassicalProtocol.xor(), 0)
    assert r["party"] == qct.Party.BOB
    assert r["value"] == 1.0
    seen = []
    qct.for_each_fair_protocol(1, lambda c: seen.append(qct.classical_distribution(c)))
    assert seen
    for t in seen:
        assert abs(t[0, 0] + t[1, 1] - 1.0) < 1e-12
