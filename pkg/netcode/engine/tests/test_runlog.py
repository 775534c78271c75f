"""Tests para NodeTrace y RunLog."""

from __future__ import annotations

import json
import math

from netcode.engine.runlog import NodeTrace, RunLog
from netcode.shared.config import ScenarioConfig


class TestNodeTrace:
    """Tests para NodeTrace."""

    def test_record_and_derived(self):
        trace = NodeTrace(node=3, initial=1)
        trace.record(1, 2, False)
        trace.record(2, 1, True)
        assert trace.received == 2
        assert trace.delay == 1
        assert trace.final_recovered == 2
        assert trace.censored

    def test_recovered_at_carries_forward(self):
        trace = NodeTrace(node=1, initial=0, recovered=[1, 2], degrees=[1, 1], immediate=[True, True])
        assert [trace.recovered_at(x) for x in range(5)] == [0, 1, 2, 2, 2]


class TestRunLog:
    """Tests para la serialización de RunLog."""

    def make(self, potential):
        return RunLog(
            config=ScenarioConfig(n_nodes=1, n_symbols=2, seed=4),
            traces={1: NodeTrace(node=1, initial=0, recovered=[1], degrees=[1], immediate=[True])},
            rounds=1,
            potential_mean=potential,
        )

    def test_to_dict_is_json(self):
        data = self.make([math.nan]).to_dict()
        assert data["potential_mean"] == [None]
        assert data["config"]["seed"] == 4
        json.dumps(data)

    def test_fingerprint_detects_changes(self):
        assert self.make([1.0]).fingerprint() == self.make([1.0]).fingerprint()
        assert self.make([1.0]).fingerprint() != self.make([1.5]).fingerprint()

    def test_seed_and_symbols(self):
        log = self.make([])
        assert (log.seed, log.n_symbols) == (4, 2)
