"""Tests para los algoritmos de selección."""

from __future__ import annotations

import numpy as np
import pytest

from netcode.algorithms.degree_table import DegreeTable, default_degree_table
from netcode.algorithms.oracle import ScriptedRng
from netcode.algorithms.selection import (
    SelectionError,
    anc_select,
    apply_degree_cap,
    receiver_rank,
    equalizing_select,
    feedback_selector,
    greedy_select,
    opportunistic_select,
    systematic_rlnc_select,
)
from netcode.shared.config import AlgorithmKind
from netcode.state.buffers import NeighborTable, NodeBuffer, missing_counts, recoverers


def random_instance(rng: np.random.Generator) -> tuple[NodeBuffer, NeighborTable]:
    """Instancia chica: n <= 10 símbolos, hasta 5 vecinos."""
    n = int(rng.integers(2, 11))
    own = NodeBuffer(node=0, mask=rng.random(n) < 0.7)
    m = int(rng.integers(1, 6))
    masks = rng.random((m, n)) < 0.5
    return own, NeighborTable(neighbors=tuple(range(1, m + 1)), masks=masks)


class TestOpportunistic:
    """Tests para opportunistic_select."""

    def test_forced_draws_give_non_ideal_packet(self, four_symbol_own, four_symbol_table):
        """Sorteos forzados s2 y luego s4 -> C={s2,s4}, |R(C)|=2."""
        rng = ScriptedRng([1, 2])
        outcome = opportunistic_select(four_symbol_own, four_symbol_table, rng)
        assert outcome.combined == frozenset({1, 3})
        assert outcome.order == (1, 3)
        assert len(outcome.immediate_recoverers) == 2
        assert rng.consumed == 2

    def test_single_candidate(self):
        """Un vecino al que le falta solo s1 -> C={s1}."""
        own = NodeBuffer.from_symbols(0, {0}, 3)
        table = NeighborTable.from_symbol_sets({5: set()}, 3)
        outcome = opportunistic_select(own, table, ScriptedRng([]))
        assert outcome.combined == frozenset({0})
        assert outcome.immediate_recoverers == frozenset({5})

    def test_nothing_missing(self, four_symbol_own):
        """Si todos los vecinos tienen B_x no hay nada que enviar."""
        table = NeighborTable.from_symbol_sets({1: {0, 1, 2, 3}}, 4)
        assert opportunistic_select(four_symbol_own, table, ScriptedRng([])).is_empty

    def test_invariant_holds_on_random_instances(self):
        """R(C) solo gana miembros (el algoritmo lo verifica en cada iteración)."""
        rng = np.random.default_rng(11)
        for _ in range(300):
            own, table = random_instance(rng)
            outcome = opportunistic_select(own, table, rng)
            assert outcome.combined <= own.recovered


class TestGreedy:
    """Tests para greedy_select."""

    def test_walkthrough_from_s1(self, four_symbol_own, four_symbol_table):
        """Primer símbolo s1, luego s2 (q: 2 -> 3); s3/s4 bajan a 1 < 3 y se detiene."""
        rng = ScriptedRng([0])
        outcome = greedy_select(four_symbol_own, four_symbol_table, rng)
        assert outcome.order == (0, 1)
        assert outcome.combined == frozenset({0, 1})
        assert len(outcome.immediate_recoverers) == 3
        assert rng.consumed == 1

    def test_nothing_missing(self, four_symbol_own):
        table = NeighborTable.from_symbol_sets({1: {0, 1, 2, 3}, 2: {0, 1, 2, 3}}, 4)
        assert greedy_select(four_symbol_own, table, ScriptedRng([])).is_empty

    def test_at_least_rarest_symbol(self):
        """|R(C_final)| >= max_s |R({s})|."""
        rng = np.random.default_rng(21)
        for _ in range(300):
            own, table = random_instance(rng)
            outcome = greedy_select(own, table, rng)
            best_single = max(
                (len(recoverers(table, {s})) for s in own.recovered), default=0
            )
            assert len(outcome.immediate_recoverers) >= best_single

    def test_every_symbol_increases_recoverers(self):
        """Por defecto cada símbolo agregado aumenta |R(C)|."""
        rng = np.random.default_rng(22)
        for _ in range(200):
            own, table = random_instance(rng)
            outcome = greedy_select(own, table, rng)
            values = [len(recoverers(table, set(outcome.order[: k + 1]))) for k in range(outcome.degree)]
            assert all(b > a for a, b in zip(values, values[1:]))

    def test_ties_skip_symbols_everyone_holds(self):
        """B_x={s1,s2}, N1={s2}: s2 deja |R| igual pero nadie en R*(C) lo necesita."""
        own = NodeBuffer.from_symbols(0, {0, 1}, 2)
        table = NeighborTable.from_symbol_sets({1: {1}}, 2)
        outcome = greedy_select(own, table, ScriptedRng([]), strict=False)
        assert outcome.combined == frozenset({0})

    def test_ties_accepted_when_holder_lacks_symbol(self):
        """N1={s2}, N2={s1}, N3={}: desde s1, agregar s2 empata en 2 y sirve a N2."""
        own = NodeBuffer.from_symbols(0, {0, 1}, 2)
        table = NeighborTable.from_symbol_sets({1: {1}, 2: {0}, 3: set()}, 2)
        relaxed = greedy_select(own, table, ScriptedRng([0]), strict=False)
        assert relaxed.combined == frozenset({0, 1})
        assert relaxed.immediate_recoverers == frozenset({1, 2})
        strict = greedy_select(own, table, ScriptedRng([0]))
        assert strict.combined == frozenset({0})
        assert strict.immediate_recoverers == frozenset({1, 3})

    def test_ties_only_add_symbols_some_holder_lacks(self):
        rng = np.random.default_rng(23)
        for _ in range(300):
            own, table = random_instance(rng)
            outcome = greedy_select(own, table, rng, strict=False)
            for k in range(1, outcome.degree):
                prefix = set(outcome.order[:k])
                full = table.masks[missing_counts(table, prefix) == 0]
                assert full.shape[0] > 0
                assert not full[:, outcome.order[k]].all()

    def test_selector_modes(self, four_symbol_own, four_symbol_table):
        strict = feedback_selector(AlgorithmKind.GREEDY)
        relaxed = feedback_selector(AlgorithmKind.GREEDY, greedy_strict=False)
        assert strict is greedy_select
        assert relaxed(four_symbol_own, four_symbol_table, ScriptedRng([0])).combined == frozenset({0, 1})


class TestEqualizing:
    """Tests para equalizing_select."""

    def test_walkthrough_from_s1(self, four_symbol_own, four_symbol_table):
        """J=N2 con s*=s1, luego J=N1 fuerza s2 y B queda vacío."""
        rng = ScriptedRng([0])
        outcome = equalizing_select(four_symbol_own, four_symbol_table, rng)
        assert outcome.order == (0, 1)
        assert outcome.served == (2, 1)
        assert len(outcome.immediate_recoverers) == 3

    def test_poorest_neighbor_first(self):
        """B_1={}, B_2=B_x={s1} -> J=N1, C={s1}."""
        own = NodeBuffer.from_symbols(0, {0}, 1)
        table = NeighborTable.from_symbol_sets({1: set(), 2: {0}}, 1)
        outcome = equalizing_select(own, table, ScriptedRng([]))
        assert outcome.combined == frozenset({0})
        assert outcome.served == (1,)

    def test_served_neighbors_can_decode(self):
        """Todo vecino elegido como J puede decodificar el paquete final."""
        rng = np.random.default_rng(31)
        for _ in range(300):
            own, table = random_instance(rng)
            outcome = equalizing_select(own, table, rng)
            if outcome.is_empty:
                continue
            miss = missing_counts(table, outcome.combined)
            for j in outcome.served:
                assert miss[table.neighbors.index(j)] == 1


class TestANC:
    """Tests para anc_select."""

    def test_single_symbol(self):
        own = NodeBuffer.from_symbols(0, {7}, 10)
        outcome = anc_select(own, None, default_degree_table(10), np.random.default_rng(0))
        assert outcome.combined == frozenset({7})

    def test_cardinality(self):
        """r=10, D(10)=4 -> |C|=4 dentro de lo recuperado."""
        own = NodeBuffer.from_symbols(0, range(10), 20)
        degrees = default_degree_table(20, {10: 4})
        outcome = anc_select(own, None, degrees, np.random.default_rng(1))
        assert outcome.degree == 4
        assert outcome.combined <= own.recovered

    def test_clamped_to_available(self):
        """r=3, D(3)=5 -> |C|=3."""
        own = NodeBuffer.from_symbols(0, {1, 4, 6}, 10)
        degrees = DegreeTable(n=10, degrees=(1,) * 11, overrides={3: 5})
        outcome = anc_select(own, None, degrees, np.random.default_rng(2))
        assert outcome.combined == frozenset({1, 4, 6})

    def test_empty_buffer(self):
        own = NodeBuffer.empty(0, 5)
        assert anc_select(own, None, default_degree_table(5), np.random.default_rng(0)).is_empty

    def test_complete_sender_uses_receiver_rank(self):
        """B_x completo: D(n)=1 sin rank, D(10)=4 con r=10."""
        own = NodeBuffer.from_symbols(0, range(20), 20)
        degrees = default_degree_table(20, {10: 4})
        assert anc_select(own, None, degrees, np.random.default_rng(1)).degree == 1
        assert anc_select(own, None, degrees, np.random.default_rng(1), rank=10).degree == 4

    def test_rank_clamped_to_available(self):
        own = NodeBuffer.from_symbols(0, {1, 4}, 10)
        degrees = DegreeTable(n=10, degrees=(1,) * 11, overrides={6: 5})
        assert anc_select(own, None, degrees, np.random.default_rng(2), rank=6).combined == frozenset({1, 4})


class TestReceiverRank:
    """Tests para receiver_rank."""

    def test_lower_quantile_of_incomplete(self):
        masks = np.zeros((4, 10), dtype=bool)
        for row, size in enumerate([2, 5, 7, 10]):
            masks[row, :size] = True
        table = NeighborTable(neighbors=(1, 2, 3, 4), masks=masks)
        assert receiver_rank(table, 0.0) == 2
        assert receiver_rank(table, 0.5) == 5
        assert receiver_rank(table, 1.0) == 7

    def test_all_complete(self):
        table = NeighborTable(neighbors=(1, 2), masks=np.ones((2, 6), dtype=bool))
        assert receiver_rank(table, 0.05) == 6

    def test_no_neighbors(self):
        assert receiver_rank(None, 0.05) is None
        assert receiver_rank(NeighborTable.empty(4), 0.05) is None


class TestSystematicRLNC:
    """Tests para systematic_rlnc_select."""

    def test_systematic_step(self):
        own = NodeBuffer.from_symbols(0, range(100), 100)
        outcome = systematic_rlnc_select(own, True, None, np.random.default_rng(0), step=42)
        assert outcome.combined == frozenset({42})

    def test_coded_single_symbol(self):
        """r=1: el redibujo de ceros fuerza el único bit."""
        own = NodeBuffer.from_symbols(0, {3}, 5)
        outcome = systematic_rlnc_select(own, False, None, np.random.default_rng(0))
        assert outcome.combined == frozenset({3})

    def test_coded_mean_degree(self):
        """r=100 -> grado medio cercano a 50."""
        own = NodeBuffer.from_symbols(0, range(100), 100)
        rng = np.random.default_rng(5)
        degrees = [systematic_rlnc_select(own, False, None, rng).degree for _ in range(2000)]
        assert np.mean(degrees) == pytest.approx(50, abs=1.0)


class TestDeterminism:
    """Misma semilla -> misma selección."""

    @pytest.mark.parametrize(
        "kind",
        [AlgorithmKind.OPPORTUNISTIC, AlgorithmKind.GREEDY, AlgorithmKind.EQUALIZING],
    )
    def test_feedback_algorithms(self, kind):
        own, table = random_instance(np.random.default_rng(77))
        select = feedback_selector(kind)
        a = select(own, table, np.random.default_rng(9))
        b = select(own, table, np.random.default_rng(9))
        assert a == b

    def test_anc_and_rlnc(self):
        own = NodeBuffer.from_symbols(0, range(30), 40)
        degrees = default_degree_table(40)
        for select in (
            lambda rng: anc_select(own, None, degrees, rng),
            lambda rng: systematic_rlnc_select(own, False, None, rng),
        ):
            assert select(np.random.default_rng(3)) == select(np.random.default_rng(3))

    def test_feedback_selector_rejects_anc(self):
        with pytest.raises(SelectionError):
            feedback_selector(AlgorithmKind.ANC)


class TestDegreeCap:
    """Tests para apply_degree_cap."""

    def test_cap_keeps_first_symbol(self, four_symbol_own, four_symbol_table):
        outcome = greedy_select(four_symbol_own, four_symbol_table, ScriptedRng([1]))
        capped = apply_degree_cap(outcome, 1, four_symbol_table)
        assert capped.combined == frozenset({outcome.order[0]})
        assert capped.immediate_recoverers == recoverers(four_symbol_table, capped.combined)

    def test_no_cap(self, four_symbol_own, four_symbol_table):
        outcome = greedy_select(four_symbol_own, four_symbol_table, ScriptedRng([0]))
        assert apply_degree_cap(outcome, None, four_symbol_table) is outcome
