from __future__ import annotations

from fractions import Fraction
from itertools import product

import pytest

from wicolor import (
    BudgetSolver,
    IndegreeSolver,
    PreconditionError,
    TreeDecomposition,
    WeightedDigraph,
    build_decomposition,
    check_fixed_point,
    exact_chi_w,
    is_valid_coloring,
    min_precision_bits,
    random_instance,
    solve_fpt_budget,
)

F = Fraction


def fan_instance() -> tuple[WeightedDigraph, TreeDecomposition]:
    """Four arcs of weight 1/2 into vertex 1, children split 2|3 and 4|5."""
    G = WeightedDigraph(5, [(j, 1, F(1, 2)) for j in (2, 3, 4, 5)])
    D = TreeDecomposition([{1}, {1, 2, 3}, {1, 4, 5}], [(0, 1), (0, 2)])
    return G, D


def two_feeders() -> tuple[WeightedDigraph, TreeDecomposition]:
    """Two arcs of weight 1/2 into vertex 1, one per child bag."""
    G = WeightedDigraph(3, [(2, 1, F(1, 2)), (3, 1, F(1, 2))])
    D = TreeDecomposition([{1}, {1, 2}, {1, 3}], [(0, 1), (0, 2)])
    return G, D


class TestFixedPointChecks:
    def test_dyadic_weights_pass(self):
        G = WeightedDigraph(3, [(1, 2, F(1, 2)), (2, 3, F(3, 4))])
        assert check_fixed_point(G, 2) is None

    def test_insufficient_bits_reported(self):
        G = WeightedDigraph(3, [(1, 2, F(1, 2)), (2, 3, F(3, 4))])
        assert check_fixed_point(G, 1) == (2, 3, F(3, 4))

    def test_non_dyadic_reported(self):
        G = WeightedDigraph(2, [(1, 2, F(1, 3))])
        assert check_fixed_point(G, 5) == (1, 2, F(1, 3))
        assert check_fixed_point(G, 10) == (1, 2, F(1, 3))

    def test_bits_must_be_positive(self):
        with pytest.raises(PreconditionError):
            check_fixed_point(WeightedDigraph(1), 0)

    def test_min_precision_examples(self):
        assert min_precision_bits(WeightedDigraph(2)) == 1
        assert min_precision_bits(WeightedDigraph(2, [(1, 2, F(1, 2))])) == 1
        assert min_precision_bits(WeightedDigraph(2, [(1, 2, F(1))])) == 1
        assert min_precision_bits(WeightedDigraph(2, [(1, 2, F(0))])) == 1
        assert (
            min_precision_bits(
                WeightedDigraph(3, [(1, 2, F(1, 2)), (2, 3, F(3, 8))])
            )
            == 3
        )
        assert min_precision_bits(WeightedDigraph(2, [(1, 2, F(7, 10))])) is None

    def test_min_precision_is_sufficient_and_tight(self):
        for seed in range(15):
            G = random_instance(6, 0.5, seed=1900 + seed, bits=3)
            bits = min_precision_bits(G)
            assert check_fixed_point(G, bits) is None
            if bits > 1:
                assert check_fixed_point(G, bits - 1) is not None


class TestSmallExamples:
    def test_single_heavy_arc(self):
        G = WeightedDigraph(2, [(1, 2, F(1))])
        solver = BudgetSolver(G, TreeDecomposition([{1, 2}]), 1)
        assert solver.color_node(0, {}, {}) == 2

    def test_single_light_arc(self):
        G = WeightedDigraph(2, [(1, 2, F(1, 2))])
        solver = BudgetSolver(G, TreeDecomposition([{1, 2}]), 1)
        assert solver.color_node(0, {}, {}) == 1

    def test_heavy_path(self):
        G = WeightedDigraph(3, [(1, 2, F(1)), (2, 3, F(1))])
        D = TreeDecomposition([{1, 2}, {2, 3}], [(0, 1)])
        result = BudgetSolver(G, D, 1).solve()
        assert result.chromatic == 2
        assert is_valid_coloring(G, result.witness)

    def test_two_feeders_value(self):
        G, D = two_feeders()
        result = BudgetSolver(G, D, 2).solve()
        assert result.chromatic == 2
        assert result.chromatic == exact_chi_w(G).chromatic

    def test_fan_value(self):
        G, D = fan_instance()
        result = BudgetSolver(G, D, 2).solve()
        assert result.chromatic == 2
        assert result.chromatic == exact_chi_w(G).chromatic

    def test_prism(self, prism_digraph):
        D = build_decomposition(prism_digraph, "exact-small")
        result = BudgetSolver(prism_digraph, D, 1).solve()
        assert result.chromatic == 3
        assert is_valid_coloring(prism_digraph, result.witness)

    def test_no_shared_vertices_with_child(self):
        G = WeightedDigraph(3, [(2, 3, F(1))])
        D = TreeDecomposition([{1}, {2, 3}], [(0, 1)])
        solver = BudgetSolver(G, D, 1)
        assert solver.distribute_budget(0, {1: 1}, {1: 1}, 1) == 2
        assert solver.solve().chromatic == 2


class TestDistribute:
    def test_budget_cannot_be_spent_twice(self):
        # 3 units total; each child needs 2 units at vertex 1 to stay
        # single-colored, so one child always pays with a second color
        G, D = two_feeders()
        solver = BudgetSolver(G, D, 2)
        assert solver.distribute_budget(0, {1: 1}, {1: 3}, 1) == 2

    def test_generous_budget_allows_one_color(self):
        G = WeightedDigraph(3, [(2, 1, F(1, 4)), (3, 1, F(1, 4))])
        D = TreeDecomposition([{1}, {1, 2}, {1, 3}], [(0, 1), (0, 2)])
        solver = BudgetSolver(G, D, 2)
        # each child spends 1 unit; 3 units cover both
        assert solver.distribute_budget(0, {1: 1}, {1: 3}, 1) == 1
        assert solver.distribute_budget(0, {1: 1}, {1: 1}, 1) == 2

    def test_past_last_child_is_zero(self):
        G, D = two_feeders()
        solver = BudgetSolver(G, D, 2)
        assert solver.distribute_budget(0, {1: 1}, {1: 3}, 3) == 0
        leaf = 1
        assert solver.distribute_budget(leaf, {1: 1, 2: 1}, {1: 3, 2: 3}, 1) == 0

    def test_ordinal_must_be_positive(self):
        G, D = two_feeders()
        solver = BudgetSolver(G, D, 2)
        with pytest.raises(PreconditionError):
            solver.distribute_budget(0, {1: 1}, {1: 3}, 0)

    def test_matches_brute_force_over_all_splits(self):
        # independent check of the split recursion: enumerate every way
        # to hand out vertex 1's budget to the two children, computing
        # child feasibility directly from the definition
        G, D = two_feeders()
        bits = 2
        full = (1 << bits) - 1
        units = 2  # 1/2 at 2 bits

        def child_value(budget: int) -> int:
            # free vertex may share color 1 (spending `units`) or differ
            return 1 if budget >= units else 2

        best = min(
            max(child_value(s1), child_value(s2))
            for s1 in range(full + 1)
            for s2 in range(full + 1)
            if s1 + s2 <= full
        )
        solver = BudgetSolver(G, D, bits)
        assert solver.distribute_budget(0, {1: 1}, {1: full}, 1) == best == 2


class TestPreconditions:
    def test_invalid_decomposition_rejected(self):
        G = WeightedDigraph(3, [(1, 2, F(1, 2)), (2, 3, F(1, 2))])
        with pytest.raises(PreconditionError, match="decomposition invalid"):
            BudgetSolver(G, TreeDecomposition([{1, 2}]), 1)

    def test_wrong_precision_rejected(self):
        G = WeightedDigraph(2, [(1, 2, F(3, 4))])
        with pytest.raises(PreconditionError, match="fixed point"):
            BudgetSolver(G, TreeDecomposition([{1, 2}]), 1)

    def test_non_dyadic_rejected_by_autodetect(self, golden5):
        D = build_decomposition(golden5, "exact-small")
        with pytest.raises(PreconditionError, match="not dyadic"):
            solve_fpt_budget(golden5, D)

    def test_autodetected_bits(self):
        G = WeightedDigraph(3, [(1, 2, F(1, 2)), (2, 3, F(3, 8))])
        D = build_decomposition(G, "exact-small")
        assert solve_fpt_budget(G, D).chromatic == exact_chi_w(G).chromatic

    def test_color_node_requires_shared_cover(self):
        G, D = two_feeders()
        solver = BudgetSolver(G, D, 2)
        with pytest.raises(PreconditionError, match="shared set"):
            solver.color_node(1, {}, {})
        with pytest.raises(PreconditionError, match="shared set"):
            solver.color_node(1, {1: 1}, {})


class TestChargingDiscipline:
    def test_every_arc_charged_once_during_replay(self, prism_digraph):
        D = build_decomposition(prism_digraph, "exact-small")
        solver = BudgetSolver(prism_digraph, D, 1)
        solver.solve()
        assert solver.considered_counts == {
            (t, h): 1 for t, h, _ in prism_digraph.arcs
        }

    def test_charge_lists_partition_the_arcs(self):
        for seed in range(15):
            G = random_instance(8, 0.4, seed=2000 + seed, bits=2)
            D = build_decomposition(G, "min-fill")
            solver = BudgetSolver(G, D, 2)
            charged = [arc for charges in solver.charge_list for arc in charges]
            assert sorted((t, h) for t, h, _ in charged) == sorted(
                (t, h) for t, h, _ in G.arcs
            )

    def test_zero_weight_arcs_appear_in_charge_lists(self):
        G = WeightedDigraph(2, [(1, 2, F(0))])
        solver = BudgetSolver(G, TreeDecomposition([{1, 2}]), 1)
        assert solver.charge_list[0] == [(1, 2, 0)]
        assert solver.solve().chromatic == 1


class TestAgainstOracle:
    def test_random_instances(self):
        for seed in range(40):
            bits = 1 + seed % 2
            G = random_instance(7, 0.45, seed=2100 + seed, bits=bits)
            D = build_decomposition(G, "exact-small")
            result = BudgetSolver(G, D, bits).solve()
            assert result.chromatic == exact_chi_w(G).chromatic
            assert is_valid_coloring(G, result.witness)
            assert max(result.witness.values()) == result.chromatic
            assert result.chromatic <= D.width + 1

    def test_agrees_with_indegree_solver(self):
        for seed in range(12):
            G = random_instance(7, 0.35, seed=2200 + seed, bits=2)
            D = build_decomposition(G, "exact-small")
            assert (
                BudgetSolver(G, D, 2).solve().chromatic
                == IndegreeSolver(G, D).solve().chromatic
            )

    def test_root_choice_does_not_matter(self):
        G = random_instance(6, 0.5, seed=43, bits=1)
        D = build_decomposition(G, "exact-small")
        values = {
            BudgetSolver(G, D.root_at(i), 1).solve().chromatic
            for i in range(len(D.bags))
        }
        assert values == {exact_chi_w(G).chromatic}

    def test_extra_bits_change_nothing(self):
        for seed in range(8):
            G = random_instance(5, 0.5, seed=2300 + seed, bits=1)
            D = build_decomposition(G, "exact-small")
            assert (
                BudgetSolver(G, D, 1).solve().chromatic
                == BudgetSolver(G, D, 3).solve().chromatic
            )


class TestMemoization:
    def test_stats_are_deterministic(self, prism_digraph):
        D = build_decomposition(prism_digraph, "exact-small")
        first = BudgetSolver(prism_digraph, D, 1)
        first.solve()
        second = BudgetSolver(prism_digraph, D, 1)
        second.solve()
        assert first.memo_stats() == second.memo_stats()

    def test_repeat_query_hits_the_table(self):
        G, D = fan_instance()
        solver = BudgetSolver(G, D, 2)
        solver.color_node(0, {}, {})
        before = solver.memo_stats()
        solver.color_node(0, {}, {})
        after = solver.memo_stats()
        assert after.entries == before.entries
        assert after.hits == before.hits + 1

    def test_budget_keys_stay_in_range(self):
        G, D = fan_instance()
        solver = BudgetSolver(G, D, 2)
        solver.solve()
        for _, _, encoded in solver.color_memo:
            for _, units in encoded:
                assert 0 <= units <= solver.full
        for _, _, _, encoded in solver.distribute_memo:
            for _, units in encoded:
                assert 0 <= units <= solver.full

    def test_entries_bounded_by_state_space(self):
        for seed in range(15):
            bits = 1 + seed % 2
            G = random_instance(8, 0.4, seed=2400 + seed, bits=bits)
            D = build_decomposition(G, "exact-small")
            solver = BudgetSolver(G, D, bits)
            solver.solve()
            stats = solver.memo_stats()
            palette = D.width + 1
            values = 1 << bits  # budgets range over 0..2^b - 1
            color_cap = sum(
                (palette * values) ** len(shared) for shared in solver.shared_set
            )
            distribute_cap = sum(
                len(D.children[i]) * (palette * values) ** len(D.bags[i])
                for i in range(len(D.bags))
            )
            assert stats.color_entries <= color_cap
            assert stats.distribute_entries <= distribute_cap
            assert stats.max_key_width <= max(len(bag) for bag in D.bags)
