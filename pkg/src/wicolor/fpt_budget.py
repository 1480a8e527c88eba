"""Tree-decomposition dynamic program over fixed-point budgets.

Weights must be b-bit fixed point, i.e. multiples of 2^-b.  Every
vertex starts with budget 2^b - 1 units (the largest value strictly
below 1): its remaining capacity for incoming same-color weight.  The
Color recursion enumerates colorings of a bag only (no in-neighbor
tracking; budgets carry that information instead) and subtracts each
arc's units from its head exactly once, at the rootmost bag containing
both endpoints.  The Distribute recursion splits the remaining budget
of shared vertices among the children, one child ordinal at a time,
taking the best split.

State is polynomial in n for fixed width and b: colorings and budget
maps range over bag vertices only.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import inf

from .decomposition import TreeDecomposition, validate_decomposition
from .errors import PreconditionError
from .graph import Coloring, WeightedDigraph, is_valid_coloring
from .oracle import SolveResult


@dataclass(frozen=True)
class BudgetMemoStats:
    """Memo shape after a solve, split by recursion: Color entries,
    Distribute entries, total hits, and the largest number of vertex
    slots in any key."""

    color_entries: int
    distribute_entries: int
    hits: int
    max_key_width: int

    @property
    def entries(self) -> int:
        return self.color_entries + self.distribute_entries


def check_fixed_point(G: WeightedDigraph, bits: int) -> tuple[int, int, object] | None:
    """None when every weight is a multiple of 2^-bits, else the first
    offending arc in canonical order."""
    if bits < 1:
        raise PreconditionError(f"bits must be >= 1, got {bits}")
    scale = 1 << bits
    for t, h, w in G.arcs:
        if (w * scale).denominator != 1:
            return (t, h, w)
    return None


def min_precision_bits(G: WeightedDigraph) -> int | None:
    """Smallest b >= 1 representing all weights, or None if some weight
    is not dyadic."""
    bits = 1
    for _, _, w in G.arcs:
        den = w.denominator
        if den & (den - 1):
            return None
        bits = max(bits, den.bit_length() - 1)
    return bits


def _encode(mapping: dict[int, int]) -> tuple[tuple[int, int], ...]:
    return tuple(sorted(mapping.items()))


class BudgetSolver:
    """One solve against a fixed graph, validated rooted decomposition,
    and precision; create a fresh instance per solve."""

    def __init__(self, G: WeightedDigraph, D: TreeDecomposition, bits: int):
        violations = validate_decomposition(G, D)
        if violations:
            raise PreconditionError(
                f"decomposition invalid: {violations[0].message}",
                witness=violations[0],
            )
        offending = check_fixed_point(G, bits)
        if offending is not None:
            t, h, w = offending
            raise PreconditionError(
                f"arc ({t}, {h}) weight {w} is not {bits}-bit fixed point",
                witness=offending,
            )
        self.graph = G
        self.decomposition = D
        self.bits = bits
        self.full = (1 << bits) - 1
        self.palette = D.width + 1

        self.shared_set: list[frozenset[int]] = []
        self.free_order: list[tuple[int, ...]] = []
        for i, bag in enumerate(D.bags):
            parent = D.parent[i]
            shared = frozenset() if parent is None else bag & D.bags[parent]
            self.shared_set.append(shared)
            self.free_order.append(tuple(sorted(bag - shared)))

        # each arc is charged at exactly one bag: the rootmost bag
        # containing both endpoints (its parent does not)
        scale = 1 << bits
        self.charge_list: list[list[tuple[int, int, int]]] = [[] for _ in D.bags]
        charged: dict[tuple[int, int], int] = {}
        for i, bag in enumerate(D.bags):
            parent = D.parent[i]
            for t, h, w in G.arcs:
                if t in bag and h in bag:
                    if parent is None or not (t in D.bags[parent] and h in D.bags[parent]):
                        self.charge_list[i].append((t, h, int(w * scale)))
                        charged[(t, h)] = charged.get((t, h), 0) + 1
        assert all(charged.get((t, h), 0) == 1 for t, h, _ in G.arcs), (
            "every arc must be charged at exactly one bag"
        )

        self.child_shared: dict[tuple[int, int], tuple[int, ...]] = {}
        for i in range(len(D.bags)):
            for child in D.children[i]:
                self.child_shared[(i, child)] = tuple(sorted(D.bags[i] & D.bags[child]))

        self.color_memo: dict[tuple, float] = {}
        self.distribute_memo: dict[tuple, float] = {}
        self.hits = 0
        self.considered_counts: dict[tuple[int, int], int] = {}

    # -- recursion ---------------------------------------------------

    def _charged_budgets(
        self, bag: int, coloring: Coloring, inherited: dict[int, int]
    ) -> dict[int, int] | None:
        """Budgets of all bag vertices after this bag's charges, or None
        when some vertex overdraws."""
        budgets = {
            v: inherited[v] if v in inherited else self.full
            for v in self.decomposition.bags[bag]
        }
        for t, h, units in self.charge_list[bag]:
            if coloring[t] == coloring[h]:
                budgets[h] -= units
        if any(r < 0 for r in budgets.values()):
            return None
        return budgets

    def color_node(self, bag: int, partial: Coloring, budgets: dict[int, int]) -> float:
        """Minimum color count for the subtree rooted at `bag`, given
        colors and remaining budgets of the vertices shared with the
        parent bag; inf when infeasible."""
        shared = self.shared_set[bag]
        if set(partial) != shared or set(budgets) != shared:
            raise PreconditionError(
                f"colors and budgets must cover exactly the shared set of bag {bag}",
                witness=bag,
            )
        key = (bag, _encode(partial), _encode(budgets))
        if key in self.color_memo:
            self.hits += 1
            return self.color_memo[key]

        free = self.free_order[bag]
        best: float = inf
        for combo in product(range(1, self.palette + 1), repeat=len(free)):
            coloring = dict(partial)
            coloring.update(zip(free, combo))
            local = max(coloring.values(), default=0)
            if local >= best:
                continue
            after = self._charged_budgets(bag, coloring, budgets)
            if after is None:
                continue
            value = max(local, self.distribute_budget(bag, coloring, after, 1))
            if value < best:
                best = value
        self.color_memo[key] = best
        return best

    def distribute_budget(
        self, bag: int, coloring: Coloring, budgets: dict[int, int], ordinal: int
    ) -> float:
        """Best achievable maximum over children ordinal, ordinal+1, ...
        of `bag`, minimized over all ways to split the budgets of shared
        vertices; 0 when fewer than `ordinal` children exist."""
        if ordinal < 1:
            raise PreconditionError(f"child ordinal must be >= 1, got {ordinal}")
        children = self.decomposition.children[bag]
        if ordinal > len(children):
            return 0
        key = (bag, ordinal, _encode(coloring), _encode(budgets))
        if key in self.distribute_memo:
            self.hits += 1
            return self.distribute_memo[key]

        child = children[ordinal - 1]
        shared = self.child_shared[(bag, child)]
        child_partial = {v: coloring[v] for v in shared}
        best: float = inf
        for combo in product(*(range(budgets[v] + 1) for v in shared)):
            split = dict(zip(shared, combo))
            child_value = self.color_node(child, child_partial, split)
            if child_value >= best:
                continue
            rest = dict(budgets)
            for v, units in split.items():
                rest[v] -= units
            value = max(child_value, self.distribute_budget(bag, coloring, rest, ordinal + 1))
            if value < best:
                best = value
        self.distribute_memo[key] = best
        return best

    # -- public API --------------------------------------------------

    def solve(self) -> SolveResult:
        root = self.decomposition.root
        value = self.color_node(root, {}, {})
        assert value != inf, "width+1 colors always suffice"
        witness = self._replay()
        assert is_valid_coloring(self.graph, witness)
        return SolveResult(max(1, int(value)), witness)

    def _replay(self) -> Coloring:
        """Rebuild one optimal coloring by re-walking accepted choices.

        Along the replayed path every bag is visited once, so the
        per-arc considered_counts end up exactly 1: each arc's charge
        is applied (or skipped for differing colors) exactly once.
        """
        witness: Coloring = {}
        deciding = self._deciding_bags()

        def replay_color(bag: int, partial: Coloring, budgets: dict[int, int], target: float) -> None:
            free = self.free_order[bag]
            for combo in product(range(1, self.palette + 1), repeat=len(free)):
                coloring = dict(partial)
                coloring.update(zip(free, combo))
                local = max(coloring.values(), default=0)
                if local > target:
                    continue
                after = self._charged_budgets(bag, coloring, budgets)
                if after is None:
                    continue
                rest_value = self.distribute_budget(bag, coloring, after, 1)
                if max(local, rest_value) != target:
                    continue
                for t, h, _ in self.charge_list[bag]:
                    self.considered_counts[(t, h)] = (
                        self.considered_counts.get((t, h), 0) + 1
                    )
                for v in free:
                    assert v not in witness, f"vertex {v} colored twice"
                    assert deciding[v] == bag, f"vertex {v} fixed away from its deciding bag"
                    witness[v] = coloring[v]
                for v, c in partial.items():
                    assert witness[v] == c, f"inherited color of {v} drifted"
                replay_distribute(bag, coloring, after, 1, rest_value)
                return
            raise AssertionError("replay failed to rediscover the memoized optimum")

        def replay_distribute(
            bag: int, coloring: Coloring, budgets: dict[int, int], ordinal: int, target: float
        ) -> None:
            children = self.decomposition.children[bag]
            if ordinal > len(children):
                assert target == 0
                return
            child = children[ordinal - 1]
            shared = self.child_shared[(bag, child)]
            child_partial = {v: coloring[v] for v in shared}
            for combo in product(*(range(budgets[v] + 1) for v in shared)):
                split = dict(zip(shared, combo))
                child_value = self.color_node(child, child_partial, split)
                if child_value > target:
                    continue
                rest = dict(budgets)
                for v, units in split.items():
                    rest[v] -= units
                rest_value = self.distribute_budget(bag, coloring, rest, ordinal + 1)
                if max(child_value, rest_value) != target:
                    continue
                replay_color(child, child_partial, split, child_value)
                replay_distribute(bag, coloring, rest, ordinal + 1, rest_value)
                return
            raise AssertionError("replay failed to rediscover a feasible split")

        root = self.decomposition.root
        replay_color(root, {}, {}, self.color_node(root, {}, {}))
        assert set(witness) == set(self.graph.vertices), "witness not total"
        return witness

    def _deciding_bags(self) -> dict[int, int]:
        D = self.decomposition
        out: dict[int, int] = {}
        for v in self.graph.vertices:
            holders = {i for i, bag in enumerate(D.bags) if v in bag}
            rootmost = [
                i for i in holders if D.parent[i] is None or D.parent[i] not in holders
            ]
            assert len(rootmost) == 1
            out[v] = rootmost[0]
        return out

    def memo_stats(self) -> BudgetMemoStats:
        widths = [len(key[1]) for key in self.color_memo]
        widths.extend(len(key[2]) for key in self.distribute_memo)
        return BudgetMemoStats(
            color_entries=len(self.color_memo),
            distribute_entries=len(self.distribute_memo),
            hits=self.hits,
            max_key_width=max(widths, default=0),
        )


def solve_fpt_budget(
    G: WeightedDigraph, D: TreeDecomposition, bits: int | None = None
) -> SolveResult:
    """Exact chromatic value and witness via the budget-splitting DP.

    With bits omitted, the smallest sufficient precision is detected;
    non-dyadic weights are rejected.
    """
    if bits is None:
        bits = min_precision_bits(G)
        if bits is None:
            raise PreconditionError("weights are not dyadic; pass a digraph with 2^-b weights")
    return BudgetSolver(G, D, bits).solve()
