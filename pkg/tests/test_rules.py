"""Improvement rule axioms and selection behavior."""

import random

import pytest

from sinkgames.families import gen_table1
from sinkgames.rules import (
    make_rule,
    rule_random_subset,
    rule_single_lowest,
    rule_switch_all,
)
from sinkgames.valuation import valuate


def random_edge_set(rng, max_sources=6, max_targets=4):
    edges = set()
    for v in range(rng.randint(0, max_sources)):
        for _ in range(rng.randint(0, max_targets)):
            edges.add((v, rng.randint(10, 20)))
    return edges


class TestRuleAxioms:
    @pytest.mark.parametrize("name,seed", [("single", None), ("random", 0), ("random", 7)])
    def test_axioms_hold(self, name, seed):
        rng = random.Random(61)
        rule = make_rule(name, seed)
        for _ in range(300):
            candidates = sorted(random_edge_set(rng))
            chosen = rule.select(list(candidates), None)
            assert set(chosen) <= set(candidates)
            if candidates:
                assert chosen
            sources = [v for v, _ in chosen]
            assert len(sources) == len(set(sources))

    def test_switch_all_axioms(self):
        # switch-all needs a context; drive it through a real game state
        inst = gen_table1(3)
        xi_sigma = valuate(inst.game, inst.sigma0)
        xi_tau = valuate(inst.game, inst.tau0)
        candidates = {
            (v, w)
            for v in inst.game.node_ids
            for w in inst.game.successors(v)
        }
        chosen = rule_switch_all(candidates, inst.game, {0: xi_sigma, 1: xi_tau})
        assert chosen <= candidates
        sources = [v for v, _ in chosen]
        assert len(sources) == len(set(sources))
        assert {v for v, _ in chosen} == {v for v, _ in candidates}


class TestSwitchAll:
    def test_singleton_passthrough(self):
        inst = gen_table1(1)
        xi_sigma = valuate(inst.game, inst.sigma0)
        a1, d2 = inst.id_of("a1"), inst.id_of("d2")
        assert rule_switch_all({(a1, d2)}, inst.game, {0: xi_sigma}) == {(a1, d2)}

    def test_picks_best_target_for_owner(self):
        inst = gen_table1(2)
        game = inst.game
        xi_sigma = valuate(game, inst.sigma0)
        a2 = inst.id_of("a2")
        targets = sorted(game.successors(a2), key=lambda w: xi_sigma.values[w])
        worst, best = targets[0], targets[-1]
        chosen = rule_switch_all({(a2, worst), (a2, best)}, game, {0: xi_sigma})
        assert chosen == {(a2, best)}

    def test_tie_breaks_to_smallest_target(self):
        inst = gen_table1(1)
        game = inst.game
        xi_tau = valuate(game, inst.tau0)
        d1 = inst.id_of("d1")
        # craft a tie by comparing a target against itself under both names
        a2, d2 = inst.id_of("a2"), inst.id_of("d2")
        if xi_tau.values[a2] == xi_tau.values[d2]:
            chosen = rule_switch_all({(d1, a2), (d1, d2)}, game, {1: xi_tau})
            assert chosen == {(d1, min(a2, d2))}

    def test_empty_input(self):
        inst = gen_table1(1)
        assert rule_switch_all(set(), inst.game, {}) == frozenset()


class TestSingleLowest:
    def test_lexicographic_choice(self):
        assert rule_single_lowest({(3, 5), (2, 7)}) == {(2, 7)}

    def test_singleton(self):
        assert rule_single_lowest({(4, 1)}) == {(4, 1)}

    def test_empty(self):
        assert rule_single_lowest(set()) == frozenset()


class TestRandomSubset:
    def test_empty(self):
        assert rule_random_subset(set(), seed=1) == frozenset()

    def test_singleton_forced(self):
        for seed in range(10):
            assert rule_random_subset({(1, 2)}, seed=seed) == {(1, 2)}

    def test_deterministic_per_seed(self):
        rng = random.Random(67)
        for _ in range(50):
            candidates = random_edge_set(rng)
            for seed in (0, 3, 11):
                first = rule_random_subset(candidates, seed)
                second = rule_random_subset(candidates, seed)
                assert first == second

    def test_seeds_vary_choices(self):
        candidates = {(v, w) for v in range(4) for w in (10, 11, 12)}
        outcomes = {rule_random_subset(candidates, seed) for seed in range(30)}
        assert len(outcomes) > 3

    def test_make_rule_unknown_name(self):
        with pytest.raises(ValueError):
            make_rule("bogus")
