"""Kernelization: step semantics, thresholds, answer preservation."""

import itertools
from fractions import Fraction

import pytest

from invlab.errors import InputError
from invlab.graphs import (
    AT_MOST,
    OrientedGraph,
    invert,
    is_acyclic,
    is_tournament,
    topological_order,
)
from invlab.generate import random_tournament, transitive_tournament
from invlab.kernel import (
    KernelConfig,
    StepOutcome,
    canonical_no_instance,
    delvertex_step,
    kernelize,
)
from invlab.oracle import single_inversion_decycles


def planted(n, u=0, v=1, seed=None):
    return invert(transitive_tournament(n), {u, v})


class TestConfig:
    def test_threshold_examples(self):
        # the loop runs at eps/2, matching these values
        assert KernelConfig(p=3, k=1, eps=Fraction(1, 2)).threshold() == 50
        assert KernelConfig(p=2, k=2, eps=Fraction(1, 2)).threshold() == 42

    def test_validation(self):
        with pytest.raises(InputError):
            KernelConfig(p=3, k=1, eps=Fraction(0))
        with pytest.raises(InputError):
            KernelConfig(p=-1, k=1)
        with pytest.raises(InputError):
            KernelConfig(p=3, k=1, fas_mode="magic")


class TestCanonicalNoInstance:
    def test_is_tournament(self):
        T = canonical_no_instance(3, 1)
        assert is_tournament(T) and T.n == 12

    def test_single_inversion_cannot_decycle(self):
        assert single_inversion_decycles(canonical_no_instance(3, 1), 3, AT_MOST) is None

    def test_two_inversions_cannot_decycle(self):
        # p = 2, k = 2: exhaustive over all pairs of (<=2)-sets
        T = canonical_no_instance(2, 2)
        assert T.n == 15
        sets = [()] + [
            X for s in (1, 2) for X in itertools.combinations(range(T.n), s)
        ]
        for X1 in sets:
            G1 = invert(T, X1)
            for X2 in sets:
                assert not is_acyclic(invert(G1, X2)), (X1, X2)


class TestDelvertexStep:
    def test_noop_below_threshold(self):
        cfg = KernelConfig(p=3, k=1, eps=Fraction(1, 2))
        out = delvertex_step(planted(40), cfg)
        assert out.kind == "noop"

    def test_planted_deletes_from_feedback_free_interval(self):
        cfg = KernelConfig(p=3, k=1, eps=Fraction(1, 2))
        T = planted(55, 0, 54)
        out = delvertex_step(T, cfg)
        assert out.kind == "deleted"
        assert out.fas_size == 1
        assert out.deleted_vertex not in (0, 54)
        assert out.tournament.n == 54

    def test_adjacent_reversal_is_acyclic_plant(self):
        # reversing an order-adjacent arc keeps the tournament acyclic
        cfg = KernelConfig(p=3, k=1, eps=Fraction(1, 2))
        out = delvertex_step(planted(55, 0, 1), cfg)
        assert out.kind == "deleted" and out.fas_size == 0

    def test_no_instance_branch_on_random(self):
        cfg = KernelConfig(p=3, k=1, eps=Fraction(1, 2))
        T = random_tournament(60, 123)
        out = delvertex_step(T, cfg)
        assert out.kind == "no-instance"
        assert out.fas_size > cfg.fas_bound()
        assert out.tournament.n == 12

    def test_arc_minimal_feedback_arcs_are_backward(self):
        # after minimization every kept arc runs right-to-left in the order
        from invlab.kernel import _arc_minimal
        from invlab.graphs import fas_heuristic

        T = planted(30)
        fas = fas_heuristic(T)
        minimal = _arc_minimal(T, fas.arcs)
        stripped = T
        for u, v in minimal:
            stripped = invert(stripped, {u, v})
        sigma = topological_order(stripped)
        pos = {v: i for i, v in enumerate(sigma)}
        assert all(pos[b] < pos[a] for a, b in minimal)


class TestKernelize:
    def test_small_input_unchanged(self):
        cfg = KernelConfig(p=3, k=1, eps=Fraction(1))
        T = planted(45)
        res = kernelize(T, cfg)
        assert res.tournament == T and not res.solved

    def test_planted_shrinks_and_preserves_answer(self):
        cfg = KernelConfig(p=3, k=1, eps=Fraction(1))
        T = planted(55, 0, 54)
        res = kernelize(T, cfg)
        assert res.tournament.n <= 50 <= 54
        assert 50 <= (1 + 1) * 1 * 27
        before = single_inversion_decycles(T, 3, AT_MOST) is not None
        after = single_inversion_decycles(res.tournament, 3, AT_MOST) is not None
        assert before and after

    def test_random_no_instances_preserved(self):
        cfg = KernelConfig(p=3, k=1, eps=Fraction(1))
        for seed in range(5):
            T = random_tournament(58, 500 + seed)
            res = kernelize(T, cfg)
            assert res.tournament.n <= 54
            before = single_inversion_decycles(T, 3, AT_MOST) is not None
            after = single_inversion_decycles(res.tournament, 3, AT_MOST) is not None
            assert before == after

    def test_trivial_dispatch(self):
        cfg = KernelConfig(p=1, k=3)
        res = kernelize(transitive_tournament(10), cfg)
        assert res.solved and res.answer is True
        assert is_acyclic(res.tournament)
        cyc = invert(transitive_tournament(10), {0, 9})
        res2 = kernelize(cyc, KernelConfig(p=3, k=0))
        assert res2.solved and res2.answer is False
        assert single_inversion_decycles(res2.tournament, 3, AT_MOST) is None

    def test_provenance_log(self):
        cfg = KernelConfig(p=3, k=1, eps=Fraction(1))
        res = kernelize(planted(53, 0, 52), cfg)
        assert all(isinstance(s, StepOutcome) for s in res.steps)
        assert all(s.kind == "deleted" for s in res.steps)
        assert len(res.steps) == 3

    def test_non_tournament_rejected(self):
        with pytest.raises(InputError):
            kernelize(OrientedGraph.from_arcs(3, [(0, 1)]), KernelConfig(p=3, k=1))
