"""Exhaustive-search tests: frozen small positions, kernel parity, budgets."""

from __future__ import annotations

import dataclasses

import pytest

from crewsolver.exhaustive import (
    HAVE_SPEEDUPS,
    available_kernels,
    run_search,
)
from crewsolver.generate import GENERATORS, gen_graph
from crewsolver.model import Card, Instance, Objective, TokenConstraint
from crewsolver.reduction import reduce_hp, reduce_hp_tokens, reduce_hp_trump
from crewsolver.solvers import solve_exhaustive
from crewsolver.verify import verify_sequence

KERNELS = available_kernels()


def test_no_objectives_short_circuit(uneven_deal):
    free = dataclasses.replace(uneven_deal, objectives=(), tokens=())
    status, witness, nodes, kernel = run_search(free)
    assert status == 1
    assert witness.tricks == ()
    assert nodes == 0 and kernel == "none"


@pytest.mark.parametrize("kernel", KERNELS)
def test_known_deal_canonical_line(uneven_deal, kernel):
    status, witness, nodes, used = run_search(uneven_deal, kernel=kernel)
    assert status == 1 and used == kernel
    assert nodes == 8
    first = witness.tricks[0]
    assert [p.card for p in first.plays] == [
        Card(4, 1),
        Card(3, 1),
        Card(5, 2),
        Card(1, 1),
    ]
    assert len(witness.tricks) == 2
    assert verify_sequence(uneven_deal, witness).accepted


def test_budget_cut(uneven_deal):
    status, witness, nodes, _ = run_search(uneven_deal, budget=3)
    assert status == -1
    assert witness is None
    assert nodes == 4  # the first over-budget expansion is counted

    report = solve_exhaustive(uneven_deal, budget=3)
    assert report.decision is None and report.witness is None


def test_budget_zero_is_unlimited(uneven_deal):
    status, _, _, _ = run_search(uneven_deal, budget=0)
    assert status == 1


@pytest.mark.skipif(not HAVE_SPEEDUPS, reason="compiled kernel not built")
class TestKernelParity:
    def test_generated_instances(self):
        cases = []
        for name, gen in GENERATORS.items():
            for seed in range(25):
                try:
                    cases.append(gen(9, 3, 2, seed))
                except ValueError:
                    pass
        assert len(cases) >= 90
        for inst in cases:
            for budget in (0, 7):
                c = run_search(inst, budget=budget, kernel="c")
                py = run_search(inst, budget=budget, kernel="py")
                assert c[:3] == py[:3]

    def test_reduced_instances(self):
        for seed in range(8):
            g = gen_graph(4, 0.5, seed)
            for reduce_fn in (reduce_hp, reduce_hp_trump, reduce_hp_tokens):
                inst = reduce_fn(g)
                c = run_search(inst, kernel="c")
                py = run_search(inst, kernel="py")
                assert c[:3] == py[:3]

    def test_large_instance_falls_back_to_pure(self):
        hands = tuple(
            frozenset(Card(v, q + 1) for v in range(1, 34)) for q in range(2)
        )
        big = Instance(
            players=2,
            k=33,
            s=2,
            hands=hands,
            objectives=(Objective(Card(1, 1), 1),),
        )
        assert big.n == 66
        _, _, _, used = run_search(big, budget=50)
        assert used == "py"
        with pytest.raises(RuntimeError, match="exceeds compiled-kernel"):
            run_search(big, kernel="c")

    def test_pure_override_env(self, uneven_deal, monkeypatch):
        monkeypatch.setenv("CREW_PURE", "1")
        _, _, _, used = run_search(uneven_deal)
        assert used == "py"


def test_unknown_kernel_rejected(uneven_deal):
    with pytest.raises(ValueError, match="unknown kernel"):
        run_search(uneven_deal, kernel="fortran")


def test_first_lead_freedom_searches_all_leads():
    base = Instance(
        players=2,
        k=2,
        s=1,
        hands=(frozenset({Card(2, 1)}), frozenset({Card(1, 1)})),
        objectives=(Objective(Card(2, 1), 1),),
        first_lead=2,
    )
    # The leader does not matter here: player 1's 2 wins either way.
    assert run_search(base)[0] == 1

    hard = dataclasses.replace(
        base, objectives=(Objective(Card(1, 1), 2),), first_lead=None
    )
    # Player 2's own 1 can never win a trick against the 2, any lead.
    assert run_search(hard)[0] == 0


def test_trump_instance_searched(uneven_deal):
    trumped = dataclasses.replace(uneven_deal, trump_suit=3)
    status, witness, _, _ = run_search(trumped)
    assert status in (0, 1)
    if status == 1:
        assert verify_sequence(trumped, witness).accepted


def test_token_instances_searched(uneven_deal):
    # Compatible ordering: the known two-trick win satisfies it.
    tokened = dataclasses.replace(
        uneven_deal, tokens=(TokenConstraint(1, before=frozenset({0})),)
    )
    status, witness, _, _ = run_search(tokened)
    assert status == 1
    assert verify_sequence(tokened, witness).accepted

    # Reversed ordering: every opening lead misroutes, completes the wrong
    # objective first, or strands the constraint - a guaranteed loss.
    blocked = dataclasses.replace(
        uneven_deal, tokens=(TokenConstraint(0, before=frozenset({1})),)
    )
    assert run_search(blocked)[0] == 0
