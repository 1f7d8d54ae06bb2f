"""Wall-clock benchmark suite.

Informational only — no pass/fail.  Rows that correspond to an acceptance
time target carry the target for comparison; the exhaustive rows run the
same search once per kernel so the compiled speedup is visible.
"""

from __future__ import annotations

from dataclasses import dataclass
from statistics import median
from time import perf_counter

from . import exhaustive
from .generate import gen_graph, gen_single_suit, gen_single_value, gen_ss_owned
from .model import Instance, Objective
from .reduction import reduce_hp
from .solvers import (
    solve_exhaustive,
    solve_single_suit,
    solve_single_value,
    solve_single_suit_owned,
)
from .verify import verify_sequence


@dataclass(frozen=True, slots=True)
class BenchRow:
    name: str
    runs: int
    median_s: float
    target_s: float | None
    note: str


def _clocked(fn, runs: int) -> float:
    samples = []
    for _ in range(runs):
        t0 = perf_counter()
        fn()
        samples.append(perf_counter() - t0)
    return median(samples)


def _big_witness_pair(n: int, players: int) -> tuple[Instance, object]:
    """A guaranteed-true deal whose witness replays every one of ``n`` cards."""
    instance = gen_single_value(n, players, 0, seed=5)
    hand1 = sorted(instance.hands[0])
    instance = Instance(
        players=instance.players,
        k=instance.k,
        s=instance.s,
        hands=instance.hands,
        objectives=tuple(Objective(c, 1) for c in hand1),
        first_lead=None,
    )
    report = solve_single_value(instance)
    return instance, report.witness


def run_suite(quick: bool = False) -> list[BenchRow]:
    scale = 5 if quick else 1
    runs = 3
    rows: list[BenchRow] = []

    inst_sv = gen_single_value(100_000 // scale, 8, 40, seed=1)
    rows.append(
        BenchRow(
            f"single-value solve n={inst_sv.n}",
            runs,
            _clocked(lambda: solve_single_value(inst_sv), runs),
            None,
            "",
        )
    )

    inst_own = gen_ss_owned(100_000 // scale, 8, 2_000 // scale, seed=2)
    rows.append(
        BenchRow(
            f"ss-owned solve n={inst_own.n} p=8",
            runs,
            _clocked(lambda: solve_single_suit_owned(inst_own), runs),
            None if quick else 2.0,
            "",
        )
    )

    inst_ss = gen_single_suit(10_000 // scale, 8, 1_000 // scale, seed=3)
    rows.append(
        BenchRow(
            f"single-suit solve n={inst_ss.n} p=8 l={len(inst_ss.objectives)}",
            runs,
            _clocked(lambda: solve_single_suit(inst_ss), runs),
            None if quick else 5.0,
            "",
        )
    )

    inst_v, witness = _big_witness_pair(10_000 // scale, 4)
    rows.append(
        BenchRow(
            f"verify n={inst_v.n}",
            runs,
            _clocked(lambda: verify_sequence(inst_v, witness), runs),
            None if quick else 2.0,
            "",
        )
    )

    graph = gen_graph(5 if quick else 6, 0.4, seed=11)
    reduced = reduce_hp(graph)
    kernels = exhaustive.available_kernels()
    for kernel in ("c", "py"):
        if kernel not in kernels:
            rows.append(
                BenchRow(f"exhaustive kernel={kernel}", 0, 0.0, None, "unavailable")
            )
            continue
        report = solve_exhaustive(reduced, kernel=kernel)
        rows.append(
            BenchRow(
                f"exhaustive kernel={kernel} reduced |V|={graph.vertices}",
                runs,
                _clocked(lambda k=kernel: solve_exhaustive(reduced, kernel=k), runs),
                None,
                f"nodes={report.stats.nodes} decision={report.decision}",
            )
        )
    return rows


def format_rows(rows: list[BenchRow]) -> str:
    if not rows:
        return "(empty suite)\n"
    width = max(len(r.name) for r in rows) + 2
    lines = [f"{'benchmark':<{width}}{'runs':>5}  {'median':>9}  {'target':>8}  note"]
    for r in rows:
        target = f"{r.target_s:.2f}s" if r.target_s is not None else "-"
        lines.append(
            f"{r.name:<{width}}{r.runs:>5}  {r.median_s:>8.3f}s  {target:>8}  {r.note}"
        )
    return "\n".join(lines) + "\n"
