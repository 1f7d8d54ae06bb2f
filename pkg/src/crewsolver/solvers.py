"""Decision procedures.

Four solvers share one report shape:

* ``solve_single_value`` — every card has value 1, so a trick's leader always
  wins it and the lead never moves; the decision reduces to counting.
* ``solve_single_suit_owned`` — one suit, every objective card starts in its
  owner's hand; objectives are played highest-first while everyone else
  slots in their best card strictly below, which needs exactly one trick per
  objective.
* ``solve_single_suit`` — one suit, objective cards may start anywhere; the
  owner wins each target trick (playing the target itself when held,
  otherwise their highest card over the holder's feed), other holders feed,
  and the remaining players discard high-but-losing cards outside their
  reserve.
* ``solve_exhaustive`` — complete memoized search; the only solver that
  accepts tokens and a trump suit, and the oracle the others are tested
  against.

``solve`` dispatches on :func:`crewsolver.model.classify`; a ``force``
argument overrides it but still enforces each solver's preconditions.
"""

from __future__ import annotations

import os
from bisect import bisect_left
from dataclasses import dataclass
from time import perf_counter

from .exhaustive import run_search
from .model import (
    Card,
    Instance,
    InstanceClass,
    Objective,
    Play,
    Trick,
    classify,
    rotation,
)
from .verify import PlaySequence


class SolverMismatchError(ValueError):
    """A solver was forced onto an instance outside its class."""


@dataclass(frozen=True, slots=True)
class SolveStats:
    nodes: int = 0
    tricks: int = 0
    elapsed: float = 0.0
    kernel: str = ""


@dataclass(frozen=True, slots=True)
class SolveReport:
    """Outcome of one solver run.

    ``decision`` is ``None`` only when the exhaustive solver hit its node
    budget.  ``witness`` is present exactly when the decision is true and a
    witness was requested.
    """

    decision: bool | None
    witness: PlaySequence | None
    solver_id: str
    stats: SolveStats


@dataclass(frozen=True, slots=True)
class ReservePlan:
    """Cards a player must not discard: the ``count`` maxima of their hand.

    ``count`` is the largest number of the player's uncompleted objective
    cards lying in any single other hand — each such card needs its own
    winning trick later, and a trick can only be won with a card.
    """

    player: int
    count: int
    reserved: frozenset[Card]


def compute_reserves(
    hands: tuple[frozenset[Card], ...],
    objectives: tuple[Objective, ...],
    completed: frozenset[int] = frozenset(),
) -> tuple[ReservePlan, ...]:
    """Reserve plans for every player given current hands and open objectives."""
    p = len(hands)
    counts: dict[tuple[int, int], int] = {}
    for idx, obj in enumerate(objectives):
        if idx in completed:
            continue
        for holder, hand in enumerate(hands, start=1):
            if obj.card in hand and holder != obj.owner:
                counts[(obj.owner, holder)] = counts.get((obj.owner, holder), 0) + 1
                break
    plans = []
    for q in range(1, p + 1):
        j = max((c for (ow, _), c in counts.items() if ow == q), default=0)
        top = sorted(hands[q - 1], key=lambda card: card.value, reverse=True)
        plans.append(
            ReservePlan(player=q, count=j, reserved=frozenset(top[: min(j, len(top))]))
        )
    return tuple(plans)


class _DrainList:
    """Static sorted values with lazy deletion and leftward path compression.

    Values must be unique (single-suit hands guarantee it).  Supports
    "largest live value strictly below a bound", "largest live value" and
    "k-th largest live value" in near-logarithmic amortized time.
    """

    __slots__ = ("vals", "jump")

    def __init__(self, values) -> None:
        self.vals = sorted(values)
        self.jump = list(range(len(self.vals)))

    def _find(self, i: int) -> int:
        jump = self.jump
        root = i
        while root >= 0 and jump[root] != root:
            root = jump[root]
        while i >= 0 and i != root:
            nxt = jump[i]
            jump[i] = root
            i = nxt
        return root

    def _delete(self, i: int) -> None:
        self.jump[i] = i - 1

    def take_below(self, bound: int) -> int | None:
        """Remove and return the largest live value < bound, if any."""
        i = self._find(bisect_left(self.vals, bound) - 1)
        if i < 0:
            return None
        self._delete(i)
        return self.vals[i]

    def max_value(self) -> int | None:
        i = self._find(len(self.vals) - 1)
        return None if i < 0 else self.vals[i]

    def kth_from_top(self, k: int) -> int | None:
        """The k-th largest live value (k >= 1), or None when fewer remain."""
        i = self._find(len(self.vals) - 1)
        for _ in range(k - 1):
            if i < 0:
                return None
            i = self._find(i - 1)
        return None if i < 0 else self.vals[i]

    def remove_value(self, value: int) -> None:
        i = bisect_left(self.vals, value)
        self._delete(i)


def _require(instance: Instance, allowed: set[InstanceClass], solver_id: str) -> None:
    cls = classify(instance)
    if cls not in allowed:
        raise SolverMismatchError(
            f"solver {solver_id!r} cannot handle a {cls.value!r} instance"
        )


def _empty_win(instance: Instance, solver_id: str, t0: float) -> SolveReport:
    seq = PlaySequence(first_lead=instance.first_lead or 1, tricks=())
    stats = SolveStats(tricks=0, elapsed=perf_counter() - t0)
    return SolveReport(True, seq, solver_id, stats)


def _no(solver_id: str, t0: float, tricks: int = 0) -> SolveReport:
    stats = SolveStats(tricks=tricks, elapsed=perf_counter() - t0)
    return SolveReport(False, None, solver_id, stats)


def solve_single_value(instance: Instance, want_witness: bool = True) -> SolveReport:
    """Decide an all-values-1 deal.

    The leader's card is the only card of its suit, so the leader wins every
    trick and the lead never moves.  Winnable iff one player owns every
    objective, that player may lead first, nobody starts empty-handed, and
    no hand holds more objective cards than the shortest hand has tricks to
    give.
    """
    _require(instance, {InstanceClass.SINGLE_VALUE}, "single-value")
    t0 = perf_counter()
    objs = instance.objectives
    if not objs:
        return _empty_win(instance, "single-value", t0)

    owners = {o.owner for o in objs}
    if len(owners) > 1:
        return _no("single-value", t0)
    leader = owners.pop()
    if instance.first_lead is not None and instance.first_lead != leader:
        return _no("single-value", t0)
    if any(not hand for hand in instance.hands):
        return _no("single-value", t0)

    targets = {o.card for o in objs}
    held = [len(targets & hand) for hand in instance.hands]
    tricks_needed = max(held)
    if tricks_needed > min(len(hand) for hand in instance.hands):
        return _no("single-value", t0)

    witness = None
    if want_witness:
        queues = []
        for hand in instance.hands:
            mine = sorted(targets & hand, reverse=True)
            rest = sorted(hand - targets, reverse=True)
            queues.append(mine + rest)
        played = []
        for t in range(tricks_needed):
            plays = tuple(
                Play(q, queues[q - 1][t]) for q in rotation(leader, instance.players)
            )
            played.append(Trick(lead=leader, plays=plays))
        witness = PlaySequence(first_lead=leader, tricks=tuple(played))
    stats = SolveStats(tricks=tricks_needed, elapsed=perf_counter() - t0)
    return SolveReport(True, witness, "single-value", stats)


def solve_single_suit_owned(instance: Instance, want_witness: bool = True) -> SolveReport:
    """Decide a one-suit deal whose objective cards all start with their owners.

    Objectives are taken highest-first: the owner plays the objective card
    and every other player contributes their best non-objective card
    strictly below it.  Succeeds iff every such contribution exists, and the
    witness uses exactly one trick per objective.
    """
    _require(instance, {InstanceClass.SINGLE_SUIT_OWNED}, "ss-owned")
    t0 = perf_counter()
    objs = sorted(instance.objectives, key=lambda o: o.card.value, reverse=True)
    if not objs:
        return _empty_win(instance, "ss-owned", t0)

    suit = objs[0].card.suit
    target_values = {o.card.value for o in objs}
    pool = [
        _DrainList(
            card.value for card in hand if card.value not in target_values
        )
        for hand in instance.hands
    ]

    lead = instance.first_lead or objs[0].owner
    tricks: list[Trick] = []
    for idx, obj in enumerate(objs):
        plays = {obj.owner: obj.card}
        for q in range(1, instance.players + 1):
            if q == obj.owner:
                continue
            below = pool[q - 1].take_below(obj.card.value)
            if below is None:
                return _no("ss-owned", t0, tricks=idx)
            plays[q] = Card(below, suit)
        tricks.append(
            Trick(
                lead=lead,
                plays=tuple(Play(q, plays[q]) for q in rotation(lead, instance.players)),
            )
        )
        lead = obj.owner

    witness = PlaySequence(tricks[0].lead, tuple(tricks)) if want_witness else None
    stats = SolveStats(tricks=len(objs), elapsed=perf_counter() - t0)
    return SolveReport(True, witness, "ss-owned", stats)


def _feeds_fit(thresholds_asc: list[int], holder_vals: dict[int, list[int]]) -> bool:
    """Can every holder place each fed card under a distinct threshold?

    Holders are independent (a trick absorbs one card from each player), so
    this is a per-holder two-pointer matching of ascending card values to
    ascending winning-card thresholds.
    """
    for vals in holder_vals.values():
        at = 0
        for u in vals:
            while at < len(thresholds_asc) and thresholds_asc[at] <= u:
                at += 1
            if at == len(thresholds_asc):
                return False
            at += 1
    return True


def solve_single_suit(instance: Instance, want_witness: bool = True) -> SolveReport:
    """Decide a one-suit deal with arbitrarily placed objective cards.

    With one suit the lead never constrains anyone, so trick order is
    irrelevant and the decision is a scheduling problem.  Every objective
    card must sit in a trick won by its owner: a self-held card must itself
    win (its value is the trick's threshold), while an externally held card
    must be fed under a bigger card played by the owner.  Each owner
    therefore wins one trick per self-held objective plus the fewest extra
    tricks — won with their largest spare cards — that let every holder
    place each fed card under a distinct fitting threshold (a holder can
    feed only one card per trick).  Feeding into the tightest fitting trick
    is optimal: the fed card also serves as that holder's mandatory
    under-threshold play.  All remaining seats discard their largest
    non-objective card under the threshold, visiting tricks from the
    highest threshold down; any seat with no fitting card loses.  Every
    trick completes at least one objective, so a witness never needs more
    tricks than there are objectives.
    """
    _require(
        instance,
        {InstanceClass.SINGLE_SUIT, InstanceClass.SINGLE_SUIT_OWNED},
        "single-suit",
    )
    t0 = perf_counter()
    objs = instance.objectives
    if not objs:
        return _empty_win(instance, "single-suit", t0)

    suit = objs[0].card.suit
    holder_map = instance.holder_map()
    target_values = {o.card.value for o in objs}
    self_vals: dict[int, list[int]] = {}
    ext_vals: dict[int, dict[int, list[int]]] = {}
    for o in objs:
        h = holder_map[o.card]
        if h == o.owner:
            self_vals.setdefault(o.owner, []).append(o.card.value)
        else:
            ext_vals.setdefault(o.owner, {}).setdefault(h, []).append(o.card.value)
    junk = {
        q: sorted(
            (c.value for c in instance.hands[q - 1] if c.value not in target_values),
            reverse=True,
        )
        for q in range(1, instance.players + 1)
    }

    # Plan each owner's tricks: (threshold, owner, feeds {holder: value}).
    planned: list[tuple[int, int, dict[int, int]]] = []
    for owner in sorted(set(self_vals) | set(ext_vals)):
        selfs = self_vals.get(owner, [])
        holders = {h: sorted(vals) for h, vals in ext_vals.get(owner, {}).items()}
        spare = junk[owner]

        extra = 0
        if holders:
            lo, hi = 0, len(spare)
            if not _feeds_fit(sorted(selfs + spare[:hi]), holders):
                return _no("single-suit", t0)
            while lo < hi:
                mid = (lo + hi) // 2
                if _feeds_fit(sorted(selfs + spare[:mid]), holders):
                    hi = mid
                else:
                    lo = mid + 1
            extra = lo

        thresholds_asc = sorted(selfs + spare[:extra])
        feeds: dict[int, dict[int, int]] = {th: {} for th in thresholds_asc}
        for h in sorted(holders):
            at = 0
            for u in holders[h]:
                while thresholds_asc[at] <= u:
                    at += 1
                feeds[thresholds_asc[at]][h] = u
                at += 1
        planned.extend((th, owner, feeds[th]) for th in thresholds_asc)
        junk[owner] = spare[extra:]

    # Play the plan from the highest threshold down; everyone not winning or
    # feeding discards their largest fitting card.
    planned.sort(key=lambda trick: trick[0], reverse=True)
    pools = {q: _DrainList(vals) for q, vals in junk.items()}
    tricks: list[Trick] = []
    lead = instance.first_lead or planned[0][1]
    for threshold, owner, trick_feeds in planned:
        plays = {owner: Card(threshold, suit)}
        for h, u in trick_feeds.items():
            plays[h] = Card(u, suit)
        for q in range(1, instance.players + 1):
            if q in plays:
                continue
            below = pools[q].take_below(threshold)
            if below is None:
                return _no("single-suit", t0, tricks=len(tricks))
            plays[q] = Card(below, suit)
        tricks.append(
            Trick(
                lead=lead,
                plays=tuple(
                    Play(q, plays[q]) for q in rotation(lead, instance.players)
                ),
            )
        )
        lead = owner

    witness = PlaySequence(tricks[0].lead, tuple(tricks)) if want_witness else None
    stats = SolveStats(tricks=len(tricks), elapsed=perf_counter() - t0)
    return SolveReport(True, witness, "single-suit", stats)


def _default_budget() -> int:
    raw = os.environ.get("CREW_BUDGET", "")
    try:
        return max(0, int(raw))
    except ValueError:
        return 0


def solve_exhaustive(
    instance: Instance,
    budget: int | None = None,
    want_witness: bool = True,
    kernel: str | None = None,
) -> SolveReport:
    """Decide any instance by complete search.

    ``budget`` caps search nodes (``None`` reads ``CREW_BUDGET``, 0 or unset
    means unlimited); a ``decision`` of ``None`` reports an exhausted budget
    rather than an answer.  ``kernel`` forces the compiled ("c") or pure
    ("py") search core.
    """
    t0 = perf_counter()
    if budget is None:
        budget = _default_budget()
    status, witness, nodes, used = run_search(instance, budget=budget, kernel=kernel)
    decision: bool | None = {1: True, 0: False, -1: None}[status]
    if not decision:
        witness = None
    stats = SolveStats(
        nodes=nodes,
        tricks=len(witness.tricks) if witness else 0,
        elapsed=perf_counter() - t0,
        kernel=used,
    )
    return SolveReport(decision, witness if want_witness else None, "exhaustive", stats)


_SOLVER_FOR_CLASS = {
    InstanceClass.SINGLE_VALUE: "single-value",
    InstanceClass.SINGLE_SUIT_OWNED: "ss-owned",
    InstanceClass.SINGLE_SUIT: "single-suit",
    InstanceClass.GENERAL: "exhaustive",
}

SOLVER_IDS = ("single-value", "ss-owned", "single-suit", "exhaustive")


def solve(
    instance: Instance,
    force: str | None = None,
    budget: int | None = None,
    want_witness: bool = True,
) -> SolveReport:
    """Classify and dispatch; ``force`` picks a solver but may not widen it."""
    solver_id = force or _SOLVER_FOR_CLASS[classify(instance)]
    if solver_id == "single-value":
        return solve_single_value(instance, want_witness)
    if solver_id == "ss-owned":
        return solve_single_suit_owned(instance, want_witness)
    if solver_id == "single-suit":
        return solve_single_suit(instance, want_witness)
    if solver_id == "exhaustive":
        return solve_exhaustive(instance, budget, want_witness)
    raise ValueError(f"unknown solver {force!r}; expected one of {SOLVER_IDS}")
