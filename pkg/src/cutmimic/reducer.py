"""The reduction loop: covering sets and mimicking networks.

Each pass first applies the local degree-based rules, then stops at the size
threshold, and otherwise asks the expansion tester for a direction: a sparse
set opens a recursive instance whose own covering set exposes a contractible
edge; a dense verdict hands the graph to the matroid marker and contracts the
lowest unmarked edge. Every structural change lands in an event trace whose
replay reproduces the output.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field, replace
from typing import Union

from .errors import InputError, MarkingRefusedError
from .marker import MarkParams, default_c, mark
from .netgraph import (
    Contract,
    DeleteComponent,
    DeleteLeaf,
    TerminalNetwork,
    apply_local_event,
    contract_edge,
    degree2_reduce,
    recursive_instance,
    terminal_capacity,
)
from .tester import DEFAULT_EXACT_CEILING, exact_tester, heuristic_tester

DEFAULT_MAX_DEPTH = 64


@dataclass(frozen=True)
class Recurse:
    """Trace event: descended into the recursive instance of sparse set S."""
    S: tuple[int, ...]
    depth: int


@dataclass(frozen=True)
class MarkStats:
    """Trace event: dense marking ran, keeping `size` edges."""
    size: int
    c: int
    i0: int


@dataclass(frozen=True)
class Stop:
    """Trace event: the loop ended; reason is "base" or "saturated"."""
    reason: str


Event = Union[Contract, DeleteLeaf, DeleteComponent, Recurse, MarkStats, Stop]


@dataclass(frozen=True)
class ReductionTrace:
    events: tuple[Event, ...]

    def __post_init__(self) -> None:
        if not self.events or not isinstance(self.events[-1], Stop):
            raise InputError("a trace must end with a Stop event")


@dataclass(frozen=True)
class ReduceParams:
    """Reduction knobs.

    threshold None means k^c measured at entry (each recursive call measures
    its own instance); an explicit threshold applies to the top call only.
    """

    tester: str = "exact"
    mark: MarkParams = dc_field(default_factory=MarkParams)
    threshold: int | None = None
    max_depth: int = DEFAULT_MAX_DEPTH
    exact_ceiling: int = DEFAULT_EXACT_CEILING

    def __post_init__(self) -> None:
        if self.tester not in ("exact", "heuristic"):
            raise InputError(f"unknown tester {self.tester!r}")
        if self.threshold is not None and self.threshold < 1:
            raise InputError("threshold must be at least 1")
        if self.max_depth < 0:
            raise InputError("max_depth must be nonnegative")


def multicut_covering_set(net: TerminalNetwork, params: ReduceParams
                          ) -> tuple[tuple[int, ...], ReductionTrace]:
    """Covering edge set: every request set over T has a minimum multicut
    inside it. The ids index edges of the input network.
    """
    final, events = _reduce_to_network(net, params)
    return final.edge_ids(), ReductionTrace(tuple(events))


def mimicking_network(net: TerminalNetwork, params: ReduceParams
                      ) -> tuple[TerminalNetwork, ReductionTrace]:
    """The input with every non-covering edge contracted away; terminal set
    and all partition cut values are unchanged.
    """
    final, events = _reduce_to_network(net, params)
    return final, ReductionTrace(tuple(events))


def _reduce_to_network(net: TerminalNetwork, params: ReduceParams
                       ) -> tuple[TerminalNetwork, list[Event]]:
    if not net.terminals:
        raise InputError("reduction needs a nonempty terminal set")
    k = terminal_capacity(net)
    if k < 1:
        raise InputError("terminals must have positive capacity")
    c = params.mark.c if params.mark.c is not None else default_c(k, params.mark.i0)
    if c < params.mark.i0:
        raise InputError(f"c ={c} below i0 ={params.mark.i0}")
    mark_base = replace(params.mark, c=c)
    rng = random.Random(params.mark.seed)
    return _reduce(net, params, mark_base, c, rng, depth=0)


def _reduce(net: TerminalNetwork, params: ReduceParams, mark_base: MarkParams,
            c: int, rng: random.Random, depth: int
            ) -> tuple[TerminalNetwork, list[Event]]:
    k = terminal_capacity(net)
    if params.threshold is not None and depth == 0:
        threshold = params.threshold
    else:
        threshold = max(k, 1) ** c

    events: list[Event] = []
    work = net
    while True:
        work, local = degree2_reduce(work)
        events.extend(local)
        if work.m <= threshold:
            events.append(Stop("base"))
            return work, events

        if params.tester == "exact":
            verdict = exact_tester(work, c, params.exact_ceiling)
        else:
            verdict = heuristic_tester(work, c)

        if verdict.is_sparse:
            assert verdict.witness is not None
            if depth >= params.max_depth:
                events.append(Stop("saturated"))
                return work, events
            sub, _ = recursive_instance(work, verdict.witness)
            events.append(Recurse(verdict.witness, depth + 1))
            sub_final, _sub_events = _reduce(sub, params, mark_base, c, rng,
                                             depth + 1)
            covered = set(sub_final.edge_ids())
            eid = _contractible(work, [e for e in sub.edge_ids()
                                       if e not in covered])
            if eid is None:
                events.append(Stop("saturated"))
                return work, events
            work = contract_edge(work, eid)
            events.append(Contract(eid))
            continue

        # Dense: mark and contract the lowest unmarked edge. A refusal means
        # marking everything, which leaves nothing to contract.
        call_params = replace(mark_base, seed=rng.randrange(1 << 62))
        try:
            result = mark(work, call_params)
        except MarkingRefusedError:
            events.append(Stop("saturated"))
            return work, events
        events.append(MarkStats(len(result.marked), c, call_params.i0))
        marked = set(result.marked)
        eid = _contractible(work, [e for e in work.edge_ids()
                                   if e not in marked])
        if eid is None:
            events.append(Stop("saturated"))
            return work, events
        work = contract_edge(work, eid)
        events.append(Contract(eid))


def _contractible(net: TerminalNetwork, eids: list[int]) -> int | None:
    """Lowest candidate whose endpoints are not both terminals; edges
    between two terminals are never contracted (their identification would
    change cut values outright).
    """
    tset = set(net.terminals)
    for eid in sorted(eids):
        u, v = net.endpoints(eid)
        if u in tset and v in tset:
            continue
        return eid
    return None


# -- trace text form ---------------------------------------------------------

def format_trace(trace: ReductionTrace) -> str:
    lines = []
    for ev in trace.events:
        if isinstance(ev, Contract):
            lines.append(f"C {ev.eid}")
        elif isinstance(ev, DeleteLeaf):
            lines.append(f"DL {ev.vertex}")
        elif isinstance(ev, DeleteComponent):
            lines.append("DC " + " ".join(str(v) for v in ev.vertices))
        elif isinstance(ev, Recurse):
            lines.append(f"R {ev.depth} " + " ".join(str(v) for v in ev.S))
        elif isinstance(ev, MarkStats):
            lines.append(f"M {ev.size} {ev.c} {ev.i0}")
        elif isinstance(ev, Stop):
            lines.append(f"S {ev.reason}")
        else:
            raise InputError(f"unknown event {ev!r}")
    return "\n".join(lines) + "\n"


def parse_trace(text: str) -> ReductionTrace:
    events: list[Event] = []
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        try:
            if parts[0] == "C" and len(parts) == 2:
                events.append(Contract(int(parts[1])))
            elif parts[0] == "DL" and len(parts) == 2:
                events.append(DeleteLeaf(int(parts[1])))
            elif parts[0] == "DC" and len(parts) >= 2:
                events.append(DeleteComponent(tuple(int(x) for x in parts[1:])))
            elif parts[0] == "R" and len(parts) >= 3:
                events.append(Recurse(tuple(int(x) for x in parts[2:]),
                                      int(parts[1])))
            elif parts[0] == "M" and len(parts) == 4:
                events.append(MarkStats(int(parts[1]), int(parts[2]),
                                        int(parts[3])))
            elif parts[0] == "S" and len(parts) == 2:
                events.append(Stop(parts[1]))
            else:
                raise ValueError
        except ValueError:
            raise InputError(f"line {ln}: bad trace line {raw!r}") from None
    return ReductionTrace(tuple(events))


def replay_trace(net: TerminalNetwork, trace: ReductionTrace) -> TerminalNetwork:
    """Re-apply the structural events; Recurse/MarkStats/Stop are advisory."""
    work = net
    for ev in trace.events:
        if isinstance(ev, (Contract, DeleteLeaf, DeleteComponent)):
            work = apply_local_event(work, ev)
    return work
