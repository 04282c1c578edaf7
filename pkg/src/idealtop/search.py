"""Enumerate spaces on small ground sets and hunt for law violations.

A search crosses a stream of topologies with all ideals on the same
ground set, scans the law on every resulting space, and reports either
the first violating space, or all spaces tied for the minimal
(|topology|, |ideal|) among violators, or a certification that the law
held everywhere. "LawCertified" is only ever emitted when the scanned
stream was provably the complete enumeration for the given point count;
a finished subbase-generated or user-supplied scan that found nothing
reports "BudgetExhausted" because it proves nothing about other spaces.

Results are deterministic: the space stream has a fixed order, budgets
are applied as if the scan were strictly serial, and parallel workers
only precompute per-space answers that are then merged in stream order.
"""

from __future__ import annotations

import itertools
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Iterator

from . import dsl
from .space import (
    Family,
    GroundSet,
    Ideal,
    Space,
    Topology,
    generate_topology,
    space_from_document,
    space_to_document,
)

EXHAUSTIVE_MAX_POINTS = 4

STATUS_FOUND = "CounterexampleFound"
STATUS_CERTIFIED = "LawCertified"
STATUS_BUDGET = "BudgetExhausted"

# Spaces handed to workers per task; fixed so the stream partition (and
# therefore the merged result) does not depend on the worker count.
_CHUNK_SIZE = 64


def default_labels(n: int) -> tuple[str, ...]:
    return tuple(f"w{i + 1}" for i in range(n))


# ---------------------------------------------------------------------------
# enumeration


_TOPOLOGY_MEMBERS_CACHE: dict[int, tuple[tuple[int, ...], ...]] = {}


def _pairwise_closed(members: list[int], mask: int) -> bool:
    for i, a in enumerate(members):
        for b in members[i + 1 :]:
            if not (mask >> (a | b)) & 1 or not (mask >> (a & b)) & 1:
                return False
    return True


def _topology_members(n: int) -> tuple[tuple[int, ...], ...]:
    """All topologies on n labeled points, ascending by membership mask."""
    if n not in _TOPOLOGY_MEMBERS_CACHE:
        full = (1 << n) - 1
        need = 1 | (1 << full)  # must contain empty set and X
        found = []
        for mask in range(1 << (1 << n)):
            if mask & need != need:
                continue
            members = [s for s in range(full + 1) if (mask >> s) & 1]
            if _pairwise_closed(members, mask):
                found.append(tuple(members))
        _TOPOLOGY_MEMBERS_CACHE[n] = tuple(found)
    return _TOPOLOGY_MEMBERS_CACHE[n]


def _subbase_topology_members(
    n: int, max_subbase_size: int
) -> Iterator[tuple[int, ...]]:
    """Topologies generated from small subbases, first-seen order, deduplicated.

    Covers sizes 0..max_subbase_size with subbase members drawn from the
    nonempty proper subsets in ascending order. Incomplete by design.
    """
    ground = GroundSet(default_labels(n))
    pool = range(1, ground.universe)
    seen: set[int] = set()
    for size in range(max_subbase_size + 1):
        for subbase in itertools.combinations(pool, size):
            topo = generate_topology(subbase, ground)
            if topo.family.mask not in seen:
                seen.add(topo.family.mask)
                yield topo.family.members


def enumerate_topologies(
    n: int, mode: str | None = None, *, max_subbase_size: int = 3
) -> Iterator[Topology]:
    """Stream topologies on n points.

    mode "exhaustive" (n <= 4) yields every topology in ascending order of
    the family membership mask; mode "subbase" yields a deduplicated but
    incomplete stream for any n. Default picks exhaustive when possible.
    """
    if not 1 <= n <= 8:
        raise ValueError(f"point count must be between 1 and 8, got {n}")
    if mode is None:
        mode = "exhaustive" if n <= EXHAUSTIVE_MAX_POINTS else "subbase"
    if mode == "exhaustive":
        if n > EXHAUSTIVE_MAX_POINTS:
            raise ValueError(
                f"exhaustive enumeration needs n <= {EXHAUSTIVE_MAX_POINTS}, got {n}"
            )
        for members in _topology_members(n):
            yield Topology(Family(members))
    elif mode == "subbase":
        for members in _subbase_topology_members(n, max_subbase_size):
            yield Topology(Family(members))
    else:
        raise ValueError(f"unknown enumeration mode {mode!r}")


def _submasks_ascending(m: int) -> tuple[int, ...]:
    out = []
    s = m
    while True:
        out.append(s)
        if s == 0:
            break
        s = (s - 1) & m
    return tuple(reversed(out))


def enumerate_ideals(n: int) -> Iterator[Ideal]:
    """Stream every ideal on n points.

    A finite family closed under subsets and pairwise unions is exactly the
    powerset of its largest member, so the ideals are the powersets of the
    2^n subsets; ascending generator order is ascending membership-mask order.
    """
    if not 1 <= n <= 8:
        raise ValueError(f"point count must be between 1 and 8, got {n}")
    for m in range(1 << n):
        yield Ideal(Family(_submasks_ascending(m)))


def count_topologies(n: int) -> int:
    return len(_topology_members(n))


# ---------------------------------------------------------------------------
# search


@dataclass(frozen=True)
class SearchTask:
    law_text: str
    n: int
    mode: str = "exhaustive"  # "exhaustive" | "subbase" | "documents"
    want: str = "first"  # "first" | "all-minimal"
    budget_spaces: int | None = None
    budget_assignments: int | None = None
    max_subbase_size: int = 3
    var_cap: int = 3
    documents: tuple[str, ...] = ()  # JSON space documents, "documents" mode

    def __post_init__(self):
        if self.mode not in ("exhaustive", "subbase", "documents"):
            raise ValueError(f"unknown search mode {self.mode!r}")
        if self.want not in ("first", "all-minimal"):
            raise ValueError(f"unknown want {self.want!r}")
        if self.mode == "documents":
            if not self.documents:
                raise ValueError("documents mode needs at least one space document")
        elif not 1 <= self.n <= 8:
            raise ValueError(f"point count must be between 1 and 8, got {self.n}")


@dataclass(frozen=True)
class SpaceWitness:
    """One violating space with the first violating assignment found in it."""

    labels: tuple[str, ...]
    topology: tuple[int, ...]
    ideal: tuple[int, ...]
    bindings: tuple[tuple[str, int], ...]
    lhs: int
    rhs: int

    def space(self) -> Space:
        return Space(
            GroundSet(self.labels),
            Topology(Family(self.topology)),
            Ideal(Family(self.ideal)),
        )

    def sort_key(self):
        return (
            len(self.topology),
            len(self.ideal),
            Family(self.topology).mask,
            Family(self.ideal).mask,
        )


@dataclass(frozen=True)
class SearchResult:
    task: SearchTask
    status: str
    witnesses: tuple[SpaceWitness, ...]
    spaces_scanned: int
    assignments_evaluated: int
    spaces_total: int | None  # None when the stream size is not known upfront


def _space_stream(task: SearchTask) -> tuple[Iterator[tuple], int | None]:
    """Yield (labels, topology members, ideal members); also total when known."""
    if task.mode == "documents":
        spaces = [space_from_document(json.loads(text)) for text in task.documents]
        stream = iter(
            [
                (sp.ground.labels, sp.topology.family.members, sp.ideal.family.members)
                for sp in spaces
            ]
        )
        return stream, len(spaces)
    labels = default_labels(task.n)
    ideals = [ideal.family.members for ideal in enumerate_ideals(task.n)]
    if task.mode == "exhaustive":
        if task.n > EXHAUSTIVE_MAX_POINTS:
            raise ValueError(
                f"exhaustive enumeration needs n <= {EXHAUSTIVE_MAX_POINTS}, got {task.n}"
            )
        topos: Iterable[tuple[int, ...]] = _topology_members(task.n)
        total = len(topos) * len(ideals)
    else:
        topos = _subbase_topology_members(task.n, task.max_subbase_size)
        total = None

    def gen():
        for topo in topos:
            for ideal in ideals:
                yield (labels, topo, ideal)

    return gen(), total


def _scan_one(space_key, law, var_cap, cap):
    labels, topo, ideal = space_key
    space = Space(GroundSet(labels), Topology(Family(topo)), Ideal(Family(ideal)))
    outcome, verdict, count = dsl.scan_law(space, law, var_cap=var_cap, budget=cap)
    packed = None
    if outcome == "violated":
        w = verdict.witness
        packed = (w.bindings, w.lhs, w.rhs)
    return outcome, packed, count


def _scan_chunk(args):
    labels_law_cap, chunk = args
    law_text, var_cap, cap = labels_law_cap
    law = dsl.parse_law(law_text)
    return [_scan_one(space_key, law, var_cap, cap) for space_key in chunk]


def _chunks(stream, size):
    while True:
        block = list(itertools.islice(stream, size))
        if not block:
            return
        yield block


def _scan_results(task: SearchTask, stream, workers: int):
    """Yield (space_key, outcome, packed_witness, count) in stream order.

    Every space is scanned with the same per-space assignment cap (the whole
    budget), so a worker's answer never depends on what other spaces did;
    the serial budget cut is applied later by the merge step.
    """
    cap = task.budget_assignments
    law = dsl.parse_law(task.law_text)
    if workers <= 1:
        for space_key in stream:
            yield space_key, *_scan_one(space_key, law, task.var_cap, cap)
        return
    header = (task.law_text, task.var_cap, cap)
    pending = []
    with ProcessPoolExecutor(max_workers=workers) as pool:
        chunk_stream = _chunks(stream, _CHUNK_SIZE)
        try:
            for chunk in itertools.islice(chunk_stream, workers + 2):
                pending.append((chunk, pool.submit(_scan_chunk, (header, chunk))))
            while pending:
                chunk, future = pending.pop(0)
                results = future.result()
                nxt = next(chunk_stream, None)
                if nxt is not None:
                    pending.append((nxt, pool.submit(_scan_chunk, (header, nxt))))
                for space_key, (outcome, packed, count) in zip(chunk, results):
                    yield space_key, outcome, packed, count
        finally:
            for _, future in pending:
                future.cancel()


def run_search(task: SearchTask, workers: int = 1) -> SearchResult:
    stream, total = _space_stream(task)
    law = dsl.parse_law(task.law_text)  # fail fast on bad law text
    if len(law.free_vars) > task.var_cap:
        raise dsl.VariableCapError(
            f"law has {len(law.free_vars)} free variables, cap is {task.var_cap}"
        )

    witnesses: list[SpaceWitness] = []
    scanned = 0
    used = 0
    cut = False
    completed = True
    for space_key, outcome, packed, count in _scan_results(task, stream, workers):
        if task.budget_spaces is not None and scanned >= task.budget_spaces:
            cut, completed = True, False
            break
        remaining = None if task.budget_assignments is None else task.budget_assignments - used
        if remaining is not None and remaining <= 0:
            cut, completed = True, False
            break
        scanned += 1
        if outcome == "violated" and (remaining is None or count <= remaining):
            used += count
            labels, topo, ideal = space_key
            bindings, lhs, rhs = packed
            witnesses.append(SpaceWitness(labels, topo, ideal, bindings, lhs, rhs))
            if task.want == "first":
                completed = False
                break
            continue
        if outcome == "holds" and (remaining is None or count <= remaining):
            used += count
            continue
        # worker hit the per-space cap, or the serial budget runs out inside
        # this space before reaching its verdict
        used += count if remaining is None else min(count, remaining)
        cut, completed = True, False
        break

    if witnesses:
        status = STATUS_BUDGET if cut else STATUS_FOUND
        if task.want == "all-minimal":
            best = min(w.sort_key()[:2] for w in witnesses)
            witnesses = [w for w in witnesses if w.sort_key()[:2] == best]
            witnesses.sort(key=SpaceWitness.sort_key)
    elif completed and task.mode == "exhaustive":
        status = STATUS_CERTIFIED
    else:
        status = STATUS_BUDGET

    for w in witnesses:
        _revalidate(w, law)
    return SearchResult(task, status, tuple(witnesses), scanned, used, total)


def _revalidate(witness: SpaceWitness, law: dsl.LawAst) -> None:
    """Definition-direct recheck of a reported witness; guards the merge path."""
    space = witness.space()
    env = dict(witness.bindings)
    lhs = dsl.eval_expr(space, env, law.lhs)
    rhs = dsl.eval_expr(space, env, law.rhs)
    ok = lhs == rhs if law.relation == "==" else (lhs & ~rhs) == 0
    if ok or lhs != witness.lhs or rhs != witness.rhs:
        raise AssertionError(f"search produced a witness that does not re-validate: {witness}")


# ---------------------------------------------------------------------------
# reports


def result_to_report(result: SearchResult) -> dict:
    task = result.task
    witnesses = []
    for w in result.witnesses:
        space = w.space()
        ground = space.ground
        witnesses.append(
            {
                "space": space_to_document(space),
                "bindings": {name: ground.labels_of(bits) for name, bits in w.bindings},
                "lhs": ground.labels_of(w.lhs),
                "rhs": ground.labels_of(w.rhs),
            }
        )
    return {
        "status": result.status,
        "law": task.law_text,
        "n": None if task.mode == "documents" else task.n,
        "mode": task.mode,
        "want": task.want,
        "witnesses": witnesses,
        "stats": {
            "spaces_scanned": result.spaces_scanned,
            "assignments_evaluated": result.assignments_evaluated,
            "spaces_total": result.spaces_total,
        },
    }


def report_json(result: SearchResult) -> str:
    return json.dumps(result_to_report(result), indent=2, sort_keys=True) + "\n"
