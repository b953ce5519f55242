"""Subshift elements as shifts or shift limits, with pair and fiber analysis.

A shift limit is given by a deterministic rule k -> n_k; its value at a
position counts as resolved only once it agrees over a run of consecutive
rule indices and over the whole remaining tail.  Disagreement surfaces as
an unresolved position, never as a wrong letter, so every census below is
a statement about certified positions only.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .errors import UnresolvedWindow
from .words import FillingSchedule, evaluate


@dataclass(frozen=True)
class Shift:
    """The element obtained by shifting the base word by ``n``."""

    n: int


@dataclass(frozen=True)
class ShiftLimit:
    """A limit of shifts along a deterministic rule k -> n_k."""

    rule: Callable[[int], int]
    k_start: int = 1
    k_stop: int = 8
    stabilization_window: int = 3

    def shift_at(self, k: int) -> int:
        return self.rule(k)


ElementSpec = Shift | ShiftLimit


def eval_element(schedule: FillingSchedule, element: ElementSpec, j: int, max_level: int) -> str | None:
    """Letter of the element at position ``j``, or None when unresolved."""
    if isinstance(element, Shift):
        return evaluate(schedule, j + element.n, max_level)
    run_value: str | None = None
    run_len = 0
    for k in range(element.k_start, element.k_stop):
        c = evaluate(schedule, j + element.shift_at(k), max_level)
        if c is None:
            run_value, run_len = None, 0
            continue
        if c == run_value:
            run_len += 1
        else:
            run_value, run_len = c, 1
        if run_len >= element.stabilization_window:
            tail = (evaluate(schedule, j + element.shift_at(t), max_level) for t in range(k + 1, element.k_stop))
            if all(c2 is None or c2 == run_value for c2 in tail):
                return run_value
            return None
    return None


@dataclass(frozen=True)
class WindowCensus:
    window: tuple[int, int]
    resolved_differences: int
    difference_positions: tuple[int, ...]
    unresolved: int


@dataclass(frozen=True)
class PairReport:
    phi_agreement_depth: int
    censuses: tuple[WindowCensus, ...]


def pair_report(
    schedule: FillingSchedule,
    e1: ElementSpec,
    e2: ElementSpec,
    depth: int,
    windows,
    eval_level: int | None = None,
) -> PairReport:
    """Agreement depth on the odometer plus per-window difference censuses."""
    from .odometer import phi_prefix

    eval_level = depth if eval_level is None else eval_level
    w1 = phi_prefix(schedule, e1, depth)
    w2 = phi_prefix(schedule, e2, depth)
    agreement = 0
    for r1, r2 in zip(w1.residues, w2.residues):
        if r1 != r2:
            break
        agreement += 1
    censuses = []
    for lo, hi in windows:
        diffs = []
        unresolved = 0
        for j in range(lo, hi + 1):
            c1 = eval_element(schedule, e1, j, eval_level)
            c2 = eval_element(schedule, e2, j, eval_level)
            if c1 is None or c2 is None:
                unresolved += 1
            elif c1 != c2:
                diffs.append(j)
        censuses.append(WindowCensus((lo, hi), len(diffs), tuple(diffs), unresolved))
    return PairReport(agreement, tuple(censuses))


def fiber_block_contents(
    schedule: FillingSchedule,
    omega,
    l: int,
    depth: int,
    block_range: int = 48,
) -> tuple[str, ...]:
    """Distinct resolved length-p_l windows consistent with the point ``omega``.

    Windows start at positions congruent to the point's deepest residue,
    so every word a fiber element can show on [0, p_l) appears among
    them; unresolved windows are skipped.  A deeper point pins more: for
    a point on the integer orbit, carried deep enough, a single content
    remains.
    """
    p = schedule.period(l)
    base = omega.residues[-1]
    step = schedule.period(omega.depth)
    contents = set()
    for m in range(block_range):
        word = "".join(
            c if (c := evaluate(schedule, j, depth)) is not None else "?"
            for j in range(base + m * step, base + m * step + p)
        )
        if "?" not in word:
            contents.add(word)
    return tuple(sorted(contents))


def fiber_prefix_count(
    schedule: FillingSchedule,
    omega,
    l: int,
    depth: int,
    block_range: int = 48,
) -> int:
    """Number of distinct resolved fiber-window contents for ``omega``."""
    contents = fiber_block_contents(schedule, omega, l, depth, block_range)
    if not contents:
        raise UnresolvedWindow("no fully resolved fiber window at level %d, depth %d" % (l, depth))
    return len(contents)


@dataclass(frozen=True)
class NonAsymptoticWitness:
    level_censuses: tuple[tuple[int, int], ...]  # (level, max pairwise disagreement)
    growing: bool
    pair: tuple[str, str] | None


def finite_fiber_nonasymptotic_witness(
    schedule: FillingSchedule,
    omega,
    depth: int,
    levels=None,
) -> NonAsymptoticWitness | None:
    """Pairs of fiber-window contents with growing disagreement counts.

    Returns None when the pairwise disagreement stays bounded by one over
    the checked levels (consistent with every proximal pair being
    asymptotic); otherwise reports the per-level maxima and one witness
    pair at the deepest checked level.
    """
    levels = levels or range(2, max(3, depth - 1))
    censuses = []
    witness_pair = None
    for l in levels:
        contents = fiber_block_contents(schedule, omega.truncate(min(l, omega.depth)), l, depth)
        best = 0
        for i, c1 in enumerate(contents):
            for c2 in contents[i + 1:]:
                d = sum(1 for a, b in zip(c1, c2) if a != b)
                if d > best:
                    best = d
                    if l == max(levels):
                        witness_pair = (c1, c2)
        censuses.append((l, best))
    growing = all(b > a for (_, a), (_, b) in zip(censuses, censuses[1:])) and len(censuses) >= 2
    if max((c for _, c in censuses), default=0) <= 1:
        return None
    return NonAsymptoticWitness(tuple(censuses), growing, witness_pair)


def branch_rule(schedule: FillingSchedule, residues, block_offset: int = 0) -> ShiftLimit:
    """Shift rule following a residue chain, optionally displaced whole periods.

    With a nonzero ``block_offset`` s the rule visits ``r_k + s * p_k``,
    which has the same odometer limit as the chain itself but approaches
    it through different blocks.
    """
    residues = tuple(residues)
    periods = tuple(schedule.period(l) for l in range(1, len(residues) + 1))

    def rule(k: int) -> int:
        i = min(k, len(residues)) - 1
        return residues[i] + block_offset * periods[i]

    # the rule tail repeats its deepest entry; leave room for the
    # stabilisation window to close over it
    return ShiftLimit(rule, k_start=1, k_stop=len(residues) + 5)
