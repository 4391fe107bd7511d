"""Cycle detection and range censuses for the floor-sqrt2 parity map.

Verdicts are exact when an orbit cycles (the repeat is re-checkable with
integer arithmetic) and heuristic when it does not: an orbit that exhausts
the iteration cap, or grows past the value cap, is reported as divergent
without any claim of proof.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Union

from .core import _mpz, _step_raw

DEFAULT_ITERATION_CAP = 20000
DEFAULT_VALUE_CAP_BITS = 1 << 16

JOBS_ENV_VAR = "SQRT2LAB_JOBS"


@dataclass(frozen=True)
class CycleReport:
    """Pre-period, period and canonical members of a detected cycle.

    ``cycle_members`` is rotated to start at its minimum element, so equal
    cycles compare equal as tuples.
    """

    start_n: int
    pre_period_m: int
    period_r: int
    cycle_members: tuple[int, ...]


@dataclass(frozen=True)
class Divergent:
    """Heuristic verdict: no repeat within the caps. Never a proof."""

    start_n: int
    iterations: int
    reason: str  # "iteration_cap" or "value_cap"
    iteration_cap: int
    value_cap_bits: int

    def label(self) -> str:
        return f"divergent (heuristic, cap={self.iteration_cap})"


@dataclass
class ClassifiedRange:
    """Partition of [lo, hi) into cycling reports and divergent starts."""

    lo: int
    hi: int
    cycling: list[CycleReport] = field(default_factory=list)
    divergent: list[int] = field(default_factory=list)
    iteration_cap: int = DEFAULT_ITERATION_CAP
    value_cap_bits: int = DEFAULT_VALUE_CAP_BITS


def _canonical_rotation(members: list[int]) -> tuple[int, ...]:
    i = members.index(min(members))
    return tuple(members[i:] + members[:i])


def detect_cycle(
    n: int,
    iteration_cap: int = DEFAULT_ITERATION_CAP,
    value_cap_bits: int = DEFAULT_VALUE_CAP_BITS,
) -> Union[CycleReport, Divergent]:
    """Brent cycle search on the exact orbit of n.

    Returns a :class:`CycleReport` with minimal pre-period and period, or a
    :class:`Divergent` verdict once ``iteration_cap`` map applications (or
    the ``value_cap_bits`` size guard) are exhausted.
    """
    if n < 0:
        raise ValueError("detect_cycle requires a nonnegative integer")
    if iteration_cap < 1:
        raise ValueError("iteration_cap must be at least 1")
    start = _mpz(n)
    # Phase 1 (Brent): find the minimal period lam.
    power = lam = 1
    tortoise = start
    hare = _step_raw(start)
    evals = 1
    while tortoise != hare:
        if evals >= iteration_cap:
            return Divergent(int(n), evals, "iteration_cap", iteration_cap, value_cap_bits)
        if hare.bit_length() > value_cap_bits:
            return Divergent(int(n), evals, "value_cap", iteration_cap, value_cap_bits)
        if power == lam:
            tortoise = hare
            power <<= 1
            lam = 0
        hare = _step_raw(hare)
        evals += 1
        lam += 1
    # Phase 2: find the minimal pre-period mu with two pointers lam apart.
    tortoise = hare = start
    for _ in range(lam):
        hare = _step_raw(hare)
    mu = 0
    while tortoise != hare:
        tortoise = _step_raw(tortoise)
        hare = _step_raw(hare)
        mu += 1
    members = []
    v = tortoise
    for _ in range(lam):
        members.append(int(v))
        v = _step_raw(v)
    return CycleReport(int(n), mu, lam, _canonical_rotation(members))


def _classify_chunk(args) -> list:
    lo, hi, iteration_cap, value_cap_bits = args
    out = []
    for n in range(lo, hi):
        r = detect_cycle(n, iteration_cap, value_cap_bits)
        if isinstance(r, CycleReport):
            out.append((n, r.pre_period_m, r.period_r, r.cycle_members))
        else:
            out.append((n, None, None, None))
    return out


def _job_count(jobs: int | None) -> int:
    if jobs is not None:
        return max(1, jobs)
    env = os.environ.get(JOBS_ENV_VAR)
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


def classify_range(
    lo: int,
    hi: int,
    iteration_cap: int = DEFAULT_ITERATION_CAP,
    value_cap_bits: int = DEFAULT_VALUE_CAP_BITS,
    jobs: int | None = None,
) -> ClassifiedRange:
    """Classify every n in [lo, hi) as cycling or (heuristically) divergent.

    Fans out over subranges when ``jobs`` > 1 (or the SQRT2LAB_JOBS
    environment variable asks for it); results merge in order of n, so the
    output is identical no matter the schedule.
    """
    if lo < 0 or hi <= lo:
        raise ValueError("need 0 <= lo < hi")
    jobs = _job_count(jobs)
    result = ClassifiedRange(lo, hi, iteration_cap=iteration_cap, value_cap_bits=value_cap_bits)
    if jobs == 1:
        rows = _classify_chunk((lo, hi, iteration_cap, value_cap_bits))
    else:
        chunk = max(64, (hi - lo + 4 * jobs - 1) // (4 * jobs))
        tasks = [
            (a, min(a + chunk, hi), iteration_cap, value_cap_bits)
            for a in range(lo, hi, chunk)
        ]
        rows = []
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for part in pool.map(_classify_chunk, tasks):
                rows.extend(part)
    rows.sort(key=lambda t: t[0])
    for n, mu, lam, members in rows:
        if mu is None:
            result.divergent.append(n)
        else:
            result.cycling.append(CycleReport(n, mu, lam, members))
    return result


def counting_function(
    hi: int,
    iteration_cap: int = DEFAULT_ITERATION_CAP,
    jobs: int | None = None,
) -> list[tuple[int, int]]:
    """Cumulative count of cycling starts: one (n, count so far) pair per n < hi."""
    if hi < 1:
        raise ValueError("hi must be at least 1")
    classified = classify_range(0, hi, iteration_cap=iteration_cap, jobs=jobs)
    cycling = {r.start_n for r in classified.cycling}
    out = []
    total = 0
    for n in range(hi):
        if n in cycling:
            total += 1
        out.append((n, total))
    return out
