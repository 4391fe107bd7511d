"""Predecessor structure of the floor-sqrt2 parity map.

Every m has 0, 1 or 2 predecessors, and which case applies is decided by a
Beatty-form trichotomy:

    no predecessor        m = floor(k (2 + sqrt2))      for some k >= 1
    one predecessor 4k    m = floor(2k sqrt2)
    two, 2k-1 and 4k-2    m = floor((2k-1) sqrt2)

Both routes (direct interval enumeration and the closed forms) are
implemented independently and cross-checked; a disagreement raises
ClassificationMismatchError instead of silently trusting either side.
All interval membership tests compare squared integers, never floats.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterator

from .core import isqrt, step
from .errors import CapExceededError, ClassificationMismatchError, PatternBreakError


class PredecessorKind(Enum):
    ZERO = "zero"
    ONE = "one"
    TWO = "two"


@dataclass(frozen=True)
class PredecessorClass:
    m: int
    kind: PredecessorKind
    witnesses: tuple[int, ...]
    beatty_k: int


@dataclass
class PredecessorTree:
    """Back-step expansion: ``edges[m]`` lists the predecessors of node m."""

    root: int
    edges: dict[int, tuple[int, ...]]
    leaves_without_predecessor: list[int]
    complete: bool
    degenerate: bool = False

    @property
    def nodes(self) -> list[int]:
        return sorted(self.edges)


@dataclass(frozen=True)
class GapWordLevel:
    """One level of the recursive gap-word pattern.

    ``word_sequence`` spells the level's letters as 'S' (short gap) and
    'L' (long gap); level 0 is the raw difference sequence of the
    no-predecessor numbers with gaps {3, 4}.
    """

    level: int
    short_gap: int
    long_gap: int
    word_sequence: str


@dataclass(frozen=True)
class BeattyCheck:
    ok: bool
    counterexample: int | None = None

    def __bool__(self) -> bool:
        return self.ok


def predecessors_of(m: int) -> list[int]:
    """All n with step(n) = m, in ascending order (at most two).

    Even candidates live in [m sqrt2, (m+1) sqrt2), odd candidates in
    [m/sqrt2, (m+1)/sqrt2); both windows are scanned with exact squared
    comparisons and every hit is re-verified through ``step``.
    """
    if m < 0:
        raise ValueError("predecessors are defined for nonnegative m")
    out = []
    two_m2 = 2 * m * m
    two_m12 = 2 * (m + 1) * (m + 1)
    lo = isqrt(two_m2)
    hi = isqrt(two_m12) + 1
    for n in range(lo, hi + 1):
        if n % 2 == 0 and two_m2 <= n * n < two_m12 and step(n) == m:
            out.append(n)
    m2 = m * m
    m12 = (m + 1) * (m + 1)
    lo = isqrt(m2 // 2)
    hi = isqrt(m12 // 2) + 1
    for n in range(max(lo, 1), hi + 1):
        if n % 2 == 1 and m2 <= 2 * n * n < m12 and step(n) == m:
            out.append(n)
    return sorted(out)


def _beatty_two_plus_sqrt2(k: int) -> int:
    # floor(k (2 + sqrt2)) = 2k + floor(k sqrt2)
    return 2 * k + isqrt(2 * k * k)


def _beatty_sqrt2(j: int) -> int:
    return isqrt(2 * j * j)


def _search_index(m: int, value_at, k_estimate: int) -> int | None:
    """Smallest-window scan for k >= 1 with value_at(k) == m (monotone value_at)."""
    k = max(1, k_estimate)
    while k > 1 and value_at(k) > m:
        k -= 1
    while value_at(k) < m:
        k += 1
    return k if value_at(k) == m else None


def classify_predecessor(m: int) -> PredecessorClass:
    """Predecessor count of m by enumeration, cross-checked against the Beatty forms."""
    if m < 1:
        raise ValueError("classification is defined for m >= 1")
    witnesses = tuple(predecessors_of(m))

    # Both value maps are strictly increasing, so each admits at most one index.
    s = isqrt(2 * m * m)  # floor(m sqrt2), seeds the index estimates
    k_zero = _search_index(m, _beatty_two_plus_sqrt2, (2 * m - s) // 2)
    j = _search_index(m, _beatty_sqrt2, s // 2)
    if (k_zero is None) == (j is None):
        raise ClassificationMismatchError(
            f"m={m}: Beatty trichotomy failed (k_zero={k_zero}, j={j})"
        )
    if k_zero is not None:
        kind, beatty_k, expected = PredecessorKind.ZERO, k_zero, ()
    elif j % 2 == 0:
        k = j // 2
        kind, beatty_k, expected = PredecessorKind.ONE, k, (4 * k,)
    else:
        k = (j + 1) // 2
        kind, beatty_k, expected = PredecessorKind.TWO, k, (2 * k - 1, 4 * k - 2)
    if witnesses != tuple(sorted(expected)):
        raise ClassificationMismatchError(
            f"m={m}: enumeration found {witnesses}, Beatty form {kind.value} predicts {expected}"
        )
    return PredecessorClass(m=m, kind=kind, witnesses=witnesses, beatty_k=beatty_k)


def no_predecessor_numbers(hi: int) -> Iterator[int]:
    """The ascending sequence floor(k (2+sqrt2)), k >= 1, below hi."""
    k = 1
    while True:
        v = _beatty_two_plus_sqrt2(k)
        if v >= hi:
            return
        yield v
        k += 1


def no_predecessor_census(hi: int) -> int:
    """Count of m < hi (m >= 1) without predecessors, by the closed form.

    Binary-searches the largest k with floor(k (2+sqrt2)) < hi; the value
    map is strictly increasing, so that k is the count itself.
    """
    if hi < 1:
        raise ValueError("hi must be at least 1")
    lo_k, hi_k = 0, hi
    while lo_k < hi_k:
        mid = (lo_k + hi_k + 1) // 2
        if _beatty_two_plus_sqrt2(mid) < hi:
            lo_k = mid
        else:
            hi_k = mid - 1
    return lo_k


def beatty_partition_check(hi: int) -> BeattyCheck:
    """Verify that floor(n sqrt2) and floor(n (2+sqrt2)) tile [1, hi) exactly once.

    Also confirms the identity floor(n (2+sqrt2)) = 2n + floor(n sqrt2) for
    every index used.  Returns the first failing value as a counterexample.
    """
    if hi < 1:
        raise ValueError("hi must be at least 1")
    seen = bytearray(hi)
    n = 1
    while True:
        v = isqrt(2 * n * n)
        if v >= hi:
            break
        if seen[v]:
            return BeattyCheck(False, v)
        seen[v] = 1
        n += 1
    n = 1
    while True:
        v = _beatty_two_plus_sqrt2(n)
        # independent route: floor(n(2+sqrt2)) = isqrt(floor(n^2 (6+4 sqrt2)))
        direct = isqrt(6 * n * n + isqrt(32 * n**4))
        if v != direct:
            return BeattyCheck(False, v)
        if v >= hi:
            break
        if seen[v]:
            return BeattyCheck(False, v)
        seen[v] = 1
        n += 1
    for v in range(1, hi):
        if not seen[v]:
            return BeattyCheck(False, v)
    return BeattyCheck(True)


def predecessor_tree(root: int, node_cap: int = 10000) -> PredecessorTree:
    """Breadth-first back-step expansion of all predecessor chains above root.

    Stops when every branch ends at a no-predecessor number; raises
    :class:`CapExceededError` (with the partial tree attached) if the node
    cap binds first.  root = 0 is its own predecessor and is reported as a
    degenerate single-node tree.
    """
    if root < 0 or node_cap < 1:
        raise ValueError("need root >= 0 and node_cap >= 1")
    if root == 0:
        return PredecessorTree(
            root=0, edges={0: (0,)}, leaves_without_predecessor=[], complete=True, degenerate=True
        )
    edges: dict[int, tuple[int, ...]] = {}
    leaves: list[int] = []
    queue = [root]
    while queue:
        m = queue.pop(0)
        preds = tuple(predecessors_of(m))
        edges[m] = preds
        if not preds:
            leaves.append(m)
        if len(edges) + len(queue) + len(preds) > node_cap:
            raise CapExceededError(
                f"predecessor tree of {root} exceeded node cap {node_cap}",
                partial_tree=PredecessorTree(root, edges, leaves, complete=False),
            )
        queue.extend(preds)
    return PredecessorTree(root=root, edges=edges, leaves_without_predecessor=sorted(leaves), complete=True)


def _segment_words(letters: list[str], gap_of: dict[str, int]) -> tuple[list[tuple[str, ...]], dict]:
    """Cut a two-letter sequence into its two repeating words.

    The letter that never occurs twice in a row anchors each word; runs of
    the other letter attach to the anchor on the side determined by the
    first letter of the sequence.  A third distinct word (or two doubled
    letters) raises PatternBreakError.
    """
    distinct = sorted(set(letters))
    if len(distinct) != 2:
        raise PatternBreakError(f"expected exactly two letters, found {distinct}")
    doubled = {letters[i] for i in range(len(letters) - 1) if letters[i] == letters[i + 1]}
    anchors = [x for x in distinct if x not in doubled]
    if len(anchors) != 1:
        raise PatternBreakError(f"cannot pick a word anchor: doubled letters {sorted(doubled)}")
    anchor = anchors[0]
    words: list[tuple[str, ...]] = []
    cur: list[str] = []
    if letters[0] == anchor:
        for x in letters:
            if x == anchor and cur:
                words.append(tuple(cur))
                cur = []
            cur.append(x)
        # trailing word may be truncated mid-run: drop it
    else:
        for x in letters:
            cur.append(x)
            if x == anchor:
                words.append(tuple(cur))
                cur = []
        # trailing run without its anchor is incomplete: drop it
    vocab = sorted(set(words), key=lambda w: (sum(gap_of[x] for x in w), len(w)))
    if len(vocab) > 2:
        raise PatternBreakError(f"more than two distinct words: {vocab}")
    if len(vocab) < 2:
        raise PatternBreakError("window too short to exhibit both words")
    short_w, long_w = vocab
    sums = {
        "S": sum(gap_of[x] for x in short_w),
        "L": sum(gap_of[x] for x in long_w),
    }
    seq = ["S" if w == short_w else "L" for w in words]
    return seq, sums


def gap_words(hi: int, max_level: int) -> list[GapWordLevel]:
    """Recursive word structure of the no-predecessor gap sequence.

    Level 0 is the difference sequence itself (a zero is prepended ahead of
    the first number, making the first gap equal to that number); each
    further level regroups the previous one into its two repeating words
    and records their summed gap values.
    """
    if max_level < 0:
        raise ValueError("max_level must be nonnegative")
    seq = list(no_predecessor_numbers(hi))
    if len(seq) < 4:
        raise ValueError("hi must cover at least four no-predecessor numbers")
    gaps = [seq[0]] + [b - a for a, b in zip(seq, seq[1:])]
    values = sorted(set(gaps))
    if len(values) != 2:
        raise PatternBreakError(f"level 0 should use two gap values, found {values}")
    letters = ["S" if g == values[0] else "L" for g in gaps]
    gap_of = {"S": values[0], "L": values[1]}
    out = [GapWordLevel(0, values[0], values[1], "".join(letters))]
    for level in range(1, max_level + 1):
        letters, gap_of = _segment_words(letters, gap_of)
        out.append(GapWordLevel(level, gap_of["S"], gap_of["L"], "".join(letters)))
    return out


def sqrt2_convergents(count: int) -> list[tuple[int, int]]:
    """Continued-fraction convergents of sqrt2 as (numerator, denominator).

    Starts from the formal pair 1/0, 1/1 and applies p' = 2p + p_prev
    (same for q), which generates 3/2, 7/5, 17/12, 41/29, ...
    """
    if count < 1:
        raise ValueError("count must be at least 1")
    ps, qs = [1, 1], [0, 1]
    while len(ps) < count:
        ps.append(2 * ps[-1] + ps[-2])
        qs.append(2 * qs[-1] + qs[-2])
    return list(zip(ps[:count], qs[:count]))
