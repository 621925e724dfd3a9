"""Exact minimum set cover and the maximal-good-opens driver.

Both covering invariants (sectional numbers and LS-category) minimise over
open covers whose elements satisfy a property that is closed under shrinking
opens, so it suffices to search covers drawn from the maximal good opens.
The cover search itself is exact branch-and-bound with a greedy upper bound
and lexicographic tie-breaking, so results are deterministic.
"""

from __future__ import annotations

from .finspace import FinSpace, iter_open_masks
from .resources import Budget, Limits, ensure_limits


def open_masks_by_size(space: FinSpace, limits: Limits | None = None) -> list[int]:
    """Nonempty open masks, largest first, ties by ascending mask value."""
    limits = ensure_limits(limits)
    limits.check_opens(space.n)
    masks = [m for m in iter_open_masks(space) if m]
    masks.sort(key=lambda m: (-m.bit_count(), m))
    return masks


def find_maximal_good_opens(space: FinSpace, is_good, limits: Limits | None = None):
    """Maximal nonempty opens satisfying a shrink-closed property.

    is_good(mask) returns a witness (any non-None value) or None.  Opens are
    scanned largest first; subsets of an accepted open are skipped, which is
    sound exactly because the property is monotone under shrinking.
    Returns [(mask, witness), ...] in scan order.
    """
    accepted: list[tuple[int, object]] = []
    for mask in open_masks_by_size(space, limits):
        if any(mask & ~amask == 0 for amask, _ in accepted):
            continue
        witness = is_good(mask)
        if witness is not None:
            accepted.append((mask, witness))
    return accepted


def greedy_cover(universe: int, masks: list[int]) -> list[int] | None:
    chosen = []
    uncovered = universe
    while uncovered:
        best, best_gain = -1, 0
        for idx, m in enumerate(masks):
            gain = (m & uncovered).bit_count()
            if gain > best_gain:
                best, best_gain = idx, gain
        if best < 0:
            return None
        chosen.append(best)
        uncovered &= ~masks[best]
    return chosen


def exact_min_cover(universe: int, masks: list[int], budget: Budget | None = None):
    """Indices of a minimum-cardinality cover of universe, or None if impossible.

    Deterministic: branches on the uncovered element covered by the fewest
    sets (lowest element breaks ties) and tries covering sets in index order.
    """
    budget = Budget.ensure(budget)
    if universe == 0:
        return ()
    union = 0
    for m in masks:
        union |= m
    if universe & ~union:
        return None
    coverers: dict[int, list[int]] = {}
    e = universe
    while e:
        b = e & -e
        elem = b.bit_length() - 1
        coverers[elem] = [i for i, m in enumerate(masks) if (m >> elem) & 1]
        e ^= b
    best = greedy_cover(universe, masks)
    assert best is not None
    best_len = len(best)
    if best_len == 1:
        return tuple(best)
    max_size = max(m.bit_count() for m in masks)
    chosen: list[int] = []

    def branch(uncovered: int):
        nonlocal best, best_len
        budget.charge()
        if not uncovered:
            if len(chosen) < best_len:
                best, best_len = list(chosen), len(chosen)
            return
        # lower bound: remaining elements / largest set
        need = (uncovered.bit_count() + max_size - 1) // max_size
        if len(chosen) + need >= best_len:
            return
        pick, pick_count = -1, None
        e = uncovered
        while e:
            b = e & -e
            elem = b.bit_length() - 1
            count = len(coverers[elem])
            if pick_count is None or count < pick_count:
                pick, pick_count = elem, count
            e ^= b
        for i in coverers[pick]:
            chosen.append(i)
            branch(uncovered & ~masks[i])
            chosen.pop()

    branch(universe)
    return tuple(best)
