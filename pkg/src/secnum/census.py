"""Exhaustive censuses of finite spaces and seeded random instance generation.

census_spaces(n) yields every preorder on n points up to isomorphism.  All
reflexive-transitive relations are enumerated and collapsed to canonical
representatives; the canonical form is the minimum relation bitmask over all
relabelings, restricted to permutations compatible with per-point degree
signatures (isomorphisms preserve those, so the restriction is sound).

InstanceGenerator draws reproducible random spaces, maps, commuting squares,
triples and retractions from a seeded generator; identical seeds give
identical instances regardless of the host or the degree of parallelism.
"""

from __future__ import annotations

import functools
import itertools
import random

from .finspace import (
    CMap,
    FinSpace,
    identity_map,
    iter_assignments,
    iter_open_masks,
    make_space,
    subspace_of_mask,
)
from .homotopy import is_contractible
from .resources import Budget, LimitExceeded

CENSUS_DEFAULT_MAX = 4
CENSUS_HARD_MAX = 5

# preorders (= finite topologies) and posets on n unlabeled points
KNOWN_PREORDER_COUNTS = {0: 1, 1: 1, 2: 3, 3: 9, 4: 33, 5: 139}
KNOWN_POSET_COUNTS = {0: 1, 1: 1, 2: 2, 3: 5, 4: 16, 5: 63}


def relation_bits(space: FinSpace) -> int:
    key = 0
    n = space.n
    for i, row in enumerate(space.reach_rows):
        key |= row << (i * n)
    return key


def _signature_blocks(rows, co, n):
    signature = [(rows[i].bit_count(), co[i].bit_count()) for i in range(n)]
    order = sorted(range(n), key=lambda i: (signature[i], i))
    blocks = []
    for _, group in itertools.groupby(order, key=lambda i: signature[i]):
        blocks.append(list(group))
    return blocks


def canonical_form(space: FinSpace) -> int:
    """Minimum relation bitmask over signature-compatible relabelings."""
    n = space.n
    if n == 0:
        return 0
    rows, co = space.reach_rows, space.co_rows
    blocks = _signature_blocks(rows, co, n)
    best = None
    for parts in itertools.product(*(itertools.permutations(block) for block in blocks)):
        old_of_new = [p for part in parts for p in part]
        key = 0
        for new_i, old_i in enumerate(old_of_new):
            row = rows[old_i]
            for new_j, old_j in enumerate(old_of_new):
                if (row >> old_j) & 1:
                    key |= 1 << (new_i * n + new_j)
        if best is None or key < best:
            best = key
    return best


def are_isomorphic(a: FinSpace, b: FinSpace) -> bool:
    if a.n != b.n:
        return False
    return canonical_form(a) == canonical_form(b)


def _space_from_relation_key(key: int, n: int) -> FinSpace:
    rows = [(key >> (i * n)) & ((1 << n) - 1) for i in range(n)]
    return FinSpace(rows, validate=False)


def _is_poset_rows(rows, n) -> bool:
    for i in range(n):
        for j in range(i + 1, n):
            if (rows[i] >> j) & 1 and (rows[j] >> i) & 1:
                return False
    return True


@functools.lru_cache(maxsize=32)
def census_spaces(n: int, posets_only: bool = False) -> tuple[FinSpace, ...]:
    """All preorders (or posets) on n points, pairwise non-isomorphic,
    ordered by canonical form."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if n > CENSUS_HARD_MAX:
        raise LimitExceeded(f"census capped at {CENSUS_HARD_MAX} points, asked for {n}")
    if n == 0:
        return (make_space(0, [], name="empty"),)
    positions = [(i, j) for i in range(n) for j in range(n) if i != j]
    base = [1 << i for i in range(n)]
    seen: dict[int, int] = {}
    for mask in range(1 << len(positions)):
        rows = list(base)
        m = mask
        while m:
            b = m & -m
            i, j = positions[b.bit_length() - 1]
            rows[i] |= 1 << j
            m ^= b
        transitive = True
        for i in range(n):
            row = rows[i]
            probe = row & ~(1 << i)
            while probe:
                b = probe & -probe
                if rows[b.bit_length() - 1] & ~row:
                    transitive = False
                    break
                probe ^= b
            if not transitive:
                break
        if not transitive:
            continue
        if posets_only and not _is_poset_rows(rows, n):
            continue
        space = FinSpace(rows, validate=False)
        key = canonical_form(space)
        if key not in seen:
            seen[key] = key
    return tuple(
        _space_from_relation_key(key, n) for key in sorted(seen)
    )


def census_up_to(n_max: int, posets_only: bool = False, include_empty: bool = False):
    """Censuses of sizes 1..n_max concatenated (optionally starting at 0)."""
    spaces = []
    start = 0 if include_empty else 1
    for n in range(start, n_max + 1):
        spaces.extend(census_spaces(n, posets_only))
    return spaces


def cone(space: FinSpace) -> FinSpace:
    """Space plus a new bottom point lying in every minimal open set;
    always contractible."""
    n = space.n
    pairs = [
        (i, j) for i in range(n) for j in range(n) if i != j and space.reach(i, j)
    ]
    pairs.extend((i, n) for i in range(n))
    return make_space(n + 1, pairs)


class InstanceGenerator:
    """Seeded, reproducible source of random spaces and maps."""

    def __init__(self, seed):
        self.rng = random.Random(seed)

    # -- spaces -------------------------------------------------------------

    def space(self, max_points: int, min_points: int = 1) -> FinSpace:
        n = self.rng.randint(min_points, max_points)
        if n == 0:
            return make_space(0, [])
        generators = self.rng.randint(0, 2 * n)
        pairs = [
            (self.rng.randrange(n), self.rng.randrange(n)) for _ in range(generators)
        ]
        return make_space(n, pairs)

    def hausdorff_space(self, max_points: int, min_points: int = 1) -> FinSpace:
        return make_space(self.rng.randint(min_points, max_points), [])

    def contractible_space(self, max_points: int) -> FinSpace:
        base = self.space(max(1, max_points - 1))
        if is_contractible(base):
            return base
        return cone(base)

    def noncontractible_space(self, max_points: int, attempts: int = 64) -> FinSpace:
        for _ in range(attempts):
            X = self.space(max_points)
            if not is_contractible(X):
                return X
        from .finspace import pseudocircle

        return pseudocircle()

    # -- maps ---------------------------------------------------------------

    def cmap(self, source: FinSpace, target: FinSpace, constraints=None) -> CMap | None:
        """Random continuous map via value-shuffled backtracking; None when
        no continuous map satisfies the constraints."""
        if target.n == 0 and source.n > 0:
            return None
        value_orders = [self.rng.sample(range(target.n), target.n) for _ in range(source.n)]
        domains = [target.full_mask] * source.n
        if constraints is not None:
            domains = []
            for allowed in constraints:
                mask = 0
                for y in allowed:
                    mask |= 1 << y
                domains.append(mask)
        for assignment in iter_assignments(
            source, target, domains, Budget(), value_orders=value_orders
        ):
            return CMap(source, target, assignment, validate=False)
        return None

    def homotopic_neighbor(self, g: CMap) -> CMap:
        """Random map one comparability step away from g (possibly g itself)."""
        Y = g.target
        candidates = {g.assignment}
        for rows in (Y.reach_rows, Y.co_rows):
            domains = [rows[y] for y in g.assignment]
            for assignment in iter_assignments(g.source, Y, domains, Budget()):
                candidates.add(assignment)
        pick = self.rng.choice(sorted(candidates))
        return CMap(g.source, Y, pick, validate=False)

    def open_mask(self, space: FinSpace, nonempty: bool = True) -> int:
        masks = [m for m in iter_open_masks(space) if m or not nonempty]
        return self.rng.choice(masks)

    def retraction(self, max_points: int, attempts: int = 32):
        """Random (X, B open in X, r: X -> B) with r restricting to the identity."""
        for _ in range(attempts):
            X = self.space(max_points)
            mask = self.open_mask(X)
            sub, incl = subspace_of_mask(X, mask)
            index_of = {p: i for i, p in enumerate(incl.assignment)}
            constraints = [
                [index_of[x]] if x in index_of else list(range(sub.n))
                for x in range(X.n)
            ]
            r = self.cmap(X, sub, constraints)
            if r is not None:
                return X, sub, incl, r
        X = self.space(max_points)
        return X, X, identity_map(X), identity_map(X)

    # -- composite instances -------------------------------------------------

    def triple(self, max_points: int, hausdorff_target: bool = False):
        """(X, Y, g) with g: X -> Y continuous."""
        X = self.space(max_points)
        Y = self.hausdorff_space(max_points) if hausdorff_target else self.space(max_points)
        g = self.cmap(X, Y)
        return X, Y, g

    def square(self, max_points: int):
        """Strictly commuting square (phi, f, f_prime, psi) with
        f_prime o phi == psi o f, built by construction."""
        recipe = self.rng.randrange(3)
        X = self.space(max_points)
        Y = self.space(max_points)
        if recipe == 0:
            # phi identity, f_prime = psi o f
            Yp = self.space(max_points)
            f = self.cmap(X, Y)
            psi = self.cmap(Y, Yp)
            from .finspace import compose

            return identity_map(X), f, compose(psi, f), psi
        if recipe == 1:
            # psi identity, f = f_prime o phi
            Xp = self.space(max_points)
            phi = self.cmap(X, Xp)
            f_prime = self.cmap(Xp, Y)
            from .finspace import compose

            return phi, compose(f_prime, phi), f_prime, identity_map(Y)
        # general: solve for f with psi o f = f_prime o phi, else fall back
        Xp = self.space(max_points)
        Yp = self.space(max_points)
        phi = self.cmap(X, Xp)
        f_prime = self.cmap(Xp, Yp)
        psi = self.cmap(Y, Yp)
        from .finspace import compose

        needed = compose(f_prime, phi)
        psi_fibers = [0] * Yp.n
        for y, py in enumerate(psi.assignment):
            psi_fibers[py] |= 1 << y
        domains = [psi_fibers[needed(x)] for x in range(X.n)]
        if 0 not in domains:
            for assignment in iter_assignments(X, Y, domains, Budget(), order="mcf"):
                f = CMap(X, Y, assignment, validate=False)
                return phi, f, f_prime, psi
        f = self.cmap(X, Yp)
        return identity_map(X), f, f, identity_map(Yp)


def random_instance(kind: str, seed, max_points: int = 3):
    """One reproducible instance of the requested kind (spec parity helper)."""
    gen = InstanceGenerator(seed)
    if kind == "space":
        return gen.space(max_points)
    if kind == "map":
        X = gen.space(max_points)
        Y = gen.space(max_points)
        return gen.cmap(X, Y)
    if kind == "square":
        return gen.square(max_points)
    if kind == "triple":
        return gen.triple(max_points)
    if kind == "triple-hausdorff":
        return gen.triple(max_points, hausdorff_target=True)
    raise ValueError(f"unknown instance kind {kind!r}")
