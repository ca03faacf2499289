"""Block designs: verification, small exhaustive search, resolutions, and the
bow-free colorings they induce."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .core import (
    Coloring,
    Status,
    ValidationError,
    colex_rank,
    colex_subsets,
    ranker,
)


@dataclass(frozen=True)
class Design:
    v: int
    block_size: int
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        clean = []
        for b in self.blocks:
            b = tuple(int(x) for x in b)
            if len(b) != self.block_size:
                raise ValidationError(f"block {b} does not have {self.block_size} points")
            colex_rank(b, self.v)
            clean.append(b)
        if len(set(clean)) != len(clean):
            raise ValidationError("duplicate blocks")
        object.__setattr__(self, "blocks", tuple(sorted(clean, key=colex_rank)))

    @classmethod
    def of(cls, v: int, blocks: Iterable[Sequence[int]]) -> "Design":
        blocks = [tuple(sorted(b)) for b in blocks]
        return cls(v, len(blocks[0]) if blocks else 0, tuple(blocks))


@dataclass(frozen=True)
class Resolution:
    design: Design
    classes: tuple[tuple[tuple[int, ...], ...], ...]

    def __post_init__(self) -> None:
        points = set(range(self.design.v))
        seen: list[tuple[int, ...]] = []
        for cls in self.classes:
            covered = [x for b in cls for x in b]
            if len(covered) != len(set(covered)) or set(covered) != points:
                raise ValidationError("class is not a parallel class")
            seen.extend(cls)
        if sorted(seen) != sorted(self.design.blocks):
            raise ValidationError("classes do not partition the blocks")


@dataclass(frozen=True)
class DesignSearch:
    status: Status
    design: Design | None
    nodes: int
    reason: str = ""


@dataclass(frozen=True)
class ResolutionSearch:
    status: Status
    resolution: Resolution | None
    nodes: int


@dataclass(frozen=True)
class PairPartition:
    status: Status
    coloring: Coloring | None
    groups: tuple[tuple[tuple[int, ...], ...], ...]
    nodes: int


def is_t_design(d: Design, t: int, lam: int) -> bool:
    if not 1 <= t <= d.block_size:
        raise ValidationError("need 1 <= t <= block_size")
    counts = [0] * math.comb(d.v, t)
    rank = ranker(t, d.v)
    for b in d.blocks:
        for s in itertools.combinations(b, t):
            counts[rank(s)] += 1
    return all(c == lam for c in counts)


def admissible(t: int, v: int, k: int, lam: int) -> bool:
    """Standard divisibility conditions: lam*C(v-i, t-i) divisible by C(k-i, t-i)."""
    return all(lam * math.comb(v - i, t - i) % math.comb(k - i, t - i) == 0 for i in range(t + 1))


def find_design(t: int, v: int, block_size: int, lam: int,
                budget: int | None = None) -> DesignSearch:
    """Backtracking search for a simple t-(v, block_size, lam) design.

    Always extends the colex-least under-covered t-set; the first block is the
    colex-least block.  Blocks covering the same t-set are added in increasing
    colex order, so every design is generated once.
    """
    if not (1 <= t <= block_size <= v) or lam < 1:
        raise ValidationError("need 1 <= t <= block_size <= v and lam >= 1")
    if not admissible(t, v, block_size, lam):
        return DesignSearch(Status.NOT_FOUND, None, 0, "counting obstruction")

    blocks = colex_subsets(v, block_size)
    rank = ranker(t, v)
    block_tsets = [[rank(s) for s in itertools.combinations(b, t)] for b in blocks]
    by_tset: list[list[int]] = [[] for _ in range(math.comb(v, t))]
    for bi, ts in enumerate(block_tsets):
        for s in ts:
            by_tset[s].append(bi)
    cover = [0] * len(by_tset)
    chosen: list[int] = []
    nodes = 0
    n_tsets = len(by_tset)

    def rec(s: int, prev_s: int, prev_b: int) -> bool | None:
        nonlocal nodes
        while s < n_tsets and cover[s] == lam:
            s += 1
        if s == n_tsets:
            return True
        lo = prev_b if s == prev_s else -1
        cands = by_tset[s][:1] if not chosen else by_tset[s]
        for bi in cands:
            if bi <= lo or any(cover[x] == lam for x in block_tsets[bi]):
                continue
            nodes += 1
            if budget is not None and nodes > budget:
                return None
            for x in block_tsets[bi]:
                cover[x] += 1
            chosen.append(bi)
            res = rec(s, s, bi)
            if res is not False:
                return res
            chosen.pop()
            for x in block_tsets[bi]:
                cover[x] -= 1
        return False

    res = rec(0, -1, -1)
    if res is None:
        return DesignSearch(Status.BUDGET_EXCEEDED, None, nodes)
    if not res:
        return DesignSearch(Status.NOT_FOUND, None, nodes, "exhausted")
    d = Design(v, block_size, tuple(blocks[i] for i in chosen))
    assert is_t_design(d, t, lam)
    return DesignSearch(Status.FOUND, d, nodes)


def resolve(d: Design, budget: int | None = None) -> ResolutionSearch:
    """Partition the blocks into parallel classes, or report that none exists."""
    k, v = d.block_size, d.v
    if k == 0 or v % k:
        return ResolutionSearch(Status.NOT_FOUND, None, 0)
    masks = [sum(1 << x for x in b) for b in d.blocks]
    full = (1 << v) - 1
    by_point = [[i for i, b in enumerate(d.blocks) if x in b] for x in range(v)]
    used = [False] * len(masks)
    classes: list[list[int]] = []
    nodes = 0

    def rec(cover: int, left: int) -> bool | None:
        nonlocal nodes
        if cover == full:
            if left == 0:
                return True
            # next class opens with the least unused block
            first = used.index(False)
            nodes += 1
            if budget is not None and nodes > budget:
                return None
            used[first] = True
            classes.append([first])
            res = rec(masks[first], left - 1)
            if res is False:
                classes.pop()
                used[first] = False
            return res
        p = (~cover & (cover + 1)).bit_length() - 1  # least uncovered point
        for bi in by_point[p]:
            if used[bi] or masks[bi] & cover:
                continue
            nodes += 1
            if budget is not None and nodes > budget:
                return None
            used[bi] = True
            classes[-1].append(bi)
            res = rec(cover | masks[bi], left - 1)
            if res is not False:
                return res
            classes[-1].pop()
            used[bi] = False
        return False

    res = rec(full, len(masks))
    if res is None:
        return ResolutionSearch(Status.BUDGET_EXCEEDED, None, nodes)
    if not res:
        return ResolutionSearch(Status.NOT_FOUND, None, nodes)
    out = tuple(tuple(d.blocks[i] for i in cls) for cls in classes)
    return ResolutionSearch(Status.FOUND, Resolution(d, out), nodes)


def _coloring_from_groups(v: int, groups: Sequence[Sequence[tuple[int, ...]]]) -> Coloring:
    colors = np.full(math.comb(v, 3), -1, dtype=np.int32)
    rank = ranker(3, v)
    for i, grp in enumerate(groups):
        for b in grp:
            for t in itertools.combinations(b, 3):
                rk = rank(t)
                if colors[rk] >= 0:
                    raise ValidationError(f"triple {t} lies in two blocks")
                colors[rk] = i
    if (colors < 0).any():
        t = colex_subsets(v, 3)[int(np.flatnonzero(colors < 0)[0])]
        raise ValidationError(f"triple {t} lies in no block")
    return Coloring(3, v, len(groups), colors)


def coloring_from_resolution(res: Resolution) -> Coloring:
    """Color each triple by the parallel class of the unique block containing it."""
    if res.design.block_size != 4:
        raise ValidationError("needs a design with blocks of size 4")
    return _coloring_from_groups(res.design.v, res.classes)


def pair_partition_coloring(d: Design, budget: int | None = None) -> PairPartition:
    """Group the blocks of a 3-(v,4,1) design into ceil(b/2) groups of disjoint blocks.

    Each group becomes one color; two disjoint K_4^3's contain no bow.
    """
    if d.block_size != 4 or not is_t_design(d, 3, 1):
        raise ValidationError("needs a 3-(v,4,1) design")
    b = len(d.blocks)
    masks = [sum(1 << x for x in blk) for blk in d.blocks]
    mate = [-2] * b  # -2 unmatched, -1 single, else partner
    nodes = 0

    def rec(singles: int) -> bool | None:
        nonlocal nodes
        try:
            i = mate.index(-2)
        except ValueError:
            return True
        for j in range(i + 1, b):
            if mate[j] != -2 or masks[i] & masks[j]:
                continue
            nodes += 1
            if budget is not None and nodes > budget:
                return None
            mate[i], mate[j] = j, i
            res = rec(singles)
            if res is not False:
                return res
            mate[i] = mate[j] = -2
        if singles:
            nodes += 1
            mate[i] = -1
            res = rec(singles - 1)
            if res is not False:
                return res
            mate[i] = -2
        return False

    res = rec(b % 2)
    if res is None:
        return PairPartition(Status.BUDGET_EXCEEDED, None, (), nodes)
    if not res:
        return PairPartition(Status.NOT_FOUND, None, (), nodes)
    groups = tuple((d.blocks[i],) if mate[i] == -1 else (d.blocks[i], d.blocks[mate[i]])
                   for i in range(b) if mate[i] == -1 or mate[i] > i)
    return PairPartition(Status.FOUND, _coloring_from_groups(d.v, groups), groups, nodes)
