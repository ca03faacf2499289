"""Uniform hypergraphs, colorings and monochromatic-copy detection.

Vertices are 0-based.  An r-subset of ``range(n)`` is a strictly increasing
tuple and is addressed by its colexicographic rank, so a coloring of
``K_n^r`` is a flat array of length ``C(n, r)``.

Pattern catalog (vertex labels are a convention of this package):

    bow         {012, 034}
    kite        {012, 013}
    matching2   {0..r-1, r..2r-1}                 (uniformity r, default 3)
    F5          {012, 013, 234}
    K43e        {012, 013, 023}
    clique      all r-subsets of range(s)         (params s, r; s > r)
    C33         {012, 234, 045}
    windmill    {012, 013, 124, 025}              (center edge 012)
    tightpath   {012, 123, 234}
    pasch       {012, 134, 245, 035}              (a..f -> 0..5)
    F           A = 0..a-1, B = a..a+b-1; edges {x, y, z}, x in A, y < z in B
    Hr          r-2 singleton parts, then parts of size s and t; all transversals
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Callable, Iterable, Iterator, Sequence

import numpy as np

UNASSIGNED = -1

# tower() refuses to materialize integers with more bits than this
TOWER_MAX_BITS = 1 << 24


class ValidationError(ValueError):
    """Raised when an input violates a documented precondition."""


class Status(str, Enum):
    """Outcome of a budgeted exhaustive search."""

    FOUND = "found"
    NOT_FOUND = "not-found"
    BUDGET_EXCEEDED = "budget-exceeded"


# ---------------------------------------------------------------------------
# colex indexing


@lru_cache(maxsize=None)
def _binom_row(i: int, upto: int) -> tuple[int, ...]:
    return tuple(math.comb(x, i) for x in range(upto))


def colex_rank(s: Sequence[int], n: int | None = None) -> int:
    """Colex rank of the strictly increasing tuple ``s``.

    ``n`` is optional and only used for range validation.
    """
    prev = -1
    rank = 0
    for i, x in enumerate(s, start=1):
        if not isinstance(x, (int, np.integer)) or x <= prev:
            raise ValidationError(f"subset {tuple(s)} is not strictly increasing")
        if x < 0 or (n is not None and x >= n):
            raise ValidationError(f"subset {tuple(s)} has a vertex outside [0, {n})")
        rank += math.comb(int(x), i)
        prev = x
    if not s:
        raise ValidationError("empty subset")
    return rank


def colex_unrank(rank: int, r: int) -> tuple[int, ...]:
    if rank < 0:
        raise ValidationError("rank must be nonnegative")
    if r < 1:
        raise ValidationError("r must be positive")
    out = [0] * r
    for i in range(r, 0, -1):
        # largest x with C(x, i) <= rank
        x = i - 1
        while math.comb(x + 1, i) <= rank:
            x += 1
        out[i - 1] = x
        rank -= math.comb(x, i)
    return tuple(out)


@lru_cache(maxsize=256)
def colex_subsets(n: int, r: int) -> tuple[tuple[int, ...], ...]:
    """All r-subsets of range(n), listed in colex order (index == rank)."""
    if r == 0:
        return ((),)
    if n < r:
        return ()
    out: list[tuple[int, ...]] = []
    for top in range(r - 1, n):
        out.extend(s + (top,) for s in colex_subsets(top, r - 1))
    return tuple(out)


def ranker(r: int, n: int) -> Callable[[Sequence[int]], int]:
    """Fast rank function for already-sorted subsets; no validation."""
    if r == 2:
        return lambda s: s[0] + s[1] * (s[1] - 1) // 2
    if r == 3:
        return lambda s: s[0] + s[1] * (s[1] - 1) // 2 + s[2] * (s[2] - 1) * (s[2] - 2) // 6
    rows = [_binom_row(i, n + 1) for i in range(1, r + 1)]
    return lambda s: sum(row[x] for row, x in zip(rows, s))


# ---------------------------------------------------------------------------
# hypergraphs and patterns


@dataclass(frozen=True)
class UniformHypergraph:
    r: int
    n: int
    edges: frozenset[int]

    def __post_init__(self) -> None:
        if self.r < 1:
            raise ValidationError("uniformity must be positive")
        total = math.comb(self.n, self.r)
        if any(not 0 <= e < total for e in self.edges):
            raise ValidationError("edge rank outside [0, C(n, r))")

    @classmethod
    def from_edges(cls, r: int, n: int, edges: Iterable[Sequence[int]]) -> "UniformHypergraph":
        ranks = set()
        for e in edges:
            e = tuple(e)
            if len(e) != r:
                raise ValidationError(f"edge {e} does not have {r} vertices")
            ranks.add(colex_rank(e, n))
        return cls(r, n, frozenset(ranks))

    @classmethod
    def complete(cls, n: int, r: int) -> "UniformHypergraph":
        return cls(r, n, frozenset(range(math.comb(n, r))))

    @cached_property
    def edge_list(self) -> tuple[tuple[int, ...], ...]:
        """Edges as vertex tuples, in colex order."""
        return tuple(colex_unrank(e, self.r) for e in sorted(self.edges))

    def __len__(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return sum(v in e for e in self.edge_list)

    def as_lookup(self) -> list[int]:
        """Color-style lookup: 0 on edges, UNASSIGNED elsewhere."""
        out = [UNASSIGNED] * math.comb(self.n, self.r)
        for e in self.edges:
            out[e] = 0
        return out


@dataclass(frozen=True)
class Pattern:
    name: str
    hypergraph: UniformHypergraph
    aut_order: int

    @property
    def r(self) -> int:
        return self.hypergraph.r

    @property
    def v(self) -> int:
        return self.hypergraph.n

    @property
    def edges(self) -> tuple[tuple[int, ...], ...]:
        return self.hypergraph.edge_list

    @cached_property
    def twin_classes(self) -> tuple[tuple[int, ...], ...]:
        """Classes of vertices whose pairwise transposition is an automorphism."""
        edges = set(self.edges)

        def swaps(i: int, j: int) -> bool:
            m = {i: j, j: i}
            return all(tuple(sorted(m.get(x, x) for x in e)) in edges for e in edges)

        classes: list[list[int]] = []
        for x in range(self.v):
            for cls in classes:
                if swaps(cls[0], x):
                    cls.append(x)
                    break
            else:
                classes.append([x])
        return tuple(tuple(c) for c in classes)

    @cached_property
    def plan(self) -> "_EmbedPlan":
        return _EmbedPlan.build(self)


def _pattern(name: str, r: int, v: int, edges: Iterable[Sequence[int]], aut: int) -> Pattern:
    return Pattern(name, UniformHypergraph.from_edges(r, v, edges), aut)


def pattern_catalog(name: str, *params: int) -> Pattern:
    """Build a catalog pattern; see the module docstring for labelings."""
    key = name.strip()
    m = re.fullmatch(r"(\w+)\s*\(([\d,\s]*)\)", key)
    if m:
        key = m.group(1)
        params = tuple(int(x) for x in m.group(2).split(",") if x.strip()) + tuple(params)
    low = key.lower()

    def want(count: int) -> None:
        if len(params) != count:
            raise ValidationError(f"{key} expects {count} parameter(s), got {len(params)}")

    if low == "bow":
        want(0)
        return _pattern("bow", 3, 5, [(0, 1, 2), (0, 3, 4)], 8)
    if low == "kite":
        want(0)
        return _pattern("kite", 3, 4, [(0, 1, 2), (0, 1, 3)], 4)
    if low == "matching2":
        r = params[0] if params else 3
        if len(params) > 1 or r < 1:
            raise ValidationError("matching2 takes an optional uniformity r >= 1")
        aut = 2 * math.factorial(r) ** 2
        return _pattern("matching2" if r == 3 else f"matching2({r})", r, 2 * r,
                        [tuple(range(r)), tuple(range(r, 2 * r))], aut)
    if low == "f5":
        want(0)
        return _pattern("F5", 3, 5, [(0, 1, 2), (0, 1, 3), (2, 3, 4)], 4)
    if low == "k43e":
        want(0)
        return _pattern("K43e", 3, 4, [(0, 1, 2), (0, 1, 3), (0, 2, 3)], 6)
    if low == "clique":
        want(2)
        s, r = params
        if r < 1 or s <= r:
            raise ValidationError("clique(s, r) needs s > r >= 1")
        return _pattern(f"clique({s},{r})", r, s, itertools.combinations(range(s), r),
                        math.factorial(s))
    if low == "c33":
        want(0)
        return _pattern("C33", 3, 6, [(0, 1, 2), (2, 3, 4), (0, 4, 5)], 6)
    if low == "windmill":
        want(0)
        return _pattern("windmill", 3, 6, [(0, 1, 2), (0, 1, 3), (1, 2, 4), (0, 2, 5)], 6)
    if low == "tightpath":
        want(0)
        return _pattern("tightpath", 3, 5, [(0, 1, 2), (1, 2, 3), (2, 3, 4)], 2)
    if low == "pasch":
        want(0)
        return _pattern("pasch", 3, 6, [(0, 1, 2), (1, 3, 4), (2, 4, 5), (0, 3, 5)], 24)
    if key == "F":
        want(2)
        a, b = params
        if a < 1 or b < 2:
            raise ValidationError("F(a, b) needs a >= 1 and b >= 2")
        edges = [(x, y, z) for x in range(a) for y, z in itertools.combinations(range(a, a + b), 2)]
        aut = 6 if (a, b) == (1, 2) else math.factorial(a) * math.factorial(b)
        return _pattern(f"F({a},{b})", 3, a + b, edges, aut)
    if low == "hr":
        want(3)
        r, s, t = params
        if r < 2 or s < 2 or t < 2:
            raise ValidationError("Hr(r, s, t) needs r, s, t >= 2")
        parts = [[i] for i in range(r - 2)]
        parts.append(list(range(r - 2, r - 2 + s)))
        parts.append(list(range(r - 2 + s, r - 2 + s + t)))
        edges = [tuple(sorted(e)) for e in itertools.product(*parts)]
        aut = math.factorial(r - 2) * math.factorial(s) * math.factorial(t) * (2 if s == t else 1)
        return _pattern(f"Hr({r},{s},{t})", r, r - 2 + s + t, edges, aut)
    raise ValidationError(f"unknown pattern {name!r}")


PATTERN_NAMES = ("bow", "kite", "matching2", "F5", "K43e", "clique(s,r)", "C33", "windmill",
                 "tightpath", "pasch", "F(a,b)", "Hr(r,s,t)")


# ---------------------------------------------------------------------------
# colorings


@dataclass(frozen=True, eq=False)
class Coloring:
    """Assignment of colors in [0, k) to the r-subsets of range(n), by colex rank."""

    r: int
    n: int
    k: int
    colors: np.ndarray
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self) -> None:
        arr = np.asarray(self.colors, dtype=np.int32)
        if arr.shape != (math.comb(self.n, self.r),):
            raise ValidationError(f"expected {math.comb(self.n, self.r)} entries, got {arr.shape}")
        if self.k < 1:
            raise ValidationError("k must be positive")
        if arr.size and (arr.max() >= self.k or ((arr < 0) & (arr != UNASSIGNED)).any()):
            raise ValidationError("color outside [0, k)")
        arr = arr.copy()
        arr.flags.writeable = False
        object.__setattr__(self, "colors", arr)

    @classmethod
    def from_function(cls, r: int, n: int, k: int, fn: Callable[[tuple[int, ...]], int],
                      **meta) -> "Coloring":
        return cls(r, n, k, np.fromiter((fn(s) for s in colex_subsets(n, r)), dtype=np.int32,
                                        count=math.comb(n, r)), meta)

    @classmethod
    def from_classes(cls, r: int, n: int, classes: Sequence[Iterable[Sequence[int]]]) -> "Coloring":
        """Color i = members of classes[i]; unlisted edges stay unassigned."""
        arr = np.full(math.comb(n, r), UNASSIGNED, dtype=np.int32)
        for i, members in enumerate(classes):
            for e in members:
                rk = colex_rank(tuple(e), n)
                if arr[rk] != UNASSIGNED:
                    raise ValidationError(f"edge {tuple(e)} listed in two classes")
                arr[rk] = i
        return cls(r, n, len(classes), arr)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Coloring):
            return NotImplemented
        return (self.r, self.n, self.k) == (other.r, other.n, other.k) and bool(
            np.array_equal(self.colors, other.colors))

    def __hash__(self) -> int:
        return hash((self.r, self.n, self.k, self.colors.tobytes()))

    @cached_property
    def lookup(self) -> list[int]:
        return self.colors.tolist()

    @property
    def is_total(self) -> bool:
        return bool((self.colors != UNASSIGNED).all())

    def color_of(self, s: Sequence[int]) -> int:
        return int(self.colors[colex_rank(tuple(s), self.n)])

    def color_class(self, c: int) -> UniformHypergraph:
        return UniformHypergraph(self.r, self.n, frozenset(np.flatnonzero(self.colors == c).tolist()))

    def class_sizes(self) -> list[int]:
        assigned = self.colors[self.colors != UNASSIGNED]
        return np.bincount(assigned, minlength=self.k).tolist()

    def used_colors(self) -> set[int]:
        return set(np.unique(self.colors[self.colors != UNASSIGNED]).tolist())


@dataclass(frozen=True)
class Embedding:
    map: tuple[int, ...]
    color: int | None = None

    def image_edges(self, p: Pattern) -> list[tuple[int, ...]]:
        return [tuple(sorted(self.map[x] for x in e)) for e in p.edges]


# ---------------------------------------------------------------------------
# embedding engine


@dataclass(frozen=True)
class _EmbedPlan:
    order: tuple[int, ...]
    # per step: pattern edges completed at that step, as positions into `order`
    steps: tuple[tuple[tuple[int, ...], ...], ...]
    # per step: earlier step holding a twin of this vertex (images must increase), or -1
    twin_prev: tuple[int, ...]
    twin_factor: int

    @classmethod
    def build(cls, p: Pattern) -> "_EmbedPlan":
        edges = p.edges
        deg = [sum(x in e for e in edges) for x in range(p.v)]
        order: list[int] = []
        placed: set[int] = set()
        while len(order) < p.v:
            def score(x: int) -> tuple[int, int, int, int]:
                done = sum(1 for e in edges if x in e and all(y in placed or y == x for y in e))
                touch = sum(1 for e in edges if x in e and any(y in placed for y in e))
                return (done, touch, deg[x], -x)
            x = max((x for x in range(p.v) if x not in placed), key=score)
            order.append(x)
            placed.add(x)
        pos = {x: i for i, x in enumerate(order)}
        steps = []
        for t in range(p.v):
            steps.append(tuple(tuple(sorted(pos[y] for y in e)) for e in edges
                               if max(pos[y] for y in e) == t))
        twin_of = {}
        for cls_ in p.twin_classes:
            for x in cls_:
                twin_of[x] = cls_
        twin_prev = []
        for t, x in enumerate(order):
            earlier = [s for s in range(t) if order[s] in twin_of[x]]
            twin_prev.append(earlier[-1] if earlier else -1)
        factor = math.prod(math.factorial(len(c)) for c in p.twin_classes)
        return cls(tuple(order), tuple(steps), tuple(twin_prev), factor)


def _embed(p: Pattern, n: int, lookup: Sequence[int], rank: Callable[[Sequence[int]], int],
           colors: Sequence[int] | None = None) -> Iterator[tuple[tuple[int, ...], int]]:
    """Yield (map, color) for each monochromatic embedding, twin-reduced.

    ``lookup[rank]`` is a color or UNASSIGNED (absent).  ``colors`` restricts the
    common color.  Within each twin class images increase, so each copy is
    produced ``aut_order / twin_factor`` times.
    """
    plan = p.plan
    v = p.v
    steps, twin_prev, order = plan.steps, plan.twin_prev, plan.order
    img = [0] * v
    used = [False] * n
    allowed = None if colors is None else set(colors)

    def rec(t: int, color: int) -> Iterator[tuple[tuple[int, ...], int]]:
        if t == v:
            out = [0] * v
            for i, x in enumerate(order):
                out[x] = img[i]
            yield tuple(out), color
            return
        lo = img[twin_prev[t]] + 1 if twin_prev[t] >= 0 else 0
        step = steps[t]
        for x in range(lo, n):
            if used[x]:
                continue
            img[t] = x
            c = color
            ok = True
            for e in step:
                col = lookup[rank(sorted([img[i] for i in e]))]
                if col < 0 or (c >= 0 and col != c) or (allowed is not None and col not in allowed):
                    ok = False
                    break
                c = col
            if ok:
                used[x] = True
                yield from rec(t + 1, c)
                used[x] = False

    yield from rec(0, -1)


def _check_compatible(c: Coloring, p: Pattern) -> None:
    if p.r != c.r:
        raise ValidationError(f"pattern is {p.r}-uniform, coloring is {c.r}-uniform")


def find_mono_copy(c: Coloring, p: Pattern, *, allow_partial: bool = False) -> Embedding | None:
    """A monochromatic copy of ``p`` under ``c``, or None.

    With ``allow_partial`` unassigned edges are treated as absent.
    """
    _check_compatible(c, p)
    if not allow_partial and not c.is_total:
        raise ValidationError("find_mono_copy needs a total coloring")
    if p.v > c.n:
        return None
    for m, color in _embed(p, c.n, c.lookup, ranker(c.r, c.n)):
        emb = Embedding(m, color)
        assert verify_embedding(c, p, emb)
        return emb
    return None


def count_mono_copies(c: Coloring, p: Pattern) -> int:
    """Number of monochromatic copies, i.e. embeddings modulo automorphisms of ``p``."""
    _check_compatible(c, p)
    if not c.is_total:
        raise ValidationError("count_mono_copies needs a total coloring")
    if p.v > c.n:
        return 0
    hits = sum(1 for _ in _embed(p, c.n, c.lookup, ranker(c.r, c.n)))
    total, rem = divmod(hits * p.plan.twin_factor, p.aut_order)
    assert rem == 0, "automorphism order inconsistent with embedding count"
    return total


def verify_embedding(c: Coloring, p: Pattern, emb: Embedding) -> bool:
    """Independent re-check of a monochromatic witness."""
    if len(set(emb.map)) != p.v or any(not 0 <= x < c.n for x in emb.map):
        return False
    seen = {c.color_of(e) for e in emb.image_edges(p)}
    return len(seen) == 1 and UNASSIGNED not in seen and (emb.color is None or seen == {emb.color})


def contains_copy(host: UniformHypergraph, p: Pattern) -> Embedding | None:
    if host.r != p.r:
        raise ValidationError(f"pattern is {p.r}-uniform, host is {host.r}-uniform")
    if p.v > host.n or len(p.hypergraph) > len(host):
        return None
    for m, _ in _embed(p, host.n, host.as_lookup(), ranker(host.r, host.n)):
        emb = Embedding(m, None)
        assert all(colex_rank(e) in host.edges for e in emb.image_edges(p))
        return emb
    return None


def copies_in_complete(p: Pattern, n: int) -> list[tuple[int, ...]]:
    """Distinct copies of ``p`` in K_n^r, each as a sorted tuple of edge ranks."""
    if p.v > n:
        return []
    lookup = [0] * math.comb(n, p.r)
    rank = ranker(p.r, n)
    seen: set[tuple[int, ...]] = set()
    for m, _ in _embed(p, n, lookup, rank):
        seen.add(tuple(sorted(rank(sorted(m[x] for x in e)) for e in p.edges)))
    return sorted(seen)


# ---------------------------------------------------------------------------
# misc


def trace(c: Coloring, v: int) -> Coloring:
    """Pair coloring on the other n-1 vertices (relabeled in order): c'(ij) = c(ijv)."""
    if c.r != 3:
        raise ValidationError("trace is defined for 3-uniform colorings")
    if not 0 <= v < c.n:
        raise ValidationError(f"vertex {v} out of range")
    if not c.is_total:
        raise ValidationError("trace needs a total coloring")
    back = [x for x in range(c.n) if x != v]
    return Coloring.from_function(2, c.n - 1, c.k,
                                  lambda s: c.color_of(sorted((back[s[0]], back[s[1]], v))))


def density(h: UniformHypergraph) -> Fraction:
    total = math.comb(h.n, h.r)
    return Fraction(len(h.edges), total) if total else Fraction(0)


def tower(i: int, x: int) -> int:
    """t_1(x) = x, t_{i+1}(x) = 2**t_i(x).

    Raises OverflowError instead of building an integer wider than TOWER_MAX_BITS.
    """
    if i < 1:
        raise ValidationError("tower height must be >= 1")
    if x < 0:
        raise ValidationError("tower argument must be nonnegative")
    val = x
    for _ in range(i - 1):
        if val > TOWER_MAX_BITS:
            raise OverflowError(f"tower({i}, {x}) exceeds {TOWER_MAX_BITS} bits")
        val = 1 << val
    return val
