"""Exact small-case search: good colorings, Turán numbers, Ramsey intervals."""

from __future__ import annotations

import math
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .core import (
    Coloring,
    Pattern,
    Status,
    UniformHypergraph,
    ValidationError,
    contains_copy,
    copies_in_complete,
    find_mono_copy,
)


@dataclass(frozen=True)
class SearchOutcome:
    status: Status
    certificate: Coloring | None
    nodes_explored: int


@dataclass(frozen=True)
class TuranResult:
    value: int
    exact: bool
    witness: UniformHypergraph
    nodes: int


@dataclass(frozen=True)
class Bound:
    value: int
    source: str


@dataclass(frozen=True)
class RamseyBounds:
    pattern: str
    k: int
    lower: Bound
    upper: Bound | None
    outcomes: tuple[tuple[int, Status], ...] = ()

    def __post_init__(self) -> None:
        if self.upper is not None and self.lower.value > self.upper.value:
            raise AssertionError(f"inconsistent bounds {self.lower} > {self.upper}")

    def interval(self) -> str:
        hi = "?" if self.upper is None else str(self.upper.value)
        return f"[{self.lower.value},{hi}]"


@dataclass(frozen=True)
class Budgets:
    search: int | None = 10**8
    turan: int | None = 10**7
    n_cap: int = 10


class _OutOfBudget(Exception):
    pass


@lru_cache(maxsize=64)
def _copy_index(p: Pattern, n: int) -> tuple[tuple[tuple[int, ...], ...], tuple[tuple[int, ...], ...]]:
    copies = tuple(copies_in_complete(p, n))
    through: list[list[int]] = [[] for _ in range(math.comb(n, p.r))]
    for qi, q in enumerate(copies):
        for e in q:
            through[e].append(qi)
    return copies, tuple(tuple(x) for x in through)


# ---------------------------------------------------------------------------
# good colorings


class _ColoringSolver:
    """Forward-checking backtracker over edge colors.

    A color is forbidden on an edge once every other edge of some copy through
    it carries that color.  New colors are introduced in increasing order.
    """

    def __init__(self, p: Pattern, k: int, n: int, budget: int | None,
                 capacity: int | None, order: str):
        self.p, self.k, self.n = p, k, n
        self.E = math.comb(n, p.r)
        self.copies, self.through = _copy_index(p, n)
        self.budget = budget
        self.capacity = capacity
        self.mrv = order == "mrv"
        if order not in ("mrv", "colex"):
            raise ValidationError(f"unknown edge order {order!r}")
        self.col = [-1] * self.E
        self.cnt = [0] * (len(self.copies) * k)
        self.forb = [0] * (self.E * k)
        self.dom = [k] * self.E
        self.size = [0] * k
        self.used = 0
        self.assigned = 0
        self.nodes = 0
        self.trail: list[list[int]] = []

    def assign(self, e: int, c: int) -> bool:
        """Color e with c; return False on a domain wipeout (state still updated)."""
        k, col, cnt, forb, dom = self.k, self.col, self.cnt, self.forb, self.dom
        col[e] = c
        self.size[c] += 1
        self.assigned += 1
        newly = c == self.used
        if newly:
            self.used += 1
        hit: list[int] = [newly]
        ok = True
        copies = self.copies
        for q in self.through[e]:
            i = q * k + c
            cnt[i] += 1
            edges = copies[q]
            if cnt[i] == len(edges) - 1:
                for f in edges:
                    if col[f] != c:
                        break
                if col[f] < 0:
                    j = f * k + c
                    forb[j] += 1
                    if forb[j] == 1:
                        dom[f] -= 1
                        if dom[f] == 0:
                            ok = False
                    hit.append(f)
        self.trail.append(hit)
        return ok

    def undo(self, e: int, c: int) -> None:
        k, cnt, forb, dom = self.k, self.cnt, self.forb, self.dom
        hit = self.trail.pop()
        for f in hit[1:]:
            j = f * k + c
            forb[j] -= 1
            if forb[j] == 0:
                dom[f] += 1
        for q in self.through[e]:
            cnt[q * k + c] -= 1
        if hit[0]:
            self.used -= 1
        self.col[e] = -1
        self.size[c] -= 1
        self.assigned -= 1

    def pick(self) -> int:
        col = self.col
        if not self.mrv:
            return col.index(-1)
        dom = self.dom
        best, best_d = -1, self.k + 1
        for f in range(self.E):
            if col[f] < 0 and dom[f] < best_d:
                best, best_d = f, dom[f]
                if best_d <= 1:
                    break
        return best

    def room_ok(self) -> bool:
        cap = self.capacity
        if cap is None:
            return True
        return self.E - self.assigned <= sum(cap - s for s in self.size)

    def values(self, f: int) -> list[int]:
        k, forb, cap, size = self.k, self.forb, self.capacity, self.size
        base = f * k
        return [c for c in range(min(self.used + 1, k))
                if not forb[base + c] and (cap is None or size[c] < cap)]

    def rec(self) -> bool:
        if self.assigned == self.E:
            return True
        f = self.pick()
        for c in self.values(f):
            self.nodes += 1
            if self.budget is not None and self.nodes > self.budget:
                raise _OutOfBudget
            if self.assign(f, c) and self.room_ok() and self.rec():
                return True
            self.undo(f, c)
        return False

    def frontier(self, depth: int, prefix: list[tuple[int, int]], out: list) -> None:
        """Collect assignment prefixes at the given depth (in DFS order)."""
        if depth == 0 or self.assigned == self.E:
            out.append(list(prefix))
            return
        f = self.pick()
        for c in self.values(f):
            self.nodes += 1
            if self.assign(f, c) and self.room_ok():
                prefix.append((f, c))
                self.frontier(depth - 1, prefix, out)
                prefix.pop()
            self.undo(f, c)

    def certificate(self) -> Coloring:
        return Coloring(self.p.r, self.n, self.k, np.array(self.col, dtype=np.int32),
                        {"search": "exists_good_coloring", "pattern": self.p.name})


def _solve_prefix(args) -> tuple[bool | None, list[int] | None, int]:
    p, k, n, budget, capacity, order, prefix = args
    s = _ColoringSolver(p, k, n, budget, capacity, order)
    for f, c in prefix:
        s.assign(f, c)
    try:
        found = s.rec()
    except _OutOfBudget:
        return None, None, s.nodes
    return found, (list(s.col) if found else None), s.nodes


def exists_good_coloring(p: Pattern, k: int, n: int, budget: int | None = None, *,
                         capacity: int | None = None, order: str = "mrv",
                         threads: int = 1) -> SearchOutcome:
    """Decide whether K_n^r has a k-coloring without a monochromatic ``p``.

    ``capacity`` is an optional upper bound on ex(n, p) used for counting
    cutoffs.  ``order`` is "mrv" (fewest remaining colors, colex tie-break) or
    "colex".  Budgets count color assignments.
    """
    if k < 1 or n < p.r:
        raise ValidationError("need k >= 1 and n >= r")
    solver = _ColoringSolver(p, k, n, budget, capacity, order)
    if threads <= 1:
        try:
            found = solver.rec()
        except _OutOfBudget:
            return SearchOutcome(Status.BUDGET_EXCEEDED, None, solver.nodes)
        if not found:
            return SearchOutcome(Status.NOT_FOUND, None, solver.nodes)
        cert = solver.certificate()
    else:
        prefixes: list[list[tuple[int, int]]] = []
        solver.frontier(4, [], prefixes)
        nodes = solver.nodes
        cert = None
        exceeded = False
        jobs = [(p, k, n, budget, capacity, order, pre) for pre in prefixes]
        with ProcessPoolExecutor(max_workers=threads) as pool:
            # results come back in prefix order: the first hit is the DFS-first witness
            for found, col, used_nodes in pool.map(_solve_prefix, jobs):
                nodes += used_nodes
                if found is None:
                    exceeded = True
                elif found and cert is None:
                    cert = Coloring(p.r, n, k, np.array(col, dtype=np.int32),
                                    {"search": "exists_good_coloring", "pattern": p.name})
        if cert is None:
            status = Status.BUDGET_EXCEEDED if exceeded else Status.NOT_FOUND
            return SearchOutcome(status, None, nodes)
        solver.nodes = nodes
    if find_mono_copy(cert, p) is not None:
        raise AssertionError("search produced a coloring with a monochromatic copy")
    return SearchOutcome(Status.FOUND, cert, solver.nodes)


# ---------------------------------------------------------------------------
# Turán numbers


def _max_clique(adj: list[int], cand: int, budget: int | None) -> tuple[list[int], int, bool]:
    """Maximum clique inside the vertex bitset ``cand`` (greedy-coloring bound)."""
    best: list[int] = []
    stack: list[int] = []
    nodes = 0

    def expand(P: int) -> None:
        nonlocal best, nodes
        order: list[int] = []
        bounds: list[int] = []
        U, color = P, 0
        while U:
            color += 1
            Q = U
            while Q:
                low = Q & -Q
                v = low.bit_length() - 1
                Q &= ~adj[v] & ~low
                U &= ~low
                order.append(v)
                bounds.append(color)
        for i in range(len(order) - 1, -1, -1):
            if len(stack) + bounds[i] <= len(best):
                return
            nodes += 1
            if budget is not None and nodes > budget:
                raise _OutOfBudget
            v = order[i]
            stack.append(v)
            nxt = P & adj[v]
            if nxt:
                expand(nxt)
            elif len(stack) > len(best):
                best = list(stack)
            stack.pop()
            P &= ~(1 << v)

    try:
        expand(cand)
    except _OutOfBudget:
        return best, nodes, False
    return best, nodes, True


def _turan_pairwise(E: int, copies, budget: int | None) -> tuple[list[int], int, bool]:
    # every copy is a pair of edges: independent sets of the conflict graph
    conflict = [0] * E
    for a, b in copies:
        conflict[a] |= 1 << b
        conflict[b] |= 1 << a
    full = (1 << E) - 1
    compat = [full & ~conflict[e] & ~(1 << e) for e in range(E)]
    # edge 0 may be assumed present: Sym(n) is edge-transitive and maps copies to copies
    rest, nodes, exact = _max_clique(compat, compat[0], budget)
    return [0] + rest, nodes + 1, exact


def _turan_general(E: int, copies, through, budget: int | None) -> tuple[list[int], int, bool]:
    qlen = [len(q) for q in copies]
    degree = [len(t) for t in through]
    order = sorted(range(E), key=lambda e: (-degree[e], e))
    order.remove(0)
    chosen = [False] * E
    cnt = [0] * len(copies)
    forb = [0] * E
    best: list[int] = []
    nodes = 0
    taken = []

    def add(e: int) -> list[int]:
        chosen[e] = True
        taken.append(e)
        hit = []
        for q in through[e]:
            cnt[q] += 1
            if cnt[q] == qlen[q] - 1:
                for f in copies[q]:
                    if not chosen[f]:
                        forb[f] += 1
                        hit.append(f)
                        break
        return hit

    def remove(e: int, hit: list[int]) -> None:
        chosen[e] = False
        taken.pop()
        for q in through[e]:
            cnt[q] -= 1
        for f in hit:
            forb[f] -= 1

    def rec(i: int, avail: int) -> None:
        # avail: undecided edges at positions >= i that are not forbidden
        nonlocal best, nodes
        if len(taken) + avail <= len(best):
            return
        while i < len(order) and forb[order[i]]:
            i += 1
        if i == len(order):
            if len(taken) > len(best):
                best = list(taken)
            return
        e = order[i]
        nodes += 1
        if budget is not None and nodes > budget:
            raise _OutOfBudget
        hit = add(e)
        rec(i + 1, sum(1 for f in order[i + 1:] if not forb[f]))
        remove(e, hit)
        rec(i + 1, avail - 1)

    hit0 = add(0)
    try:
        rec(0, sum(1 for f in order if not forb[f]))
    except _OutOfBudget:
        return best, nodes, False
    finally:
        remove(0, hit0)
    return best, nodes, True


@lru_cache(maxsize=256)
def turan_number(p: Pattern, n: int, budget: int | None = None) -> TuranResult:
    """ex(n, p) by branch and bound; ``exact`` is False if the budget ran out."""
    r = p.r
    E = math.comb(n, r)
    if n < p.v or E == 0:
        return TuranResult(E, True, UniformHypergraph.complete(n, r), 0)
    copies, through = _copy_index(p, n)
    if any(len(q) == 1 for q in copies):
        return TuranResult(0, True, UniformHypergraph(r, n, frozenset()), 0)
    if all(len(q) == 2 for q in copies):
        best, nodes, exact = _turan_pairwise(E, copies, budget)
    else:
        best, nodes, exact = _turan_general(E, copies, through, budget)
    witness = UniformHypergraph(r, n, frozenset(best))
    if contains_copy(witness, p) is not None:
        raise AssertionError("Turán witness contains the pattern")
    return TuranResult(len(best), exact, witness, nodes)


def ramsey_upper_from_turan(p: Pattern, k: int, n_cap: int,
                            budget: int | None = None) -> int | None:
    """Least n <= n_cap with ceil(C(n, r) / ex(n, p)) > k, which gives r_k(p) <= n."""
    for n in range(p.r, n_cap + 1):
        t = turan_number(p, n, budget)
        if not t.exact:
            continue
        if t.value == 0 or -(-math.comb(n, p.r) // t.value) > k:
            return n
    return None


# ---------------------------------------------------------------------------
# orchestration


def _lower_candidates(p: Pattern, k: int) -> list[tuple[int, str, Coloring]]:
    from . import constructions as cons

    out = []
    for name, info in cons.CERTIFICATES.items():
        if info.pattern == p.name and info.k <= k:
            out.append((info.n, f"certificate {name}", cons.certificate(name)))
    if p.name == "kite" and k >= 3:
        out.append((k, f"sum_mod({k},{k})", cons.sum_mod(k, k)))
    fa2 = re.fullmatch(r"F\((\d+),2\)", p.name)
    if fa2:
        a = int(fa2.group(1))
        if k * (a - 1) >= 3:
            out.append((k * (a - 1), f"sum_mod({k * (a - 1)},{k})", cons.sum_mod(k * (a - 1), k)))
    if p.name.startswith("matching2") and p.r >= 2:
        c = cons.kneser_matching_coloring(p.r, k)
        out.append((c.n, f"kneser_matching_coloring({p.r},{k})", c))
    return out


def ramsey_bounds(p: Pattern, k: int, budgets: Budgets = Budgets()) -> RamseyBounds:
    """Tightest interval for r_k(p) from certificates, constructions, Turán counting and search."""
    lower = Bound(p.v, "trivial: K_{v-1} holds no copy")
    for n, source, c in _lower_candidates(p, k):
        if n + 1 > lower.value and c.k <= k and find_mono_copy(c, p) is None:
            lower = Bound(n + 1, source)
    upper = None
    outcomes = []
    # Below lower.value the pigeonhole bound cannot fire, so both upper-bound
    # routes are tried together, one host size at a time.
    n = lower.value
    while n <= budgets.n_cap:
        t = turan_number(p, n, budgets.turan)
        if t.exact and (t.value == 0 or -(-math.comb(n, p.r) // t.value) > k):
            upper = Bound(n, "turan-pigeonhole")
            break
        out = exists_good_coloring(p, k, n, budgets.search, capacity=t.value if t.exact else None)
        outcomes.append((n, out.status))
        if out.status is Status.FOUND:
            lower = Bound(n + 1, f"search found a good coloring of K_{n}")
            n += 1
        elif out.status is Status.NOT_FOUND:
            upper = Bound(n, f"search exhausted K_{n} ({out.nodes_explored} nodes)")
            break
        else:
            break
    return RamseyBounds(p.name, k, lower, upper, tuple(outcomes))
