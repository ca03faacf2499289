"""Explicit colorings whose defining property can be re-checked with ``core``.

Vertex conventions: constructions stated over ``Z_n`` use 0..n-1 directly;
lists stated over ``{1..7}`` are shifted down by one.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .core import (
    Coloring,
    UniformHypergraph,
    ValidationError,
    ranker,
)

RNG_ALGORITHM = "numpy.PCG64"

# stepping_up refuses hosts with more edges than this
MAX_STEPPING_UP_EDGES = 2_000_000


# ---------------------------------------------------------------------------
# stepping-up


def _first_differing_coordinate(u: int, v: int, bits: int) -> int:
    # coordinate 1 is the most significant of `bits` bits
    return bits - ((u ^ v).bit_length() - 1)


def stepping_up(phi: Coloring, *, max_edges: int = MAX_STEPPING_UP_EDGES) -> Coloring:
    """Lift an r-uniform k-coloring on n vertices to an (r+1)-uniform coloring on 2**n.

    If ``phi`` has no monochromatic K_{r+1}^r, the result has no monochromatic
    K_{r+2}^{r+1}.  Colors: increasing f-sequence -> phi, decreasing -> k + phi,
    first descent at i -> 2k + (i-2), first ascent at i -> 2k + (r-2) + (i-2).
    """
    r, n, k = phi.r, phi.n, phi.k
    if r < 2 or n < r:
        raise ValidationError("stepping_up needs n >= r >= 2")
    if not phi.is_total:
        raise ValidationError("stepping_up needs a total coloring")
    size = 1 << n
    if math.comb(size, r + 1) > max_edges:
        raise ValidationError(f"host K_{size}^{r + 1} exceeds {max_edges} edges")
    base = phi.lookup
    rank = ranker(r, n)

    def color(us: tuple[int, ...]) -> int:
        f = [_first_differing_coordinate(us[i], us[i + 1], n) for i in range(r)]
        if all(f[i] < f[i + 1] for i in range(r - 1)):
            return base[rank([x - 1 for x in f])]
        if all(f[i] > f[i + 1] for i in range(r - 1)):
            return k + base[rank([x - 1 for x in reversed(f)])]
        if f[0] < f[1]:
            i = next(i for i in range(1, r) if f[i - 1] > f[i])  # 1-based peak index
            return 2 * k + (i - 2)
        i = next(i for i in range(1, r) if f[i - 1] < f[i])
        return 2 * k + (r - 2) + (i - 2)

    total = 2 * k + 2 * r - 4
    return Coloring.from_function(r + 1, size, total, color, construction="stepping-up")


# ---------------------------------------------------------------------------
# K_4^3 - e from a triangle-free graph coloring


def k43e_from_graph(phi: Coloring) -> Coloring:
    """4k-coloring of triples with no monochromatic K_4^3 - e.

    Rainbow triple ijk -> (0, phi(jk)); otherwise the two equal pairs form a
    path whose center i, j or k gives type 1, 2 or 3, paired with the color of
    the third pair.  (t, c) is encoded as t*k + c.
    """
    if phi.r != 2:
        raise ValidationError("k43e_from_graph needs a graph coloring")
    if not phi.is_total:
        raise ValidationError("k43e_from_graph needs a total coloring")
    k = phi.k
    col = phi.lookup
    rank = ranker(2, phi.n)

    def color(t: tuple[int, ...]) -> int:
        i, j, l = t
        a, b, c = col[rank((i, j))], col[rank((i, l))], col[rank((j, l))]
        if a == b == c:
            raise ValidationError(f"monochromatic triangle {t} in input coloring")
        if a != b and a != c and b != c:
            return c
        if a == b:
            return k + c
        if a == c:
            return 2 * k + b
        return 3 * k + a

    return Coloring.from_function(3, phi.n, 4 * k, color, construction="k43e")


# ---------------------------------------------------------------------------
# arithmetic colorings


def sum_mod(n: int, m: int) -> Coloring:
    """Color {i, j, l} of Z_n with (i + j + l) mod m."""
    if n < 3 or m < 1:
        raise ValidationError("sum_mod needs n >= 3 and m >= 1")
    return Coloring.from_function(3, n, m, lambda s: sum(s) % m, construction="sum-mod")


def kneser_matching_coloring(r: int, k: int) -> Coloring:
    """k-coloring of the r-sets of k + 2r - 2 points with no two disjoint sets alike.

    Color of S is min(min S, k - 1).
    """
    if r < 2 or k < 1:
        raise ValidationError("kneser_matching_coloring needs r >= 2 and k >= 1")
    n = k + 2 * r - 2
    return Coloring.from_function(r, n, k, lambda s: min(s[0], k - 1), construction="kneser")


# ---------------------------------------------------------------------------
# random covers by copies of an H-free template


@dataclass(frozen=True)
class CoverSpec:
    base: UniformHypergraph
    k: int
    seed: int
    max_retries: int = 10

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValidationError("k must be positive")


def random_cover(spec: CoverSpec) -> Coloring | None:
    """Color K_n^r by k random relabelings of ``spec.base`` (first copy wins).

    Every color class sits inside a relabeled copy of the base, so it inherits
    the base's H-freeness.  Returns None if an edge stays uncovered in every
    attempt.
    """
    base = spec.base
    if not base.edges:
        return None
    r, n = base.r, base.n
    rank = ranker(r, n)
    total = math.comb(n, r)
    edges = base.edge_list
    rng = np.random.Generator(np.random.PCG64(spec.seed))
    for attempt in range(spec.max_retries + 1):
        colors = np.full(total, -1, dtype=np.int32)
        for i in range(spec.k):
            perm = rng.permutation(n).tolist()
            for e in edges:
                rk = rank(sorted(perm[x] for x in e))
                if colors[rk] < 0:
                    colors[rk] = i
        if (colors >= 0).all():
            return Coloring(r, n, spec.k, colors,
                            {"construction": "random-cover", "rng": RNG_ALGORITHM,
                             "seed": spec.seed, "attempt": attempt})
    return None


def balanced_rpartite(n: int, r: int) -> UniformHypergraph:
    """Complete r-partite r-graph with contiguous parts whose sizes differ by at most one."""
    if r < 1 or n < r:
        raise ValidationError("balanced_rpartite needs n >= r >= 1")
    parts = [p.tolist() for p in np.array_split(np.arange(n), r)]
    return UniformHypergraph.from_edges(r, n, itertools.product(*parts))


# ---------------------------------------------------------------------------
# Pasch-free host from a projective plane


def projective_plane(q: int) -> tuple[list[tuple[int, int, int]], list[list[int]]]:
    """Points of PG(2, q) and, per line, the indices of its points (q prime)."""
    if q not in (2, 3):
        raise ValidationError("only q in {2, 3} is supported")

    def normalized(vecs):
        out = []
        for v in vecs:
            lead = next((x for x in v if x), 0)
            if lead == 1:
                out.append(v)
        return out

    pts = normalized(itertools.product(range(q), repeat=3))
    lines = [[i for i, p in enumerate(pts) if sum(a * b for a, b in zip(p, l)) % q == 0]
             for l in pts]
    return pts, lines


def pasch_free_host(q: int) -> UniformHypergraph:
    """Triples {apex_i, point, line} over all apexes and incident point-line pairs.

    Vertices: points 0..N-1, lines N..2N-1, apexes 2N..3N-1 with N = q^2 + q + 1.
    """
    pts, lines = projective_plane(q)
    n = len(pts)
    inc = [(p, n + li) for li, line in enumerate(lines) for p in line]
    return UniformHypergraph.from_edges(
        3, 3 * n, ((p, l, 2 * n + i) for i in range(n) for p, l in inc))


# ---------------------------------------------------------------------------
# certificate catalog


def two_c5_coloring() -> Coloring:
    """2-coloring of K_5: the cycle 0-1-2-3-4-0 gets color 0, its complement color 1."""
    return Coloring.from_function(2, 5, 2, lambda s: 0 if (s[1] - s[0]) in (1, 4) else 1)


def _k43e_k2_n6() -> Coloring:
    c = two_c5_coloring()
    apex = 5

    def color(t: tuple[int, ...]) -> int:
        if apex in t:
            return c.color_of(t[:2])
        rest = tuple(x for x in range(5) if x not in t)
        return 1 - c.color_of(rest)

    return Coloring.from_function(3, 6, 2, color)


def _shifts(block: tuple[int, ...], mod: int) -> list[tuple[int, ...]]:
    # blocks given over 1..mod, returned 0-based
    return [tuple(sorted((x - 1 + i) % mod for x in block)) for i in range(mod)]


def _one_based(blocks: str) -> list[tuple[int, ...]]:
    return [tuple(int(ch) - 1 for ch in b) for b in blocks.split()]


FANO_124 = _shifts((1, 2, 4), 7)
FANO_134 = _shifts((1, 3, 4), 7)


def _kite_k6_n7() -> Coloring:
    classes = [
        FANO_124,
        FANO_134,
        _one_based("135 167 236 257 347 456"),
        _one_based("123 146 247 256 345 367"),
        _one_based("127 136 145 246 567"),
        _one_based("125 147 234 357"),
    ]
    return Coloring.from_classes(3, 7, classes)


def _all_triples(vs: str) -> list[tuple[int, ...]]:
    return list(itertools.combinations(sorted(int(ch) - 1 for ch in vs), 3))


def _minus(triples: list[tuple[int, ...]], drop: str) -> list[tuple[int, ...]]:
    gone = tuple(int(ch) - 1 for ch in drop)
    return [t for t in triples if t != gone]


def _bow_k6_n6() -> Coloring:
    classes = [
        _all_triples("1234"),
        _all_triples("3456"),
        _minus(_all_triples("1456"), "456"),
        _minus(_all_triples("2456"), "456"),
        _minus(_all_triples("1235"), "123"),
        _minus(_all_triples("1236"), "123"),
    ]
    return Coloring.from_classes(3, 6, classes)


def _bow_k3_n5() -> Coloring:
    return Coloring.from_classes(3, 5, [_all_triples("1234"), _one_based("125 135 235"),
                                        _one_based("145 245 345")])


def _nested_stars(n: int, k: int) -> Coloring:
    # triples through vertex 0 get color 0, then through vertex 1 color 1, ..., rest k-1
    return Coloring.from_function(3, n, k, lambda s: min(s[0], k - 1))


def _bow_from_design(v: int, route: str) -> Coloring:
    from . import designs

    d = designs.find_design(3, v, 4, 1).design
    if route == "resolve":
        return designs.coloring_from_resolution(designs.resolve(d).resolution)
    return designs.pair_partition_coloring(d).coloring


@dataclass(frozen=True)
class CertificateInfo:
    pattern: str
    k: int
    n: int
    build: Callable[[], Coloring]
    note: str


CERTIFICATES: dict[str, CertificateInfo] = {
    "bow_k1_n4": CertificateInfo("bow", 1, 4, lambda: _nested_stars(4, 1), "single K_4^3"),
    "bow_k3_n5": CertificateInfo("bow", 3, 5, _bow_k3_n5, "K_4^3 on 0123 plus two stars"),
    "bow_k6_n6": CertificateInfo("bow", 6, 6, _bow_k6_n6, "two K_4^3 and four K_4^3 - e"),
    "bow_k7_n8": CertificateInfo("bow", 7, 8, lambda: _bow_from_design(8, "resolve"),
                                 "parallel classes of a 3-(8,4,1) design"),
    "bow_k15_n10": CertificateInfo("bow", 15, 10, lambda: _bow_from_design(10, "pairs"),
                                   "disjoint block pairs of a 3-(10,4,1) design"),
    "kite_k5_n5": CertificateInfo("kite", 5, 5, lambda: sum_mod(5, 5), "sum mod 5"),
    "kite_k6_n7": CertificateInfo("kite", 6, 7, _kite_k6_n7,
                                  "two Fano planes, two Fano - e, Fano - 2e, Pasch"),
    "k43e_k2_n6": CertificateInfo("K43e", 2, 6, _k43e_k2_n6, "apex over the two-C5 coloring"),
    "f5_k2_n5": CertificateInfo("F5", 2, 5, lambda: _nested_stars(5, 2), "star at vertex 0"),
    "f5_k3_n6": CertificateInfo("F5", 3, 6, lambda: _nested_stars(6, 3),
                                "stars at vertices 0 and 1"),
    "matching2_k2_n6": CertificateInfo("matching2", 2, 6, lambda: kneser_matching_coloring(3, 2),
                                       "Kneser coloring"),
}

_certificate_cache: dict[str, Coloring] = {}


def certificate(name: str) -> Coloring:
    """Rebuild a catalog coloring from its rule."""
    try:
        info = CERTIFICATES[name]
    except KeyError:
        raise ValidationError(f"unknown certificate {name!r}") from None
    if name not in _certificate_cache:
        _certificate_cache[name] = info.build()
    return _certificate_cache[name]

