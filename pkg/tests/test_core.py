import itertools
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import all_colorings, brute_aut_order, naive_mono_copies
from ramseylab.constructions import balanced_rpartite, certificate, sum_mod, two_c5_coloring
from ramseylab.core import (
    PATTERN_NAMES,
    TOWER_MAX_BITS,
    Coloring,
    Embedding,
    UniformHypergraph,
    ValidationError,
    colex_rank,
    colex_subsets,
    colex_unrank,
    contains_copy,
    count_mono_copies,
    density,
    find_mono_copy,
    pattern_catalog,
    tower,
    trace,
    verify_embedding,
)

CATALOG = [("bow",), ("kite",), ("matching2",), ("matching2", 2), ("matching2", 4), ("F5",),
           ("K43e",), ("clique", 4, 3), ("clique", 5, 3), ("clique", 3, 2), ("C33",),
           ("windmill",), ("tightpath",), ("pasch",), ("F", 1, 2), ("F", 2, 2), ("F", 3, 2),
           ("F", 2, 3), ("Hr", 3, 2, 2), ("Hr", 3, 2, 3), ("Hr", 4, 2, 2)]


def test_colex_examples():
    assert colex_rank((0, 1, 2)) == 0
    assert colex_rank((0, 1, 3)) == 1
    assert colex_rank((4, 5, 6)) == 34
    assert colex_unrank(0, 3) == (0, 1, 2)
    assert colex_unrank(34, 3) == (4, 5, 6)
    assert colex_unrank(1, 2) == (0, 2)


@pytest.mark.parametrize("bad", [(1, 0, 2), (0, 0, 1), (-1, 2, 3), (0, 1, 7)])
def test_colex_rank_rejects_invalid(bad):
    with pytest.raises(ValidationError):
        colex_rank(bad, 7)


@pytest.mark.parametrize("r", [1, 2, 3, 4])
@pytest.mark.parametrize("n", range(0, 11))
def test_colex_bijection_exhaustive(r, n):
    subs = colex_subsets(n, r)
    # oracle: sort combinations by reversed tuple, which is colex order
    assert list(subs) == sorted(itertools.combinations(range(n), r), key=lambda s: s[::-1])
    assert [colex_rank(s, n) for s in subs] == list(range(math.comb(n, r)))
    assert all(colex_unrank(i, r) == s for i, s in enumerate(subs))


@given(st.integers(1, 6).flatmap(
    lambda r: st.tuples(st.just(r), st.sets(st.integers(0, 60), min_size=r, max_size=r))))
def test_colex_roundtrip_property(rs):
    r, s = rs
    s = tuple(sorted(s))
    assert colex_unrank(colex_rank(s), r) == s
    assert colex_rank(s) == sum(math.comb(x, i + 1) for i, x in enumerate(s))


@pytest.mark.parametrize("args", CATALOG, ids=lambda a: "-".join(map(str, a)))
def test_automorphism_orders_match_brute_force(args):
    p = pattern_catalog(*args)
    assert p.aut_order == brute_aut_order(p)


def test_pattern_shapes():
    kite = pattern_catalog("kite")
    assert (kite.v, set(kite.edges)) == (4, {(0, 1, 2), (0, 1, 3)})
    pasch = pattern_catalog("pasch")
    assert (pasch.v, set(pasch.edges)) == (6, {(0, 1, 2), (1, 3, 4), (2, 4, 5), (0, 3, 5)})
    k4 = pattern_catalog("clique(4,3)")
    assert (k4.v, len(k4.edges)) == (4, 4)
    assert pattern_catalog("clique", 4, 3) == k4
    assert len(pattern_catalog("F5").edges) == 3
    assert len(pattern_catalog("K43e").edges) == 3
    assert len(PATTERN_NAMES) == 12


@pytest.mark.parametrize("bad", [("nope",), ("clique", 3, 3), ("clique", 2, 3), ("F", 0, 2)])
def test_pattern_catalog_rejects(bad):
    with pytest.raises(ValidationError):
        pattern_catalog(*bad)


def test_find_mono_copy_examples():
    one = Coloring.from_function(3, 4, 1, lambda s: 0)
    emb = find_mono_copy(one, pattern_catalog("kite"))
    assert emb is not None and emb.color == 0
    assert find_mono_copy(sum_mod(5, 5), pattern_catalog("kite")) is None
    assert find_mono_copy(certificate("f5_k2_n5"), pattern_catalog("F5")) is None


def test_find_mono_copy_rejects_partial_and_mismatch():
    colors = np.full(4, -1, dtype=np.int32)
    partial = Coloring(3, 4, 1, colors)
    with pytest.raises(ValidationError):
        find_mono_copy(partial, pattern_catalog("kite"))
    assert find_mono_copy(partial, pattern_catalog("kite"), allow_partial=True) is None
    with pytest.raises(ValidationError):
        find_mono_copy(Coloring.from_function(2, 4, 1, lambda s: 0), pattern_catalog("kite"))


def test_count_examples():
    one = Coloring.from_function(3, 4, 1, lambda s: 0)
    assert count_mono_copies(one, pattern_catalog("clique", 4, 3)) == 1
    # every pair of the four triples shares two vertices; see the ledger for the
    # discrepancy with the listed example value
    assert count_mono_copies(one, pattern_catalog("kite")) == 6
    assert count_mono_copies(sum_mod(5, 5), pattern_catalog("kite")) == 0


@pytest.mark.parametrize("name", ["bow", "kite", "matching2", "F5", "K43e"])
def test_detector_matches_naive_oracle_on_all_2_colorings_of_k5(name):
    p = pattern_catalog(name)
    subs = colex_subsets(5, 3)
    aut = brute_aut_order(p)
    for arr in all_colorings(3, 5, 2):
        c = Coloring(3, 5, 2, arr)
        naive = naive_mono_copies(dict(zip(subs, arr.tolist())), 5, p)
        emb = find_mono_copy(c, p)
        assert (emb is None) == (not naive)
        if emb is not None:
            assert verify_embedding(c, p, emb)
        assert count_mono_copies(c, p) == len(naive) // aut


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**35 - 1), st.sampled_from(["bow", "kite", "F5", "K43e", "tightpath",
                                                    "windmill", "C33", "clique(4,3)"]))
def test_count_find_consistency_on_k7(seed, name):
    rng = np.random.default_rng(seed)
    c = Coloring(3, 7, 3, rng.integers(0, 3, 35).astype(np.int32))
    p = pattern_catalog(name)
    emb = find_mono_copy(c, p)
    assert (count_mono_copies(c, p) == 0) == (emb is None)
    if emb is not None:
        assert verify_embedding(c, p, emb)


def test_verify_embedding_detects_bad_witness():
    c = sum_mod(5, 5)
    p = pattern_catalog("kite")
    assert not verify_embedding(c, p, Embedding((0, 1, 2, 3), 0))
    assert not verify_embedding(c, p, Embedding((0, 0, 2, 3), 3))


def test_contains_copy_examples():
    bow = pattern_catalog("bow")
    assert contains_copy(UniformHypergraph.complete(4, 3), bow) is None
    emb = contains_copy(UniformHypergraph.from_edges(3, 5, [(0, 1, 2), (0, 3, 4)]), bow)
    assert emb is not None and len(set(emb.map)) == 5
    with pytest.raises(ValidationError):
        contains_copy(UniformHypergraph.complete(4, 2), bow)


def test_trace_examples():
    one = Coloring.from_function(3, 4, 1, lambda s: 0)
    t = trace(one, 3)
    assert (t.r, t.n) == (2, 3) and set(t.colors.tolist()) == {0}
    assert trace(certificate("k43e_k2_n6"), 5) == two_c5_coloring()
    t = trace(sum_mod(5, 5), 4)
    assert all(t.color_of(e) == (e[0] + e[1] + 4) % 5 for e in colex_subsets(4, 2))
    with pytest.raises(ValidationError):
        trace(one, 4)


def _has_mono_triangle(g: Coloring) -> bool:
    return find_mono_copy(g, pattern_catalog("clique", 3, 2)) is not None


def test_trace_property_on_certificate():
    c = certificate("k43e_k2_n6")
    assert all(not _has_mono_triangle(trace(c, v)) for v in range(6))


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**20 - 1))
def test_trace_property_random(bits):
    # random 2-colorings of K_6^3; the hypothesis of the property filters most out
    c = Coloring(3, 6, 2, np.array([(bits >> i) & 1 for i in range(20)], dtype=np.int32))
    if find_mono_copy(c, pattern_catalog("K43e")) is not None:
        return
    assert all(not _has_mono_triangle(trace(c, v)) for v in range(6))


def test_density_examples():
    assert density(UniformHypergraph.complete(4, 3)) == 1
    assert density(balanced_rpartite(9, 3)) == Fraction(27, 84)
    assert density(UniformHypergraph(3, 5, frozenset())) == 0


def test_tower():
    assert tower(1, 7) == 7
    assert tower(2, 3) == 8
    assert tower(3, 2) == 16
    assert tower(4, 2) == 2**16
    assert tower(2, 0) == 1
    with pytest.raises(OverflowError):
        tower(4, 5)  # 2^(2^32) has far more bits than the cap
    with pytest.raises(ValidationError):
        tower(0, 1)
    assert TOWER_MAX_BITS >= 2**16


def test_coloring_validation():
    with pytest.raises(ValidationError):
        Coloring(3, 4, 1, np.array([0, 0, 1, 0], dtype=np.int32))
    with pytest.raises(ValidationError):
        Coloring(3, 4, 1, np.array([0, 0, 0], dtype=np.int32))
    c = Coloring.from_classes(3, 4, [[(0, 1, 2)], [(0, 1, 3), (1, 2, 3)]])
    assert not c.is_total and c.class_sizes() == [1, 2]
