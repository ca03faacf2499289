import math

import numpy as np
import pytest

from ramseylab.core import Status, ValidationError, contains_copy, copies_in_complete, find_mono_copy, pattern_catalog
from ramseylab.search import (
    Budgets,
    exists_good_coloring,
    ramsey_bounds,
    ramsey_upper_from_turan,
    turan_number,
)

PATTERNS = ["bow", "kite", "F5", "K43e", "matching2", "tightpath", "C33", "clique(4,3)"]


def _has_good_coloring(p, k: int, n: int) -> bool:
    """Brute force over all k^C(n,3) colorings, vectorized over colorings."""
    m = math.comb(n, 3)
    codes = np.arange(k ** m, dtype=np.int64)
    digits = np.stack([(codes // k ** i) % k for i in range(m)], axis=1).astype(np.int8)
    bad = np.zeros(len(codes), dtype=bool)
    for copy in copies_in_complete(p, n):
        cols = digits[:, list(copy)]
        bad |= (cols == cols[:, :1]).all(axis=1)
    return not bad.all()


def _oracle_cases():
    for n in range(3, 7):
        for k in range(1, 5):
            if k ** math.comb(n, 3) <= 2 ** 20:
                yield n, k


@pytest.mark.parametrize("name", PATTERNS)
@pytest.mark.parametrize("n,k", list(_oracle_cases()))
def test_search_matches_brute_force(name, n, k):
    p = pattern_catalog(name)
    want = _has_good_coloring(p, k, n)
    for order in ("mrv", "colex"):
        out = exists_good_coloring(p, k, n, order=order)
        assert (out.status is Status.FOUND) == want
        assert out.status is not Status.BUDGET_EXCEEDED
        if want:
            assert out.certificate.is_total and find_mono_copy(out.certificate, p) is None
    ex = turan_number(p, n)
    out = exists_good_coloring(p, k, n, capacity=ex.value)
    assert (out.status is Status.FOUND) == want


def test_search_examples():
    kite = pattern_catalog("kite")
    found = exists_good_coloring(kite, 4, 4)
    assert found.status is Status.FOUND and found.certificate.used_colors() == {0, 1, 2, 3}
    assert exists_good_coloring(kite, 4, 5).status is Status.NOT_FOUND
    bow = pattern_catalog("bow")
    assert exists_good_coloring(bow, 2, 4).status is Status.FOUND
    assert exists_good_coloring(bow, 2, 5).status is Status.NOT_FOUND


def test_search_budget_and_errors():
    out = exists_good_coloring(pattern_catalog("F5"), 3, 7, budget=50)
    assert out.status is Status.BUDGET_EXCEEDED and out.certificate is None
    assert out.nodes_explored > 50
    with pytest.raises(ValidationError):
        exists_good_coloring(pattern_catalog("kite"), 0, 5)


@pytest.mark.parametrize("name,k,n", [("kite", 4, 5), ("F5", 3, 7), ("F5", 3, 6), ("bow", 5, 6)])
def test_threads_agree(name, k, n):
    p = pattern_catalog(name)
    one = exists_good_coloring(p, k, n)
    two = exists_good_coloring(p, k, n, threads=2)
    assert one.status is two.status
    if two.certificate is not None:
        assert find_mono_copy(two.certificate, p) is None


@pytest.mark.parametrize("name,k", [("kite", 4), ("bow", 2), ("bow", 5), ("F5", 2), ("matching2", 1)])
def test_monotone_not_found(name, k):
    p = pattern_catalog(name)
    seen_not_found = False
    for n in range(p.v - 1, p.v + 3):
        if n < 3:
            continue
        st = exists_good_coloring(p, k, n, budget=10**6).status
        assert st is not Status.BUDGET_EXCEEDED
        if seen_not_found:
            assert st is Status.NOT_FOUND
        seen_not_found |= st is Status.NOT_FOUND
    assert seen_not_found


def _turan_brute(p, n: int) -> int:
    m = math.comb(n, 3)
    subsets = np.arange(2 ** m, dtype=np.int64)
    ok = np.ones(len(subsets), dtype=bool)
    for copy in copies_in_complete(p, n):
        mask = sum(1 << e for e in copy)
        ok &= (subsets & mask) != mask
    pop = np.zeros(len(subsets), dtype=np.int64)
    for i in range(m):
        pop += (subsets >> i) & 1
    return int(pop[ok].max())


@pytest.mark.parametrize("name", PATTERNS + ["windmill", "pasch", "F(2,2)"])
@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_turan_matches_brute_force(name, n):
    p = pattern_catalog(name)
    t = turan_number(p, n)
    assert t.exact
    assert t.value == _turan_brute(p, n)
    assert len(t.witness) == t.value
    assert contains_copy(t.witness, p) is None


@pytest.mark.parametrize("name,values", [
    ("bow", {4: 4, 5: 4, 6: 4, 7: 5, 8: 8, 9: 8}),
    ("kite", {n: (n * ((n - 1) // 2)) // 3 - (n == 5) for n in range(3, 10)}),
    ("F5", {5: 6, 6: 10}),
])
def test_turan_tables(name, values):
    p = pattern_catalog(name)
    for n, v in values.items():
        t = turan_number(p, n)
        assert t.exact and t.value == v, n
        assert contains_copy(t.witness, p) is None


def test_turan_windmill_and_budget():
    w = turan_number(pattern_catalog("windmill"), 6)
    assert w.exact and w.value <= 15
    t = turan_number(pattern_catalog("kite"), 9, budget=5)
    assert not t.exact and contains_copy(t.witness, pattern_catalog("kite")) is None


def test_ramsey_upper_from_turan():
    bow, kite = pattern_catalog("bow"), pattern_catalog("kite")
    assert ramsey_upper_from_turan(bow, 6, 10) == 7
    assert ramsey_upper_from_turan(bow, 7, 10) == 9
    assert ramsey_upper_from_turan(kite, 6, 10) == 8
    assert ramsey_upper_from_turan(bow, 7, 8) is None


@pytest.mark.parametrize("name,k,interval", [
    ("bow", 6, "[7,7]"), ("kite", 5, "[6,6]"), ("F5", 2, "[6,6]"), ("bow", 2, "[5,5]"),
    ("kite", 4, "[5,5]"), ("matching2", 2, "[7,7]"),
])
def test_ramsey_bounds(name, k, interval):
    b = ramsey_bounds(pattern_catalog(name), k)
    assert b.interval() == interval
    assert b.lower.source and b.upper.source


def test_ramsey_bounds_reports_open_interval_under_budget():
    b = ramsey_bounds(pattern_catalog("F5"), 3, Budgets(search=5, n_cap=7))
    assert b.interval() == "[7,?]"
    assert b.outcomes == ((7, Status.BUDGET_EXCEEDED),)
