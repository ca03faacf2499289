import itertools
import math

import numpy as np


def naive_mono_copies(colors: dict, n: int, p) -> list[tuple[tuple[int, ...], int]]:
    """All injections (as vertex tuples) of p into K_n whose image edges share a color."""
    out = []
    for img in itertools.permutations(range(n), p.v):
        cols = {colors[tuple(sorted(img[x] for x in e))] for e in p.edges}
        if len(cols) == 1:
            out.append((img, cols.pop()))
    return out


def brute_aut_order(p) -> int:
    edges = {tuple(sorted(e)) for e in p.edges}
    return sum(
        all(tuple(sorted(perm[x] for x in e)) in edges for e in edges)
        for perm in itertools.permutations(range(p.v))
    )


def all_colorings(r: int, n: int, k: int):
    """Every total k-coloring of K_n^r as a color array indexed by colex rank."""
    m = math.comb(n, r)
    for t in itertools.product(range(k), repeat=m):
        yield np.array(t, dtype=np.int32)


_ACCEPTANCE: list[tuple[str, str]] = []


def pytest_runtest_logreport(report):
    if "test_acceptance.py" in report.nodeid and (report.when == "call" or report.failed):
        _ACCEPTANCE.append((report.nodeid.split("::")[-1], "PASS" if report.passed else "FAIL"))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, verdict in _ACCEPTANCE:
        terminalreporter.write_line(f"{verdict}  {name}")
