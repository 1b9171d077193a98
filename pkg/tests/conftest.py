"""Independent brute-force oracles shared by the test modules.

None of these reuse the package's counting, canonicalisation or search code.
"""

from collections import Counter
from itertools import combinations, permutations, product

import pytest

from dopt.catalog import builtin_catalog


def oracle_diff_counts(v, block):
    c = Counter((a - b) % v for a, b in product(block, repeat=2) if a != b)
    return [c.get(d, 0) for d in range(v)]


def oracle_is_df(v, X, Y, lam):
    cx, cy = oracle_diff_counts(v, X), oracle_diff_counts(v, Y)
    return all(cx[d] + cy[d] == lam for d in range(1, v))


def oracle_equivalent(v, X1, Y1, X2, Y2, simultaneous=False):
    """Direct scan over mu, g, h (and the swap when sizes agree)."""
    from math import gcd

    targets = [(frozenset(X2), frozenset(Y2))]
    if len(X2) == len(Y2):
        targets.append((frozenset(Y2), frozenset(X2)))
    for mu in range(1, v):
        if gcd(mu, v) != 1:
            continue
        mx = [mu * a % v for a in X1]
        my = [mu * a % v for a in Y1]
        if simultaneous:
            pairs = {(frozenset((a + g) % v for a in mx), frozenset((a + g) % v for a in my))
                     for g in range(v)}
            if any(t in pairs for t in targets):
                return True
            continue
        xs = {frozenset((a + g) % v for a in mx) for g in range(v)}
        ys = {frozenset((a + h) % v for a in my) for h in range(v)}
        for tx, ty in targets:
            if tx in xs and ty in ys:
                return True
    return False


def oracle_all_dfs(v, r, s, lam):
    """Every (X, Y) with |X| = r, |Y| = s forming a family, by exhaustion."""
    xs = [(X, oracle_diff_counts(v, X)) for X in combinations(range(v), r)]
    ys = [(Y, oracle_diff_counts(v, Y)) for Y in combinations(range(v), s)]
    out = []
    for X, cx in xs:
        want = [0] + [lam - cx[d] for d in range(1, v)]
        for Y, cy in ys:
            if cy == want:
                out.append((X, Y))
    return out


def oracle_det_leibniz(rows):
    n = len(rows)
    total = 0
    for perm in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        p = 1
        for i in range(n):
            p *= rows[i][perm[i]]
        total += -p if inv % 2 else p
    return total


@pytest.fixture(scope="session")
def catalog():
    return builtin_catalog()


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
