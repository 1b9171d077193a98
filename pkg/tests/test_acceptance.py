"""Exit criteria; each test records one PASS/FAIL/SKIP line in the terminal summary."""

import random
import time
from contextlib import contextmanager
from math import gcd

import pytest

from conftest import ACCEPTANCE_LINES, oracle_all_dfs, oracle_diff_counts
from dopt.catalog import builtin_catalog
from dopt.family import (Block, DifferenceFamily, canonical_form, difference_counts, equivalent,
                         find_multipliers, intersection_size, verify_df)
from dopt.matrices import (DeterminantBudgetExceeded, assemble, circulant_from_block, det_exact,
                           gram_check, paf)
from dopt.modring import subgroup_from_elements, subgroup_generated
from dopt.params import (ParameterSet, alpha_bound, enumerate_ps, series_lambda_eq_s,
                         series_r_eq_s)
from dopt.search import SearchProblem, run_search
from test_params import PS_100_200, LAMBDA_EQ_S, R_EQ_S


@contextmanager
def criterion(tag, desc, limit=None):
    t0 = time.perf_counter()
    try:
        yield
    except pytest.skip.Exception:
        ACCEPTANCE_LINES.append(f"SKIP  [{tag}] {desc}")
        raise
    except BaseException:
        ACCEPTANCE_LINES.append(f"FAIL  [{tag}] {desc} ({time.perf_counter() - t0:.2f} s)")
        raise
    dt = time.perf_counter() - t0
    if limit is not None and dt >= limit:
        ACCEPTANCE_LINES.append(f"FAIL  [{tag}] {desc} ({dt:.2f} s >= {limit} s)")
        pytest.fail(f"criterion {tag} took {dt:.2f} s, limit {limit} s")
    ACCEPTANCE_LINES.append(f"PASS  [{tag}] {desc} ({dt:.2f} s)")


def matrix_of(df):
    return assemble(circulant_from_block(df.X), circulant_from_block(df.Y))


def search_all(ps, H=(1,)):
    return list(run_search(SearchProblem(ParameterSet(*ps), subgroup_from_elements(ps[0], H))))


def test_c1_enumeration_100_200():
    with criterion("1", "enumerate_ps(100, 200) gives the 40 sets with 100 < v < 200", limit=1.0):
        got = enumerate_ps(100, 200)
        assert len(got) == 40
        assert sorted(ps.astuple() for ps in got) == sorted(PS_100_200)


def test_c2_borderline_series():
    with criterion("2", "borderline series x = 1..15 match the known lists"):
        for x in range(1, 16):
            assert series_lambda_eq_s(x).astuple() == LAMBDA_EQ_S[x]
            assert series_r_eq_s(x).astuple() == R_EQ_S[x]


def test_c3_catalog_certification():
    with criterion("3", "every embedded design passes verify_df and gram_check", limit=5.0):
        cf = builtin_catalog()
        # 5 + 5 + 8 + 1 + 2 listed families, then v = 85, 113 and two for v = 145
        assert len(cf) == 25
        for e in cf:
            df = e.family()
            assert verify_df(df, e.ps).passed, e.label
            assert gram_check(circulant_from_block(df.X), circulant_from_block(df.Y)).passed, e.label


def test_c4_multiplier_family_statistics():
    with criterion("4", "v=85/113/145 sizes, intersections and multipliers"):
        cf = builtin_catalog()
        d85 = cf.get("85a-1").family()
        assert len(d85.X) == len(d85.Y) == 36
        assert intersection_size(d85.X, d85.Y) == 4
        assert 3 in find_multipliers(d85)
        d113 = cf.get("113a-1").family()
        assert len(d113.X) == 49
        H113 = cf.get("113a-1").H
        assert {2 * h % 113 for h in H113} <= find_multipliers(d113)
        a, b = cf.get("145a-1").family(), cf.get("145a-2").family()
        assert len(a.X) == len(b.X) == 64
        assert intersection_size(a.X, a.X.scaled(11)) == 15 and a.Y == a.X.scaled(11)
        assert intersection_size(b.X, b.X.scaled(14)) == 21 and b.Y == b.X.scaled(14)


@pytest.mark.parametrize("ps, expected", [
    ((3, 1, 0, 0), 160),
    ((7, 3, 1, 1), 77_635_584),
    ((13, 6, 3, 3), 2 ** 13 * 25 * 12 ** 12),
])
def test_c5_small_determinants(ps, expected):
    with criterion("5", f"det = bound for v={ps[0]} ({expected})", limit=10.0):
        if ps[0] == 3:
            df = DifferenceFamily.of(3, [0], [])
        else:
            df = next(iter(run_search(SearchProblem(
                ParameterSet(*ps), subgroup_from_elements(ps[0], (1,)), mode="first"))))
        assert verify_df(df, ParameterSet(*ps)).passed
        assert alpha_bound(ps[0]).value == expected
        assert det_exact(matrix_of(df)) == expected


@pytest.mark.slow
def test_c6_order_222_determinant():
    with criterion("6", "det of the order-222 matrix from 111a-1 equals alpha_bound(111)"):
        df = builtin_catalog().get("111a-1").family()
        try:
            d = det_exact(matrix_of(df), budget_seconds=600)
        except DeterminantBudgetExceeded:
            pytest.skip("order-222 determinant did not finish within 600 s")
        assert d == alpha_bound(111).value


@pytest.mark.parametrize("ps", [(13, 6, 3, 3), (13, 4, 4, 2)])
def test_c7_search_complete(ps):
    with criterion("7", f"exhaustive search on {ps} equals brute force up to equivalence",
                   limit=60.0):
        found = search_all(ps)
        assert all(verify_df(df, ParameterSet(*ps)).passed for df in found)
        brute = [DifferenceFamily.of(ps[0], X, Y) for X, Y in oracle_all_dfs(*ps)]
        assert brute
        assert {canonical_form(d) for d in found} == {canonical_form(d) for d in brute}


# -- criterion 8 --------------------------------------------------------------

POSITIVE_SOURCES = [((3, 1, 0, 0), (1,)), ((5, 1, 1, 0), (1,)), ((7, 3, 1, 1), (1,)),
                    ((13, 6, 3, 3), (1,)), ((13, 4, 4, 2), (1,)), ((21, 10, 6, 6), (1, 4, 16))]


def _random_transform(df, rnd):
    v = df.v
    mu = rnd.choice([u for u in range(1, v) if gcd(u, v) == 1])
    X = df.X.scaled(mu).shifted(rnd.randrange(v))
    Y = df.Y.scaled(mu).shifted(rnd.randrange(v))
    if len(X) == len(Y) and rnd.random() < 0.5:
        X, Y = Y, X
    return DifferenceFamily(v, X, Y)


def _pool():
    rnd = random.Random(20261015)
    sols = {ps: search_all(ps, H) for ps, H in POSITIVE_SOURCES}
    pool = []
    for _ in range(100):
        ps = rnd.choice(list(sols))
        pool.append((ParameterSet(*ps), _random_transform(rnd.choice(sols[ps]), rnd)))
    for _ in range(100):
        ps = ParameterSet(*rnd.choice(list(sols)))
        X = rnd.sample(range(ps.v), ps.r)
        Y = rnd.sample(range(ps.v), ps.s)
        pool.append((ps, DifferenceFamily.of(ps.v, X, Y)))
    return pool


@pytest.fixture(scope="module")
def pool():
    return _pool()


def _mutations(df):
    v = df.v
    for which in ("X", "Y"):
        B = getattr(df, which)
        for b in B.members:
            for c in range(v):
                if c in B:
                    continue
                nb = Block.of(v, [x for x in B.members if x != b] + [c])
                yield DifferenceFamily(v, nb, df.Y) if which == "X" else DifferenceFamily(v, df.X, nb)


def _both(df, ps):
    return (verify_df(df, ps).passed,
            gram_check(circulant_from_block(df.X), circulant_from_block(df.Y)).passed)


def test_c8_properties(pool):
    with criterion("8", "200 random pairs (v<=25): verify_df iff gram_check; paf identity"):
        npos = 0
        for ps, df in pool:
            ok_df, ok_gram = _both(df, ps)
            assert ok_df == ok_gram
            npos += ok_df
            for B in (df.X, df.Y):
                seq = circulant_from_block(B).first_row
                c = oracle_diff_counts(df.v, B.members)
                for d in range(1, df.v):
                    direct = sum(seq[i] * seq[(i + d) % df.v] for i in range(df.v))
                    assert paf(seq, d) == direct == df.v - 4 * (len(B) - c[d])
                    assert difference_counts(B)[d] == c[d]
        assert len(pool) == 200 and 0 < npos < 200


def test_c8_mutation_nondegenerate(pool):
    with criterion("8", "single-residue mutations break both checks (all blocks of size >= 4)"):
        checked = 0
        for ps, df in pool:
            if not verify_df(df, ps).passed or min(len(df.X), len(df.Y)) < 4:
                continue
            for mut in _mutations(df):
                assert _both(mut, ps) == (False, False)
                checked += 1
        assert checked > 0


@pytest.mark.xfail(strict=True, reason=(
    "the literal claim is false: in (13; 6,3; 3) with Y = {0,2,7}, replacing 2 by 5 gives "
    "7 - Y, which has the same differences; size-1 blocks survive any move as translations"))
def test_c8_mutation_literal(pool):
    with criterion("8", "single-residue mutation of ANY passing family breaks both checks "
                        "(expected to fail, see decisions)"):
        for ps, df in pool:
            if not verify_df(df, ps).passed:
                continue
            for mut in _mutations(df):
                assert _both(mut, ps) == (False, False)


def test_c9_nonequivalence():
    with criterion("9", "v=111 (5+5), v=117 (8), v=139 (2) families pairwise nonequivalent"):
        cf = builtin_catalog()
        for prefix, count in (("111a", 5), ("111b", 5), ("117a", 8), ("139a", 2)):
            forms = [canonical_form(cf.get(f"{prefix}-{k}").family()) for k in range(1, count + 1)]
            assert len(set(forms)) == count, prefix
