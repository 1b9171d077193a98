from math import isqrt

import pytest
from hypothesis import given, strategies as st

from dopt.params import (ParameterSet, XYPair, alpha_bound, enumerate_ps, ps_from_xy,
                         ps_list_for_v, series_lambda_eq_s, series_r_eq_s,
                         two_square_representations, xy_from_ps)

PS_100_200 = [
    (103, 46, 43, 38), (103, 48, 42, 39), (111, 51, 46, 42), (111, 55, 45, 45),
    (113, 49, 49, 42), (113, 55, 46, 45), (115, 51, 49, 43), (117, 56, 48, 46),
    (121, 55, 51, 46), (123, 58, 51, 48), (129, 57, 56, 49), (131, 61, 55, 51),
    (133, 60, 57, 51), (133, 66, 55, 55), (135, 66, 56, 55), (139, 67, 58, 56),
    (141, 65, 60, 55), (145, 64, 64, 56), (145, 69, 61, 58), (147, 66, 64, 57),
    (153, 70, 66, 60), (153, 72, 65, 61), (157, 78, 66, 66), (159, 78, 67, 66),
    (163, 73, 72, 64), (163, 76, 70, 65), (163, 79, 69, 67), (167, 76, 73, 66),
    (169, 81, 72, 69), (175, 81, 76, 70), (177, 84, 76, 72), (181, 81, 81, 72),
    (183, 83, 81, 73), (183, 91, 78, 78), (185, 91, 79, 78), (187, 88, 81, 76),
    (189, 87, 83, 76), (189, 92, 81, 79), (195, 94, 84, 81), (199, 93, 87, 81),
]

LAMBDA_EQ_S = {1: (3, 1, 0, 0), 2: (7, 3, 1, 1), 3: (13, 6, 3, 3), 4: (21, 10, 6, 6),
          5: (31, 15, 10, 10), 6: (43, 21, 15, 15), 7: (57, 28, 21, 21), 8: (73, 36, 28, 28),
          9: (91, 45, 36, 36), 10: (111, 55, 45, 45), 11: (133, 66, 55, 55),
          12: (157, 78, 66, 66), 13: (183, 91, 78, 78), 14: (211, 105, 91, 91),
          15: (241, 120, 105, 105)}

R_EQ_S = {1: (5, 1, 1, 0), 2: (13, 4, 4, 2), 3: (25, 9, 9, 6), 4: (41, 16, 16, 12),
          5: (61, 25, 25, 20), 6: (85, 36, 36, 30), 7: (113, 49, 49, 42), 8: (145, 64, 64, 56),
          9: (181, 81, 81, 72), 10: (221, 100, 100, 90), 11: (265, 121, 121, 110),
          12: (313, 144, 144, 132), 13: (365, 169, 169, 156), 14: (421, 196, 196, 182),
          15: (481, 225, 225, 210)}


def brute_two_squares(n):
    return sorted(((a, b) for a in range(isqrt(n) + 1) for b in range(a)
                   if a * a + b * b == n), key=lambda t: t[1])


def brute_ps_for_v(v):
    out = set()
    x = 0
    while 1 + x + x * x <= v:
        for y in range(x + 1):
            if 1 + x + x * x + y + y * y == v:
                out.add(ps_from_xy((x, y)))
        x += 1
    return out


@pytest.mark.parametrize("xy, expected", [
    ((10, 0), (111, 55, 45, 45)),
    ((0, 0), (1, 0, 0, 0)),
    ((9, 4), (111, 51, 46, 42)),
    ((8, 5), (103, 46, 43, 38)),
])
def test_ps_from_xy(xy, expected):
    assert ps_from_xy(xy).astuple() == expected


def test_ps_from_xy_rejects_x_below_y():
    with pytest.raises(ValueError):
        ps_from_xy((2, 3))


@pytest.mark.parametrize("ps, xy", [
    ((129, 57, 56, 49), (8, 7)),
    ((3, 1, 0, 0), (1, 0)),
    ((139, 67, 58, 56), (11, 2)),
])
def test_xy_from_ps(ps, xy):
    got = xy_from_ps(ParameterSet(*ps))
    assert (got.x, got.y) == xy
    assert ps_from_xy(got) == ParameterSet(*ps)


@pytest.mark.parametrize("bad", [(111, 51, 46, 41), (112, 51, 46, 42), (111, 46, 51, 42),
                                 (85, 39, 34, 30)])
def test_xy_from_ps_rejects_inconsistent(bad):
    with pytest.raises(ValueError):
        xy_from_ps(ParameterSet(*bad))


@pytest.mark.parametrize("n, reps", [
    (325, [(18, 1), (17, 6), (15, 10)]),
    (25, [(5, 0), (4, 3)]),
    (3, []),
    (1, [(1, 0)]),
])
def test_two_square_representations(n, reps):
    assert two_square_representations(n) == reps


def test_two_squares_rejects_even():
    with pytest.raises(ValueError):
        two_square_representations(10)


@given(st.integers(min_value=0, max_value=5000))
def test_two_squares_matches_brute_force(k):
    n = 2 * k + 1
    assert two_square_representations(n) == brute_two_squares(n)


@pytest.mark.parametrize("v, expected", [
    (111, [(111, 55, 45, 45), (111, 51, 46, 42)]),
    (163, [(163, 79, 69, 67), (163, 76, 70, 65), (163, 73, 72, 64)]),
    (99, [(99, 43, 42, 36)]),
    (101, []),
])
def test_ps_list_for_v(v, expected):
    assert [ps.astuple() for ps in ps_list_for_v(v)] == expected


def test_ps_list_matches_brute_force_scan():
    for v in range(1, 501, 2):
        assert set(ps_list_for_v(v)) == brute_ps_for_v(v), v


def test_enumerate_100_200():
    got = enumerate_ps(100, 200)
    assert len(got) == 40
    assert sorted(ps.astuple() for ps in got) == sorted(PS_100_200)


def test_enumerate_small_ranges():
    assert [ps.astuple() for ps in enumerate_ps(1, 3)] == [(1, 0, 0, 0)]
    assert [ps.astuple() for ps in enumerate_ps(84, 86)] == [(85, 39, 34, 31), (85, 36, 36, 30)]
    with pytest.raises(ValueError):
        enumerate_ps(10, 5)


@pytest.mark.parametrize("x", range(1, 16))
def test_series(x):
    assert series_lambda_eq_s(x).astuple() == LAMBDA_EQ_S[x]
    assert series_r_eq_s(x).astuple() == R_EQ_S[x]


def test_series_reject_zero():
    with pytest.raises(ValueError):
        series_lambda_eq_s(0)
    with pytest.raises(ValueError):
        series_r_eq_s(0)


def test_alpha_bound_values():
    assert alpha_bound(3).value == 160
    assert alpha_bound(3).m == 6
    assert alpha_bound(7).value == 77_635_584
    assert alpha_bound(13).value == pow(2, 13) * 25 * pow(12, 12)
    # non-sum-of-two-squares orders are still accepted
    assert alpha_bound(11).value == 2 ** 11 * 21 * 10 ** 10


@pytest.mark.parametrize("v", [1, 2, 8])
def test_alpha_bound_rejects(v):
    with pytest.raises(ValueError):
        alpha_bound(v)


xy_pairs = st.integers(min_value=0, max_value=40).flatmap(
    lambda x: st.tuples(st.just(x), st.integers(min_value=0, max_value=x)))


@given(xy_pairs)
def test_round_trip_and_identities(xy):
    x, y = xy
    ps = ps_from_xy(xy)
    assert xy_from_ps(ps) == XYPair(x, y)
    assert 2 * ps.v - 1 == (x + y + 1) ** 2 + (x - y) ** 2
    assert ps.lam * (ps.v - 1) == ps.r * (ps.r - 1) + ps.s * (ps.s - 1)
    assert (ps.v - 1) // 2 >= ps.r >= ps.s >= ps.lam >= 0
    assert ps.v == 2 * ps.n + 1
    assert ps.is_normalized and ps.is_d_optimal


@given(st.integers(min_value=0, max_value=3000))
def test_completeness(k):
    v = 2 * k + 1
    assert bool(ps_list_for_v(v)) == bool(two_square_representations(2 * v - 1))
