"""Parameter sets (v; r, s; lambda) of D-optimal difference families.

Normalized D-optimal parameter sets are in bijection with integer pairs
x >= y >= 0 via

    v = 1 + x + x^2 + y + y^2
    r = x(x+1)/2 + y(y-1)/2
    s = x(x-1)/2 + y(y+1)/2
    lambda = x(x-1)/2 + y(y-1)/2

and 2v - 1 = (x+y+1)^2 + (x-y)^2, so enumerating parameter sets for a
given v reduces to writing 2v - 1 as a sum of two squares.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt


@dataclass(frozen=True, order=True)
class XYPair:
    x: int
    y: int

    def __post_init__(self):
        if self.y < 0 or self.x < self.y:
            raise ValueError(f"need x >= y >= 0, got x={self.x}, y={self.y}")


@dataclass(frozen=True)
class ParameterSet:
    """The quadruple (v; r, s; lambda); ``lam`` stands for lambda."""

    v: int
    r: int
    s: int
    lam: int

    @property
    def n(self) -> int:
        return self.r + self.s - self.lam

    @property
    def is_normalized(self) -> bool:
        return (self.v - 1) // 2 >= self.r >= self.s and self.v % 2 == 1

    @property
    def is_d_optimal(self) -> bool:
        return self.v == 2 * self.n + 1 and bool(two_square_representations(2 * self.v - 1))

    def violations(self) -> list[str]:
        """Human-readable list of broken invariants; empty when consistent."""
        out = []
        v, r, s, lam = self.v, self.r, self.s, self.lam
        if v < 1 or v % 2 == 0:
            out.append(f"v={v} must be odd and positive")
        if min(r, s, lam) < 0:
            out.append("r, s, lambda must be non-negative")
        if v != 2 * self.n + 1:
            out.append(f"v={v} != 2n+1 with n=r+s-lambda={self.n}")
        if not (v - 1) // 2 >= r >= s:
            out.append(f"not normalized: need (v-1)/2 >= r >= s, got r={r}, s={s}")
        if lam > s:
            out.append(f"lambda={lam} exceeds s={s}")
        if lam * (v - 1) != r * (r - 1) + s * (s - 1):
            out.append("difference balance lambda(v-1) = r(r-1) + s(s-1) fails")
        x, y = r - lam, s - lam
        if 2 * v - 1 != (x + y + 1) ** 2 + (x - y) ** 2:
            out.append("2v-1 != (x+y+1)^2 + (x-y)^2")
        return out

    def astuple(self) -> tuple[int, int, int, int]:
        return (self.v, self.r, self.s, self.lam)

    def __str__(self):
        return f"({self.v}; {self.r},{self.s}; {self.lam})"


@dataclass(frozen=True)
class BoundValue:
    m: int
    value: int


def ps_from_xy(p: XYPair | tuple[int, int]) -> ParameterSet:
    if not isinstance(p, XYPair):
        p = XYPair(*p)
    x, y = p.x, p.y
    return ParameterSet(
        v=1 + x + x * x + y + y * y,
        r=x * (x + 1) // 2 + y * (y - 1) // 2,
        s=x * (x - 1) // 2 + y * (y + 1) // 2,
        lam=x * (x - 1) // 2 + y * (y - 1) // 2,
    )


def xy_from_ps(ps: ParameterSet) -> XYPair:
    bad = ps.violations()
    if bad:
        raise ValueError(f"inconsistent parameter set {ps}: " + "; ".join(bad))
    return XYPair(ps.r - ps.lam, ps.s - ps.lam)


def two_square_representations(n: int) -> list[tuple[int, int]]:
    """All (a, b) with a > b >= 0 and a^2 + b^2 = n, sorted by b ascending."""
    if n < 1 or n % 2 == 0:
        raise ValueError(f"n must be odd and positive, got {n}")
    reps = []
    b = 0
    while 2 * b * b <= n:
        a2 = n - b * b
        a = isqrt(a2)
        if a * a == a2 and a > b:
            reps.append((a, b))
        b += 1
    return reps


def ps_list_for_v(v: int) -> list[ParameterSet]:
    if v < 1 or v % 2 == 0:
        raise ValueError(f"v must be odd and positive, got {v}")
    out = []
    for a, b in two_square_representations(2 * v - 1):
        # exactly one of a, b is odd, so both halves are integral
        out.append(ps_from_xy(XYPair((a + b - 1) // 2, (a - b - 1) // 2)))
    out.sort(key=lambda ps: ps.r, reverse=True)
    return out


def enumerate_ps(v_min: int, v_max: int) -> list[ParameterSet]:
    """Normalized D-optimal parameter sets with v_min <= v < v_max.

    Both (100, 200) and [100, 200) give the same odd v, and (1, 3) yields
    only the trivial v = 1 set.
    """
    if v_min > v_max:
        raise ValueError(f"empty range [{v_min}, {v_max})")
    out = []
    start = max(v_min, 1)
    if start % 2 == 0:
        start += 1
    for v in range(start, v_max, 2):
        out.extend(ps_list_for_v(v))
    return out


def series_lambda_eq_s(x: int) -> ParameterSet:
    """Borderline series y = 0, i.e. lambda = s."""
    if x < 1:
        raise ValueError("series starts at x = 1")
    return ps_from_xy(XYPair(x, 0))


def series_r_eq_s(x: int) -> ParameterSet:
    """Borderline series y = x, i.e. r = s."""
    if x < 1:
        raise ValueError("series starts at x = 1")
    return ps_from_xy(XYPair(x, x))


def alpha_bound(v: int) -> BoundValue:
    """Exact upper bound 2^v (m-1) (v-1)^(v-1) on |det| for +-1 matrices of order m = 2v."""
    if v < 3 or v % 2 == 0:
        raise ValueError(f"v must be odd and >= 3, got {v}")
    m = 2 * v
    return BoundValue(m=m, value=(1 << v) * (m - 1) * (v - 1) ** (v - 1))
