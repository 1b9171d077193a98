"""Two-block difference families in Z_v.

A pair of blocks (X, Y) is a difference family with parameters
(v; r, s; lambda) when |X| = r, |Y| = s and every nonzero residue d occurs
exactly lambda times as a difference a - b, summed over ordered pairs
inside X and inside Y.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property
from math import gcd
from typing import Iterable, Optional

from dopt.modring import UnitSubgroup, units
from dopt.params import ParameterSet

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Block:
    v: int
    members: tuple[int, ...]

    def __post_init__(self):
        ms = self.members
        if any(not 0 <= a < self.v for a in ms):
            raise ValueError(f"block members must lie in [0, {self.v})")
        if any(ms[i] >= ms[i + 1] for i in range(len(ms) - 1)):
            raise ValueError("block members must be sorted and distinct")

    @classmethod
    def of(cls, v: int, elems: Iterable[int]) -> "Block":
        return cls(v, tuple(sorted({e % v for e in elems})))

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, a):
        return a in self.mask

    @cached_property
    def mask(self) -> frozenset:
        return frozenset(self.members)

    def scaled(self, mu: int) -> "Block":
        return Block.of(self.v, (mu * a for a in self.members))

    def shifted(self, g: int) -> "Block":
        return Block.of(self.v, (a + g for a in self.members))


@dataclass(frozen=True)
class DifferenceFamily:
    v: int
    X: Block
    Y: Block
    # (H, I, J): blocks are unions of the H-orbits of I and J
    orbit_spec: Optional[tuple[UnitSubgroup, tuple[int, ...], tuple[int, ...]]] = field(
        default=None, compare=False)

    def __post_init__(self):
        if self.X.v != self.v or self.Y.v != self.v:
            raise ValueError("block moduli differ from family modulus")

    @classmethod
    def of(cls, v: int, X: Iterable[int], Y: Iterable[int], orbit_spec=None) -> "DifferenceFamily":
        return cls(v, Block.of(v, X), Block.of(v, Y), orbit_spec)

    @classmethod
    def from_orbits(cls, H: UnitSubgroup, I: Iterable[int], J: Iterable[int]) -> "DifferenceFamily":
        from dopt.modring import expand_union

        I, J = tuple(I), tuple(J)
        return cls(H.v, expand_union(H, I), expand_union(H, J), (H, I, J))


@dataclass(frozen=True)
class DifferenceCounts:
    """``counts[d]`` for d in [0, v); index 0 is unused and held at 0."""

    v: int
    counts: tuple[int, ...]

    def __getitem__(self, d):
        return self.counts[d]


@dataclass
class VerificationReport:
    passed: bool
    size_ok: bool
    # (d, counts_X[d] + counts_Y[d]) for every d with a wrong total
    violations: list[tuple[int, int]]
    message: str = ""


@dataclass(frozen=True)
class MultiplierReport:
    mu: int
    holds: bool


def difference_counts(B: Block) -> DifferenceCounts:
    v = B.v
    c = [0] * v
    ms = B.members
    for a in ms:
        for b in ms:
            c[(a - b) % v] += 1
    c[0] = 0
    return DifferenceCounts(v, tuple(c))


def verify_df(df: DifferenceFamily, ps: ParameterSet) -> VerificationReport:
    if df.v != ps.v:
        raise ValueError(f"modulus mismatch: family has v={df.v}, parameters have v={ps.v}")
    size_ok = len(df.X) == ps.r and len(df.Y) == ps.s
    cx = difference_counts(df.X).counts
    cy = difference_counts(df.Y).counts
    bad = [(d, cx[d] + cy[d]) for d in range(1, df.v) if cx[d] + cy[d] != ps.lam]
    msgs = []
    if not size_ok:
        msgs.append(f"block sizes ({len(df.X)}, {len(df.Y)}) != ({ps.r}, {ps.s})")
    if bad:
        msgs.append(f"{len(bad)} differences not covered exactly {ps.lam} times")
    return VerificationReport(size_ok and not bad, size_ok, bad, "; ".join(msgs))


def is_multiplier(df: DifferenceFamily, mu: int) -> MultiplierReport:
    if gcd(mu, df.v) != 1:
        raise ValueError(f"{mu} is not a unit mod {df.v}")
    return MultiplierReport(mu % df.v, df.X.scaled(mu) == df.Y)


def find_multipliers(df: DifferenceFamily) -> set[int]:
    if len(df.X) != len(df.Y):
        log.info("blocks of sizes %d and %d admit no multiplier", len(df.X), len(df.Y))
        return set()
    return {mu for mu in units(df.v) if df.X.scaled(mu) == df.Y}


def intersection_size(a: Block, b: Block) -> int:
    if a.v != b.v:
        raise ValueError(f"modulus mismatch: {a.v} vs {b.v}")
    return len(a.mask & b.mask)


def _least_translate(v: int, elems: list[int]) -> tuple[int, ...]:
    # the least translate always contains 0, so only shifts by -a matter
    if not elems:
        return ()
    return min(tuple(sorted((e - a) % v for e in elems)) for a in elems)


def _least_joint_translate(v, X, Y):
    # least (X+g, Y+g); the minimum has 0 in its first non-empty block
    lead = X or Y
    if not lead:
        return ((), ())
    return min((tuple(sorted((e - a) % v for e in X)), tuple(sorted((e - a) % v for e in Y)))
               for a in lead)


def canonical_form(df: DifferenceFamily, translations: str = "independent") -> DifferenceFamily:
    """Lexicographically least member of the equivalence class of ``df``.

    The class is generated by simultaneous multiplication by a unit, block
    translations, and the block swap when r = s. With
    ``translations="independent"`` each block is translated separately;
    with ``"simultaneous"`` both move by the same g, which keeps |X & Y|
    invariant.
    """
    if translations not in ("independent", "simultaneous"):
        raise ValueError(f"unknown translation mode {translations!r}")
    v = df.v
    X, Y = list(df.X.members), list(df.Y.members)
    swap = len(X) == len(Y)
    best = None
    for mu in units(v):
        mX = [mu * a % v for a in X]
        mY = [mu * a % v for a in Y]
        if translations == "independent":
            mx, my = _least_translate(v, mX), _least_translate(v, mY)
            cands = [(mx, my), (my, mx)] if swap else [(mx, my)]
        else:
            cands = [_least_joint_translate(v, mX, mY)]
            if swap:
                cands.append(_least_joint_translate(v, mY, mX))
        for c in cands:
            if best is None or c < best:
                best = c
    return DifferenceFamily(v, Block(v, best[0]), Block(v, best[1]))


def equivalent(df1: DifferenceFamily, df2: DifferenceFamily, translations: str = "independent") -> bool:
    if df1.v != df2.v or (len(df1.X), len(df1.Y)) != (len(df2.X), len(df2.Y)):
        raise ValueError("families have different parameters")
    return canonical_form(df1, translations) == canonical_form(df2, translations)
