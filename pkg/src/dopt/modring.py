"""Unit subgroups of Z_v and the orbit partition of their multiplicative action."""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Iterable


@dataclass(frozen=True)
class UnitSubgroup:
    v: int
    elements: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, h):
        return h in self.elements

    def __iter__(self):
        return iter(self.elements)


@dataclass(frozen=True)
class Orbit:
    representative: int
    members: tuple[int, ...]

    def __len__(self):
        return len(self.members)


def units(v: int) -> list[int]:
    if v == 1:
        return [0]
    return [u for u in range(1, v) if gcd(u, v) == 1]


def subgroup_from_elements(v: int, elems: Iterable[int]) -> UnitSubgroup:
    """Validate a listed subgroup; the set is checked, never closed."""
    if v < 1:
        raise ValueError(f"modulus must be positive, got {v}")
    es = sorted({e % v for e in elems})
    one = 1 % v
    if one not in es:
        raise ValueError(f"subgroup mod {v} must contain 1")
    for e in es:
        if gcd(e, v) != 1:
            raise ValueError(f"{e} is not a unit mod {v}")
    eset = set(es)
    for a in es:
        for b in es:
            if a * b % v not in eset:
                raise ValueError(f"not closed: {a}*{b} = {a * b % v} mod {v} is missing")
    return UnitSubgroup(v, tuple(es))


def subgroup_generated(v: int, gens: Iterable[int]) -> UnitSubgroup:
    gens = [g % v for g in gens]
    for g in gens:
        if gcd(g, v) != 1:
            raise ValueError(f"generator {g} is not a unit mod {v}")
    elems = {1 % v}
    frontier = list(elems)
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                p = a * g % v
                if p not in elems:
                    elems.add(p)
                    nxt.append(p)
        frontier = nxt
    return UnitSubgroup(v, tuple(sorted(elems)))


def orbit_of(H: UnitSubgroup, i: int) -> Orbit:
    if not 0 <= i < H.v:
        raise ValueError(f"residue {i} out of range for modulus {H.v}")
    members = tuple(sorted({h * i % H.v for h in H.elements}))
    return Orbit(members[0], members)


@lru_cache(maxsize=256)
def orbit_partition(H: UnitSubgroup) -> tuple[Orbit, ...]:
    """Orbits covering Z_v, sorted by (minimal) representative."""
    seen = [False] * H.v
    out = []
    for i in range(H.v):
        if seen[i]:
            continue
        orb = orbit_of(H, i)
        for m in orb.members:
            seen[m] = True
        out.append(orb)
    return tuple(out)


def orbit_index(H: UnitSubgroup) -> list[int]:
    """Map residue -> position of its orbit in ``orbit_partition(H)``."""
    idx = [0] * H.v
    for k, orb in enumerate(orbit_partition(H)):
        for m in orb.members:
            idx[m] = k
    return idx


def expand_union(H: UnitSubgroup, reps: Iterable[int]):
    """Union of the H-orbits of ``reps`` as a :class:`~dopt.family.Block`.

    Any member of an orbit may act as its representative. Two representatives
    of one orbit only trigger a warning.
    """
    from dopt.family import Block

    v = H.v
    members: set[int] = set()
    hit: dict[int, int] = {}
    idx = orbit_index(H)
    for i in reps:
        i %= v
        k = idx[i]
        if k in hit:
            warnings.warn(f"representatives {hit[k]} and {i} lie in the same orbit mod {v}",
                          stacklevel=2)
            continue
        hit[k] = i
        members.update(h * i % v for h in H.elements)
    return Block(v, tuple(sorted(members)))
