"""Backtracking search for difference families whose blocks are unions of H-orbits.

Both blocks are H-invariant, so their difference counts are constant on
the H-orbits of Z_v \\ {0}; all bookkeeping is done on one representative
per nonzero orbit. X is chosen first (orbit by orbit, ascending), then Y
is completed against the residual target lambda - counts_X.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Optional

import numpy as np

from dopt.family import DifferenceFamily, canonical_form, verify_df
from dopt.modring import UnitSubgroup, orbit_index, orbit_partition, units
from dopt.params import ParameterSet

CHECKPOINT_VERSION = 1


class _BudgetExhausted(Exception):
    pass


class _Stop(Exception):
    pass


class OrbitProfile:
    """Orbit partition of Z_v under H with per-orbit difference vectors.

    ``self_diff[i, k]`` counts ordered pairs inside orbit i whose difference
    is the k-th nonzero orbit representative ``d_reps[k]``;
    ``cross[i, j, k]`` does the same for pairs split between orbits i != j
    (both orders). Full-vector sums are recovered with ``d_weights``.
    """

    def __init__(self, H: UnitSubgroup):
        self.H = H
        self.v = v = H.v
        self.orbits = orbit_partition(H)
        self.sizes = np.array([len(o) for o in self.orbits], dtype=np.int64)
        self.reps = [o.representative for o in self.orbits]
        k = len(self.orbits)
        idx = np.array(orbit_index(H))
        nz = [o for o in self.orbits if o.representative != 0]
        self.d_reps = [o.representative for o in nz]
        self.d_weights = np.array([len(o) for o in nz], dtype=np.int64)
        kd = len(nz)
        full = np.zeros((k, k, kd), dtype=np.int64)
        b = np.arange(v)
        for t, d in enumerate(self.d_reps):
            np.add.at(full, (idx[(b + d) % v], idx[b], t), 1)
        self.self_diff = np.stack([full[i, i] for i in range(k)]) if k else full[:, 0]
        cross = full + full.transpose(1, 0, 2)
        for i in range(k):
            cross[i, i] = 0
        self.cross = cross
        # reach[j]: subset sums attainable with orbits j..k-1
        reach = [frozenset({0})]
        for sz in reversed(self.sizes.tolist()):
            prev = reach[-1]
            reach.append(prev | {s + sz for s in prev})
        self.reach = reach[::-1]

    def __len__(self):
        return len(self.orbits)

    def orbit_perm(self, mu: int) -> list[int]:
        idx = orbit_index(self.H)
        return [idx[mu * r % self.v] for r in self.reps]

    def counts_of(self, chosen: Iterable[int]) -> np.ndarray:
        chosen = list(chosen)
        c = np.zeros(len(self.d_reps), dtype=np.int64)
        for a, i in enumerate(chosen):
            c += self.self_diff[i]
            for j in chosen[:a]:
                c += self.cross[i, j]
        return c


def size_combinations(profile: OrbitProfile, target: int) -> Iterator[tuple[int, ...]]:
    """Every set of orbit indices whose sizes sum to ``target``, ascending, no repeats."""
    sizes = profile.sizes.tolist()
    reach = profile.reach
    k = len(sizes)
    if target not in reach[0]:
        return

    def rec(j, rem, chosen):
        if rem == 0:
            yield tuple(chosen)
            return
        for i in range(j, k):
            if rem not in reach[i]:
                return
            if sizes[i] <= rem and rem - sizes[i] in reach[i + 1]:
                chosen.append(i)
                yield from rec(i + 1, rem - sizes[i], chosen)
                chosen.pop()

    yield from rec(0, target, [])


@dataclass
class SearchStats:
    nodes: int = 0
    solutions: int = 0
    pruned_size: int = 0
    pruned_lambda: int = 0
    x_candidates: int = 0
    seconds: float = 0.0
    exhausted: bool = False

    def merge(self, other: "SearchStats") -> None:
        for f in ("nodes", "solutions", "pruned_size", "pruned_lambda", "x_candidates"):
            setattr(self, f, getattr(self, f) + getattr(other, f))
        self.seconds = max(self.seconds, other.seconds)
        self.exhausted |= other.exhausted


@dataclass
class SearchProblem:
    ps: ParameterSet
    H: UnitSubgroup
    mode: str = "all"  # "all" or "first"
    max_nodes: Optional[int] = None
    max_seconds: Optional[float] = None
    prune: bool = True
    symmetry: bool = True
    # orbit representatives fixing X; only Y is searched
    seed_x: Optional[tuple[int, ...]] = None
    # number of X candidates already processed (resume point)
    start: int = 0

    def __post_init__(self):
        if self.ps.v != self.H.v:
            raise ValueError(f"H acts mod {self.H.v} but parameters have v={self.ps.v}")
        bad = self.ps.violations()
        if bad:
            raise ValueError(f"inconsistent parameter set {self.ps}: " + "; ".join(bad))
        if self.mode not in ("all", "first"):
            raise ValueError(f"unknown mode {self.mode!r}")


class SearchRun:
    """Iterate to receive verified families; ``stats`` and ``cursor`` update as it runs.

    ``cursor`` is the number of X candidates (in enumeration order) fully
    processed; feeding it back as ``SearchProblem.start`` resumes the run.
    With ``partition=(w, n)`` only candidates with index % n == w are expanded.
    """

    def __init__(self, problem: SearchProblem, partition: tuple[int, int] = (0, 1)):
        self.problem = problem
        self.profile = OrbitProfile(problem.H)
        self.partition = partition
        self.stats = SearchStats()
        self.cursor = problem.start
        self.finished = False
        self.last_index = -1
        self._deadline = None

    def __iter__(self) -> Iterator[DifferenceFamily]:
        p = self.problem
        t0 = time.monotonic()
        self._deadline = None if p.max_seconds is None else t0 + p.max_seconds
        try:
            yield from self._run()
            self.finished = True
        except _BudgetExhausted:
            self.stats.exhausted = True
        except _Stop:
            self.finished = True
        finally:
            self.stats.seconds = time.monotonic() - t0

    # -- internals ---------------------------------------------------------

    def _tick(self):
        p = self.problem
        if p.max_nodes is not None and self.stats.nodes >= p.max_nodes:
            raise _BudgetExhausted
        if self._deadline is not None and time.monotonic() > self._deadline:
            raise _BudgetExhausted
        self.stats.nodes += 1

    def _select(self, target_size, bound, exact):
        """Orbit subsets of total size ``target_size`` with counts <= bound.

        ``bound`` is a scalar or a per-representative vector; with ``exact``
        the leaf counts must equal it.
        """
        prof = self.profile
        sizes = prof.sizes.tolist()
        reach = prof.reach
        k = len(sizes)
        prune = self.problem.prune
        stats = self.stats
        if target_size not in reach[0]:
            stats.pruned_size += 1
            return

        def rec(j, rem, counts, acc, chosen):
            if rem == 0:
                if exact and not np.array_equal(counts, bound):
                    return
                if not exact and not prune and (counts > bound).any():
                    return
                yield tuple(chosen)
                return
            if prune:
                ok = ((counts + prof.self_diff + acc) <= bound).all(axis=1)
            for i in range(j, k):
                if rem not in reach[i]:
                    stats.pruned_size += 1
                    return
                if sizes[i] > rem or rem - sizes[i] not in reach[i + 1]:
                    continue
                if prune and not ok[i]:
                    stats.pruned_lambda += 1
                    continue
                self._tick()
                chosen.append(i)
                yield from rec(i + 1, rem - sizes[i], counts + prof.self_diff[i] + acc[i],
                               acc + prof.cross[i], chosen)
                chosen.pop()

        kd = len(prof.d_reps)
        yield from rec(0, target_size, np.zeros(kd, dtype=np.int64),
                       np.zeros((k, kd), dtype=np.int64), [])

    def _x_candidates(self) -> Iterator[tuple[int, tuple[int, ...]]]:
        p, prof = self.problem, self.profile
        if p.seed_x is not None:
            idx = orbit_index(p.H)
            chosen = tuple(sorted({idx[a % p.ps.v] for a in p.seed_x}))
            yield 0, chosen
            return
        perms = []
        if p.symmetry:
            seen = set(p.H.elements)
            for mu in units(p.ps.v):
                if mu in seen:
                    continue
                seen.update(mu * h % p.ps.v for h in p.H.elements)
                perms.append(prof.orbit_perm(mu))
        w, n = self.partition
        for index, chosen in enumerate(self._select(p.ps.r, p.ps.lam, exact=False)):
            self.last_index = index
            if index < p.start or index % n != w:
                continue
            # keep X only if it is the least of its images under Z_v^* / H
            if any(tuple(sorted(pm[c] for c in chosen)) < chosen for pm in perms):
                self.cursor = index + 1
                continue
            yield index, chosen

    def _run(self) -> Iterator[DifferenceFamily]:
        p, prof = self.problem, self.profile
        for index, xs in self._x_candidates():
            self.stats.x_candidates += 1
            cx = prof.counts_of(xs)
            target = p.ps.lam - cx
            if (target < 0).any():
                self.cursor = index + 1
                continue
            for ys in self._select(p.ps.s, target, exact=True):
                df = DifferenceFamily.from_orbits(
                    p.H, tuple(prof.reps[i] for i in xs), tuple(prof.reps[i] for i in ys))
                rep = verify_df(df, p.ps)
                if not rep.passed:
                    raise RuntimeError(f"search produced an invalid family: {rep.message}")
                self.stats.solutions += 1
                yield df
                if p.mode == "first":
                    self.cursor = index + 1
                    raise _Stop
            self.cursor = index + 1


def run_search(problem: SearchProblem) -> SearchRun:
    return SearchRun(problem)


def _worker(problem: SearchProblem, w: int, n: int):
    run = SearchRun(problem, (w, n))
    found = []
    for df in run:
        found.append((run.last_index, df))
    # first index this worker has not finished
    nxt = None if run.finished else run.cursor
    if nxt is not None:
        while nxt % n != w:
            nxt += 1
    return found, run.stats, nxt


def run_search_parallel(problem: SearchProblem, jobs: int):
    """Split top-level X candidates round-robin over ``jobs`` processes.

    Returns (families, stats, cursor); cursor is None when the search
    completed and otherwise the smallest unfinished X index.
    """
    if jobs <= 1:
        run = SearchRun(problem)
        fams = list(run)
        return fams, run.stats, (None if run.finished else run.cursor)
    if problem.max_nodes is not None:
        problem = _replace(problem, max_nodes=-(-problem.max_nodes // jobs))
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        results = list(ex.map(_worker, [problem] * jobs, range(jobs), [jobs] * jobs))
    found, stats, cursors = [], SearchStats(), []
    for f, st, nxt in results:
        found.extend(f)
        stats.merge(st)
        if nxt is not None:
            cursors.append(nxt)
    found.sort(key=lambda t: t[0])
    fams = [df for _, df in found]
    if problem.mode == "first":
        fams = fams[:1]
        cursors = []
    return fams, stats, (min(cursors) if cursors else None)


def _replace(problem: SearchProblem, **kw) -> SearchProblem:
    from dataclasses import replace
    return replace(problem, **kw)


def dedupe(families: Iterable[DifferenceFamily]) -> Iterator[DifferenceFamily]:
    """One family per equivalence class, in order of first appearance."""
    seen = set()
    for df in families:
        key = canonical_form(df)
        if key in seen:
            continue
        seen.add(key)
        yield df


# -- checkpoint files -------------------------------------------------------

@dataclass
class Checkpoint:
    ps: ParameterSet
    H: tuple[int, ...]
    cursor: int
    stats: SearchStats = field(default_factory=SearchStats)
    prune: bool = True
    symmetry: bool = True
    seed_x: Optional[tuple[int, ...]] = None

    def to_text(self) -> str:
        st = self.stats
        lines = [
            f"dopt-search-checkpoint {CHECKPOINT_VERSION}",
            "ps " + " ".join(map(str, self.ps.astuple())),
            "H " + " ".join(map(str, self.H)),
            f"prune {int(self.prune)}",
            f"symmetry {int(self.symmetry)}",
            "seed " + (" ".join(map(str, self.seed_x)) if self.seed_x is not None else "-"),
            f"cursor {self.cursor}",
            f"nodes {st.nodes}",
            f"solutions {st.solutions}",
            f"pruned_size {st.pruned_size}",
            f"pruned_lambda {st.pruned_lambda}",
            f"x_candidates {st.x_candidates}",
            f"seconds {st.seconds:.3f}",
        ]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Checkpoint":
        lines = text.splitlines()
        head = lines[0].split() if lines else []
        if len(head) != 2 or head[0] != "dopt-search-checkpoint":
            raise ValueError("not a search checkpoint")
        if int(head[1]) != CHECKPOINT_VERSION:
            raise ValueError(f"unsupported checkpoint version {head[1]}")
        kv = {}
        for ln in lines[1:]:
            k, _, val = ln.partition(" ")
            kv[k] = val
        ints = lambda k: tuple(int(t) for t in kv[k].split())  # noqa: E731
        st = SearchStats(nodes=int(kv["nodes"]), solutions=int(kv["solutions"]),
                         pruned_size=int(kv["pruned_size"]), pruned_lambda=int(kv["pruned_lambda"]),
                         x_candidates=int(kv["x_candidates"]), seconds=float(kv["seconds"]),
                         exhausted=True)
        seed = None if kv.get("seed", "-") == "-" else ints("seed")
        return cls(ParameterSet(*ints("ps")), ints("H"), int(kv["cursor"]), st,
                   kv["prune"] == "1", kv["symmetry"] == "1", seed)

    def save(self, path) -> None:
        Path(path).write_text(self.to_text())

    @classmethod
    def load(cls, path) -> "Checkpoint":
        return cls.from_text(Path(path).read_text())
