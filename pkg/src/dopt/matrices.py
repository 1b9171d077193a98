"""+-1 circulants, the 2x2 block array and exact determinant certification.

From blocks X, Y of Z_v we build circulants A, B (first-row entry -1 on the
block, +1 elsewhere) and

    M = [[ A,    B  ],
         [-B^T,  A^T]]

of order m = 2v. When A, B commute and AA^T + BB^T = (m-2)I + 2J, the
determinant of M attains 2^v (m-1) (v-1)^(v-1).
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Optional, Sequence

from dopt.family import Block, DifferenceFamily, VerificationReport, verify_df
from dopt.params import ParameterSet, alpha_bound

DET_AUTO_MAX_ORDER = 30


class DeterminantBudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class SignSequence:
    entries: tuple[int, ...]

    @property
    def v(self) -> int:
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __len__(self):
        return len(self.entries)


@dataclass(frozen=True)
class CirculantMatrix:
    first_row: SignSequence

    @property
    def order(self) -> int:
        return len(self.first_row)

    def row(self, i: int) -> tuple[int, ...]:
        # row i is the first row shifted right by i
        a, v = self.first_row.entries, self.order
        return tuple(a[(j - i) % v] for j in range(v))

    def column_row(self, i: int) -> tuple[int, ...]:
        """Row i of the transpose."""
        a, v = self.first_row.entries, self.order
        return tuple(a[(i - j) % v] for j in range(v))

    def rows(self) -> list[tuple[int, ...]]:
        return [self.row(i) for i in range(self.order)]


@dataclass(frozen=True)
class BlockMatrix:
    order: int
    rows: tuple[tuple[int, ...], ...]

    def to_text(self) -> str:
        lines = [f"order {self.order}"]
        lines += ["".join("+" if e > 0 else "-" for e in r) for r in self.rows]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "BlockMatrix":
        lines = text.splitlines()
        if not lines or not lines[0].startswith("order "):
            raise ValueError("matrix file must start with 'order m'")
        m = int(lines[0].split()[1])
        rows = tuple(tuple(1 if c == "+" else -1 for c in ln) for ln in lines[1:m + 1])
        if len(rows) != m or any(len(r) != m for r in rows):
            raise ValueError(f"expected {m} rows of length {m}")
        return cls(m, rows)


@dataclass
class GramReport:
    passed: bool
    # (row, column, got, expected) of the first bad entry of AA^T + BB^T
    first_violation: Optional[tuple[int, int, int, int]] = None
    commute: bool = True


def circulant_from_block(B: Block) -> CirculantMatrix:
    mask = B.mask
    return CirculantMatrix(SignSequence(tuple(-1 if i in mask else 1 for i in range(B.v))))


def paf(seq: SignSequence | CirculantMatrix, d: int) -> int:
    if isinstance(seq, CirculantMatrix):
        seq = seq.first_row
    a, v = seq.entries, len(seq)
    if not 1 <= d < v:
        raise ValueError(f"shift {d} outside [1, {v})")
    return sum(a[i] * a[(i + d) % v] for i in range(v))


def _circulant_product_row(a: Sequence[int], b: Sequence[int]) -> list[int]:
    # first row of C(a) C(b): entry j = sum_k a_k b_{j-k}
    v = len(a)
    return [sum(a[k] * b[(j - k) % v] for k in range(v)) for j in range(v)]


def gram_check(A: CirculantMatrix, B: CirculantMatrix) -> GramReport:
    v = A.order
    if B.order != v:
        raise ValueError(f"order mismatch: {v} vs {B.order}")
    a, b = A.first_row.entries, B.first_row.entries
    commute = _circulant_product_row(a, b) == _circulant_product_row(b, a)
    for d in range(1, v):
        got = paf(A.first_row, d) + paf(B.first_row, d)
        if got != 2:
            return GramReport(False, (0, d, got, 2), commute)
    return GramReport(commute, None, commute)


def assemble(A: CirculantMatrix, B: CirculantMatrix) -> BlockMatrix:
    v = A.order
    if B.order != v:
        raise ValueError(f"order mismatch: {v} vs {B.order}")
    top = [A.row(i) + B.row(i) for i in range(v)]
    bottom = [tuple(-e for e in B.column_row(i)) + A.column_row(i) for i in range(v)]
    return BlockMatrix(2 * v, tuple(top + bottom))


def det_exact(M, budget_seconds: Optional[float] = None) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination.

    Accepts a BlockMatrix or any square sequence of integer rows. Raises
    DeterminantBudgetExceeded if ``budget_seconds`` runs out.
    """
    rows = M.rows if isinstance(M, BlockMatrix) else M
    a = [list(r) for r in rows]
    n = len(a)
    if n == 0:
        return 1
    if any(len(r) != n for r in a):
        raise ValueError("matrix is not square")
    deadline = None if budget_seconds is None else time.monotonic() + budget_seconds
    sign, prev = 1, 1
    for k in range(n - 1):
        if deadline is not None and time.monotonic() > deadline:
            raise DeterminantBudgetExceeded(f"stopped at pivot {k} of {n}")
        p = next((i for i in range(k, n) if a[i][k] != 0), None)
        if p is None:
            return 0
        if p != k:
            a[k], a[p] = a[p], a[k]
            sign = -sign
        rk = a[k]
        pk = rk[k]
        tail = rk[k + 1:]
        for i in range(k + 1, n):
            ri = a[i]
            f = ri[k]
            # division is exact: every intermediate entry is a minor
            ri[k + 1:] = [(x * pk - f * y) // prev for x, y in zip(ri[k + 1:], tail)]
            ri[k] = 0
        prev = pk
    return sign * a[n - 1][n - 1]


@dataclass
class Certificate:
    df_report: VerificationReport
    gram: GramReport
    det_status: str = "not-run"  # not-run | pass | fail | skipped
    det_value: Optional[int] = None
    bound: Optional[int] = None

    @property
    def passed(self) -> bool:
        return self.df_report.passed and self.gram.passed and self.det_status in ("pass", "not-run", "skipped")


def certify_d_optimal(df: DifferenceFamily, ps: ParameterSet, det: Optional[bool] = None,
                      det_budget: Optional[float] = None) -> Certificate:
    """Check a family at three levels: block differences, Gram identity, determinant.

    ``det=None`` runs the determinant level only for orders up to
    DET_AUTO_MAX_ORDER. A determinant that overruns ``det_budget`` is
    recorded as skipped.
    """
    rep = verify_df(df, ps) if df.v == ps.v else VerificationReport(
        False, False, [], f"modulus mismatch {df.v} != {ps.v}")
    A, B = circulant_from_block(df.X), circulant_from_block(df.Y)
    cert = Certificate(rep, gram_check(A, B))
    if det is None:
        det = 2 * df.v <= DET_AUTO_MAX_ORDER
    if det and df.v >= 3 and df.v % 2 == 1:
        cert.bound = alpha_bound(df.v).value
        try:
            cert.det_value = det_exact(assemble(A, B), det_budget)
        except DeterminantBudgetExceeded:
            cert.det_status = "skipped"
        else:
            cert.det_status = "pass" if cert.det_value == cert.bound else "fail"
    return cert
