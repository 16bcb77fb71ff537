"""Sparse exact integer linear algebra.

The Smith normal form kernel works on dict-of-dicts sparse matrices with
arbitrary-precision integer entries.  Elimination runs in two stages:

* unit stage: pivots of absolute value 1 are taken greedily in order of
  Markowitz fill cost (ties broken by row then column ordinal), so the
  bulk of a boundary matrix reduces without any coefficient growth;
* core stage: whatever remains is handled by textbook gcd elimination
  with the divisibility chain enforced before each pivot is retired.

Row operations can optionally be journalled (to reconstruct columns of
the inverse row transform) or applied to carried payload vectors, and
column operations can be journalled to reconstruct kernel basis vectors,
so the unimodular transforms never have to be materialized for large
production matrices.  Dense materialization of both transforms is
available for desk-scale matrices via ``want_transforms``.

Everything is deterministic: pivot policy, tie-breaks and output
ordering do not depend on hashing or scheduling.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from heapq import heappop, heappush
from math import gcd, lcm
from typing import Iterable, Sequence


class ResourceLimitError(RuntimeError):
    """A configured entry-count or wall-clock cap was exceeded."""


@dataclass(frozen=True)
class ResourceCaps:
    """Explicit limits for the elimination kernels.

    ``max_entries`` bounds the number of stored nonzeros (fill included),
    ``max_minutes`` bounds wall-clock time per elimination run.
    """

    max_entries: int = 40_000_000
    max_minutes: float | None = None

    def start(self) -> "_Clock":
        deadline = None
        if self.max_minutes is not None:
            deadline = time.monotonic() + self.max_minutes * 60.0
        return _Clock(deadline)


DEFAULT_CAPS = ResourceCaps()


class _Clock:
    __slots__ = ("deadline", "ticks")

    def __init__(self, deadline):
        self.deadline = deadline
        self.ticks = 0

    def tick(self):
        if self.deadline is not None:
            self.ticks += 1
            if self.ticks % 64 == 0 and time.monotonic() > self.deadline:
                raise ResourceLimitError("time cap exceeded during elimination")


class SparseIntMatrix:
    """Immutable-by-convention sparse integer matrix, dict of row dicts."""

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows: int, ncols: int):
        self.nrows = nrows
        self.ncols = ncols
        self.rows: dict[int, dict[int, int]] = {}

    @classmethod
    def from_columns(
        cls, nrows: int, columns: Iterable[dict[int, int]]
    ) -> "SparseIntMatrix":
        cols = list(columns)
        m = cls(nrows, len(cols))
        for j, col in enumerate(cols):
            for i, v in col.items():
                if v:
                    m.rows.setdefault(i, {})[j] = v
        return m

    @classmethod
    def from_entries(
        cls, nrows: int, ncols: int, entries: Iterable[tuple[int, int, int]]
    ) -> "SparseIntMatrix":
        m = cls(nrows, ncols)
        for i, j, v in entries:
            if v:
                m.rows.setdefault(i, {})[j] = v
        return m

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[int]]) -> "SparseIntMatrix":
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        m = cls(nrows, ncols)
        for i, row in enumerate(rows):
            d = {j: v for j, v in enumerate(row) if v}
            if d:
                m.rows[i] = d
        return m

    @classmethod
    def identity(cls, n: int) -> "SparseIntMatrix":
        m = cls(n, n)
        for i in range(n):
            m.rows[i] = {i: 1}
        return m

    def get(self, i: int, j: int) -> int:
        return self.rows.get(i, {}).get(j, 0)

    def set_entry(self, i: int, j: int, v: int) -> None:
        if v:
            self.rows.setdefault(i, {})[j] = v
        else:
            row = self.rows.get(i)
            if row and j in row:
                del row[j]
                if not row:
                    del self.rows[i]

    def entry_count(self) -> int:
        return sum(len(r) for r in self.rows.values())

    def entries(self) -> Iterable[tuple[int, int, int]]:
        for i in sorted(self.rows):
            row = self.rows[i]
            for j in sorted(row):
                yield i, j, row[j]

    def column(self, j: int) -> dict[int, int]:
        return {i: row[j] for i, row in self.rows.items() if j in row}

    def transpose(self) -> "SparseIntMatrix":
        t = SparseIntMatrix(self.ncols, self.nrows)
        for i, row in self.rows.items():
            for j, v in row.items():
                t.rows.setdefault(j, {})[i] = v
        return t

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for i, row in self.rows.items():
            for j, v in row.items():
                out[i][j] = v
        return out

    def matmul(self, other: "SparseIntMatrix") -> "SparseIntMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        out = SparseIntMatrix(self.nrows, other.ncols)
        for i, row in self.rows.items():
            acc: dict[int, int] = {}
            for k, v in row.items():
                orow = other.rows.get(k)
                if not orow:
                    continue
                for j, w in orow.items():
                    acc[j] = acc.get(j, 0) + v * w
            acc = {j: v for j, v in acc.items() if v}
            if acc:
                out.rows[i] = acc
        return out

    def apply_to_vector(self, vec: dict[int, int]) -> dict[int, int]:
        """Matrix times sparse column vector."""
        out: dict[int, int] = {}
        for i, row in self.rows.items():
            s = 0
            for j, v in row.items():
                x = vec.get(j)
                if x:
                    s += v * x
            if s:
                out[i] = s
        return out

    def is_zero(self) -> bool:
        return not self.rows

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseIntMatrix):
            return NotImplemented
        return (
            self.nrows == other.nrows
            and self.ncols == other.ncols
            and self.rows == other.rows
        )

    def __repr__(self) -> str:
        return f"SparseIntMatrix({self.nrows}x{self.ncols}, nnz={self.entry_count()})"


# ---------------------------------------------------------------------------
# Elimination engine


class _Elim:
    """Shared two-stage elimination over Z (modulus None) or F_p."""

    def __init__(
        self,
        matrix: SparseIntMatrix,
        *,
        modulus: int | None = None,
        payloads: Sequence[dict[int, int]] = (),
        log_rows: bool = False,
        log_cols: bool = False,
        caps: ResourceCaps = DEFAULT_CAPS,
    ):
        self.mod = modulus
        self.nrows = matrix.nrows
        self.ncols = matrix.ncols
        self.rows: dict[int, dict[int, int]] = {}
        self.cols: dict[int, set[int]] = {}
        self.nnz = 0
        for i, row in matrix.rows.items():
            if modulus is None:
                r = dict(row)
            else:
                r = {j: v % modulus for j, v in row.items() if v % modulus}
            if r:
                self.rows[i] = r
                self.nnz += len(r)
                for j in r:
                    self.cols.setdefault(j, set()).add(i)
        self.payloads = [{i: v for i, v in p.items() if v} for p in payloads]
        self.row_log: list[tuple] | None = [] if log_rows else None
        self.col_log: list[tuple] | None = [] if log_cols else None
        self.pivots: list[tuple[int, int, int]] = []  # (row, col, value > 0)
        self.caps = caps
        self.clock = caps.start()
        # Heap keys are (cost, row, col) packed into one integer; integer
        # comparisons keep the pop cost low and the order is the same
        # lexicographic one as for tuples.
        self._pr = max(self.nrows, 1)
        self._pc = max(self.ncols, 1)
        self.heap: list[int] = []

    # -- primitive operations (journalled / payload-aware) --

    def _bump(self, delta: int) -> None:
        self.nnz += delta
        if self.nnz > self.caps.max_entries:
            raise ResourceLimitError(
                f"entry cap {self.caps.max_entries} exceeded during elimination"
            )

    def _row_axpy(self, dst: int, src: int, q: int) -> None:
        """row[dst] += q * row[src]

        Heap candidates are only pushed for entries that become units;
        entries that stay units keep their existing record (stale costs
        are corrected when popped)."""
        if not q:
            return
        mod = self.mod
        rows = self.rows
        rdst = rows.get(dst)
        if rdst is None:
            rdst = rows[dst] = {}
        rsrc = rows.get(src, {})
        cols = self.cols
        delta = 0
        if mod is None:
            for j, v in rsrc.items():
                cur = rdst.get(j)
                if cur is None:
                    nv = q * v
                    rdst[j] = nv
                    cols[j].add(dst)
                    delta += 1
                    if nv == 1 or nv == -1:
                        self._push(dst, j)
                else:
                    nv = cur + q * v
                    if nv:
                        rdst[j] = nv
                        if (nv == 1 or nv == -1) and cur != 1 and cur != -1:
                            self._push(dst, j)
                    else:
                        del rdst[j]
                        cols[j].discard(dst)
                        delta -= 1
        else:
            for j, v in rsrc.items():
                cur = rdst.get(j)
                if cur is None:
                    nv = (q * v) % mod
                    if nv:
                        rdst[j] = nv
                        cols[j].add(dst)
                        delta += 1
                        self._push(dst, j)
                else:
                    nv = (cur + q * v) % mod
                    if nv:
                        rdst[j] = nv
                    else:
                        del rdst[j]
                        cols[j].discard(dst)
                        delta -= 1
        if not rdst:
            del rows[dst]
        self._bump(delta)
        for p in self.payloads:
            x = p.get(src)
            if x:
                nv = p.get(dst, 0) + q * x
                if mod is not None:
                    nv %= mod
                if nv:
                    p[dst] = nv
                else:
                    p.pop(dst, None)
        if self.row_log is not None:
            self.row_log.append(("axpy", dst, src, q))

    def _row_neg(self, r: int) -> None:
        row = self.rows.get(r)
        if row:
            for j in row:
                row[j] = -row[j] if self.mod is None else (-row[j]) % self.mod
        for p in self.payloads:
            if r in p:
                p[r] = -p[r]
        if self.row_log is not None:
            self.row_log.append(("neg", r))

    def _col_axpy(self, dst: int, src: int, q: int) -> None:
        """col[dst] += q * col[src]"""
        if not q:
            return
        mod = self.mod
        cols = self.cols
        delta = 0
        for i in list(cols.get(src, ())):
            row = self.rows[i]
            v = row[src]
            cur = row.get(dst)
            if cur is None:
                nv = q * v if mod is None else (q * v) % mod
                if nv:
                    row[dst] = nv
                    cols.setdefault(dst, set()).add(i)
                    delta += 1
                    if mod is not None or nv == 1 or nv == -1:
                        self._push(i, dst)
            else:
                nv = cur + q * v if mod is None else (cur + q * v) % mod
                if nv:
                    row[dst] = nv
                    if (
                        mod is None
                        and (nv == 1 or nv == -1)
                        and cur != 1
                        and cur != -1
                    ):
                        self._push(i, dst)
                else:
                    del row[dst]
                    cols[dst].discard(i)
                    delta -= 1
        self._bump(delta)
        if self.col_log is not None:
            self.col_log.append(("axpy", dst, src, q))

    # -- pivot bookkeeping --

    def _push(self, r: int, c: int) -> None:
        row = self.rows.get(r)
        if row is None or c not in row:
            return
        cost = (len(row) - 1) * (len(self.cols[c]) - 1)
        heappush(self.heap, (cost * self._pr + r) * self._pc + c)

    def _retire(self, r: int, c: int, value: int) -> None:
        """Retire pivot (r, c): the column is already clear, so the
        remaining row entries are removed by column operations that touch
        no other live row.  Records the pivot and drops row r, column c."""
        row = self.rows.pop(r, {})
        self.nnz -= len(row)
        inv = None if self.mod is None else pow(value, -1, self.mod)
        for j in sorted(row):
            self.cols[j].discard(r)
            if j == c:
                continue
            if self.col_log is not None:
                v = row[j]
                q = -v * value if self.mod is None else (-v * inv) % self.mod
                self.col_log.append(("axpy", j, c, q))
        self.cols.pop(c, None)
        self.pivots.append((r, c, abs(value) if self.mod is None else 1))

    # -- unit stage --

    def _seed_heap(self) -> None:
        for i in sorted(self.rows):
            row = self.rows[i]
            for j in sorted(row):
                v = row[j]
                if self.mod is not None or v == 1 or v == -1:
                    self._push(i, j)

    def _unit_stage(self) -> None:
        heap = self.heap
        mod = self.mod
        pr, pc = self._pr, self._pc
        while heap:
            key = heappop(heap)
            rest, c = divmod(key, pc)
            cost, r = divmod(rest, pr)
            row = self.rows.get(r)
            if row is None:
                continue
            v = row.get(c)
            if v is None:
                continue
            if mod is None and v != 1 and v != -1:
                continue
            cur = (len(row) - 1) * (len(self.cols[c]) - 1)
            if cur != cost:
                heappush(heap, (cur * pr + r) * pc + c)
                continue
            self.clock.tick()
            if mod is None:
                if v == -1:
                    self._row_neg(r)
                    v = 1
                for i in sorted(self.cols[c]):
                    if i != r:
                        self._row_axpy(i, r, -self.rows[i][c])
            else:
                inv = pow(v, -1, mod)
                for i in sorted(self.cols[c]):
                    if i != r:
                        self._row_axpy(i, r, (-self.rows[i][c] * inv) % mod)
            self._retire(r, c, v)

    def _unit_stage_fast(self) -> None:
        """Same pivot sequence as _unit_stage, with the row update inlined.

        Only valid when no payloads are carried and no journal is kept;
        produces bit-identical state to the general loop."""
        heap = self.heap
        rows = self.rows
        cols = self.cols
        mod = self.mod
        pr, pc = self._pr, self._pc
        nnz = self.nnz
        max_entries = self.caps.max_entries
        clock = self.clock
        while heap:
            key = heappop(heap)
            rest, c = divmod(key, pc)
            cost, r = divmod(rest, pr)
            rrow = rows.get(r)
            if rrow is None:
                continue
            v = rrow.get(c)
            if v is None:
                continue
            if mod is None and v != 1 and v != -1:
                continue
            ccol = cols[c]
            cur = (len(rrow) - 1) * (len(ccol) - 1)
            if cur != cost:
                heappush(heap, (cur * pr + r) * pc + c)
                continue
            clock.tick()
            if mod is None and v == -1:
                for j in rrow:
                    rrow[j] = -rrow[j]
                v = 1
            inv = None if mod is None else pow(v, -1, mod)
            items = list(rrow.items())
            for i in sorted(ccol):
                if i == r:
                    continue
                irow = rows[i]
                if mod is None:
                    q = -irow[c]
                    for j, w in items:
                        cur2 = irow.get(j)
                        if cur2 is None:
                            nv = q * w
                            irow[j] = nv
                            cols[j].add(i)
                            nnz += 1
                            if nv == 1 or nv == -1:
                                heappush(
                                    heap,
                                    (
                                        (len(irow) - 1) * (len(cols[j]) - 1) * pr
                                        + i
                                    )
                                    * pc
                                    + j,
                                )
                        else:
                            nv = cur2 + q * w
                            if nv:
                                irow[j] = nv
                                if (nv == 1 or nv == -1) and cur2 != 1 and cur2 != -1:
                                    heappush(
                                        heap,
                                        (
                                            (len(irow) - 1)
                                            * (len(cols[j]) - 1)
                                            * pr
                                            + i
                                        )
                                        * pc
                                        + j,
                                    )
                            else:
                                del irow[j]
                                cols[j].discard(i)
                                nnz -= 1
                else:
                    q = (-irow[c] * inv) % mod
                    for j, w in items:
                        cur2 = irow.get(j)
                        if cur2 is None:
                            nv = (q * w) % mod
                            if nv:
                                irow[j] = nv
                                cols[j].add(i)
                                nnz += 1
                                heappush(
                                    heap,
                                    (
                                        (len(irow) - 1) * (len(cols[j]) - 1) * pr
                                        + i
                                    )
                                    * pc
                                    + j,
                                )
                        else:
                            nv = (cur2 + q * w) % mod
                            if nv:
                                irow[j] = nv
                            else:
                                del irow[j]
                                cols[j].discard(i)
                                nnz -= 1
                if not irow:
                    del rows[i]
                if nnz > max_entries:
                    self.nnz = nnz
                    raise ResourceLimitError(
                        f"entry cap {max_entries} exceeded during elimination"
                    )
            self.nnz = nnz
            self._retire(r, c, v)
            nnz = self.nnz
        self.nnz = nnz

    # -- core stage (exact arithmetic only) --

    def _min_entry(self) -> tuple[int, int] | None:
        best = None
        where = None
        for i in sorted(self.rows):
            row = self.rows[i]
            for j in sorted(row):
                v = abs(row[j])
                if best is None or v < best:
                    best, where = v, (i, j)
        return where

    def _core_stage(self) -> None:
        assert self.mod is None
        while True:
            pos = self._min_entry()
            if pos is None:
                break
            r, c = pos
            while True:
                self.clock.tick()
                if self.rows[r][c] < 0:
                    self._row_neg(r)
                pivot = self.rows[r][c]
                # Clear the pivot column with row operations; a nonzero
                # remainder is strictly smaller and becomes the new pivot.
                switched = False
                for i in sorted(self.cols[c]):
                    if i == r:
                        continue
                    row_i = self.rows.get(i)
                    if row_i is None or c not in row_i:
                        continue
                    self._row_axpy(i, r, -(row_i[c] // pivot))
                    if c in self.rows.get(i, {}):
                        r = i
                        switched = True
                        break
                if switched:
                    continue
                # Clear the pivot row with column operations (these only
                # touch row r because the pivot column is clear now).
                pivot = self.rows[r][c]
                for j in sorted(self.rows[r]):
                    if j == c:
                        continue
                    self._col_axpy(j, c, -(self.rows[r][j] // pivot))
                    if j in self.rows.get(r, {}):
                        c = j
                        switched = True
                        break
                if switched:
                    continue
                # Lone pivot: enforce that it divides every remaining entry.
                pivot = self.rows[r][c]
                offender = None
                for i in sorted(self.rows):
                    if i == r:
                        continue
                    if any(v % pivot for v in self.rows[i].values()):
                        offender = i
                        break
                if offender is None:
                    break
                self._row_axpy(r, offender, 1)
            self._retire(r, c, self.rows[r][c])

    def run(self) -> None:
        self._seed_heap()
        if self.payloads or self.row_log is not None or self.col_log is not None:
            self._unit_stage()
        else:
            self._unit_stage_fast()
        if self.mod is None and self.rows:
            self._core_stage()
        assert not self.rows, "elimination left live entries behind"


# ---------------------------------------------------------------------------
# Public results


@dataclass
class SmithForm:
    """Diagonal d_1 | d_2 | ... | d_r plus optional unimodular transforms."""

    nrows: int
    ncols: int
    factors: tuple[int, ...]
    U: SparseIntMatrix | None = None
    V: SparseIntMatrix | None = None

    @property
    def rank(self) -> int:
        return len(self.factors)

    @property
    def nontrivial_factors(self) -> tuple[int, ...]:
        return tuple(d for d in self.factors if d != 1)

    def diagonal_matrix(self) -> SparseIntMatrix:
        d = SparseIntMatrix(self.nrows, self.ncols)
        for t, v in enumerate(self.factors):
            d.rows[t] = {t: v}
        return d


@dataclass
class ImageReduction:
    """Vectors carried through the row transform of an SNF of a matrix.

    Answers lattice questions about the matrix's column span: for each
    carried vector, the transformed entries on pivot rows are paired with
    their invariant factors, and ``residue_nonzero`` flags a nonzero
    entry on a never-pivoted row (no multiple of the vector lies in the
    span in that case).
    """

    factors: tuple[int, ...]
    pivot_values: list[list[tuple[int, int]]]
    residue_nonzero: list[bool]

    def order_in_cokernel(self, idx: int) -> int | None:
        """Smallest k >= 1 with k * z in the column span; None if infinite."""
        if self.residue_nonzero[idx]:
            return None
        order = 1
        for d, w in self.pivot_values[idx]:
            order = lcm(order, d // gcd(d, w))
        return order

    def in_image(self, idx: int) -> bool:
        return self.order_in_cokernel(idx) == 1


def _check_divisibility(factors: Sequence[int]) -> None:
    for a, b in zip(factors, factors[1:]):
        assert b % a == 0, f"invariant factors out of order: {a}, {b}"


def invariant_factors(
    m: SparseIntMatrix, caps: ResourceCaps = DEFAULT_CAPS
) -> tuple[int, ...]:
    """Invariant factors of m (including the leading 1s)."""
    e = _Elim(m, caps=caps)
    e.run()
    factors = tuple(d for _, _, d in e.pivots)
    _check_divisibility(factors)
    return factors


def rank_mod_p(m: SparseIntMatrix, p: int, caps: ResourceCaps = DEFAULT_CAPS) -> int:
    if p < 2:
        raise ValueError("modulus must be a prime >= 2")
    e = _Elim(m, modulus=p, caps=caps)
    e.run()
    return len(e.pivots)


def _dict_axpy(dst: dict[int, int], src: dict[int, int], q: int) -> None:
    if not q:
        return
    for j, v in src.items():
        nv = dst.get(j, 0) + q * v
        if nv:
            dst[j] = nv
        else:
            dst.pop(j, None)


def _replay_col_ops(col_log: list[tuple], vec: dict[int, int]) -> dict[int, int]:
    """Apply V = F_1 F_2 ... F_K to a sparse vector, innermost factor first."""
    v = dict(vec)
    for op in reversed(col_log):
        if op[0] == "axpy":
            _, dst, src, q = op
            x = v.get(dst)
            if x:
                nv = v.get(src, 0) + q * x
                if nv:
                    v[src] = nv
                else:
                    v.pop(src, None)
        else:
            _, c = op
            if c in v:
                v[c] = -v[c]
    return v


def _replay_row_ops_inverse(
    row_log: list[tuple], vec: dict[int, int]
) -> dict[int, int]:
    """Apply U^{-1} = O_1^{-1} ... O_K^{-1} to a sparse vector.

    The inverse of row[dst] += q * row[src] is the same update with -q;
    negations are their own inverse."""
    v = dict(vec)
    for op in reversed(row_log):
        if op[0] == "axpy":
            _, dst, src, q = op
            x = v.get(src)
            if x:
                nv = v.get(dst, 0) - q * x
                if nv:
                    v[dst] = nv
                else:
                    v.pop(dst, None)
            continue
        _, r = op
        if r in v:
            v[r] = -v[r]
    return v


def smith_normal_form(
    m: SparseIntMatrix,
    want_transforms: bool = False,
    caps: ResourceCaps = DEFAULT_CAPS,
) -> SmithForm:
    """Smith normal form; with transforms, U * m * V equals the diagonal.

    Transform materialization is quadratic in the number of rows and
    columns and is intended for desk-scale matrices only.
    """
    if not want_transforms:
        return SmithForm(m.nrows, m.ncols, invariant_factors(m, caps))
    e = _Elim(m, log_rows=True, log_cols=True, caps=caps)
    e.run()
    factors = tuple(d for _, _, d in e.pivots)
    _check_divisibility(factors)
    row_order = [r for r, _, _ in e.pivots]
    row_order += sorted(set(range(m.nrows)) - set(row_order))
    col_order = [c for _, c, _ in e.pivots]
    col_order += sorted(set(range(m.ncols)) - set(col_order))

    raw_u = SparseIntMatrix.identity(m.nrows)
    for op in e.row_log:
        if op[0] == "axpy":
            _, dst, src, q = op
            _dict_axpy(raw_u.rows.setdefault(dst, {}), raw_u.rows.get(src, {}), q)
            if not raw_u.rows[dst]:
                del raw_u.rows[dst]
        else:
            _, r = op
            row = raw_u.rows.get(r)
            if row:
                for j in row:
                    row[j] = -row[j]
    u = SparseIntMatrix(m.nrows, m.nrows)
    for t, r in enumerate(row_order):
        if r in raw_u.rows:
            u.rows[t] = raw_u.rows[r]

    v = SparseIntMatrix(m.ncols, m.ncols)
    for t, c in enumerate(col_order):
        col = _replay_col_ops(e.col_log, {c: 1})
        for i, val in col.items():
            if val:
                v.rows.setdefault(i, {})[t] = val
    return SmithForm(m.nrows, m.ncols, factors, U=u, V=v)


def reduce_against_image(
    m: SparseIntMatrix,
    vectors: Sequence[dict[int, int]],
    caps: ResourceCaps = DEFAULT_CAPS,
) -> ImageReduction:
    """Carry vectors through the SNF row transform of m."""
    e = _Elim(m, payloads=vectors, caps=caps)
    e.run()
    factors = tuple(d for _, _, d in e.pivots)
    _check_divisibility(factors)
    pivot_of_row = {r: d for r, _, d in e.pivots}
    pivot_values = []
    residue = []
    for p in e.payloads:
        vals = []
        bad = False
        for r, w in p.items():
            d = pivot_of_row.get(r)
            if d is None:
                if w:
                    bad = True
                    break
            elif w % d:
                vals.append((d, w))
        pivot_values.append(vals)
        residue.append(bad)
    return ImageReduction(factors, pivot_values, residue)


def kernel_basis(
    m: SparseIntMatrix, caps: ResourceCaps = DEFAULT_CAPS
) -> SparseIntMatrix:
    """Basis of the integer kernel as columns of an ncols x k matrix.

    The columns span the kernel as a saturated sublattice (they are the
    column transform applied to the unpivoted coordinate vectors).
    """
    e = _Elim(m, log_cols=True, caps=caps)
    e.run()
    pivot_cols = {c for _, c, _ in e.pivots}
    free_cols = [j for j in range(m.ncols) if j not in pivot_cols]
    out = SparseIntMatrix(m.ncols, len(free_cols))
    for t, j in enumerate(free_cols):
        col = _replay_col_ops(e.col_log, {j: 1})
        for i, v in col.items():
            if v:
                out.rows.setdefault(i, {})[t] = v
    return out


def cokernel_torsion_basis(
    m: SparseIntMatrix, caps: ResourceCaps = DEFAULT_CAPS
) -> list[tuple[dict[int, int], int]]:
    """Vectors whose classes generate the torsion of coker(m).

    Returns (vector, order) pairs, one per invariant factor > 1; the
    vectors are the matching columns of the inverse row transform,
    reconstructed by replaying the journalled row operations backwards.
    """
    e = _Elim(m, log_rows=True, caps=caps)
    e.run()
    out = []
    for r, _, d in e.pivots:
        if d > 1:
            vec = _replay_row_ops_inverse(e.row_log, {r: 1})
            out.append((vec, d))
    return out


# ---------------------------------------------------------------------------
# Hermite bases for integer lattices


class HermiteBasis:
    """Column-style Hermite form of an integer lattice, built incrementally.

    Basis columns are kept in echelon form by leading row; ``canonical``
    additionally reduces off-pivot entries into [0, pivot), so two equal
    lattices produce identical canonical output.
    """

    def __init__(self, dim: int):
        self.dim = dim
        self.columns: list[dict[int, int]] = []  # echelon, sorted by lead row
        self.leads: list[int] = []

    @classmethod
    def from_columns(
        cls, dim: int, columns: Iterable[dict[int, int]]
    ) -> "HermiteBasis":
        h = cls(dim)
        for c in columns:
            h.add(c)
        return h

    def rank(self) -> int:
        return len(self.columns)

    def add(self, vec: dict[int, int]) -> None:
        v = {i: x for i, x in vec.items() if x}
        pos = 0
        while v:
            lead = min(v)
            while pos < len(self.leads) and self.leads[pos] < lead:
                pos += 1
            if pos == len(self.leads) or self.leads[pos] > lead:
                if v[lead] < 0:
                    v = {i: -x for i, x in v.items()}
                self.columns.insert(pos, v)
                self.leads.insert(pos, lead)
                return
            col = self.columns[pos]
            a, b = col[lead], v[lead]
            if b % a == 0:
                _dict_axpy(v, col, -(b // a))
            else:
                g = gcd(a, b)
                x, y = _bezout(a, b)
                new_col: dict[int, int] = {}
                _dict_axpy(new_col, col, x)
                _dict_axpy(new_col, v, y)
                rem: dict[int, int] = {}
                _dict_axpy(rem, col, -(b // g))
                _dict_axpy(rem, v, a // g)
                self.columns[pos] = new_col
                v = rem

    def reduce(self, vec: dict[int, int]) -> dict[int, int]:
        """Residue of vec after eliminating with the current basis."""
        v = {i: x for i, x in vec.items() if x}
        for lead, col in zip(self.leads, self.columns):
            x = v.get(lead)
            if x:
                q = x // col[lead]
                if q:
                    _dict_axpy(v, col, -q)
        return v

    def contains(self, vec: dict[int, int]) -> bool:
        v = {i: x for i, x in vec.items() if x}
        for lead, col in zip(self.leads, self.columns):
            x = v.get(lead)
            if x:
                if x % col[lead]:
                    return False
                _dict_axpy(v, col, -(x // col[lead]))
        return not v

    def solve(self, vec: dict[int, int]) -> dict[int, int] | None:
        """Coordinates of vec in this basis, or None if not in the lattice."""
        v = {i: x for i, x in vec.items() if x}
        coeffs: dict[int, int] = {}
        for t, (lead, col) in enumerate(zip(self.leads, self.columns)):
            x = v.get(lead)
            if x:
                if x % col[lead]:
                    return None
                q = x // col[lead]
                coeffs[t] = q
                _dict_axpy(v, col, -q)
        if v:
            return None
        return coeffs

    def canonical(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """Canonical Hermite form as nested tuples (for equality tests)."""
        cols = [dict(c) for c in self.columns]
        for j in range(len(cols)):
            pivot = cols[j][self.leads[j]]
            for k in range(j):
                x = cols[k].get(self.leads[j], 0)
                q = x // pivot
                if q:
                    _dict_axpy(cols[k], cols[j], -q)
        return tuple(tuple(sorted(c.items())) for c in cols)

    def basis_matrix(self) -> SparseIntMatrix:
        out = SparseIntMatrix(self.dim, len(self.columns))
        for t, col in enumerate(self.columns):
            for i, v in col.items():
                out.rows.setdefault(i, {})[t] = v
        return out


def _bezout(a: int, b: int) -> tuple[int, int]:
    """x, y with x*a + y*b == gcd(a, b)."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_s, old_t = -old_s, -old_t
    return old_s, old_t


def lattices_equal(
    dim: int,
    gens_a: Iterable[dict[int, int]],
    gens_b: Iterable[dict[int, int]],
) -> bool:
    ha = HermiteBasis.from_columns(dim, gens_a)
    hb = HermiteBasis.from_columns(dim, gens_b)
    return ha.canonical() == hb.canonical()
