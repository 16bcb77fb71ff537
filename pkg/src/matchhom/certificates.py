"""Executable certificates: the order-5 torsion cycle on the degree-2
bounded complex, its lift to the matching complex on 14 vertices, exact
reproduction of the published homology tables for matching and
bounded-degree complexes, the edge-removal splitting, and the long exact
sequences of the pair and of the quotient.

Every check returns a CertificateReport rather than raising on
mathematical failure; resource-cap aborts surface as "skipped".
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd

from matchhom.chains import (
    Chain,
    FreeChainComplex,
    boundary_chain,
    wedge_many,
)
from matchhom.complexes import (
    ComplexSpec,
    Simplex,
    bounded,
    interleaved_blocks,
    is_face,
    matching,
    matching_minus_edge,
)
from matchhom.homology import (
    AbelianGroup,
    HomologySummary,
    betti_mod_p,
    class_order,
    homology_free,
    homology_from_boundaries,
    universal_coefficients_ok,
)
from matchhom.quotient import (
    PresentedChainComplex,
    QuotientChain,
    YoungAction,
    homology_presented,
    invariant_sublattice_basis,
    presented_homology_general,
    presented_homology_split,
    project_chain,
    quotient_complex,
    quotient_to_bounded,
    transfer_chain,
)
from matchhom.snf import (
    DEFAULT_CAPS,
    HermiteBasis,
    ResourceCaps,
    ResourceLimitError,
    SparseIntMatrix,
    kernel_basis,
    lattices_equal,
)


@dataclass
class CertificateReport:
    name: str
    status: str  # "pass" | "fail" | "skipped"
    expected: object = None
    computed: object = None
    details: dict = field(default_factory=dict)
    elapsed_seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_dict(self, include_elapsed: bool = False) -> dict:
        out = {
            "name": self.name,
            "status": self.status,
            "expected": _plain(self.expected),
            "computed": _plain(self.computed),
            "details": _plain(self.details),
        }
        if include_elapsed:
            out["elapsed_seconds"] = self.elapsed_seconds
        return out


def _plain(obj):
    if isinstance(obj, AbelianGroup):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in sorted(obj.items(), key=lambda kv: str(kv[0]))}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    return obj


def _certificate(name: str, fn) -> CertificateReport:
    """Run fn() -> (status, expected, computed, details) with timing and
    resource-limit capture."""
    start = time.monotonic()
    try:
        status, expected, computed, details = fn()
    except ResourceLimitError as exc:
        return CertificateReport(
            name,
            "skipped",
            details={"reason": str(exc)},
            elapsed_seconds=time.monotonic() - start,
        )
    return CertificateReport(
        name, status, expected, computed, details, time.monotonic() - start
    )


# ---------------------------------------------------------------------------
# Published expectations


def _grp(free: int, *factors: int) -> AbelianGroup:
    return AbelianGroup.from_factors(factors, free)


#: Integral homology of the matching complex for 3 <= n <= 12; degrees
#: not listed are zero.  The 13- and 14-vertex rows are out of reach of a
#: desk computation and are not encoded.
MATCHING_HOMOLOGY_TABLE: dict[int, dict[int, AbelianGroup]] = {
    3: {0: _grp(2)},
    4: {0: _grp(2)},
    5: {1: _grp(6)},
    6: {1: _grp(16)},
    7: {1: _grp(0, 3), 2: _grp(20)},
    8: {2: _grp(132)},
    9: {2: _grp(42, 3, 3, 3, 3, 3, 3, 3, 3), 3: _grp(70)},
    10: {2: _grp(0, 3), 3: _grp(1216)},
    11: {3: _grp(1188, *([3] * 45)), 4: _grp(252)},
    12: {3: _grp(0, *([3] * 56)), 4: _grp(12440)},
}

#: Homology of the bounded-degree complex with all bounds 2 on seven
#: vertices: order 5 in degree 4, free rank 732 in degree 5, else zero.
BOUNDED7_HOMOLOGY: dict[int, AbelianGroup] = {4: _grp(0, 5), 5: _grp(732)}


@dataclass(frozen=True)
class TorsionCell:
    """One checkable cell of the bounded-degree torsion tables.

    The complex is bounded(n - a, (2^a, 1^(n-2a))) and the degree probed
    is (n - 5) / 2 or (n - 6) / 2 depending on the table's parity.
    ``free_rank`` is asserted too when known; ``conjectural`` cells are
    reported but never asserted.
    """

    n: int
    a: int
    degree: int
    torsion: tuple[int, ...]
    free_rank: int | None = None
    conjectural: bool = False

    @property
    def spec(self) -> ComplexSpec:
        lam = (2,) * self.a + (1,) * (self.n - 2 * self.a)
        return bounded(self.n - self.a, lam)

    @property
    def key(self) -> str:
        return f"n{self.n}a{self.a}"


def _cells() -> list[TorsionCell]:
    out: list[TorsionCell] = []
    odd = {
        3: {0: (), 1: ()},
        5: {0: (), 1: (), 2: ()},
        7: {0: (3,), 1: (), 2: (), 3: ()},
        9: {0: (3,) * 8, 1: (3,), 2: (), 3: (), 4: ()},
        11: {0: (3,) * 45, 1: (3,) * 9, 2: (3,), 3: (), 4: (), 5: ()},
        13: {2: (3,) * 10, 3: (3,), 4: (), 5: (), 6: ()},
    }
    even = {
        6: {0: (), 1: (), 2: (), 3: ()},
        8: {0: (), 1: (), 2: (), 3: (), 4: ()},
        10: {0: (3,), 1: (), 2: (), 3: (), 4: (), 5: ()},
        12: {0: (3,) * 56, 1: (3,) * 10, 2: (3,), 3: (), 4: (), 5: (), 6: ()},
        14: {7: (5,)},
    }
    for n, row in odd.items():
        for a, torsion in row.items():
            out.append(TorsionCell(n, a, (n - 5) // 2, torsion))
    for n, row in even.items():
        for a, torsion in row.items():
            out.append(TorsionCell(n, a, (n - 6) // 2, torsion))
    for cell in out:
        if cell.n == 13 and cell.a == 2:
            out[out.index(cell)] = TorsionCell(13, 2, 4, (3,) * 10, free_rank=6142)
    out.append(TorsionCell(14, 6, 4, (5,), conjectural=True))
    return out


BOUNDED_TORSION_CELLS: dict[str, TorsionCell] = {c.key: c for c in _cells()}

#: Cells cheap enough for the default suite; the rest are opt-in.
QUICK_CELLS = tuple(
    key
    for key, c in BOUNDED_TORSION_CELLS.items()
    if c.spec.vertices + sum(1 for b in c.spec.bounds if b > 1) <= 10
)


def connectivity_degree(n: int) -> int:
    """Largest degree below which matching-complex homology vanishes.

    Both closed forms are computed and must agree.
    """
    if n < 1:
        raise ValueError("need at least one vertex")
    by_floor = (n - 2) // 3
    by_ceil = -((4 - n) // 3)
    assert by_floor == by_ceil
    return by_floor


def top_nonvanishing_degree(n: int) -> int:
    return (n - 3) // 2


# ---------------------------------------------------------------------------
# The order-5 torsion cycle and its lift

_BOUNDED_BRACKETS = (
    ((1, 2), (4, 5), (2, 3)),
    ((1, 2), (2, 3), (3, 4)),
    ((1, 2), (3, 4), (1, 5)),
    ((1, 2), (1, 5), (3, 3)),
    ((1, 2), (3, 3), (4, 5)),
    ((2, 2), (3, 3), (1, 5)),
    ((2, 2), (1, 5), (3, 4)),
    ((2, 2), (3, 4), (1, 1)),
    ((2, 2), (1, 1), (4, 5)),
    ((2, 2), (4, 5), (3, 3)),
    ((1, 1), (2, 3), (4, 5)),
    ((1, 1), (3, 4), (2, 3)),
)

_MATCHING14_BRACKETS = (
    ((1, 9), (5, 11), (2, 10)),
    ((1, 9), (2, 10), (3, 11)),
    ((1, 9), (3, 11), (5, 8)),
    ((1, 9), (5, 8), (3, 10)),
    ((1, 9), (3, 10), (5, 11)),
    ((2, 9), (3, 10), (5, 8)),
    ((2, 9), (5, 8), (3, 11)),
    ((2, 9), (3, 11), (1, 8)),
    ((2, 9), (1, 8), (5, 11)),
    ((2, 9), (5, 11), (3, 10)),
    ((1, 8), (2, 10), (5, 11)),
    ((1, 8), (3, 11), (2, 10)),
)


def _bracket_sum(brackets) -> Chain:
    return Chain.from_edge_lists(2, [(b, 1) for b in brackets])


def build_bounded_torsion_cycle() -> Chain:
    """Degree-4 cycle on bounded(7, (2,)*7) whose class has order five."""
    return wedge_many(
        [
            _bracket_sum(_BOUNDED_BRACKETS),
            Chain.from_edge_lists(0, [([(4, 6)], 1), ([(6, 6)], -1)]),
            Chain.from_edge_lists(0, [([(5, 7)], 1), ([(7, 7)], -1)]),
        ]
    )


def build_matching14_cycle() -> Chain:
    """The lift of the order-5 cycle to the matching complex on 14
    vertices, with blocks {i, i+7}."""
    return wedge_many(
        [
            _bracket_sum(_MATCHING14_BRACKETS),
            Chain.from_edge_lists(0, [([(4, 13)], 1), ([(6, 13)], -1)]),
            Chain.from_edge_lists(0, [([(7, 12)], 1), ([(7, 14)], -1)]),
        ]
    )


def matching14_action() -> YoungAction:
    return YoungAction(interleaved_blocks((2,) * 7))


@lru_cache(maxsize=None)
def _complex(spec: ComplexSpec) -> FreeChainComplex:
    return FreeChainComplex(spec)


@lru_cache(maxsize=None)
def _summary(spec: ComplexSpec) -> HomologySummary:
    return homology_free(_complex(spec), cross_check=False)


def verify_bounded_torsion_cycle(caps: ResourceCaps = DEFAULT_CAPS) -> CertificateReport:
    """The explicit 48-term cycle generates the order-5 summand of the
    degree-4 homology of bounded(7, (2,)*7)."""

    def run():
        spec = bounded(7, (2,) * 7)
        fcc = _complex(spec)
        cycle = build_bounded_torsion_cycle()
        details: dict = {}
        ok = True
        details["terms"] = len(cycle)
        ok &= len(cycle) == 48
        ok &= all(abs(c) == 1 for c in cycle.terms.values())
        ok &= all(is_face(spec, s) for s in cycle.terms)
        details["boundary_vanishes"] = boundary_chain(cycle).is_zero()
        ok &= details["boundary_vanishes"]
        order = class_order(cycle, fcc, caps=caps)
        details["class_order"] = order
        ok &= order == 5
        group = _summary(spec).group(4)
        details["degree4_group"] = str(group)
        ok &= group == AbelianGroup(0, (5,))
        return ("pass" if ok else "fail", "order 5 generator", details["class_order"], details)

    return _certificate("bounded-torsion-cycle", run)


def verify_matching14_lift(caps: ResourceCaps = DEFAULT_CAPS) -> CertificateReport:
    """The lifted 48-term chain is a cycle of 5-edge matchings on 14
    vertices, projects onto the bounded-complex generator with no
    parallel-pair support, and the order-5 conclusion transfers because
    the group order 128 is coprime to 5."""

    def run():
        cycle = build_matching14_cycle()
        action = matching14_action()
        spec14 = matching(14)
        details: dict = {}
        ok = True
        details["terms"] = len(cycle)
        ok &= len(cycle) == 48
        ok &= all(is_face(spec14, s) and len(s) == 5 for s in cycle.terms)
        details["boundary_vanishes"] = boundary_chain(cycle).is_zero()
        ok &= details["boundary_vanishes"]
        projected = project_chain(cycle, action)
        details["delta_support"] = len(projected.torsion_terms)
        ok &= not projected.torsion_terms
        contracted = quotient_to_bounded(
            QuotientChain(projected.degree, dict(projected.free_terms)), action
        )
        target = build_bounded_torsion_cycle()
        details["contraction_matches"] = contracted == target
        ok &= details["contraction_matches"]
        details["group_order"] = action.order
        details["gcd_with_5"] = gcd(5, action.order)
        ok &= action.order == 128 and gcd(5, action.order) == 1
        details["conclusion"] = (
            "class of the lift has order divisible by 5 because the"
            " transfer kernel exponent divides the group order 128,"
            " which is coprime to 5"
        )
        return ("pass" if ok else "fail", "lift certificate", ok, details)

    return _certificate("matching14-lift", run)


# ---------------------------------------------------------------------------
# Table reproductions


def reproduce_matching_table(
    n_min: int = 3, n_max: int = 10, caps: ResourceCaps = DEFAULT_CAPS
) -> CertificateReport:
    if not (3 <= n_min <= n_max <= 12):
        raise ValueError("matching table rows are checkable for 3 <= n <= 12")

    def run():
        diffs: dict = {}
        rows: dict = {}
        for n in range(n_min, n_max + 1):
            summary = _summary(matching(n))
            expected_row = MATCHING_HOMOLOGY_TABLE[n]
            for d in range(-1, max(summary.degrees()) + 1):
                expected = expected_row.get(d, AbelianGroup(0))
                got = summary.group(d)
                rows[f"n{n}d{d}"] = str(got)
                if got != expected:
                    diffs[f"n{n}d{d}"] = {"expected": str(expected), "computed": str(got)}
        status = "pass" if not diffs else "fail"
        return (status, "published matching table", rows, {"diffs": diffs})

    return _certificate(f"matching-table-{n_min}-{n_max}", run)


def reproduce_bounded7_theorem(caps: ResourceCaps = DEFAULT_CAPS) -> CertificateReport:
    def run():
        summary = _summary(bounded(7, (2,) * 7))
        diffs = {}
        for d in summary.degrees():
            expected = BOUNDED7_HOMOLOGY.get(d, AbelianGroup(0))
            if summary.group(d) != expected:
                diffs[d] = {"expected": str(expected), "computed": str(summary.group(d))}
        status = "pass" if not diffs else "fail"
        computed = {d: str(summary.group(d)) for d in summary.nonzero_degrees()}
        return (status, {4: "Z/5", 5: "Z^732"}, computed, {"diffs": diffs})

    return _certificate("bounded7-homology", run)


def reproduce_bounded_torsion_cells(
    keys: tuple[str, ...] = QUICK_CELLS, caps: ResourceCaps = DEFAULT_CAPS
) -> list[CertificateReport]:
    reports = []
    for key in keys:
        cell = BOUNDED_TORSION_CELLS[key]
        reports.append(_check_cell(cell, caps))
    return reports


def _check_cell(cell: TorsionCell, caps: ResourceCaps) -> CertificateReport:
    def run():
        fcc = FreeChainComplex(cell.spec)
        d = cell.degree
        details: dict = {"complex": str(cell.spec), "degree": d}
        if d < -1 or d > fcc.top_dimension():
            got: AbelianGroup = AbelianGroup(0)
        else:
            top = fcc.top_dimension()
            ranks = [fcc.rank(x) for x in (d - 1, d, d + 1)]
            mats = [fcc.boundary_matrix(x) for x in (d, d + 1) if x <= top]
            while len(mats) < 2:
                mats.append(SparseIntMatrix(fcc.rank(d + len(mats) - 1), 0))
            groups = homology_from_boundaries(
                ranks, mats, d - 1, caps, cross_check=False
            )
            got = groups[d]
        expected_torsion = AbelianGroup.from_factors(cell.torsion, 0)
        details["computed"] = str(got)
        if cell.conjectural:
            details["conjectural"] = True
            details["matches_reported_guess"] = got.torsion_part() == expected_torsion
            return ("pass", "reported, not asserted", str(got), details)
        ok = got.torsion_part() == expected_torsion
        if cell.free_rank is not None:
            details["expected_free_rank"] = cell.free_rank
            ok &= got.free_rank == cell.free_rank
        expected = str(expected_torsion) if cell.free_rank is None else str(
            expected_torsion.direct_sum(AbelianGroup(cell.free_rank))
        )
        return ("pass" if ok else "fail", expected, str(got), details)

    return _certificate(f"bounded-torsion-{cell.key}", run)


# ---------------------------------------------------------------------------
# Edge-removal splitting and the pair sequence


def removal_splitting_row(n: int, caps: ResourceCaps = DEFAULT_CAPS):
    """Summaries of matching(n), matching(n) minus the last edge, and
    matching(n-2), for the additivity check."""
    return (
        _summary(matching(n)),
        _summary(matching_minus_edge(n)),
        _summary(matching(n - 2)),
    )


def verify_removal_splitting(
    n: int, degrees=None, caps: ResourceCaps = DEFAULT_CAPS
) -> CertificateReport:
    """Free ranks and torsion add up: removing the last edge splits off
    the homology of the complex on two fewer vertices, one degree down."""
    if n < 3:
        raise ValueError("need n >= 3 so the smaller complex is nonempty")

    def run():
        full, minus, small = removal_splitting_row(n, caps)
        if degrees is None:
            top = max(full.degrees())
            checked = range(0, top + 2)
        else:
            checked = degrees
        diffs = {}
        values = {}
        for d in checked:
            lhs = full.group(d)
            rhs = minus.group(d).direct_sum(small.group(d - 1))
            values[d] = {"whole": str(lhs), "split": str(rhs)}
            if lhs != rhs:
                diffs[d] = values[d]
        status = "pass" if not diffs else "fail"
        return (status, "additive splitting", values, {"diffs": diffs})

    return _certificate(f"removal-splitting-n{n}", run)


def _relative_faces(fcc: FreeChainComplex, d: int) -> list[Simplex]:
    e = (fcc.spec.vertices - 1, fcc.spec.vertices)
    return [s for s in fcc.table.faces(d) if s and s[-1] == e]


def verify_pair_sequence(n: int, d: int, caps: ResourceCaps = DEFAULT_CAPS) -> CertificateReport:
    """Long exact sequence of (matching(n), matching(n) minus e) around
    degree d: the relative complex is the shifted complex on n-2
    vertices, and the sequence is exact at the middle homology."""
    if n < 4:
        raise ValueError("need n >= 4")

    def run():
        details: dict = {}
        fcc = _complex(matching(n))
        sub = _complex(matching_minus_edge(n))
        small = _complex(matching(n - 2))
        e = (n - 1, n)

        # Degree-k relative faces are tau + (e,), tau a face of the small
        # complex in degree k-1; e is the lexicographically largest edge,
        # so the identification is sign-free.
        rel: dict[int, list[Simplex]] = {}
        rel_index: dict[int, dict[Simplex, int]] = {}
        for k in (d - 1, d, d + 1):
            rel[k] = _relative_faces(fcc, k)
            rel_index[k] = {s: i for i, s in enumerate(rel[k])}
            assert [s[:-1] for s in rel[k]] == list(small.table.faces(k - 1))

        def rel_boundary(k: int) -> SparseIntMatrix:
            m = SparseIntMatrix(len(rel[k - 1]), len(rel[k]))
            for j, s in enumerate(rel[k]):
                sign = 1
                for i in range(len(s)):
                    face = s[:i] + s[i + 1 :]
                    if face and face[-1] == e:
                        m.rows.setdefault(rel_index[k - 1][face], {})[j] = sign
                    sign = -sign
            return m

        iso_ok = True
        for k in (d, d + 1):
            got = rel_boundary(k)
            if k - 1 >= 0:
                want = small.boundary_matrix(k - 1)
            else:
                want = SparseIntMatrix(0, small.rank(k - 1))
            iso_ok &= got == want
        details["relative_complex_matches_shift"] = iso_ok

        groups = {
            "middle": _summary(matching(n)).group(d),
            "subcomplex": _summary(matching_minus_edge(n)).group(d),
            "relative": _summary(matching(n - 2)).group(d - 1),
        }
        details["groups"] = {k: str(v) for k, v in groups.items()}

        # Exactness at the middle: cycles of the subcomplex push to the
        # kernel of the map to relative homology, and conversely.
        f_d = fcc.rank(d)
        cycles_mid = kernel_basis(fcc.boundary_matrix(d), caps)
        bnd_mid = [
            col
            for j in range(fcc.boundary_matrix(d + 1).ncols)
            if (col := fcc.boundary_matrix(d + 1).column(j))
        ]
        # Inclusion of subcomplex cycles, transported to ambient indices.
        sub_to_amb = {
            i: fcc.table.ordinal(d, s) for i, s in enumerate(sub.table.faces(d))
        }
        cycles_sub = kernel_basis(sub.boundary_matrix(d), caps)
        incoming = []
        for t in range(cycles_sub.ncols):
            col = {
                sub_to_amb[i]: row[t]
                for i, row in cycles_sub.rows.items()
                if t in row
            }
            if col:
                incoming.append(col)
        l_im = incoming + bnd_mid

        # Projection of ambient chains onto relative coordinates.
        proj_rows = {
            fcc.table.ordinal(d, s): i for i, s in enumerate(rel[d])
        }
        rel_b = rel_boundary(d + 1)
        stacked = SparseIntMatrix(
            len(rel[d]), cycles_mid.ncols + rel_b.ncols
        )
        for amb, r in proj_rows.items():
            row = {}
            arow = cycles_mid.rows.get(amb, {})
            for t, v in arow.items():
                row[t] = v
            if row:
                stacked.rows[r] = row
        for i, row in rel_b.rows.items():
            for j, v in row.items():
                stacked.rows.setdefault(i, {})[cycles_mid.ncols + j] = -v
        kern = kernel_basis(stacked, caps)
        l_ker = []
        for t in range(kern.ncols):
            y = {
                i: row[t]
                for i, row in kern.rows.items()
                if t in row and i < cycles_mid.ncols
            }
            col: dict[int, int] = {}
            for i, coeff in y.items():
                for amb, row in cycles_mid.rows.items():
                    v = row.get(i)
                    if v:
                        col[amb] = col.get(amb, 0) + coeff * v
            col = {k2: v for k2, v in col.items() if v}
            if col:
                l_ker.append(col)
        exact = lattices_equal(f_d, l_im, l_ker + bnd_mid)
        details["exact_at_middle"] = exact
        ok = iso_ok and exact
        return ("pass" if ok else "fail", "exact at middle", exact, details)

    return _certificate(f"pair-sequence-n{n}d{d}", run)


# ---------------------------------------------------------------------------
# Quotient long exact sequence (desk scale)


def _cg_complex(fcc: FreeChainComplex, action: YoungAction, caps: ResourceCaps):
    """Hermite bases of the invariant sublattices plus their boundary
    matrices in those bases, for all degrees."""
    top = fcc.top_dimension()
    bases: dict[int, HermiteBasis] = {}
    for d in range(-1, top + 1):
        bases[d] = invariant_sublattice_basis(fcc, action, d)
    bmats: dict[int, SparseIntMatrix] = {}
    for d in range(0, top + 1):
        cols = []
        bnd = fcc.boundary_matrix(d)
        for col_idx in range(bases[d].rank()):
            col = {
                i: v
                for i, v in bases[d].columns[col_idx].items()
            }
            img = bnd.apply_to_vector(col)
            sol = bases[d - 1].solve(img)
            assert sol is not None, "boundary left the invariant sublattice"
            cols.append(sol)
        bmats[d] = SparseIntMatrix.from_columns(bases[d - 1].rank(), cols)
    return bases, bmats


def _presented_cycles(pres: PresentedChainComplex, d: int, caps) -> list[dict[int, int]]:
    n_d = pres.gen_count(d)
    bnd = pres.boundary(d)
    rel_below = pres.relation_columns(d - 1)
    stacked = SparseIntMatrix(bnd.nrows, n_d + len(rel_below))
    for i, row in bnd.rows.items():
        stacked.rows[i] = dict(row)
    for t, col in enumerate(rel_below):
        for i, v in col.items():
            stacked.rows.setdefault(i, {})[n_d + t] = v
    kern = kernel_basis(stacked, caps)
    out = []
    for t in range(kern.ncols):
        col = {i: row[t] for i, row in kern.rows.items() if t in row and i < n_d}
        if col:
            out.append(col)
    return out


def verify_quotient_sequence(
    n: int, sizes: tuple[int, ...], d: int, caps: ResourceCaps = DEFAULT_CAPS
) -> CertificateReport:
    """Exactness of H(C^G) -> H(C) -> H(C/G) at the three spots around
    degree d for the Young action, plus the chain-level transfer identity
    projection(transfer(x)) = |G| x."""

    def run():
        action = YoungAction.from_sizes(sizes)
        if action.vertices != n:
            raise ValueError("sizes must sum to n")
        fcc = _complex(matching(n))
        pres = quotient_complex(fcc, action)
        bases, bmats = _cg_complex(fcc, action, caps)
        details: dict = {}

        f = {k: fcc.rank(k) for k in range(-1, fcc.top_dimension() + 1)}
        top = fcc.top_dimension()

        def amb_boundary_cols(k: int) -> list[dict[int, int]]:
            if k > top:
                return []
            m = fcc.boundary_matrix(k)
            return [col for j in range(m.ncols) if (col := m.column(j))]

        def cg_boundary_cols(k: int) -> list[dict[int, int]]:
            if k > top:
                return []
            m = bmats.get(k)
            if m is None:
                return []
            return [col for j in range(m.ncols) if (col := m.column(j))]

        def quot_boundary_gens(k: int) -> list[dict[int, int]]:
            gens = []
            if k + 1 <= top + 1:
                m = pres.boundary(k + 1)
                gens.extend(col for j in range(m.ncols) if (col := m.column(j)))
            gens.extend(pres.relation_columns(k))
            return gens

        def proj_matrix(k: int) -> SparseIntMatrix:
            free_idx = {s: i for i, s in enumerate(pres.free_gens.get(k, ()))}
            tors_idx = {
                s: len(free_idx) + i
                for i, s in enumerate(pres.torsion_gens.get(k, ()))
            }
            m = SparseIntMatrix(pres.gen_count(k), f[k])
            from matchhom.quotient import orbit_scan

            memo: dict = {}
            for j, s in enumerate(fcc.table.faces(k)):
                if s not in memo:
                    info, member_sign = orbit_scan(s, action)
                    for t2, sg in member_sign.items():
                        memo[t2] = (info.representative, sg, info.order_two)
                rep, sg, order_two = memo[s]
                if order_two:
                    m.rows.setdefault(tors_idx[rep], {})[j] = 1
                else:
                    m.rows.setdefault(free_idx[rep], {})[j] = sg
            return m

        def lift_matrix(k: int) -> SparseIntMatrix:
            m = SparseIntMatrix(f[k], pres.gen_count(k))
            gens = list(pres.free_gens.get(k, ())) + list(pres.torsion_gens.get(k, ()))
            for j, rep in enumerate(gens):
                m.rows.setdefault(fcc.table.ordinal(k, rep), {})[j] = 1
            return m

        # --- exactness at H_d(C): ker(projection*) == im(inclusion*)
        cycles_c = kernel_basis(fcc.boundary_matrix(d), caps) if d <= top else None
        exact_mid = True
        if cycles_c is not None:
            incl = []
            kz = kernel_basis(bmats[d], caps) if d in bmats else None
            if kz is not None:
                basis_matrix = bases[d].basis_matrix()
                for t in range(kz.ncols):
                    zvec = {i: row[t] for i, row in kz.rows.items() if t in row}
                    col = basis_matrix.apply_to_vector(zvec)
                    if col:
                        incl.append(col)
            l_im = incl + amb_boundary_cols(d + 1)
            p = proj_matrix(d)
            pk = p.matmul(cycles_c)
            qb = quot_boundary_gens(d)
            stacked = SparseIntMatrix(pres.gen_count(d), cycles_c.ncols + len(qb))
            for i, row in pk.rows.items():
                stacked.rows[i] = dict(row)
            for t, col in enumerate(qb):
                for i, v in col.items():
                    stacked.rows.setdefault(i, {})[cycles_c.ncols + t] = -v
            kern = kernel_basis(stacked, caps)
            l_ker = []
            for t in range(kern.ncols):
                y = {
                    i: row[t]
                    for i, row in kern.rows.items()
                    if t in row and i < cycles_c.ncols
                }
                col = cycles_c.apply_to_vector(y)
                if col:
                    l_ker.append(col)
            exact_mid = lattices_equal(f[d], l_im, l_ker + amb_boundary_cols(d + 1))
        details["exact_at_complex"] = exact_mid

        # --- exactness at H_d(C/G): ker(connecting) == im(projection*)
        q_cycles = _presented_cycles(pres, d, caps)
        l_im_q = []
        if cycles_c is not None:
            p = proj_matrix(d)
            for t in range(cycles_c.ncols):
                z = {i: row[t] for i, row in cycles_c.rows.items() if t in row}
                col = p.apply_to_vector(z)
                if col:
                    l_im_q.append(col)
        l_im_q += quot_boundary_gens(d)
        # Connecting map: lift a quotient cycle, take its boundary (it
        # lands in the invariant sublattice), kill those that are
        # boundaries of invariant chains.
        lift = lift_matrix(d)
        bnd_c = fcc.boundary_matrix(d) if d <= top else SparseIntMatrix(f[d - 1], 0)
        cg_image_cols = []
        if d in bmats:
            bm = fcc.boundary_matrix(d)
            bdm = bases[d].basis_matrix()
            prod = bm.matmul(bdm)
            cg_image_cols = [
                col for j in range(prod.ncols) if (col := prod.column(j))
            ]
        qmat = SparseIntMatrix.from_columns(pres.gen_count(d), q_cycles)
        blq = bnd_c.matmul(lift).matmul(qmat)
        stacked = SparseIntMatrix(f[d - 1], qmat.ncols + len(cg_image_cols))
        for i, row in blq.rows.items():
            stacked.rows[i] = dict(row)
        for t, col in enumerate(cg_image_cols):
            for i, v in col.items():
                stacked.rows.setdefault(i, {})[qmat.ncols + t] = -v
        kern = kernel_basis(stacked, caps)
        l_ker_q = []
        for t in range(kern.ncols):
            y = {i: row[t] for i, row in kern.rows.items() if t in row and i < qmat.ncols}
            col = qmat.apply_to_vector(y)
            if col:
                l_ker_q.append(col)
        exact_q = lattices_equal(
            pres.gen_count(d), l_im_q, l_ker_q + quot_boundary_gens(d)
        )
        details["exact_at_quotient"] = exact_q

        # --- exactness at H_d(C^G): ker(inclusion*) == im(connecting)
        exact_cg = True
        if d in bmats and bases[d].rank():
            r_d = bases[d].rank()
            cg_cycles = kernel_basis(bmats[d], caps)
            bdm = bases[d].basis_matrix()
            stacked = SparseIntMatrix(f[d], cg_cycles.ncols + len(amb_boundary_cols(d + 1)))
            prod = bdm.matmul(cg_cycles)
            for i, row in prod.rows.items():
                stacked.rows[i] = dict(row)
            for t, col in enumerate(amb_boundary_cols(d + 1)):
                for i, v in col.items():
                    stacked.rows.setdefault(i, {})[cg_cycles.ncols + t] = -v
            kern = kernel_basis(stacked, caps)
            l_ker_cg = []
            for t in range(kern.ncols):
                y = {
                    i: row[t]
                    for i, row in kern.rows.items()
                    if t in row and i < cg_cycles.ncols
                }
                col = cg_cycles.apply_to_vector(y)
                if col:
                    l_ker_cg.append(col)
            # Connecting image: lift degree d+1 quotient cycles, boundary,
            # coordinates in the invariant basis.
            l_im_cg = []
            if d + 1 <= top + 1:
                qc_up = _presented_cycles(pres, d + 1, caps)
                lift_up = lift_matrix(d + 1)
                for q in qc_up:
                    amb = lift_up.apply_to_vector(q)
                    img = fcc.boundary_matrix(d + 1).apply_to_vector(amb) if d + 1 <= top else {}
                    sol = bases[d].solve(img)
                    assert sol is not None, "connecting image left the sublattice"
                    if sol:
                        l_im_cg.append(sol)
            l_im_cg += cg_boundary_cols(d + 1)
            exact_cg = lattices_equal(
                r_d, l_im_cg, l_ker_cg + cg_boundary_cols(d + 1)
            )
        details["exact_at_invariants"] = exact_cg

        # --- chain-level transfer identity on the quotient in degree d
        transfer_ok = True
        gens = list(pres.free_gens.get(d, ())) + list(pres.torsion_gens.get(d, ()))
        nf = pres.n_free(d)
        for j, rep in enumerate(gens):
            q = (
                QuotientChain(d, free_terms={rep: 1})
                if j < nf
                else QuotientChain(d, torsion_terms={rep: 1})
            )
            back = project_chain(transfer_chain(q, action), action)
            transfer_ok &= back == q.scaled(action.order)
        details["transfer_identity"] = transfer_ok
        details["group_order"] = action.order

        ok = exact_mid and exact_q and exact_cg and transfer_ok
        return ("pass" if ok else "fail", "exact sequence", ok, details)

    return _certificate(f"quotient-sequence-n{n}-{'x'.join(map(str, sizes))}-d{d}", run)


# ---------------------------------------------------------------------------
# Aggregates


def quick_certificates(caps: ResourceCaps = DEFAULT_CAPS) -> list[CertificateReport]:
    reports = [
        reproduce_matching_table(3, 10, caps),
        reproduce_bounded7_theorem(caps),
        verify_bounded_torsion_cycle(caps),
        verify_matching14_lift(caps),
    ]
    for n in range(3, 10):
        reports.append(verify_removal_splitting(n, caps=caps))
    return reports
