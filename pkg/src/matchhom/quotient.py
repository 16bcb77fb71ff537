"""Block-symmetry (Young group) actions on matching complexes and the
resulting quotient chain complexes.

A Young action permutes vertices inside the blocks of an ordered
partition.  Simplices fall into orbits; an orbit is *free* when no group
element maps its oriented representative to minus itself, otherwise the
orbit generator has order two in the quotient.  For matching complexes
the free orbits are exactly the collision-free (gamma) matchings and the
order-two orbits the parallel-pair (delta) matchings, the quotient
splits as the bounded-degree complex plus a complex of elementary
2-groups, and contraction of blocks realizes the first summand.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations as iter_permutations
from itertools import product as iter_product
from math import factorial
from typing import Iterable, Sequence

from matchhom.chains import Chain, FreeChainComplex, boundary_of_simplex, sort_with_parity
from matchhom.complexes import (
    ComplexSpec,
    ParallelEdgeError,
    Simplex,
    block_index_map,
    bounded,
    consecutive_blocks,
    edge,
    has_parallel_pair,
    lift_simplex,
)
from matchhom.homology import (
    AbelianGroup,
    HomologySummary,
    homology_from_boundaries,
)
from matchhom.snf import (
    DEFAULT_CAPS,
    HermiteBasis,
    ResourceCaps,
    ResourceLimitError,
    SparseIntMatrix,
    invariant_factors,
    kernel_basis,
    rank_mod_p,
)

Perm = tuple[int, ...]  # p[v-1] is the image of vertex v


@dataclass(frozen=True)
class YoungAction:
    """Ordered partition of 1..N with the product of block symmetric
    groups acting; the group order is the product of block factorials."""

    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        block_index_map(self.blocks)  # validates disjointness lazily below

    @classmethod
    def from_sizes(cls, sizes: Iterable[int]) -> "YoungAction":
        return cls(consecutive_blocks(sizes))

    @property
    def vertices(self) -> int:
        return sum(len(b) for b in self.blocks)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.blocks)

    @property
    def order(self) -> int:
        out = 1
        for b in self.blocks:
            out *= factorial(len(b))
        return out

    def identity(self) -> Perm:
        return tuple(range(1, self.vertices + 1))

    def generators(self) -> tuple[Perm, ...]:
        """Adjacent transpositions within each block."""
        return _young_generators(self.blocks)

    def elements(self) -> tuple[Perm, ...]:
        """The full group, enumerated blockwise; cached."""
        return _young_elements(self.blocks)

    def is_member(self, p: Perm) -> bool:
        if sorted(p) != list(range(1, self.vertices + 1)):
            return False
        idx = block_index_map(self.blocks)
        return all(idx[p[v - 1]] == idx[v] for v in range(1, self.vertices + 1))


@lru_cache(maxsize=None)
def _young_generators(blocks: tuple[tuple[int, ...], ...]) -> tuple[Perm, ...]:
    n = sum(len(b) for b in blocks)
    gens = []
    for b in blocks:
        for a, c in zip(b, b[1:]):
            p = list(range(1, n + 1))
            p[a - 1], p[c - 1] = c, a
            gens.append(tuple(p))
    return tuple(gens)


@lru_cache(maxsize=None)
def _young_elements(blocks: tuple[tuple[int, ...], ...]) -> tuple[Perm, ...]:
    n = sum(len(b) for b in blocks)
    per_block = []
    for b in blocks:
        images = []
        for perm in iter_permutations(b):
            images.append(tuple(zip(b, perm)))
        per_block.append(images)
    out = []
    for combo in iter_product(*per_block):
        p = list(range(1, n + 1))
        for pairs in combo:
            for src, dst in pairs:
                p[src - 1] = dst
        out.append(tuple(p))
    return tuple(out)


def act_simplex(p: Perm, s: Simplex) -> tuple[Simplex, int]:
    """Apply a vertex permutation to a simplex; the sign is the parity of
    the induced permutation of the (canonically re-sorted) edge list."""
    moved = [edge(p[a - 1], p[b - 1]) for a, b in s]
    out, sign = sort_with_parity(moved)
    assert sign != 0, "a vertex permutation cannot collapse edges"
    return out, sign


def act_oriented(
    action: YoungAction, p: Perm, s: Simplex, sign: int = 1
) -> tuple[Simplex, int]:
    """Group action on an oriented simplex, validating block preservation."""
    if not action.is_member(p):
        raise ValueError("permutation does not preserve the blocks")
    t, sg = act_simplex(p, s)
    return t, sg * sign


@dataclass(frozen=True)
class OrbitInfo:
    """One scanned orbit: lexicographic representative, size, whether the
    orientation is reversed by some stabilizer element, and the sign
    carrying the scanned simplex onto the representative (meaningless
    when the orbit has order two)."""

    representative: Simplex
    size: int
    order_two: bool
    sign_to_rep: int


def orbit_scan(s: Simplex, action: YoungAction) -> tuple[OrbitInfo, dict[Simplex, int]]:
    """Closure of (s, +1) under the generators.

    Returns the orbit info plus a map member -> sign placing the member
    on the representative (signs are only unique for free orbits).
    """
    gens = action.generators()
    signs: dict[Simplex, int] = {s: 1}
    order_two = False
    stack = [(s, 1)]
    seen = {(s, 1)}
    while stack:
        t, sg = stack.pop()
        for g in gens:
            t2, sg2 = act_simplex(g, t)
            state = (t2, sg * sg2)
            if state in seen:
                continue
            seen.add(state)
            stack.append(state)
            if t2 in signs:
                if signs[t2] != sg * sg2:
                    order_two = True
            else:
                signs[t2] = sg * sg2
    rep = min(signs)
    rep_sign = signs[rep]
    # Normalize: express every member's sign relative to the representative.
    member_sign = {t: sg * rep_sign for t, sg in signs.items()}
    info = OrbitInfo(rep, len(signs), order_two, rep_sign)
    return info, member_sign


@dataclass(frozen=True)
class OrbitClass:
    """Orbit summary used for quotient generators and reports."""

    representative: Simplex
    size: int
    kind: str  # "free" | "order2"
    part: str  # "gamma" | "delta"


def orbit_decompose(
    fcc: FreeChainComplex, action: YoungAction, d: int
) -> list[OrbitClass]:
    classes, _ = _orbit_tables(fcc, action, d)
    return classes


def _orbit_tables(
    fcc: FreeChainComplex, action: YoungAction, d: int
) -> tuple[list[OrbitClass], dict[Simplex, tuple[Simplex, int, bool]]]:
    """Orbit classes in representative order plus the member map
    simplex -> (representative, sign, order_two)."""
    classes: list[OrbitClass] = []
    assignment: dict[Simplex, tuple[Simplex, int, bool]] = {}
    for s in fcc.table.faces(d):
        if s in assignment:
            continue
        info, member_sign = orbit_scan(s, action)
        # Faces stream in lexicographic order, so the first unseen member
        # is the orbit minimum.
        assert info.representative == s
        part = "delta" if has_parallel_pair(s, action.blocks) else "gamma"
        classes.append(
            OrbitClass(s, info.size, "order2" if info.order_two else "free", part)
        )
        for t, sg in member_sign.items():
            assignment[t] = (s, sg, info.order_two)
    return classes, assignment


# ---------------------------------------------------------------------------
# Quotient chains


class QuotientChain:
    """Chain in the quotient complex, kept on orbit representatives.

    Free coordinates are exact integers; order-two coordinates live mod 2
    and are stored as bare 1s.
    """

    __slots__ = ("degree", "free_terms", "torsion_terms")

    def __init__(
        self,
        degree: int,
        free_terms: dict[Simplex, int] | None = None,
        torsion_terms: dict[Simplex, int] | None = None,
    ):
        self.degree = degree
        self.free_terms = {s: c for s, c in (free_terms or {}).items() if c}
        self.torsion_terms = {
            s: c % 2 for s, c in (torsion_terms or {}).items() if c % 2
        }

    def add_free(self, s: Simplex, coeff: int) -> None:
        nv = self.free_terms.get(s, 0) + coeff
        if nv:
            self.free_terms[s] = nv
        else:
            self.free_terms.pop(s, None)

    def add_torsion(self, s: Simplex, coeff: int) -> None:
        nv = (self.torsion_terms.get(s, 0) + coeff) % 2
        if nv:
            self.torsion_terms[s] = nv
        else:
            self.torsion_terms.pop(s, None)

    def scaled(self, k: int) -> "QuotientChain":
        return QuotientChain(
            self.degree,
            {s: k * c for s, c in self.free_terms.items()},
            {s: k * c for s, c in self.torsion_terms.items()},
        )

    def __add__(self, other: "QuotientChain") -> "QuotientChain":
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        out = QuotientChain(self.degree, dict(self.free_terms), dict(self.torsion_terms))
        for s, c in other.free_terms.items():
            out.add_free(s, c)
        for s, c in other.torsion_terms.items():
            out.add_torsion(s, c)
        return out

    def __sub__(self, other: "QuotientChain") -> "QuotientChain":
        return self + other.scaled(-1)

    def is_zero(self) -> bool:
        return not self.free_terms and not self.torsion_terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, QuotientChain):
            return NotImplemented
        return (
            self.degree == other.degree
            and self.free_terms == other.free_terms
            and self.torsion_terms == other.torsion_terms
        )

    def __repr__(self) -> str:
        return (
            f"QuotientChain(degree={self.degree}, free={len(self.free_terms)}, "
            f"order2={len(self.torsion_terms)})"
        )


def project_chain(c: Chain, action: YoungAction) -> QuotientChain:
    """Natural projection onto orbit coordinates."""
    out = QuotientChain(c.degree)
    memo: dict[Simplex, tuple[Simplex, int, bool]] = {}
    for s, coeff in c.terms.items():
        if s not in memo:
            info, member_sign = orbit_scan(s, action)
            for t, sg in member_sign.items():
                memo[t] = (info.representative, sg, info.order_two)
        rep, sg, order_two = memo[s]
        if order_two:
            out.add_torsion(rep, coeff)
        else:
            out.add_free(rep, coeff * sg)
    return out


def transfer_chain(q: QuotientChain, action: YoungAction) -> Chain:
    """Group-sum transfer: each coordinate contributes the sum of its
    representative over every group element.  On order-two coordinates
    the sum cancels to zero, which is exactly the group-sum of the class."""
    out = Chain(q.degree)
    elements = action.elements()
    for terms in (q.free_terms, q.torsion_terms):
        for rep, coeff in terms.items():
            for g in elements:
                t, sg = act_simplex(g, rep)
                out.add_term(t, coeff * sg)
    return out


# ---------------------------------------------------------------------------
# Presented quotient complex


@dataclass
class PresentedChainComplex:
    """Chain complex with free and order-two generators per degree.

    ``boundaries[d]`` maps degree d into degree d-1; rows are indexed by
    the degree d-1 generators (free block first, then order-two block)
    and entries landing in the order-two block are stored mod 2.
    """

    free_gens: dict[int, tuple[Simplex, ...]]
    torsion_gens: dict[int, tuple[Simplex, ...]]
    boundaries: dict[int, SparseIntMatrix]
    spec: ComplexSpec | None = None
    action: YoungAction | None = None

    def degrees(self) -> list[int]:
        return sorted(set(self.free_gens) | set(self.torsion_gens))

    def top_dimension(self) -> int:
        degs = [d for d in self.degrees() if self.gen_count(d)]
        return max(degs) if degs else -1

    def n_free(self, d: int) -> int:
        return len(self.free_gens.get(d, ()))

    def n_torsion(self, d: int) -> int:
        return len(self.torsion_gens.get(d, ()))

    def gen_count(self, d: int) -> int:
        return self.n_free(d) + self.n_torsion(d)

    def boundary(self, d: int) -> SparseIntMatrix:
        m = self.boundaries.get(d)
        if m is None:
            m = SparseIntMatrix(self.gen_count(d - 1), self.gen_count(d))
        return m

    def group_of(self, d: int) -> AbelianGroup:
        raise NotImplementedError  # homology lives in presented_homology

    def check_d_squared(self) -> bool:
        for d in self.degrees():
            if d - 1 not in self.boundaries:
                continue
            prod = self.boundary(d - 1).matmul(self.boundary(d))
            nf = self.n_free(d - 2)
            for i, _, v in prod.entries():
                if i < nf:
                    return False
                if v % 2:
                    return False
        return True

    def relation_columns(self, d: int) -> list[dict[int, int]]:
        nf = self.n_free(d)
        return [{nf + t: 2} for t in range(self.n_torsion(d))]


def quotient_complex(
    fcc: FreeChainComplex, action: YoungAction
) -> PresentedChainComplex:
    """Quotient of a matching-type complex by a Young action.

    Generators are orbit classes (free orbits first), boundaries are the
    projected boundaries of the representatives; coefficients on
    order-two generators are reduced mod 2, and the boundary of an
    order-two generator cannot meet a free generator.
    """
    if action.vertices != fcc.spec.vertices:
        raise ValueError("action and complex vertex counts differ")
    top = fcc.top_dimension()
    free_gens: dict[int, tuple[Simplex, ...]] = {}
    torsion_gens: dict[int, tuple[Simplex, ...]] = {}
    assignments: dict[int, dict[Simplex, tuple[Simplex, int, bool]]] = {}
    for d in range(-1, top + 1):
        classes, assignment = _orbit_tables(fcc, action, d)
        free_gens[d] = tuple(c.representative for c in classes if c.kind == "free")
        torsion_gens[d] = tuple(
            c.representative for c in classes if c.kind == "order2"
        )
        assignments[d] = assignment
    boundaries: dict[int, SparseIntMatrix] = {}
    for d in range(0, top + 1):
        free_idx = {s: i for i, s in enumerate(free_gens[d - 1])}
        tors_idx = {
            s: len(free_idx) + i for i, s in enumerate(torsion_gens[d - 1])
        }
        assignment = assignments[d - 1]
        nrows = len(free_idx) + len(tors_idx)
        cols: list[dict[int, int]] = []
        for src_kind, gens in (("free", free_gens[d]), ("order2", torsion_gens[d])):
            for rep in gens:
                col: dict[int, int] = {}
                sign = 1
                for i in range(len(rep)):
                    face = rep[:i] + rep[i + 1 :]
                    target_rep, sg, order_two = assignment[face]
                    if order_two:
                        row = tors_idx[target_rep]
                        col[row] = (col.get(row, 0) + sign) % 2
                    else:
                        row = free_idx[target_rep]
                        col[row] = col.get(row, 0) + sign * sg
                    sign = -sign
                col = {r: v for r, v in col.items() if v}
                if src_kind == "order2":
                    bad = [r for r in col if r < len(free_idx)]
                    assert not bad, (
                        "order-two generator boundary met a free generator"
                    )
                cols.append(col)
        boundaries[d] = SparseIntMatrix.from_columns(nrows, cols)
    return PresentedChainComplex(
        free_gens, torsion_gens, boundaries, spec=fcc.spec, action=action
    )


def quotient_chain_vector(
    pres: PresentedChainComplex, q: QuotientChain
) -> dict[int, int]:
    """Quotient chain as coordinates in the presented generator order."""
    d = q.degree
    free_idx = {s: i for i, s in enumerate(pres.free_gens.get(d, ()))}
    tors_idx = {
        s: len(free_idx) + i for i, s in enumerate(pres.torsion_gens.get(d, ()))
    }
    out: dict[int, int] = {}
    for s, c in q.free_terms.items():
        out[free_idx[s]] = c
    for s, c in q.torsion_terms.items():
        out[tors_idx[s]] = c
    return out


# ---------------------------------------------------------------------------
# Contraction isomorphism (gamma part <-> bounded-degree complex)


def _contract_oriented(s: Simplex, blocks) -> tuple[Simplex, int]:
    idx = block_index_map(blocks)
    images = []
    seen = set()
    for a, b in s:
        img = (idx[a], idx[b]) if idx[a] <= idx[b] else (idx[b], idx[a])
        if img in seen:
            raise ParallelEdgeError(f"{s} has a parallel pair for these blocks")
        seen.add(img)
        images.append(img)
    return sort_with_parity(images)


def quotient_to_bounded(q: QuotientChain, action: YoungAction) -> Chain:
    """Contraction isomorphism on the collision-free part of the quotient."""
    if q.torsion_terms:
        raise ValueError("chain has parallel-pair (order-two) support")
    out = Chain(q.degree)
    for rep, coeff in q.free_terms.items():
        t, sign = _contract_oriented(rep, action.blocks)
        out.add_term(t, coeff * sign)
    return out


def bounded_to_quotient(c: Chain, action: YoungAction) -> QuotientChain:
    """Inverse of the contraction isomorphism: lift each face, orient the
    lift so it contracts back with sign +1, then project to the orbit."""
    out = QuotientChain(c.degree)
    for t, coeff in c.terms.items():
        s = lift_simplex(t, action.blocks)
        img, k_sign = _contract_oriented(s, action.blocks)
        assert img == t
        info, member_sign = orbit_scan(s, action)
        assert not info.order_two, "lift landed in an order-two orbit"
        out.add_free(info.representative, coeff * k_sign * member_sign[s])
    return out


@dataclass
class SplitDecomposition:
    """Direct-sum pieces of a matching-complex quotient: the contracted
    bounded-degree complex and the order-two (parallel-pair) component."""

    bounded_complex: FreeChainComplex
    delta_component: PresentedChainComplex
    gen_signs: dict[int, dict[Simplex, int]]  # quotient rep -> contraction sign


def split_decomposition(pres: PresentedChainComplex) -> SplitDecomposition:
    """Verify and return the splitting of a quotient complex.

    Checks that boundaries never cross between free (gamma) and order-two
    (delta) generators, that contraction is a degree-wise bijection onto
    the bounded-degree complex, and that the sign-conjugated free block
    of every boundary matrix equals the bounded complex's boundary.
    Failures raise AssertionError: they are implementation bugs.
    """
    action = pres.action
    assert action is not None and pres.spec is not None
    bd = FreeChainComplex(bounded(len(action.blocks), action.sizes))
    gen_signs: dict[int, dict[Simplex, int]] = {}
    images: dict[int, list[int]] = {}
    for d in pres.degrees():
        reps = pres.free_gens.get(d, ())
        table = bd.table.index(d)
        assert len(reps) == len(table), (
            f"free orbit count differs from bounded face count in degree {d}"
        )
        signs: dict[Simplex, int] = {}
        ordinals: list[int] = []
        seen = set()
        for rep in reps:
            img, sg = _contract_oriented(rep, action.blocks)
            assert img in table and img not in seen
            seen.add(img)
            signs[rep] = sg
            ordinals.append(table[img])
        gen_signs[d] = signs
        images[d] = ordinals
    delta_bounds: dict[int, SparseIntMatrix] = {}
    for d in pres.degrees():
        if d - 1 not in pres.free_gens:
            continue
        m = pres.boundary(d)
        nf_lo = pres.n_free(d - 1)
        nf_hi = pres.n_free(d)
        reps_hi = pres.free_gens.get(d, ())
        reps_lo = pres.free_gens.get(d - 1, ())
        # Closure: no entries may cross the free/order-two split.
        for i, j, v in m.entries():
            assert (i < nf_lo) == (j < nf_hi), (
                f"boundary crosses the splitting in degree {d}"
            )
        # The sign-conjugated free block must be the bounded boundary.
        transformed = SparseIntMatrix(bd.table.count(d - 1), bd.table.count(d))
        for i, j, v in m.entries():
            if j < nf_hi:
                sg = gen_signs[d][reps_hi[j]] * gen_signs[d - 1][reps_lo[i]]
                transformed.rows.setdefault(images[d - 1][i], {})[
                    images[d][j]
                ] = v * sg
        assert transformed == bd.boundary_matrix(d), (
            f"contracted boundary differs from bounded complex in degree {d}"
        )
        # Order-two block, reindexed to its own presented complex.
        sub = SparseIntMatrix(pres.n_torsion(d - 1), pres.n_torsion(d))
        for i, j, v in m.entries():
            if j >= nf_hi:
                sub.rows.setdefault(i - nf_lo, {})[j - nf_hi] = v % 2
        delta_bounds[d] = sub
    delta = PresentedChainComplex(
        {d: () for d in pres.degrees()},
        {d: pres.torsion_gens.get(d, ()) for d in pres.degrees()},
        delta_bounds,
        spec=pres.spec,
        action=action,
    )
    return SplitDecomposition(bd, delta, gen_signs)


# ---------------------------------------------------------------------------
# Homology of presented complexes


def presented_homology_general(
    pres: PresentedChainComplex, caps: ResourceCaps = DEFAULT_CAPS
) -> dict[int, AbelianGroup]:
    """Homology via the free cover: cycles are computed relative to the
    order-two relations by a stacked kernel, boundaries plus relations
    are quotiented out through their coordinates in the cycle basis.

    This is the generic (oracle) path; it is independent of the
    splitting shortcut used for production runs.
    """
    degrees = [d for d in pres.degrees()]
    out: dict[int, AbelianGroup] = {}
    for d in degrees:
        n_d = pres.gen_count(d)
        if n_d == 0:
            out[d] = AbelianGroup(0)
            continue
        # Cycle lattice: x with boundary(x) in the relation lattice below.
        bnd = pres.boundary(d)
        rel_below = pres.relation_columns(d - 1)
        stacked = SparseIntMatrix(bnd.nrows, n_d + len(rel_below))
        for i, row in bnd.rows.items():
            stacked.rows[i] = dict(row)
        for t, col in enumerate(rel_below):
            for i, v in col.items():
                stacked.rows.setdefault(i, {})[n_d + t] = v
        kern = kernel_basis(stacked, caps)
        cycle_cols = []
        for t in range(kern.ncols):
            col = {
                i: row[t]
                for i, row in kern.rows.items()
                if t in row and i < n_d
            }
            if col:
                cycle_cols.append(col)
        cycles = HermiteBasis.from_columns(n_d, cycle_cols)
        # Boundary + relation lattice inside the cycles.
        bgens: list[dict[int, int]] = []
        upper = pres.boundaries.get(d + 1)
        if upper is not None:
            for j in range(upper.ncols):
                col = upper.column(j)
                if col:
                    bgens.append(col)
        bgens.extend(pres.relation_columns(d))
        coords: list[dict[int, int]] = []
        for g in bgens:
            sol = cycles.solve(g)
            assert sol is not None, "boundary escaped the cycle lattice"
            coords.append(sol)
        k = cycles.rank()
        coord_matrix = SparseIntMatrix.from_columns(k, coords)
        factors = invariant_factors(coord_matrix, caps)
        out[d] = AbelianGroup.from_factors(factors, k - len(factors))
    return out


def presented_homology_split(
    pres: PresentedChainComplex, caps: ResourceCaps = DEFAULT_CAPS
) -> dict[int, AbelianGroup]:
    """Production path: integral homology of the contracted bounded
    complex plus the mod-2 homology of the order-two component."""
    split = split_decomposition(pres)
    bd = split.bounded_complex
    top = bd.top_dimension()
    ranks = [bd.rank(d) for d in range(-1, top + 1)]
    bounds = [bd.boundary_matrix(d) for d in range(0, top + 1)]
    gamma_groups = homology_from_boundaries(ranks, bounds, -1, caps, cross_check=False)
    delta = split.delta_component
    rank2: dict[int, int] = {}
    for d in pres.degrees():
        m = delta.boundary(d)
        if m.nrows or m.ncols:
            rank2[d] = rank_mod_p(m, 2, caps) if not m.is_zero() else 0
        else:
            rank2[d] = 0
    out: dict[int, AbelianGroup] = {}
    for d in pres.degrees():
        g = gamma_groups.get(d, AbelianGroup(0))
        b = delta.n_torsion(d)
        if b:
            dim = b - rank2.get(d, 0) - rank2.get(d + 1, 0)
            g = g.direct_sum(AbelianGroup(0, (2,) * dim))
        out[d] = g
    return out


def homology_presented(
    pres: PresentedChainComplex,
    caps: ResourceCaps = DEFAULT_CAPS,
    method: str = "split",
) -> HomologySummary:
    if method == "split":
        groups = presented_homology_split(pres, caps)
    elif method == "general":
        groups = presented_homology_general(pres, caps)
    else:
        raise ValueError(f"unknown method {method!r}")
    label = f"{pres.spec}/S({','.join(map(str, pres.action.sizes))})" if pres.spec else "presented"
    return HomologySummary(label, "Z", groups)


# ---------------------------------------------------------------------------
# Invariant sublattice (the subgroup generated by c - g(c))


def invariant_sublattice_basis(
    fcc: FreeChainComplex,
    action: YoungAction,
    d: int,
    max_vertices: int = 8,
) -> HermiteBasis:
    """Hermite basis of the span of simplex - g(simplex) in degree d.

    Generator images suffice: differences against arbitrary group
    elements telescope through them.  Desk-scale guard via max_vertices.
    """
    if fcc.spec.vertices > max_vertices:
        raise ResourceLimitError(
            f"invariant sublattice capped at {max_vertices} vertices"
        )
    index = fcc.table.index(d)
    basis = HermiteBasis(fcc.table.count(d))
    for s in fcc.table.faces(d):
        i = index[s]
        for g in action.generators():
            t, sg = act_simplex(g, s)
            vec = {i: 1}
            j = index[t]
            vec[j] = vec.get(j, 0) - sg
            basis.add({k: v for k, v in vec.items() if v})
    return basis
