"""Oriented simplices, sparse integer chains and boundary operators.

Orientation convention: the canonical ascending edge order of a simplex
carries sign +1; any other edge ordering is canonicalized by sorting,
multiplying the sign by the parity of the sorting permutation.  All
complexes are reduced: the empty simplex spans degree -1 and the
boundary of a single edge is the empty simplex (the augmentation).
"""

from __future__ import annotations

from typing import Iterable, Sequence

from matchhom.complexes import (
    ComplexSpec,
    Edge,
    FaceTable,
    Simplex,
    edge,
    simplex_vertices,
)
from matchhom.snf import DEFAULT_CAPS, ResourceCaps, SparseIntMatrix


def sort_with_parity(items: Sequence) -> tuple[tuple, int]:
    """Sorted tuple plus the sign of the sorting permutation.

    Returns sign 0 when two items coincide (a degenerate simplex).
    """
    items = list(items)
    sign = 1
    # Insertion sort; simplices have at most a handful of edges.
    for i in range(1, len(items)):
        x = items[i]
        j = i - 1
        while j >= 0 and items[j] > x:
            items[j + 1] = items[j]
            j -= 1
            sign = -sign
        items[j + 1] = x
        if j >= 0 and items[j] == x:
            return tuple(items), 0
    return tuple(items), sign


def canonical_oriented(edges: Iterable[tuple[int, int]]) -> tuple[Simplex, int]:
    """Canonical (simplex, sign) for an arbitrarily ordered edge list."""
    normalized = [edge(a, b) for a, b in edges]
    return sort_with_parity(normalized)


class Chain:
    """Sparse integer combination of same-degree simplices."""

    __slots__ = ("degree", "terms")

    def __init__(self, degree: int, terms: dict[Simplex, int] | None = None):
        self.degree = degree
        self.terms: dict[Simplex, int] = {}
        if terms:
            for s, c in terms.items():
                if c:
                    if len(s) != degree + 1:
                        raise ValueError(
                            f"term {s} has degree {len(s) - 1}, chain has {degree}"
                        )
                    self.terms[s] = c

    @classmethod
    def from_edge_lists(
        cls, degree: int, terms: Iterable[tuple[Iterable[tuple[int, int]], int]]
    ) -> "Chain":
        """Build a chain from (edge list, coefficient) pairs, canonicalizing
        each edge list and folding the resulting sign into the coefficient."""
        out = cls(degree)
        for edges, coeff in terms:
            s, sign = canonical_oriented(edges)
            out.add_term(s, coeff * sign)
        return out

    def add_term(self, s: Simplex, coeff: int) -> None:
        if not coeff:
            return
        if len(s) != self.degree + 1:
            raise ValueError(f"term {s} has wrong degree for chain {self.degree}")
        nv = self.terms.get(s, 0) + coeff
        if nv:
            self.terms[s] = nv
        else:
            del self.terms[s]

    def is_zero(self) -> bool:
        return not self.terms

    def items(self):
        return sorted(self.terms.items())

    def support_vertices(self) -> set[int]:
        verts: set[int] = set()
        for s in self.terms:
            verts |= simplex_vertices(s)
        return verts

    def scaled(self, k: int) -> "Chain":
        if k == 0:
            return Chain(self.degree)
        return Chain(self.degree, {s: k * c for s, c in self.terms.items()})

    def __add__(self, other: "Chain") -> "Chain":
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        out = Chain(self.degree, dict(self.terms))
        for s, c in other.terms.items():
            out.add_term(s, c)
        return out

    def __sub__(self, other: "Chain") -> "Chain":
        return self + other.scaled(-1)

    def __neg__(self) -> "Chain":
        return self.scaled(-1)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Chain):
            return NotImplemented
        return self.degree == other.degree and self.terms == other.terms

    def __len__(self) -> int:
        return len(self.terms)

    def __repr__(self) -> str:
        return f"Chain(degree={self.degree}, terms={len(self.terms)})"


def boundary_of_simplex(s: Simplex, coeff: int = 1) -> Chain:
    """Alternating sum of edge deletions; a lone edge maps to the empty
    simplex (augmentation)."""
    if len(s) == 0:
        raise ValueError("the empty simplex has no boundary")
    out = Chain(len(s) - 2)
    sign = coeff
    for i in range(len(s)):
        out.add_term(s[:i] + s[i + 1 :], sign)
        sign = -sign
    return out


def boundary_chain(c: Chain) -> Chain:
    out = Chain(c.degree - 1)
    for s, coeff in c.terms.items():
        sign = coeff
        for i in range(len(s)):
            out.add_term(s[:i] + s[i + 1 :], sign)
            sign = -sign
    return out


def wedge(u: Chain, v: Chain) -> Chain:
    """Bilinear concatenate-then-canonicalize product.

    The two chains must live on disjoint vertex sets; the boundary obeys
    the graded Leibniz rule, so a wedge of cycles is a cycle.
    """
    if u.support_vertices() & v.support_vertices():
        raise ValueError("wedge factors must use disjoint vertex sets")
    out = Chain(u.degree + v.degree + 1)
    for s, a in u.terms.items():
        for t, b in v.terms.items():
            merged, sign = sort_with_parity(s + t)
            if sign:
                out.add_term(merged, a * b * sign)
    return out


def wedge_many(chains: Sequence[Chain]) -> Chain:
    out = chains[0]
    for c in chains[1:]:
        out = wedge(out, c)
    return out


class FreeChainComplex:
    """Reduced chain complex of a graph complex, with cached boundary
    matrices in face-table ordinals.

    Degree -1 is the rank-one group on the empty simplex; the boundary
    matrix in degree 0 is the augmentation row.
    """

    def __init__(self, spec: ComplexSpec, caps: ResourceCaps = DEFAULT_CAPS):
        self.spec = spec
        self.table = FaceTable(spec)
        self.caps = caps
        self._boundaries: dict[int, SparseIntMatrix] = {}

    def top_dimension(self) -> int:
        return self.table.top_dimension()

    def rank(self, d: int) -> int:
        return self.table.count(d)

    def boundary_matrix(self, d: int) -> SparseIntMatrix:
        """Matrix of the boundary from degree d to degree d-1; rows are
        (d-1)-face ordinals, columns d-face ordinals."""
        if d in self._boundaries:
            return self._boundaries[d]
        rows = self.table.count(d - 1)
        index = self.table.index(d - 1)
        m = SparseIntMatrix(rows, self.table.count(d))
        for j, s in enumerate(self.table.faces(d)):
            sign = 1
            for i in range(len(s)):
                m.rows.setdefault(index[s[:i] + s[i + 1 :]], {})[j] = sign
                sign = -sign
        self._boundaries[d] = m
        return m

    def check_d_squared(self) -> bool:
        for d in range(1, self.top_dimension() + 1):
            prod = self.boundary_matrix(d - 1).matmul(self.boundary_matrix(d))
            if not prod.is_zero():
                return False
        return True

    def chain_vector(self, c: Chain) -> dict[int, int]:
        """Chain as a sparse coordinate vector in face ordinals."""
        index = self.table.index(c.degree)
        out = {}
        for s, coeff in c.terms.items():
            if s not in index:
                raise ValueError(f"{s} is not a face of {self.spec}")
            out[index[s]] = coeff
        return out

    def vector_chain(self, d: int, vec: dict[int, int]) -> Chain:
        faces = self.table.faces(d)
        return Chain(d, {faces[i]: v for i, v in vec.items() if v})

    def is_cycle(self, c: Chain) -> bool:
        if c.degree == -1:
            return c.is_zero() or self.rank(-1) == 1
        return boundary_chain(c).is_zero()


# ---------------------------------------------------------------------------
# Chain text format (bit-exact round trip)

CHAIN_FORMAT_HEADER = "chain-format 1"


def chain_to_text(c: Chain) -> str:
    """Serialize: header, degree line, then one "coeff edge edge ..." line
    per term in lexicographic simplex order."""
    lines = [CHAIN_FORMAT_HEADER, f"degree {c.degree}"]
    for s, coeff in c.items():
        tokens = [str(coeff)] + [f"{a}-{b}" for a, b in s]
        lines.append(" ".join(tokens))
    return "\n".join(lines) + "\n"


def chain_from_text(text: str) -> Chain:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != CHAIN_FORMAT_HEADER:
        raise ValueError("missing chain format header")
    if len(lines) < 2 or not lines[1].startswith("degree "):
        raise ValueError("missing degree line")
    degree = int(lines[1].split()[1])
    out = Chain(degree)
    for ln in lines[2:]:
        tokens = ln.split()
        coeff = int(tokens[0])
        edges = []
        for tok in tokens[1:]:
            a, b = tok.split("-")
            edges.append((int(a), int(b)))
        s, sign = canonical_oriented(edges)
        if sign != 1 or len(edges) != degree + 1:
            raise ValueError(f"non-canonical term line: {ln!r}")
        out.add_term(s, coeff)
    return out
