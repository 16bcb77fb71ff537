"""Face enumeration for matching and bounded-degree graph complexes.

A graph is a set of edges on the vertex set 1..n with no repeated edges.
Loops are allowed in bounded-degree complexes and count twice toward the
degree of their vertex; matching complexes forbid loops.  The cells of
every complex are such graphs, stored as canonically sorted edge tuples,
so the "vertices" of the simplicial complex are graph edges.

Five families are supported:

* ``matching(n)`` -- matchings of the complete graph on n vertices,
* ``bounded(n, bounds)`` -- graphs on [n] where vertex i has degree at
  most ``bounds[i-1]``,
* ``gamma_part(blocks)`` / ``delta_part(blocks)`` -- the matchings on
  [N] without / with a pair of edges that collapse to the same edge
  when each block of the partition is contracted to a single vertex,
* ``matching_minus_edge(n)`` -- matchings of K_n that do not contain the
  single edge {n-1, n}.

Face lists are produced in lexicographic order and are deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

Edge = tuple[int, int]
Simplex = tuple[Edge, ...]

EMPTY_SIMPLEX: Simplex = ()


class ParallelEdgeError(ValueError):
    """Contracting a simplex would send two edges to the same image."""


def edge(a: int, b: int) -> Edge:
    """Normalized edge with endpoints in increasing order."""
    if a < 1 or b < 1:
        raise ValueError(f"vertices are 1-based, got ({a}, {b})")
    return (a, b) if a <= b else (b, a)


def is_loop(e: Edge) -> bool:
    return e[0] == e[1]


def make_simplex(edges: Iterable[tuple[int, int]]) -> Simplex:
    """Canonical simplex: edges normalized and sorted, duplicates rejected."""
    out = tuple(sorted(edge(a, b) for a, b in edges))
    for prev, nxt in zip(out, out[1:]):
        if prev == nxt:
            raise ValueError(f"duplicate edge {prev} in simplex")
    return out


def is_canonical(s: Simplex) -> bool:
    return all(s[i] < s[i + 1] for i in range(len(s) - 1)) and all(
        1 <= a <= b for a, b in s
    )


def simplex_dim(s: Simplex) -> int:
    return len(s) - 1


def simplex_vertices(s: Simplex) -> set[int]:
    verts: set[int] = set()
    for a, b in s:
        verts.add(a)
        verts.add(b)
    return verts


def degree_in(s: Simplex, v: int) -> int:
    """Degree of vertex v in the graph s; a loop at v counts twice."""
    deg = 0
    for a, b in s:
        if a == v:
            deg += 1
        if b == v:
            deg += 1
    return deg


# ---------------------------------------------------------------------------
# Complex specifications


@dataclass(frozen=True)
class ComplexSpec:
    """One of the supported graph-complex families.

    ``kind`` is one of matching / bounded / gamma / delta /
    matching_minus_e.  ``vertices`` is the number n of graph vertices,
    ``bounds`` the per-vertex degree bounds (bounded kind only) and
    ``blocks`` the ordered vertex partition (gamma / delta kinds only).
    """

    kind: str
    vertices: int
    bounds: tuple[int, ...] | None = None
    blocks: tuple[tuple[int, ...], ...] | None = None

    def __str__(self) -> str:
        if self.kind == "matching":
            return f"matching({self.vertices})"
        if self.kind == "matching_minus_e":
            return f"matching_minus_e({self.vertices})"
        if self.kind == "bounded":
            return f"bounded({self.vertices},{','.join(map(str, self.bounds))})"
        blocks = "|".join(",".join(map(str, b)) for b in self.blocks)
        return f"{self.kind}({self.vertices};{blocks})"

    @property
    def removed_edge(self) -> Edge:
        if self.kind != "matching_minus_e":
            raise ValueError("removed_edge only defined for matching_minus_e")
        return (self.vertices - 1, self.vertices)

    @property
    def allows_loops(self) -> bool:
        return self.kind == "bounded"


def matching(n: int) -> ComplexSpec:
    if n < 0:
        raise ValueError("vertex count must be nonnegative")
    return ComplexSpec("matching", n)


def matching_minus_edge(n: int) -> ComplexSpec:
    if n < 2:
        raise ValueError("need at least two vertices to remove the last edge")
    return ComplexSpec("matching_minus_e", n)


def bounded(n: int, bounds: Iterable[int]) -> ComplexSpec:
    bounds = tuple(bounds)
    if n < 1 or len(bounds) != n:
        raise ValueError(f"need one degree bound per vertex, got {bounds}")
    if any(b < 0 for b in bounds):
        raise ValueError("degree bounds must be nonnegative")
    return ComplexSpec("bounded", n, bounds=bounds)


def _validated_blocks(blocks: Iterable[Iterable[int]]) -> tuple[tuple[int, ...], ...]:
    blocks = tuple(tuple(sorted(b)) for b in blocks)
    seen: set[int] = set()
    for b in blocks:
        if not b:
            raise ValueError("empty block")
        for v in b:
            if v in seen:
                raise ValueError(f"vertex {v} appears in two blocks")
            seen.add(v)
    n = len(seen)
    if seen != set(range(1, n + 1)):
        raise ValueError("blocks must partition 1..N")
    return blocks


def gamma_part(blocks: Iterable[Iterable[int]]) -> ComplexSpec:
    blocks = _validated_blocks(blocks)
    n = sum(len(b) for b in blocks)
    return ComplexSpec("gamma", n, blocks=blocks)


def delta_part(blocks: Iterable[Iterable[int]]) -> ComplexSpec:
    blocks = _validated_blocks(blocks)
    n = sum(len(b) for b in blocks)
    return ComplexSpec("delta", n, blocks=blocks)


def consecutive_blocks(sizes: Iterable[int]) -> tuple[tuple[int, ...], ...]:
    """Partition of [sum(sizes)] into consecutive runs of the given sizes."""
    out = []
    nxt = 1
    for s in sizes:
        if s < 1:
            raise ValueError("block sizes must be positive")
        out.append(tuple(range(nxt, nxt + s)))
        nxt += s
    return tuple(out)


def interleaved_blocks(sizes: Iterable[int]) -> tuple[tuple[int, ...], ...]:
    """Blocks {i, i+n} for size-2 blocks, {i} for size-1 blocks.

    Only defined when every size is 1 or 2; n is the number of blocks.
    """
    sizes = tuple(sizes)
    if any(s not in (1, 2) for s in sizes):
        raise ValueError("interleaved blocks need all sizes in {1, 2}")
    n = len(sizes)
    return tuple(
        (i, i + n) if s == 2 else (i,) for i, s in enumerate(sizes, start=1)
    )


@lru_cache(maxsize=None)
def block_index_map(blocks: tuple[tuple[int, ...], ...]) -> dict[int, int]:
    """vertex -> 1-based block index."""
    out: dict[int, int] = {}
    for i, b in enumerate(blocks, start=1):
        for v in b:
            out[v] = i
    return out


# ---------------------------------------------------------------------------
# Membership


def _is_matching(s: Simplex) -> bool:
    used: set[int] = set()
    for a, b in s:
        if a == b or a in used or b in used:
            return False
        used.add(a)
        used.add(b)
    return True


def _within_bounds(s: Simplex, bounds: tuple[int, ...]) -> bool:
    deg = [0] * (len(bounds) + 1)
    for a, b in s:
        deg[a] += 1
        deg[b] += 1
        if deg[a] > bounds[a - 1] or deg[b] > bounds[b - 1]:
            return False
    return True


def contract_edge(e: Edge, blocks: tuple[tuple[int, ...], ...]) -> Edge:
    idx = block_index_map(blocks)
    return edge(idx[e[0]], idx[e[1]])


def has_parallel_pair(s: Simplex, blocks: tuple[tuple[int, ...], ...]) -> bool:
    """True iff two distinct edges of s contract to the same image edge."""
    idx = block_index_map(blocks)
    seen: set[Edge] = set()
    for a, b in s:
        img = (idx[a], idx[b]) if idx[a] <= idx[b] else (idx[b], idx[a])
        if img in seen:
            return True
        seen.add(img)
    return False


def is_face(spec: ComplexSpec, s: Simplex) -> bool:
    """Membership test; raises ValueError on out-of-range vertices."""
    if not is_canonical(s):
        raise ValueError(f"simplex {s} is not in canonical form")
    for a, b in s:
        if b > spec.vertices:
            raise ValueError(f"vertex {b} out of range for {spec}")
    if spec.kind == "matching":
        return _is_matching(s)
    if spec.kind == "matching_minus_e":
        return _is_matching(s) and spec.removed_edge not in s
    if spec.kind == "bounded":
        return _within_bounds(s, spec.bounds)
    if spec.kind == "gamma":
        return _is_matching(s) and not has_parallel_pair(s, spec.blocks)
    if spec.kind == "delta":
        return _is_matching(s) and has_parallel_pair(s, spec.blocks)
    raise ValueError(f"unknown complex kind {spec.kind!r}")


# ---------------------------------------------------------------------------
# Contraction map and its section


def contract_simplex(
    s: Simplex, blocks: tuple[tuple[int, ...], ...]
) -> Simplex:
    """Contract each block to a single vertex, edge by edge.

    The image has one edge per input edge; loops appear when both
    endpoints lie in the same block.  Raises ParallelEdgeError when two
    edges collapse to the same image (the input lies in the delta part).
    """
    idx = block_index_map(blocks)
    out = []
    seen: set[Edge] = set()
    for a, b in s:
        img = (idx[a], idx[b]) if idx[a] <= idx[b] else (idx[b], idx[a])
        if img in seen:
            raise ParallelEdgeError(
                f"edges of {s} are parallel relative to the blocks"
            )
        seen.add(img)
        out.append(img)
    return tuple(sorted(out))


def lift_simplex(t: Simplex, blocks: tuple[tuple[int, ...], ...]) -> Simplex:
    """A matching that contracts to t, assigning smallest unused block
    elements first.  Deterministic; raises ValueError when t exceeds the
    degree bounds implied by the block sizes."""
    sizes = tuple(len(b) for b in blocks)
    n = len(blocks)
    for a, b in t:
        if b > n:
            raise ValueError(f"vertex {b} out of range for {n} blocks")
    if not _within_bounds(t, sizes):
        raise ValueError(f"{t} violates the block-size degree bounds")
    next_free = [0] * (n + 1)  # per block, index of next unused element

    def take(i: int) -> int:
        v = blocks[i - 1][next_free[i]]
        next_free[i] += 1
        return v

    out = []
    for i, j in t:
        a = take(i)
        b = take(j)
        out.append(edge(a, b))
    return tuple(sorted(out))


# ---------------------------------------------------------------------------
# Enumeration


def top_dimension_bound(spec: ComplexSpec) -> int:
    """Largest dimension any face of the family could have."""
    if spec.kind == "bounded":
        return sum(spec.bounds) // 2 - 1
    return spec.vertices // 2 - 1


def _matching_edges(n: int, skip: Edge | None = None) -> list[Edge]:
    return [
        (a, b)
        for a in range(1, n + 1)
        for b in range(a + 1, n + 1)
        if (a, b) != skip
    ]


def _iter_matching_faces(
    n: int, k: int, skip: Edge | None = None
) -> Iterator[Simplex]:
    edges = _matching_edges(n, skip)
    masks = [(1 << a) | (1 << b) for a, b in edges]
    m = len(edges)
    chosen: list[Edge] = []

    def rec(start: int, used: int) -> Iterator[Simplex]:
        need = k - len(chosen)
        if need == 0:
            yield tuple(chosen)
            return
        for i in range(start, m - need + 1):
            if used & masks[i]:
                continue
            chosen.append(edges[i])
            yield from rec(i + 1, used | masks[i])
            chosen.pop()

    return rec(0, 0)


def _iter_bounded_faces(
    n: int, bounds: tuple[int, ...], k: int
) -> Iterator[Simplex]:
    edges = [
        (a, b)
        for a in range(1, n + 1)
        for b in range(a, n + 1)
        if (bounds[a - 1] >= 2 if a == b else bounds[a - 1] >= 1 and bounds[b - 1] >= 1)
    ]
    m = len(edges)
    budget = list(bounds)
    chosen: list[Edge] = []

    def rec(start: int) -> Iterator[Simplex]:
        need = k - len(chosen)
        if need == 0:
            yield tuple(chosen)
            return
        for i in range(start, m - need + 1):
            a, b = edges[i]
            if a == b:
                if budget[a - 1] < 2:
                    continue
                budget[a - 1] -= 2
            else:
                if budget[a - 1] < 1 or budget[b - 1] < 1:
                    continue
                budget[a - 1] -= 1
                budget[b - 1] -= 1
            chosen.append(edges[i])
            yield from rec(i + 1)
            chosen.pop()
            if a == b:
                budget[a - 1] += 2
            else:
                budget[a - 1] += 1
                budget[b - 1] += 1

    return rec(0)


def iter_faces(spec: ComplexSpec, d: int) -> Iterator[Simplex]:
    """All d-faces in lexicographic order, streamed."""
    if d < -1:
        raise ValueError("dimension must be >= -1")
    if d == -1:
        # The empty simplex lies in every family except the delta part,
        # whose members need a parallel pair of edges.
        if spec.kind != "delta":
            yield EMPTY_SIMPLEX
        return
    k = d + 1
    if spec.kind == "matching":
        yield from _iter_matching_faces(spec.vertices, k)
    elif spec.kind == "matching_minus_e":
        yield from _iter_matching_faces(spec.vertices, k, skip=spec.removed_edge)
    elif spec.kind == "bounded":
        yield from _iter_bounded_faces(spec.vertices, spec.bounds, k)
    elif spec.kind == "gamma":
        for s in _iter_matching_faces(spec.vertices, k):
            if not has_parallel_pair(s, spec.blocks):
                yield s
    elif spec.kind == "delta":
        for s in _iter_matching_faces(spec.vertices, k):
            if has_parallel_pair(s, spec.blocks):
                yield s
    else:
        raise ValueError(f"unknown complex kind {spec.kind!r}")


def enumerate_faces(spec: ComplexSpec, d: int) -> list[Simplex]:
    return list(iter_faces(spec, d))


def face_counts(spec: ComplexSpec) -> tuple[int, ...]:
    """(f_{-1}, f_0, ..., f_top) with trailing zero dimensions trimmed."""
    counts = [sum(1 for _ in iter_faces(spec, -1))]
    for d in range(0, top_dimension_bound(spec) + 1):
        counts.append(sum(1 for _ in iter_faces(spec, d)))
    while len(counts) > 1 and counts[-1] == 0:
        counts.pop()
    return tuple(counts)


class FaceTable:
    """Canonical per-dimension face lists with ordinal lookup.

    Lists are built lazily and are immutable once built; the ordinal of
    a face is its position in the lexicographic list.
    """

    def __init__(self, spec: ComplexSpec):
        self.spec = spec
        self._faces: dict[int, tuple[Simplex, ...]] = {}
        self._index: dict[int, dict[Simplex, int]] = {}

    def faces(self, d: int) -> tuple[Simplex, ...]:
        if d not in self._faces:
            if d < -1 or d > top_dimension_bound(self.spec):
                self._faces[d] = ()
            else:
                self._faces[d] = tuple(iter_faces(self.spec, d))
        return self._faces[d]

    def index(self, d: int) -> dict[Simplex, int]:
        if d not in self._index:
            self._index[d] = {s: i for i, s in enumerate(self.faces(d))}
        return self._index[d]

    def ordinal(self, d: int, s: Simplex) -> int:
        return self.index(d)[s]

    def count(self, d: int) -> int:
        return len(self.faces(d))

    def top_dimension(self) -> int:
        for d in range(top_dimension_bound(self.spec), -2, -1):
            if self.count(d):
                return d
        return -1


def format_face_lines(spec: ComplexSpec, dims: Iterable[int]) -> Iterator[str]:
    """Line-oriented face listing: "a-b" tokens, one simplex per line,
    with a "dim d" header in front of each dimension section."""
    for d in dims:
        yield f"dim {d}"
        for s in iter_faces(spec, d):
            yield " ".join(f"{a}-{b}" for a, b in s)
