"""Independent brute-force oracles used to freeze expected test values.

Everything here deliberately avoids the package's enumeration and linear
algebra code paths: faces come from itertools.combinations over the full
edge universe, and the Smith form oracle is a dense textbook elimination
on list-of-lists.
"""

from itertools import combinations
from math import factorial


def all_edges(n, loops=False):
    out = [(a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1)]
    if loops:
        out += [(a, a) for a in range(1, n + 1)]
    return sorted(out)


def degree_ok(simplex, bounds):
    deg = {}
    for a, b in simplex:
        deg[a] = deg.get(a, 0) + 1
        deg[b] = deg.get(b, 0) + 1
    return all(deg.get(v, 0) <= bounds[v - 1] for v in range(1, len(bounds) + 1))


def is_matching(simplex):
    verts = [v for e in simplex for v in e]
    return len(set(verts)) == len(verts)


def brute_matching_faces(n, d):
    return sorted(
        s for s in combinations(all_edges(n), d + 1) if is_matching(s)
    )


def brute_bounded_faces(n, bounds, d):
    return sorted(
        s
        for s in combinations(all_edges(n, loops=True), d + 1)
        if degree_ok(s, bounds)
    )


def matching_face_count(n, k):
    """Closed form: number of k-edge matchings of K_n."""
    if 2 * k > n:
        return 0
    return factorial(n) // (2**k * factorial(k) * factorial(n - 2 * k))


def block_image(e, blocks):
    idx = {v: i for i, b in enumerate(blocks, start=1) for v in b}
    a, b = idx[e[0]], idx[e[1]]
    return (a, b) if a <= b else (b, a)


def has_collision(simplex, blocks):
    images = [block_image(e, blocks) for e in simplex]
    return len(set(images)) < len(images)


def dense_smith_factors(rows):
    """Textbook Smith normal form of a dense integer matrix.

    Returns the full diagonal (including 1s, excluding 0s) in
    divisibility order.  Independent of the package implementation.
    """
    a = [list(r) for r in rows]
    m = len(a)
    n = len(a[0]) if m else 0
    factors = []
    top = 0
    while True:
        pos = None
        best = None
        for i in range(top, m):
            for j in range(top, n):
                v = abs(a[i][j])
                if v and (best is None or v < best):
                    best, pos = v, (i, j)
        if pos is None:
            break
        i0, j0 = pos
        a[top], a[i0] = a[i0], a[top]
        for r in a:
            r[top], r[j0] = r[j0], r[top]
        while True:
            pivot = a[top][top]
            done = True
            for i in range(top + 1, m):
                q = a[i][top] // pivot
                if q:
                    for j in range(top, n):
                        a[i][j] -= q * a[top][j]
                if a[i][top]:
                    a[top], a[i] = a[i], a[top]
                    done = False
                    break
            if not done:
                continue
            for j in range(top + 1, n):
                q = a[top][j] // pivot
                if q:
                    for i in range(top, m):
                        a[i][j] -= q * a[i][top]
                if a[top][j]:
                    for i in range(top, m):
                        a[i][top], a[i][j] = a[i][j], a[i][top]
                    done = False
                    break
            if done:
                break
        pivot = abs(a[top][top])
        bad = None
        for i in range(top + 1, m):
            for j in range(top + 1, n):
                if a[i][j] % pivot:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            for j in range(top, n):
                a[top][j] += a[bad][j]
            continue
        factors.append(pivot)
        top += 1
    return factors
