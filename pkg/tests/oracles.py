"""Small brute-force oracles, independent of the package internals."""

from itertools import combinations


def perfect_matchings(points):
    points = list(points)
    if not points:
        yield []
        return
    a = points[0]
    for k in range(1, len(points)):
        b = points[k]
        rest = points[1:k] + points[k + 1 :]
        for m in perfect_matchings(rest):
            yield [(a, b)] + m


def crosses(p, q):
    (a, b), (c, d) = sorted(p), sorted(q)
    return a < c < b < d or c < a < d < b


def noncrossing_matchings(n_points):
    """Non-crossing perfect matchings of points 0..n-1 on a circle."""
    out = []
    for m in perfect_matchings(range(n_points)):
        if not any(crosses(p, q) for p, q in combinations(m, 2)):
            out.append(sorted(tuple(sorted(e)) for e in m))
    return out


def glue_pairing(n, caps_top, caps_bottom):
    """Pairing of two cap diagrams on n points by gluing one under the mirror of the other.

    Returns (loops, ok) where ok is False when some defect meets a defect of the same half.
    """
    parent = list(range(2 * n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        parent[find(a)] = find(b)

    for i in range(n):
        union(i, n + i)
    for i, j in caps_top:
        union(i - 1, j - 1)
    for i, j in caps_bottom:
        union(n + i - 1, n + j - 1)
    cap_pts_top = {p - 1 for c in caps_top for p in c}
    cap_pts_bot = {n + p - 1 for c in caps_bottom for p in c}
    defects = [i for i in range(n) if i not in cap_pts_top] + [n + i for i in range(n) if n + i not in cap_pts_bot]
    comps = {}
    for x in range(2 * n):
        comps.setdefault(find(x), []).append(x)
    loops = 0
    for members in comps.values():
        ends = [x for x in members if x in defects]
        if not ends:
            loops += 1
        elif len(ends) != 2 or (ends[0] < n) == (ends[1] < n):
            return loops, False
    return loops, True
