"""Isomorphism of finite directed graphs by colour refinement and backtracking.

Lattices are compared through their Hasse diagrams; undirected graphs are
passed as symmetric adjacency.
"""

from typing import Dict, List, Optional, Sequence

from .bits import iter_bits


def _as_lists(adj: Sequence) -> List[List[int]]:
    out = []
    for row in adj:
        if isinstance(row, int):
            out.append(list(iter_bits(row)))
        else:
            out.append(sorted(row))
    return out


def _reverse(out: List[List[int]]) -> List[List[int]]:
    rev: List[List[int]] = [[] for _ in out]
    for v, row in enumerate(out):
        for u in row:
            rev[u].append(v)
    return rev


class _Side:
    __slots__ = ("out", "inn", "colors")

    def __init__(self, out, colors):
        self.out = out
        self.inn = _reverse(out)
        self.colors = colors


def _refine(a: _Side, b: _Side) -> bool:
    """Refine both colourings in lockstep; False if they become incompatible."""
    n_classes = len(set(a.colors))
    while True:
        sigs_a = [
            (a.colors[v], tuple(sorted(a.colors[u] for u in a.out[v])),
             tuple(sorted(a.colors[u] for u in a.inn[v])))
            for v in range(len(a.out))
        ]
        sigs_b = [
            (b.colors[v], tuple(sorted(b.colors[u] for u in b.out[v])),
             tuple(sorted(b.colors[u] for u in b.inn[v])))
            for v in range(len(b.out))
        ]
        if sorted(sigs_a) != sorted(sigs_b):
            return False
        table = {s: i for i, s in enumerate(sorted(set(sigs_a)))}
        a.colors = [table[s] for s in sigs_a]
        b.colors = [table[s] for s in sigs_b]
        if len(table) == n_classes:
            return True
        n_classes = len(table)


def _search(a: _Side, b: _Side) -> Optional[Dict[int, int]]:
    if not _refine(a, b):
        return None
    classes: Dict[int, List[int]] = {}
    for v, c in enumerate(a.colors):
        classes.setdefault(c, []).append(v)
    open_classes = [(len(vs), c) for c, vs in classes.items() if len(vs) > 1]
    if not open_classes:
        where_b = {c: v for v, c in enumerate(b.colors)}
        mapping = {v: where_b[c] for v, c in enumerate(a.colors)}
        for v, row in enumerate(a.out):
            if sorted(mapping[u] for u in row) != sorted(b.out[mapping[v]]):
                return None
        return mapping
    _, target = min(open_classes)
    v = classes[target][0]
    fresh = max(a.colors) + 1
    for u in [w for w, c in enumerate(b.colors) if c == target]:
        ca, cb = list(a.colors), list(b.colors)
        ca[v] = fresh
        cb[u] = fresh
        sub_a = _Side.__new__(_Side)
        sub_a.out, sub_a.inn, sub_a.colors = a.out, a.inn, ca
        sub_b = _Side.__new__(_Side)
        sub_b.out, sub_b.inn, sub_b.colors = b.out, b.inn, cb
        found = _search(sub_a, sub_b)
        if found is not None:
            return found
    return None


def find_isomorphism(adj1: Sequence, adj2: Sequence,
                     colors1: Optional[Sequence[int]] = None,
                     colors2: Optional[Sequence[int]] = None) -> Optional[Dict[int, int]]:
    """Return a vertex bijection mapping edges of ``adj1`` onto ``adj2``, or None.

    ``adj`` rows are out-neighbour bitsets or iterables. Optional initial
    colours must agree on a common palette.
    """
    out1, out2 = _as_lists(adj1), _as_lists(adj2)
    if len(out1) != len(out2):
        return None
    if sum(map(len, out1)) != sum(map(len, out2)):
        return None
    c1 = list(colors1) if colors1 is not None else [0] * len(out1)
    c2 = list(colors2) if colors2 is not None else [0] * len(out2)
    return _search(_Side(out1, c1), _Side(out2, c2))


def undirected_isomorphic(adj1: Sequence, adj2: Sequence) -> bool:
    return find_isomorphism(adj1, adj2) is not None
