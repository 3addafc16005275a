"""Generators for Hochschild, bubble, word and parabolic Tamari lattices."""

from typing import List, Sequence, Tuple

import numpy as np

from .errors import InvalidParameter, TheoremViolation
from .galois import DirectedGraph, UndirectedGraph, downward_label_sets, lattice_from_galois
from .lattice import Lattice, irreducibles, lattice_from_down_sets


def _graph(vertices: Sequence, rule) -> DirectedGraph:
    edges = [(i, k) for i, u in enumerate(vertices) for k, v in enumerate(vertices)
             if i != k and rule(u, v)]
    return DirectedGraph.from_edges(len(vertices), edges, [_name(v) for v in vertices])


def _name(v) -> str:
    if isinstance(v, tuple):
        return "(" + ",".join(_name(p) for p in v) + ")"
    return str(v)


# Hochschild and bubble --------------------------------------------------------------

def hochschild_graph(n: int) -> DirectedGraph:
    if n < 1:
        raise InvalidParameter("Hochschild lattices need n >= 1")
    verts = [(1, j) for j in range(1, n + 1)] + [(2, j) for j in range(2, n + 1)]

    def rule(u, v):
        return (u[0] == 2 and v[0] == 1 and u[1] == v[1]) or (u[0] == v[0] == 1 and u[1] > v[1])

    return _graph(verts, rule)


def hochschild(n: int) -> Tuple[DirectedGraph, Lattice]:
    G = hochschild_graph(n)
    return G, lattice_from_galois(G)[0]


def bubble_graph(m: int, n: int) -> DirectedGraph:
    if m < 0 or n < 0 or m + n < 1:
        raise InvalidParameter("bubble lattices need m, n >= 0 and m + n >= 1")
    xs = [f"x{s}" for s in range(1, m + 1)]
    ys = [f"y{t}" for t in range(1, n + 1)]
    pairs = [(s, t) for s in range(1, m + 1) for t in range(1, n + 1)]
    verts: List = xs + ys + pairs

    def rule(u, v):
        if isinstance(u, tuple) and isinstance(v, str) and v == f"x{u[0]}":
            return True
        if isinstance(u, str) and isinstance(v, tuple) and u == f"y{v[1]}":
            return True
        if isinstance(u, tuple) and isinstance(v, tuple):
            return u[0] >= v[0] and u[1] <= v[1]
        return False

    G = _graph(verts, rule)
    labels = xs + ys + [f"(x{s},y{t})" for s, t in pairs]
    return DirectedGraph(G.m, G.out, labels)


def bubble(m: int, n: int) -> Tuple[DirectedGraph, Lattice]:
    G = bubble_graph(m, n)
    return G, lattice_from_galois(G)[0]


# word lattices -----------------------------------------------------------------------

def words(m: int, n: int) -> List[Tuple[int, ...]]:
    """All (m, n)-words, generated letter by letter."""
    out: List[Tuple[int, ...]] = []

    def grow(prefix: Tuple[int, ...]) -> None:
        if len(prefix) == n:
            out.append(prefix)
            return
        for letter in range(m + 2):
            if not prefix and letter == m + 1:
                continue
            if 1 <= letter <= m and any(p < letter for p in prefix):
                continue
            grow(prefix + (letter,))

    grow(())
    return out


def word_lattice(m: int, n: int, verify: bool = True) -> Lattice:
    """Words under the componentwise order, numbered by letter sum."""
    if m < 1 or n < 1:
        raise InvalidParameter("word lattices need m >= 1 and n >= 1")
    ws = sorted(words(m, n), key=lambda w: (sum(w), w))
    arr = np.array(ws, dtype=np.int16)
    leq = np.all(arr[:, None, :] <= arr[None, :, :], axis=2)  # leq[a, b]: a <= b
    packed = np.packbits(leq.T, axis=1, bitorder="little")
    down = [int.from_bytes(row.tobytes(), "little") for row in packed]
    L = lattice_from_down_sets(down, ["".join(map(str, w)) for w in ws], check=verify)
    if verify:
        _check_word_labels(L, m, n, ws)
    return L


def word_join_irreducibles(m: int, n: int) -> List[Tuple[int, ...]]:
    out = [tuple([j] * i + [0] * (n - i)) for i in range(1, n + 1) for j in range(1, m + 1)]
    out += [tuple(m + 1 if k == i - 1 else 0 for k in range(n)) for i in range(2, n + 1)]
    return out


def expected_word_labels(w: Sequence[int], m: int) -> set:
    """Downward labels predicted by the rightmost-letter rule."""
    n = len(w)
    labels = set()
    for j in range(1, m + 1):
        pos = [i for i, c in enumerate(w) if c == j]
        if pos:
            i = pos[-1] + 1
            labels.add(tuple([j] * i + [0] * (n - i)))
    for i, c in enumerate(w):
        if c == m + 1:
            labels.add(tuple(m + 1 if k == i else 0 for k in range(n)))
    return labels


def _check_word_labels(L: Lattice, m: int, n: int, ws: List[Tuple[int, ...]]) -> None:
    jirr = {ws[j] for j in irreducibles(L).jirr}
    if jirr != set(word_join_irreducibles(m, n)):
        raise TheoremViolation("join-irreducible words differ from the predicted list")
    for x, labels in downward_label_sets(L).items():
        if {ws[j] for j in labels} != expected_word_labels(ws[x], m):
            raise TheoremViolation(f"downward labels of {ws[x]} break the rightmost-letter rule")


# parabolic Tamari ---------------------------------------------------------------------

def parse_composition(text) -> Tuple[int, ...]:
    try:
        parts = tuple(int(p) for p in (text.split(",") if isinstance(text, str) else text))
    except ValueError:
        raise InvalidParameter(f"bad composition {text!r}") from None
    if not parts or any(p < 1 for p in parts):
        raise InvalidParameter("composition parts must be positive")
    return parts


def _regions(alpha: Sequence[int]) -> List[int]:
    region = [0]  # 1-based node index
    for r, size in enumerate(alpha, 1):
        region += [r] * size
    return region


def alpha_arcs(alpha: Sequence[int]) -> List[Tuple[int, int]]:
    alpha = parse_composition(alpha)
    region = _regions(alpha)
    n = sum(alpha)
    return [(a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1) if region[a] != region[b]]


def parabolic_tamari_graph(alpha: Sequence[int]) -> DirectedGraph:
    alpha = parse_composition(alpha)
    region = _regions(alpha)
    arcs = alpha_arcs(alpha)

    def rule(u, v):
        (a1, b1), (a2, b2) = u, v
        if region[a1] == region[a2]:
            return a1 <= a2 < b2 <= b1
        return a2 < a1 < b2 <= b1 and region[a1] != region[b2]

    return _graph(arcs, rule)


def parabolic_tamari(alpha) -> Tuple[DirectedGraph, Lattice]:
    G = parabolic_tamari_graph(alpha)
    return G, lattice_from_galois(G)[0]


def arcs_compatible(alpha: Sequence[int], u: Tuple[int, int], v: Tuple[int, int]) -> bool:
    region = _regions(parse_composition(alpha))
    (a1, b1), (a2, b2) = sorted((u, v))
    if a1 == a2 or b1 == b2:
        return False
    if a1 < a2 < b1 < b2:
        return region[a1] == region[a2] or region[a2] == region[b1]
    if a1 < a2 < b2 < b1:
        # nesting is allowed only when the two starts lie in different regions
        return region[a1] != region[a2]
    return True


def arc_compatibility_graph(alpha) -> UndirectedGraph:
    arcs = alpha_arcs(alpha)
    edges = [(i, k) for i in range(len(arcs)) for k in range(i + 1, len(arcs))
             if arcs_compatible(alpha, arcs[i], arcs[k])]
    return UndirectedGraph.from_edges(len(arcs), edges, [_name(a) for a in arcs])
