"""Brute-force references, written without the package's algorithms."""

import itertools
from math import comb

import networkx as nx
import numpy as np


def catalan(n):
    return comb(2 * n, n) // (n + 1)


def leq_matrix(P):
    return [[P.leq(x, y) for y in range(P.n)] for x in range(P.n)]


def hasse_digraph(P):
    g = nx.DiGraph()
    g.add_nodes_from(range(P.n))
    g.add_edges_from(P.covers)
    return g


def nx_isomorphic(P, Q):
    return nx.is_isomorphic(hasse_digraph(P), hasse_digraph(Q))


def join_table(P):
    """Least upper bounds from the order relation alone; None if some pair has none."""
    le = leq_matrix(P)
    n = P.n
    out = {}
    for x in range(n):
        for y in range(n):
            ubs = [z for z in range(n) if le[x][z] and le[y][z]]
            least = [z for z in ubs if all(le[z][w] for w in ubs)]
            if len(least) != 1:
                return None
            out[x, y] = least[0]
    return out


def meet_table(P):
    le = leq_matrix(P)
    n = P.n
    out = {}
    for x in range(n):
        for y in range(n):
            lbs = [z for z in range(n) if le[z][x] and le[z][y]]
            great = [z for z in lbs if all(le[w][z] for w in lbs)]
            out[x, y] = great[0]
    return out


def join_irreducibles(P):
    """Elements that are not the join of the elements strictly below them (bottom excluded)."""
    J = join_table(P)
    out = []
    for x in range(P.n):
        below = [y for y in range(P.n) if y != x and P.leq(y, x)]
        if not below:
            continue
        if all(J[a, b] != x for a in below for b in below):
            out.append(x)
    return out


def meet_irreducibles(P):
    M = meet_table(P)
    out = []
    for x in range(P.n):
        above = [y for y in range(P.n) if y != x and P.leq(x, y)]
        if not above:
            continue
        if all(M[a, b] != x for a in above for b in above):
            out.append(x)
    return out


def longest_chain_length(P):
    return nx.dag_longest_path_length(hasse_digraph(P))


def is_left_modular(L, x):
    """For all y < z: (y v x) ^ z = y v (x ^ z)."""
    J, M = join_table(L), meet_table(L)
    for y in range(L.n):
        for z in range(L.n):
            if y != z and L.leq(y, z) and M[J[y, x], z] != J[y, M[x, z]]:
                return False
    return True


def is_semidistributive(L):
    J, M = join_table(L), meet_table(L)
    r = range(L.n)
    for x, y, z in itertools.product(r, r, r):
        if J[x, y] == J[x, z] and J[x, M[y, z]] != J[x, y]:
            return False
        if M[x, y] == M[x, z] and M[x, J[y, z]] != M[x, y]:
            return False
    return True


# order dimension ---------------------------------------------------------------

def linear_extensions(P):
    """All linear extensions as tuples (the poset must be small)."""
    preds = [{x for x in range(P.n) if x != y and P.leq(x, y)} for y in range(P.n)]
    out = []

    def grow(placed, seq):
        if len(seq) == P.n:
            out.append(tuple(seq))
            return
        for y in range(P.n):
            if y not in placed and preds[y] <= placed:
                placed.add(y)
                seq.append(y)
                grow(placed, seq)
                seq.pop()
                placed.remove(y)

    grow(set(), [])
    return out


def realizer_dimension(P):
    """Fewest linear extensions whose intersection is P."""
    incomparable = [(a, b) for a in range(P.n) for b in range(P.n)
                    if a != b and not P.leq(a, b) and not P.leq(b, a)]
    if not incomparable:
        return 1
    index = {p: i for i, p in enumerate(incomparable)}
    masks = set()
    for ext in linear_extensions(P):
        pos = {x: i for i, x in enumerate(ext)}
        masks.add(sum(1 << index[(a, b)] for a, b in incomparable if pos[a] < pos[b]))
    masks = [m for m in masks if not any(m != o and m & o == m for o in masks)]
    full = (1 << len(incomparable)) - 1
    for k in range(1, len(masks) + 1):
        for combo in itertools.combinations(masks, k):
            acc = 0
            for m in combo:
                acc |= m
            if acc == full:
                return k
    raise AssertionError("unreachable")


# graphs --------------------------------------------------------------------------

def independent_set_count(m, edges):
    adj = [0] * m
    for u, v in edges:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return sum(1 for S in range(1 << m) if all(not (adj[v] & S) for v in range(m) if (S >> v) & 1))


def chromatic_number(m, edges):
    """Exhaustive colouring; only for graphs with a handful of vertices."""
    if not edges:
        return 1 if m else 0
    for k in range(1, m + 1):
        for colours in itertools.product(range(k), repeat=m):
            if all(colours[u] != colours[v] for u, v in edges):
                return k
    raise AssertionError("unreachable")


def maximal_orthogonal_pairs(m, arrows):
    """Pairs (X, Y) with no arrow from X to Y (loops implicit), maximal in both components."""
    out = set()
    for X in range(1 << m):
        Y = sum(1 << k for k in range(m)
                if not any((X >> i) & 1 and (i == k or (i, k) in arrows) for i in range(m)))
        X2 = sum(1 << i for i in range(m)
                 if not any((Y >> k) & 1 and (i == k or (i, k) in arrows) for k in range(m)))
        if X2 == X:
            out.add((X, Y))
    return out


def source_sets(vertices, arrows):
    """Nonempty proper subsets closed under predecessors, by direct enumeration."""
    vs = list(vertices)
    found = []
    for r in range(1, len(vs)):
        for combo in itertools.combinations(vs, r):
            S = set(combo)
            if not any(u not in S and v in S for u, v in arrows):
                found.append(frozenset(S))
    return found


def facet_graph(chains):
    """F -> G when the chains share all but one element of G."""
    sets = [frozenset(c) for c in chains]
    return {(i, k) for i, F in enumerate(sets) for k, G in enumerate(sets)
            if i != k and len(F & G) == len(G) - 1}


def is_shelling(chains):
    sets = [frozenset(c) for c in chains]
    for j in range(1, len(sets)):
        Fj = sets[j]
        for i in range(j):
            if not any(sets[i] & Fj <= sets[l] & Fj and len(sets[l] & Fj) == len(Fj) - 1
                       for l in range(j)):
                return False
    return True


def has_shelling(chains):
    longest = max(len(c) for c in chains)
    return any(len(order[0]) == longest and is_shelling(order)
               for order in itertools.permutations(chains))


# Tamari lattices -----------------------------------------------------------------

def tamari_by_rotation(n):
    """Binary trees on n nodes ordered by right rotation."""
    def trees(k):
        if k == 0:
            return [None]
        return [(l, r) for i in range(k) for l in trees(i) for r in trees(k - 1 - i)]

    def rotations(t):
        if t is None:
            return
        left, right = t
        if left is not None:
            a, b = left
            yield (a, (b, right))
        for s in rotations(left):
            yield (s, right)
        for s in rotations(right):
            yield (left, s)

    ts = trees(n)
    g = nx.DiGraph()
    g.add_nodes_from(ts)
    for t in ts:
        for s in rotations(t):
            g.add_edge(t, s)
    return g


def parabolic_231_avoiders(alpha):
    """Parabolic quotient permutations avoiding the bounded (alpha, 231) pattern."""
    n = sum(alpha)
    region = []
    for r, size in enumerate(alpha):
        region += [r] * size
    out = []
    for w in itertools.permutations(range(1, n + 1)):
        if any(region[i] == region[i + 1] and w[i] > w[i + 1] for i in range(n - 1)):
            continue
        bad = any(region[i] != region[j] and w[k] < w[i] < w[j] and w[i] == w[k] + 1
                  for i in range(n) for j in range(i + 1, n) for k in range(j + 1, n))
        if not bad:
            out.append(w)
    return out


def weak_order_digraph(perms):
    """Hasse diagram of inclusion of position-inversion sets, restricted to ``perms``."""
    def inversions(w):
        return frozenset((i, j) for i in range(len(w)) for j in range(i + 1, len(w)) if w[i] > w[j])

    inv = {w: inversions(w) for w in perms}
    g = nx.DiGraph()
    g.add_nodes_from(perms)
    for u in perms:
        above = [v for v in perms if v != u and inv[u] < inv[v]]
        for v in above:
            if not any(inv[u] < inv[x] < inv[v] for x in above):
                g.add_edge(u, v)
    return g


# gentle quivers -------------------------------------------------------------------

def hom_dimension_numpy(arrows, support_m, support_n):
    """dim Hom between thin modules: f_t * M_a = N_a * f_s for each arrow a: s -> t."""
    shared = sorted(set(support_m) & set(support_n))
    if not shared:
        return 0
    col = {v: i for i, v in enumerate(shared)}
    rows = []
    for s, t in arrows:
        row = np.zeros(len(shared))
        if t in col and s in support_m and t in support_m:
            row[col[t]] += 1.0
        if s in col and s in support_n and t in support_n:
            row[col[s]] -= 1.0
        rows.append(row)
    rank = np.linalg.matrix_rank(np.array(rows)) if rows else 0
    return len(shared) - int(rank)
