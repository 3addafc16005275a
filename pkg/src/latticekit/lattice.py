"""Finite posets and lattices stored as up-set / down-set bitsets.

Elements are the integers ``0..n-1`` and must be numbered along a linear
extension: every cover ``(x, y)`` has ``x < y``. With that convention the
join of ``x`` and ``y`` is the lowest-indexed element of ``up[x] & up[y]``
and the meet the highest-indexed element of ``down[x] & down[y]``.
"""

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from . import bits
from .errors import NoExtremum, NotACover, NotALattice, NotLinearExtension, TheoremViolation
from .iso import find_isomorphism

Edge = Tuple[int, int]


class Poset:
    """Immutable finite poset indexed along a linear extension."""

    def __init__(self, n: int, covers: Sequence[Edge], down: Sequence[int],
                 up: Sequence[int], labels: Optional[Sequence[str]] = None):
        self.n = n
        self.covers: Tuple[Edge, ...] = tuple(sorted(covers))
        self.down: Tuple[int, ...] = tuple(down)
        self.up: Tuple[int, ...] = tuple(up)
        self.labels: Optional[Tuple[str, ...]] = tuple(labels) if labels is not None else None
        lower: List[List[int]] = [[] for _ in range(n)]
        upper: List[List[int]] = [[] for _ in range(n)]
        for x, y in self.covers:
            upper[x].append(y)
            lower[y].append(x)
        self.lower_covers: Tuple[Tuple[int, ...], ...] = tuple(tuple(r) for r in lower)
        self.upper_covers: Tuple[Tuple[int, ...], ...] = tuple(tuple(r) for r in upper)
        self.all_mask = (1 << n) - 1

    # construction -----------------------------------------------------
    @classmethod
    def from_covers(cls, n: int, covers: Iterable[Sequence[int]],
                    labels: Optional[Sequence[str]] = None, check: bool = True):
        edges = sorted({(int(a), int(b)) for a, b in covers})
        if check:
            for a, b in edges:
                if not (0 <= a < n and 0 <= b < n):
                    raise NotLinearExtension(f"cover ({a}, {b}) out of range 0..{n - 1}")
                if a >= b:
                    raise NotLinearExtension(
                        f"cover ({a}, {b}) is not index-increasing; renumber along a linear extension")
        if labels is not None and len(labels) != n:
            raise ValueError(f"expected {n} labels, got {len(labels)}")
        lower: List[List[int]] = [[] for _ in range(n)]
        for a, b in edges:
            lower[b].append(a)
        down = [0] * n
        for y in range(n):
            mask = 1 << y
            for x in lower[y]:
                mask |= down[x]
            down[y] = mask
        up = _transpose(down, n)
        if check:
            for a, b in edges:
                if up[a] & down[b] != (1 << a) | (1 << b):
                    raise NotACover(f"({a}, {b}) is implied by transitivity, not a cover")
        return cls(n, edges, down, up, labels)

    @classmethod
    def from_down_sets(cls, down: Sequence[int], labels: Optional[Sequence[str]] = None):
        """Build from reflexive down-sets; covers come from transitive reduction."""
        n = len(down)
        for y, mask in enumerate(down):
            if mask >> (y + 1) or not (mask >> y) & 1:
                raise NotLinearExtension(f"down-set of {y} is not compatible with the numbering")
        covers = []
        for y in range(n):
            strict = down[y] & ~(1 << y)
            covered = 0
            x = strict
            while x:
                top = x.bit_length() - 1
                if not (covered >> top) & 1:
                    covers.append((top, y))
                    covered |= down[top]
                x &= ~(1 << top)
        return cls(n, covers, down, _transpose(down, n), labels)

    # order queries ----------------------------------------------------
    def leq(self, x: int, y: int) -> bool:
        return bool((self.down[y] >> x) & 1)

    def lt(self, x: int, y: int) -> bool:
        return x != y and self.leq(x, y)

    def comparable(self, x: int, y: int) -> bool:
        return self.leq(x, y) or self.leq(y, x)

    def interval(self, x: int, y: int) -> int:
        return self.up[x] & self.down[y]

    def ideal(self, mask: int) -> int:
        out = 0
        for x in bits.iter_bits(mask):
            out |= self.down[x]
        return out

    def filter(self, mask: int) -> int:
        out = 0
        for x in bits.iter_bits(mask):
            out |= self.up[x]
        return out

    def minimal(self, mask: int) -> int:
        return bits.from_iter(x for x in bits.iter_bits(mask)
                              if not (self.down[x] & mask & ~(1 << x)))

    def maximal(self, mask: int) -> int:
        return bits.from_iter(x for x in bits.iter_bits(mask)
                              if not (self.up[x] & mask & ~(1 << x)))

    def label(self, x: int) -> str:
        return self.labels[x] if self.labels is not None else str(x)

    def hasse_out(self) -> List[int]:
        return [bits.from_iter(r) for r in self.upper_covers]

    def subposet(self, elements: Sequence[int]) -> "Poset":
        elements = sorted(elements)
        index = {x: i for i, x in enumerate(elements)}
        down = []
        for x in elements:
            mask = 0
            for y in bits.iter_bits(self.down[x]):
                if y in index:
                    mask |= 1 << index[y]
            down.append(mask)
        labels = [self.label(x) for x in elements]
        return Poset.from_down_sets(down, labels)

    def __len__(self):
        return self.n

    def __repr__(self):
        return f"{type(self).__name__}(n={self.n}, covers={len(self.covers)})"


def _transpose(down: Sequence[int], n: int) -> List[int]:
    up = [0] * n
    for y in range(n):
        for x in bits.iter_bits(down[y]):
            up[x] |= 1 << y
    return up


class Lattice(Poset):
    """Finite lattice; ``0`` is the bottom and ``n-1`` the top."""

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self._join_memo: Optional[Dict[Edge, int]] = {} if self.n > 64 else None
        self._meet_memo: Optional[Dict[Edge, int]] = {} if self.n > 64 else None

    @property
    def bottom(self) -> int:
        return 0

    @property
    def top(self) -> int:
        return self.n - 1

    def join(self, x: int, y: int) -> int:
        memo = self._join_memo
        if memo is not None:
            key = (x, y) if x < y else (y, x)
            hit = memo.get(key)
            if hit is None:
                hit = memo[key] = bits.lowest(self.up[x] & self.up[y])
            return hit
        return bits.lowest(self.up[x] & self.up[y])

    def meet(self, x: int, y: int) -> int:
        memo = self._meet_memo
        if memo is not None:
            key = (x, y) if x < y else (y, x)
            hit = memo.get(key)
            if hit is None:
                hit = memo[key] = bits.highest(self.down[x] & self.down[y])
            return hit
        return bits.highest(self.down[x] & self.down[y])

    def join_all(self, mask: int) -> int:
        common = self.all_mask
        for x in bits.iter_bits(mask):
            common &= self.up[x]
        return bits.lowest(common)

    def meet_all(self, mask: int) -> int:
        common = self.all_mask
        for x in bits.iter_bits(mask):
            common &= self.down[x]
        return bits.highest(common)

    def check_lattice(self) -> None:
        """Raise unless every pair has a unique join and meet and extrema exist."""
        n = self.n
        if n == 0:
            raise NoExtremum("empty poset")
        up, down = self.up, self.down
        for x in range(n):
            above = self.all_mask & ~((1 << (x + 1)) - 1)
            others = above & ~(up[x] | down[x])
            for y in bits.iter_bits(others):
                common = up[x] & up[y]
                if not common or common & ~up[bits.lowest(common)]:
                    raise NotALattice(x, y, "join")
                common = down[x] & down[y]
                if not common or common & ~down[bits.highest(common)]:
                    raise NotALattice(x, y, "meet")
        if up[0] != self.all_mask:
            raise NoExtremum("no unique minimum")
        if down[n - 1] != self.all_mask:
            raise NoExtremum("no unique maximum")


def build_lattice(n: int, covers: Iterable[Sequence[int]],
                  labels: Optional[Sequence[str]] = None, check: bool = True) -> Lattice:
    """Build a lattice from its Hasse diagram given along a linear extension."""
    if n < 1:
        raise NoExtremum("a lattice needs at least one element")
    lat = Lattice.from_covers(n, covers, labels, check=check)
    if check:
        lat.check_lattice()
    return lat


def lattice_from_down_sets(down: Sequence[int], labels: Optional[Sequence[str]] = None,
                           check: bool = True) -> Lattice:
    lat = Lattice.from_down_sets(down, labels)
    if check:
        lat.check_lattice()
    return lat


def join(L: Lattice, x: int, y: int) -> int:
    return L.join(x, y)


def meet(L: Lattice, x: int, y: int) -> int:
    return L.meet(x, y)


def chain_lattice(length: int) -> Lattice:
    """The chain with ``length + 1`` elements."""
    return build_lattice(length + 1, [(i, i + 1) for i in range(length)])


# irreducibles ----------------------------------------------------------

@dataclass(frozen=True)
class IrreducibleTable:
    jirr: Tuple[int, ...]
    lower_cover: Dict[int, int]
    mirr: Tuple[int, ...]
    upper_cover: Dict[int, int]
    gammaJ: Optional[Dict[Edge, int]] = None
    gammaM: Optional[Dict[Edge, int]] = None
    kappa: Optional[Dict[int, int]] = None


def irreducibles(L: Poset) -> IrreducibleTable:
    jirr = tuple(x for x in range(L.n) if len(L.lower_covers[x]) == 1)
    mirr = tuple(x for x in range(L.n) if len(L.upper_covers[x]) == 1)
    return IrreducibleTable(
        jirr=jirr,
        lower_cover={j: L.lower_covers[j][0] for j in jirr},
        mirr=mirr,
        upper_cover={m: L.upper_covers[m][0] for m in mirr},
    )


# chains, length and spine ------------------------------------------------

@dataclass(frozen=True)
class ChainPhi:
    elements: Tuple[int, ...]
    is_maximal: bool
    is_longest: bool

    def __len__(self):
        return len(self.elements)

    @property
    def length(self) -> int:
        return len(self.elements) - 1


def heights(L: Poset) -> Tuple[List[int], List[int]]:
    """Longest path length from the bottom to each element, and from each to the top."""
    h = [0] * L.n
    for y in range(L.n):
        for x in L.lower_covers[y]:
            h[y] = max(h[y], h[x] + 1)
    d = [0] * L.n
    for x in range(L.n - 1, -1, -1):
        for y in L.upper_covers[x]:
            d[x] = max(d[x], d[y] + 1)
    return h, d


def length_spine(L: Lattice) -> Tuple[int, FrozenSet[int], Tuple[int, ...]]:
    """Return ``(length, spine, longest chain)``; the chain is lexicographically least."""
    h, d = heights(L)
    length = d[0]
    spine = frozenset(x for x in range(L.n) if h[x] + d[x] == length)
    chain = [0]
    x = 0
    while x != L.top:
        x = min(y for y in L.upper_covers[x] if y in spine and h[y] == h[x] + 1)
        chain.append(x)
    return length, spine, tuple(chain)


def longest_chains(L: Lattice, limit: Optional[int] = None) -> List[Tuple[int, ...]]:
    """Enumerate longest chains in lexicographic order, stopping after ``limit``."""
    h, d = heights(L)
    length = d[0]
    found: List[Tuple[int, ...]] = []
    stack = [(0, (0,))]
    while stack and (limit is None or len(found) < limit):
        x, path = stack.pop()
        if x == L.top:
            found.append(path)
            continue
        nxt = [y for y in L.upper_covers[x] if h[y] == h[x] + 1 and h[y] + d[y] == length]
        for y in sorted(nxt, reverse=True):
            stack.append((y, path + (y,)))
    return found


def make_chain(L: Lattice, elements: Sequence[int]) -> ChainPhi:
    """Validate a chain from bottom to top and record whether it is maximal/longest."""
    elems = tuple(int(e) for e in elements)
    if not elems or elems[0] != L.bottom or elems[-1] != L.top:
        raise ValueError("chain must start at the bottom and end at the top")
    for a, b in zip(elems, elems[1:]):
        if not L.lt(a, b):
            raise ValueError(f"{a} < {b} fails; chain must be strictly increasing")
    maximal = all(b in L.upper_covers[a] for a, b in zip(elems, elems[1:]))
    length = length_spine(L)[0]
    return ChainPhi(elems, maximal, maximal and len(elems) - 1 == length)


# extremality -----------------------------------------------------------

@dataclass(frozen=True)
class Extremality:
    length: int
    n_jirr: int
    n_mirr: int
    join_extremal: bool
    meet_extremal: bool

    @property
    def extremal(self) -> bool:
        return self.join_extremal and self.meet_extremal


def extremality(L: Lattice) -> Extremality:
    table = irreducibles(L)
    length = length_spine(L)[0]
    nj, nm = len(table.jirr), len(table.mirr)
    if length > min(nj, nm):
        raise TheoremViolation(f"length {length} exceeds min(|JIrr|={nj}, |MIrr|={nm})")
    return Extremality(length, nj, nm, length == nj, length == nm)


def is_extremal(L: Lattice) -> bool:
    return extremality(L).extremal


# semidistributivity ------------------------------------------------------

@dataclass(frozen=True)
class SDReport:
    is_jsd: bool
    is_msd: bool
    gammaJ: Dict[Edge, int]
    gammaM: Dict[Edge, int]
    kappa: Optional[Dict[int, int]]

    @property
    def is_sd(self) -> bool:
        return self.is_jsd and self.is_msd


def semidistributivity(L: Lattice) -> SDReport:
    """Cover-label test: each ``b < c`` needs a least new join-irreducible and a greatest lost meet-irreducible."""
    gJ: Dict[Edge, int] = {}
    gM: Dict[Edge, int] = {}
    jsd = msd = True
    for b, c in L.covers:
        gained = L.down[c] & ~L.down[b]
        j = bits.lowest(gained)
        if gained & ~L.up[j]:
            jsd = False
        elif jsd:
            gJ[(b, c)] = j
        lost = L.up[b] & ~L.up[c]
        m = bits.highest(lost)
        if lost & ~L.down[m]:
            msd = False
        elif msd:
            gM[(b, c)] = m
    if not jsd:
        gJ = {}
    if not msd:
        gM = {}
    kappa = None
    if jsd and msd:
        kappa = {j: gM[(L.lower_covers[j][0], j)] for j in irreducibles(L).jirr}
    return SDReport(jsd, msd, gJ, gM, kappa)


def irreducible_table(L: Lattice) -> IrreducibleTable:
    """Irreducibles with the semidistributive labels attached when they exist."""
    base = irreducibles(L)
    sd = semidistributivity(L)
    return IrreducibleTable(base.jirr, base.lower_cover, base.mirr, base.upper_cover,
                            sd.gammaJ or None, sd.gammaM or None, sd.kappa)


# width and dissectors ----------------------------------------------------

def _max_matching(adj: List[List[int]], n_right: int) -> int:
    match_right = [-1] * n_right

    def augment(u: int, seen: List[bool]) -> bool:
        for v in adj[u]:
            if not seen[v]:
                seen[v] = True
                if match_right[v] < 0 or augment(match_right[v], seen):
                    match_right[v] = u
                    return True
        return False

    size = 0
    for u in range(len(adj)):
        if augment(u, [False] * n_right):
            size += 1
    return size


def width_of(P: Poset, elements: Optional[Iterable[int]] = None) -> int:
    """Largest antichain of the induced subposet, via a minimum chain cover."""
    elems = sorted(set(range(P.n) if elements is None else elements))
    if not elems:
        return 0
    index = {x: i for i, x in enumerate(elems)}
    adj = [[index[y] for y in bits.iter_bits(P.up[x] & ~(1 << x)) if y in index] for x in elems]
    return len(elems) - _max_matching(adj, len(elems))


def dissectors(P: Poset) -> FrozenSet[int]:
    """Elements ``x`` whose complement of the principal filter has a maximum."""
    out = []
    for x in range(P.n):
        rest = P.all_mask & ~P.up[x]
        if rest and not rest & ~P.down[bits.highest(rest)]:
            out.append(x)
    return frozenset(out)


def subposet_jirr(L: Lattice) -> Poset:
    return L.subposet(irreducibles(L).jirr)


# products and isomorphism ------------------------------------------------

def direct_product(P: Lattice, Q: Lattice) -> Lattice:
    m = Q.n
    covers = []
    for a in range(P.n):
        for b in range(m):
            for b2 in Q.upper_covers[b]:
                covers.append((a * m + b, a * m + b2))
            for a2 in P.upper_covers[a]:
                covers.append((a * m + b, a2 * m + b))
    labels = [f"({P.label(a)},{Q.label(b)})" for a in range(P.n) for b in range(m)]
    return build_lattice(P.n * m, covers, labels, check=False)


def find_lattice_isomorphism(L1: Poset, L2: Poset) -> Optional[Dict[int, int]]:
    if L1.n != L2.n or len(L1.covers) != len(L2.covers):
        return None
    h1, d1 = heights(L1)
    h2, d2 = heights(L2)
    keys = sorted({(h1[x], d1[x], len(L1.lower_covers[x]), len(L1.upper_covers[x])) for x in range(L1.n)}
                  | {(h2[x], d2[x], len(L2.lower_covers[x]), len(L2.upper_covers[x])) for x in range(L2.n)})
    palette = {k: i for i, k in enumerate(keys)}
    c1 = [palette[(h1[x], d1[x], len(L1.lower_covers[x]), len(L1.upper_covers[x]))] for x in range(L1.n)]
    c2 = [palette[(h2[x], d2[x], len(L2.lower_covers[x]), len(L2.upper_covers[x]))] for x in range(L2.n)]
    return find_isomorphism(L1.hasse_out(), L2.hasse_out(), c1, c2)


def are_isomorphic(L1: Poset, L2: Poset) -> bool:
    return find_lattice_isomorphism(L1, L2) is not None


def dual(L: Lattice) -> Lattice:
    n = L.n
    covers = [(n - 1 - b, n - 1 - a) for a, b in L.covers]
    labels = [L.label(n - 1 - i) for i in range(n)] if L.labels is not None else None
    return build_lattice(n, covers, labels, check=False)


def ideal_lattice(P: Poset) -> Lattice:
    """Distributive lattice of order ideals of ``P`` under inclusion."""
    ideals = [S for S in range(1 << P.n) if P.ideal(S) == S]
    ideals.sort(key=lambda S: (bits.popcount(S), S))
    down = [bits.from_iter(i for i, T in enumerate(ideals) if T & S == T) for S in ideals]
    labels = ["{" + ",".join(P.label(x) for x in bits.iter_bits(S)) + "}" for S in ideals]
    return lattice_from_down_sets(down, labels, check=False)
