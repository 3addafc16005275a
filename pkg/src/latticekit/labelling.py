"""Chain-indexed edge labellings, left-modularity and an EL brute force."""

from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from . import bits
from .errors import CapExceeded, TheoremViolation
from .lattice import ChainPhi, Edge, Lattice, irreducibles, length_spine, make_chain

DEFAULT_EL_CAP = 10_000


@dataclass(frozen=True)
class EdgeLabelling:
    labels: Dict[Edge, int]
    delta: Dict[int, int]
    beta: Dict[int, int]
    chain: ChainPhi

    def __getitem__(self, edge: Edge) -> int:
        return self.labels[edge]


@dataclass(frozen=True)
class Labellings:
    gamma1: EdgeLabelling
    gamma1p: EdgeLabelling
    gamma2: EdgeLabelling
    gamma2p: EdgeLabelling

    def __iter__(self):
        return iter((self.gamma1, self.gamma1p, self.gamma2, self.gamma2p))


def _as_chain(L: Lattice, phi) -> ChainPhi:
    if isinstance(phi, ChainPhi):
        return phi
    if phi is None:
        return make_chain(L, length_spine(L)[2])
    return make_chain(L, phi)


def gamma_labellings(L: Lattice, phi=None) -> Labellings:
    """All four labellings for the chain ``phi`` (default: least longest chain)."""
    chain = _as_chain(L, phi)
    xs = chain.elements
    k = len(xs) - 1
    table = irreducibles(L)
    delta = {j: next(i for i in range(k + 1) if L.leq(j, xs[i])) for j in table.jirr}
    beta = {m: max(i for i in range(1, k + 1) if L.leq(xs[i - 1], m)) for m in table.mirr}
    jmask = bits.from_iter(table.jirr)
    mmask = bits.from_iter(table.mirr)

    g1: Dict[Edge, int] = {}
    g1p: Dict[Edge, int] = {}
    g2: Dict[Edge, int] = {}
    g2p: Dict[Edge, int] = {}
    for b, c in L.covers:
        g1[(b, c)] = min(delta[j] for j in bits.iter_bits(jmask & L.down[c] & ~L.down[b]))
        g2[(b, c)] = max(beta[m] for m in bits.iter_bits(mmask & L.up[b] & ~L.up[c]))
        g1p[(b, c)] = max(i for i in range(1, k + 1) if L.leq(L.meet(c, xs[i - 1]), b))
        g2p[(b, c)] = min(i for i in range(1, k + 1) if L.leq(c, L.join(b, xs[i])))
    return Labellings(
        EdgeLabelling(g1, delta, beta, chain),
        EdgeLabelling(g1p, delta, beta, chain),
        EdgeLabelling(g2, delta, beta, chain),
        EdgeLabelling(g2p, delta, beta, chain),
    )


@dataclass(frozen=True)
class LabellingVerdict:
    gamma2_eq: bool
    chain_order: bool
    equality: bool
    all_phi_lm: bool


def verify_labelling_theorem(L: Lattice, phi=None) -> LabellingVerdict:
    labs = gamma_labellings(L, phi)
    gamma2_eq = labs.gamma1.labels == labs.gamma1p.labels and labs.gamma2.labels == labs.gamma2p.labels
    chain_order = all(labs.gamma2p[e] <= labs.gamma1p[e] for e in L.covers)
    equality = labs.gamma1p.labels == labs.gamma2p.labels
    all_lm = all(is_left_modular_element(L, x) for x in labs.gamma1.chain.elements)
    if not gamma2_eq:
        raise TheoremViolation("gamma2 != gamma2' or gamma1 != gamma1'")
    if not chain_order:
        raise TheoremViolation("gamma2' exceeds gamma1' on some edge")
    if equality != all_lm:
        raise TheoremViolation(f"labels equal={equality} but chain left modular={all_lm}")
    return LabellingVerdict(gamma2_eq, chain_order, equality, all_lm)


# left modularity ---------------------------------------------------------

def lm_witness(L: Lattice, a: int) -> Optional[Edge]:
    """A cover ``b < c`` with equal joins and meets against ``a``, if any."""
    for b, c in L.covers:
        if L.leq(c, L.join(a, b)) and L.leq(L.meet(a, c), b):
            return (b, c)
    return None


def is_left_modular_element(L: Lattice, a: int) -> bool:
    return lm_witness(L, a) is None


@dataclass(frozen=True)
class LMReport:
    lm_elements: FrozenSet[int]
    counterexamples: Dict[int, Edge]
    lm_chain: Optional[Tuple[int, ...]]


def find_lm_chain(L: Lattice, lm_mask: int) -> Optional[Tuple[int, ...]]:
    """Lexicographically least maximal chain of covers staying inside ``lm_mask``."""
    if not (lm_mask & 1 and (lm_mask >> L.top) & 1):
        return None
    dead = 0
    path = [0]
    iters = [iter(L.upper_covers[0])]
    while path:
        if path[-1] == L.top:
            return tuple(path)
        nxt = None
        for y in iters[-1]:
            if (lm_mask >> y) & 1 and not (dead >> y) & 1:
                nxt = y
                break
        if nxt is None:
            dead |= 1 << path.pop()
            iters.pop()
        else:
            path.append(nxt)
            iters.append(iter(L.upper_covers[nxt]))
    return None


def lm_chain_elements(L: Lattice, lm_mask: int) -> int:
    """Union of all maximal left-modular chains, as a bitset."""
    forward = 0
    if lm_mask & 1:
        forward = 1
        for x in range(L.n):
            if (forward >> x) & 1:
                for y in L.upper_covers[x]:
                    if (lm_mask >> y) & 1:
                        forward |= 1 << y
    backward = 0
    if (lm_mask >> L.top) & 1:
        backward = 1 << L.top
        for y in range(L.n - 1, -1, -1):
            if (backward >> y) & 1:
                for x in L.lower_covers[y]:
                    if (lm_mask >> x) & 1:
                        backward |= 1 << x
    return forward & backward


def left_modular(L: Lattice) -> LMReport:
    witnesses: Dict[int, Edge] = {}
    lm = []
    for a in range(L.n):
        w = lm_witness(L, a)
        if w is None:
            lm.append(a)
        else:
            witnesses[a] = w
    chain = find_lm_chain(L, bits.from_iter(lm))
    if chain is not None and len(chain) - 1 != length_spine(L)[0]:
        raise TheoremViolation("maximal left-modular chain is not a longest chain")
    return LMReport(frozenset(lm), witnesses, chain)


# EL brute force ----------------------------------------------------------

def _is_weakly_increasing(word: Sequence[int]) -> bool:
    return all(a <= b for a, b in zip(word, word[1:]))


def is_el_labelling(L: Lattice, labelling, cap: int = DEFAULT_EL_CAP) -> bool:
    """Check the EL conditions on every interval by enumerating its maximal chains.

    ``labelling`` maps cover edges to comparable labels (an EdgeLabelling or a dict).
    """
    labels = labelling.labels if isinstance(labelling, EdgeLabelling) else labelling
    for x in range(L.n):
        counts = [0] * L.n
        counts[x] = 1
        for y in bits.iter_bits(L.up[x]):
            for z in L.upper_covers[y]:
                counts[z] += counts[y]
        worst = max(counts)
        if worst > cap:
            raise CapExceeded("maximal chains in an interval", cap)
        words: Dict[int, List[Tuple]] = {}
        stack: List[Tuple[int, Tuple]] = [(x, ())]
        while stack:
            y, word = stack.pop()
            if y != x:
                words.setdefault(y, []).append(word)
            for z in L.upper_covers[y]:
                stack.append((z, word + (labels[(y, z)],)))
        for y, ws in words.items():
            inc = [w for w in ws if _is_weakly_increasing(w)]
            if len(inc) != 1:
                return False
            if any(w <= inc[0] for w in ws if w is not inc[0]):
                return False
    return True
