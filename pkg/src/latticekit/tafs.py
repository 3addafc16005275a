"""Two-acyclic factorization systems on directed multigraphs with implicit loops."""

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from importlib import resources
from typing import Dict, List, Optional, Sequence, Tuple

from . import bits
from .coloring import chromatic_number
from .errors import CapExceeded, InvalidParameter, NotTriangleFree, PipelineAssertionFailed
from .galois import DirectedGraph, UndirectedGraph, lattice_from_galois
from .iso import undirected_isomorphic
from .lattice import semidistributivity

PLAIN, MONO, EPI, BOTH = "plain", "mono", "epi", "both"
DECORATIONS = (PLAIN, MONO, EPI, BOTH)
DEFAULT_ORIENTATION_CAP = 22
MAX_PARALLEL = 2
COUNTEREXAMPLE_ELEMENTS = 167

Arrow = Tuple[int, int, str]


@dataclass(frozen=True)
class DecoratedMultigraph:
    m: int
    arrows: Tuple[Arrow, ...]
    labels: Optional[Tuple[str, ...]] = None

    @classmethod
    def from_dict(cls, data) -> "DecoratedMultigraph":
        try:
            m = int(data["m"])
            arrows = []
            for row in data["arrows"]:
                s, t = int(row[0]), int(row[1])
                deco = row[2] if len(row) > 2 else PLAIN
                if deco not in DECORATIONS or not (0 <= s < m and 0 <= t < m):
                    raise ValueError(f"bad arrow {row}")
                arrows.append((s, t, deco))
        except (KeyError, TypeError, ValueError, IndexError) as exc:
            raise InvalidParameter(f"malformed multigraph JSON: {exc}") from None
        labels = tuple(data["labels"]) if data.get("labels") else None
        return cls(m, tuple(arrows), labels)

    def to_dict(self) -> dict:
        data = {"m": self.m, "arrows": [list(a) for a in self.arrows]}
        if self.labels:
            data["labels"] = list(self.labels)
        return data

    def name(self, v: int) -> str:
        return self.labels[v] if self.labels else str(v)

    def adjacency(self) -> Tuple[List[int], List[int]]:
        out = [0] * self.m
        inn = [0] * self.m
        for s, t, _ in self.arrows:
            if s != t:
                out[s] |= 1 << t
                inn[t] |= 1 << s
        return out, inn

    def with_decorations(self, decos: Sequence[str]) -> "DecoratedMultigraph":
        return DecoratedMultigraph(self.m, tuple((s, t, d) for (s, t, _), d in zip(self.arrows, decos)),
                                   self.labels)


def _decorate(out: Sequence[int], inn: Sequence[int], x: int, y: int) -> str:
    # loops: z = y satisfies z -> y, and z = x satisfies x -> z
    mono = not (inn[x] & ~inn[y] & ~(1 << y))
    epi = not (out[y] & ~out[x] & ~(1 << x))
    if mono and epi:
        return BOTH
    return MONO if mono else EPI if epi else PLAIN


def classify_arrows(G: DecoratedMultigraph) -> DecoratedMultigraph:
    out, inn = G.adjacency()
    return G.with_decorations([_decorate(out, inn, s, t) for s, t, _ in G.arrows])


def _is_mono(d: str) -> bool:
    return d in (MONO, BOTH)


def _is_epi(d: str) -> bool:
    return d in (EPI, BOTH)


@dataclass(frozen=True)
class TafsResult:
    ok: bool
    violation: Optional[str] = None


def is_tafs(G: DecoratedMultigraph) -> TafsResult:
    epi: Dict[int, int] = {}
    mono: Dict[int, int] = {}
    for s, t, d in G.arrows:
        if s == t:
            continue
        if _is_epi(d):
            epi[s] = epi.get(s, 0) | (1 << t)
        if _is_mono(d):
            mono[s] = mono.get(s, 0) | (1 << t)
    for x in range(G.m):
        for y in bits.iter_bits(epi.get(x, 0)):
            if (epi.get(y, 0) >> x) & 1:
                return TafsResult(False, f"order: {G.name(x)} ->> {G.name(y)} ->> {G.name(x)}")
            if (mono.get(y, 0) >> x) & 1:
                return TafsResult(False, f"brick: {G.name(x)} ->> {G.name(y)} -> {G.name(x)} (mono)")
        for y in bits.iter_bits(mono.get(x, 0)):
            if (mono.get(y, 0) >> x) & 1:
                return TafsResult(False, f"order: {G.name(x)} >-> {G.name(y)} >-> {G.name(x)}")
    for s, t, d in G.arrows:
        if d != PLAIN or s == t:
            continue
        middle = [y for y in bits.iter_bits(epi.get(s, 0)) if (mono.get(y, 0) >> t) & 1]
        if not middle:
            return TafsResult(False, f"multiplication: {G.name(s)} -> {G.name(t)} does not factor")
    return TafsResult(True)


# undirected multigraphs -------------------------------------------------------

def simple_edges(m: int, edges: Sequence[Tuple[int, int]]) -> List[Tuple[int, int]]:
    return sorted({(min(u, v), max(u, v)) for u, v in edges if u != v})


def is_triangle_free(m: int, edges: Sequence[Tuple[int, int]]) -> bool:
    adj = [0] * m
    for u, v in simple_edges(m, edges):
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return all(not (adj[u] & adj[v]) for u, v in simple_edges(m, edges))


def _sweep_range(m: int, edges: Sequence[Tuple[int, int]], lo: int, hi: int) -> Optional[int]:
    """First orientation code in [lo, hi) forming a TAFS, walking codes in Gray order."""
    k = len(edges)
    out = [0] * m
    inn = [0] * m
    gray = lo ^ (lo >> 1)
    arrows = []
    for i, (u, v) in enumerate(edges):
        s, t = (v, u) if (gray >> i) & 1 else (u, v)
        arrows.append((s, t))
        out[s] |= 1 << t
        inn[t] |= 1 << s
    for code in range(lo, hi):
        if code != lo:
            i = (code & -code).bit_length() - 1
            s, t = arrows[i]
            # remove one copy; parallel copies keep the bit set
            if sum(1 for a in arrows if a == (s, t)) == 1:
                out[s] &= ~(1 << t)
                inn[t] &= ~(1 << s)
            arrows[i] = (t, s)
            out[t] |= 1 << s
            inn[s] |= 1 << t
        if _orientation_ok(m, arrows, out, inn):
            return code ^ (code >> 1)
    return None


def _orientation_ok(m: int, arrows, out, inn) -> bool:
    decos = [_decorate(out, inn, s, t) for s, t in arrows]
    G = DecoratedMultigraph(m, tuple((s, t, d) for (s, t), d in zip(arrows, decos)))
    return is_tafs(G).ok


def orientation_search(m: int, edges: Sequence[Tuple[int, int]], cap: int = DEFAULT_ORIENTATION_CAP,
                       jobs: int = 1) -> Optional[List[Tuple[int, int]]]:
    """Exhaustively try every orientation; return one forming a TAFS, or None."""
    edges = [(int(u), int(v)) for u, v in edges]
    counts: Dict[Tuple[int, int], int] = {}
    for u, v in edges:
        key = (min(u, v), max(u, v))
        counts[key] = counts.get(key, 0) + 1
        if counts[key] > MAX_PARALLEL:
            raise CapExceeded("parallel edges between one pair", MAX_PARALLEL)
    if len(edges) > cap:
        raise CapExceeded("edges for orientation search", cap)
    total = 1 << len(edges)
    if jobs <= 1 or total < 1 << 12:
        found = _sweep_range(m, edges, 0, total)
    else:
        step = -(-total // jobs)
        ranges = [(lo, min(total, lo + step)) for lo in range(0, total, step)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_sweep_range, [m] * len(ranges), [edges] * len(ranges),
                                    [r[0] for r in ranges], [r[1] for r in ranges]))
        found = next((r for r in results if r is not None), None)
    if found is None:
        return None
    return [(v, u) if (found >> i) & 1 else (u, v) for i, (u, v) in enumerate(edges)]


def admits_tafs(m: int, edges: Sequence[Tuple[int, int]], mode: str = "trianglefree_chi",
                cap: int = DEFAULT_ORIENTATION_CAP, jobs: int = 1) -> bool:
    if mode == "trianglefree_chi":
        simple = simple_edges(m, edges)
        if not is_triangle_free(m, simple):
            raise NotTriangleFree("the chromatic criterion needs a triangle-free graph")
        if m == 0:
            return True
        return chromatic_number(UndirectedGraph.from_edges(m, simple)).chi <= 3
    if mode == "orientation_search":
        return orientation_search(m, edges, cap, jobs) is not None
    raise InvalidParameter(f"unknown mode {mode!r}")


# the 167-element counterexample ------------------------------------------------

def load_counterexample() -> DecoratedMultigraph:
    text = resources.files("latticekit").joinpath("data/counterexample_167.json").read_text()
    return DecoratedMultigraph.from_dict(json.loads(text))


def grotzsch_edges() -> List[Tuple[int, int]]:
    """Mycielskian of the 5-cycle: cycle 0..4, shadows 5..9, apex 10."""
    edges = [(i, (i + 1) % 5) for i in range(5)]
    edges += [(5 + i, (i + 1) % 5) for i in range(5)]
    edges += [(5 + i, (i - 1) % 5) for i in range(5)]
    edges += [(10, 5 + i) for i in range(5)]
    return simple_edges(11, edges)


def induced(G: DirectedGraph, keep: Sequence[int]) -> DirectedGraph:
    pos = {v: i for i, v in enumerate(keep)}
    edges = [(pos[u], pos[v]) for u, v in G.edges() if u in pos and v in pos]
    return DirectedGraph.from_edges(len(keep), edges, [G.label(v) for v in keep])


def counterexample_pipeline(sweep: bool = True, jobs: int = 1, strict: bool = True) -> dict:
    """Run every stage, collect failures, and raise on the first one when ``strict``."""
    failures: List[Tuple[str, str]] = []

    def check(ok: bool, stage: str, detail: str = "") -> bool:
        if not ok:
            failures.append((stage, detail))
        return ok

    drawn = load_counterexample()
    derived = classify_arrows(drawn)
    mismatched = [(drawn.name(s), drawn.name(t), d, e)
                  for (s, t, d), (_, _, e) in zip(drawn.arrows, derived.arrows) if d != e]
    check(not mismatched, "decorations", f"drawn vs derived: {mismatched}")
    plain = [(drawn.name(s), drawn.name(t)) for s, t, d in derived.arrows if d == PLAIN]
    verdict = is_tafs(derived)
    check(verdict.ok, "tafs", verdict.violation or "")

    G = DirectedGraph.from_edges(drawn.m, [(s, t) for s, t, _ in drawn.arrows], drawn.labels)
    L, _ = lattice_from_galois(G)
    sd = semidistributivity(L).is_sd
    check(L.n == COUNTEREXAMPLE_ELEMENTS, "elements", f"expected {COUNTEREXAMPLE_ELEMENTS}, got {L.n}")
    check(sd, "semidistributive")

    t = drawn.labels.index("t")
    keep = [v for v in range(drawn.m) if v != t]
    H = G.complement()
    sub = induced(G, keep)
    pos = {v: i for i, v in enumerate(keep)}
    H_sub = UndirectedGraph.from_edges(len(keep), [(pos[u], pos[v]) for u, v in H.edges()
                                                   if u in pos and v in pos])
    check(sub.complement().adj == H_sub.adj, "induced-complement")

    und = simple_edges(len(keep), sub.edges())
    tri_free = is_triangle_free(len(keep), und)
    check(tri_free, "triangle-free")
    chi = chromatic_number(UndirectedGraph.from_edges(len(keep), und)).chi
    check(chi == 4, "chromatic", f"got {chi}")
    g_adj = UndirectedGraph.from_edges(11, grotzsch_edges()).adj
    grotzsch = undirected_isomorphic(UndirectedGraph.from_edges(len(keep), und).adj, g_adj)
    check(grotzsch, "grotzsch")
    admits = admits_tafs(len(keep), und, "trianglefree_chi") if tri_free else None
    check(admits is False, "criterion")
    swept = None
    if sweep:
        swept = admits_tafs(len(keep), und, "orientation_search", jobs=jobs)
        check(swept is False, "orientation-sweep", "an orientation forming a TAFS was found")
    report = {
        "elements": L.n,
        "sd": sd,
        "plain_arrows": plain,
        "triangle_free": tri_free,
        "chi": chi,
        "grotzsch": grotzsch,
        "admits_tafs": admits,
        "sweep_admits_tafs": swept,
        "failed_stages": [stage for stage, _ in failures],
    }
    if strict and failures:
        raise PipelineAssertionFailed(*failures[0])
    return report
