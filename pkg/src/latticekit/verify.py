"""Seeded property suites run over generated instances, optionally in parallel."""

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from itertools import product
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import bits
from .coloring import DEFAULT_BUDGET_MS, chromatic_number
from .dimension import critical_pairs, dim_bounds, dim_sd_extremal, dimension_oracle
from .doubling import DoublingScript, certify, random_script, run_script
from .errors import SuiteUnknown
from .families import (arc_compatibility_graph, bubble, hochschild, parabolic_tamari,
                       word_join_irreducibles, word_lattice)
from .galois import (canonical_join_graph, count_independent_sets, downward_label_sets,
                     galois_graph, kappa_matches_numbering, lattice_from_galois, roundtrip_check)
from .gentle import GentleQuiver, torsion_dim, torsion_lattice
from .labelling import gamma_labellings, left_modular, verify_labelling_theorem
from .lattice import (Lattice, Poset, are_isomorphic, direct_product, dual, extremality,
                      ideal_lattice, irreducibles, length_spine, longest_chains,
                      semidistributivity, width_of)
from .shelling import disjoint_source_sets, facet_adjacency
from .tafs import admits_tafs, counterexample_pipeline, is_triangle_free

DEFAULT_COUNTS = {"labelling": 500, "doubling": 300, "galois": 200, "dimension": 100,
                  "tafs": 30, "families": 0}
SUITES = tuple(DEFAULT_COUNTS)

Outcome = Tuple[bool, str]


@dataclass
class SuiteResult:
    suite: str
    seed: int
    total: int
    passed: int
    failures: List[Dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.passed == self.total

    def to_dict(self) -> dict:
        return asdict(self)


# shared checks -------------------------------------------------------------

def galois_consistency(L: Lattice, samples: int = 3) -> List[str]:
    """Problems found when checking an SD extremal lattice against its Galois graph."""
    problems = []
    G = galois_graph(L)
    if not roundtrip_check(L):
        problems.append("reconstruction is not isomorphic via the join-irreducible map")
    if count_independent_sets(G) != L.n:
        problems.append("independent-set count differs from the lattice size")
    canonical_join_graph(L)  # asserts equality with the complemented Galois graph
    if not kappa_matches_numbering(L, G):
        problems.append("kappa does not send j_i to m_i")
    for chain in longest_chains(L, limit=samples)[1:]:
        if not are_isomorphic(lattice_from_galois(galois_graph(L, chain))[0], L):
            problems.append(f"reconstruction depends on the chain {chain}")
    return problems


def max_clique_size(adj: Sequence[int]) -> int:
    best = 0

    def grow(size: int, cand: int) -> None:
        nonlocal best
        if not cand:
            best = max(best, size)
            return
        if size + bits.popcount(cand) <= best:
            return
        v = bits.lowest(cand)
        grow(size + 1, cand & adj[v])
        grow(size, cand & ~(1 << v))

    grow(0, (1 << len(adj)) - 1)
    return best


def random_poset(rng: random.Random, size: int, p: float = 0.3) -> Poset:
    down = []
    for j in range(size):
        d = 1 << j
        for i in range(j):
            if rng.random() < p:
                d |= down[i]
        down.append(d)
    return Poset.from_down_sets(down, [chr(ord("a") + i) for i in range(size)])


def _random_chain(L: Lattice, rng: random.Random) -> List[int]:
    walk = [L.bottom]
    while walk[-1] != L.top:
        walk.append(rng.choice(L.upper_covers[walk[-1]]))
    return [x for i, x in enumerate(walk) if i in (0, len(walk) - 1) or rng.random() < 0.5]


def _outcome(problems: List[str]) -> Outcome:
    return (not problems, "; ".join(problems) or "ok")


# suites ----------------------------------------------------------------------

def _labelling_instance(seed: int, budget_ms: Optional[int]) -> Outcome:
    rng = random.Random(seed)
    steps = rng.randint(1, 10)
    script = random_script(steps, rng.randrange(1 << 32), "normal", max_size=30)
    L, _ = run_script(script, with_lm=False)
    phi = _random_chain(L, rng)
    verdict = verify_labelling_theorem(L, phi)
    problems = []
    sd = semidistributivity(L)
    if sd.is_sd:
        labs = gamma_labellings(L, phi)
        for e in L.covers:
            if labs.gamma1[e] != labs.gamma1.delta[sd.gammaJ[e]]:
                problems.append(f"gamma1 differs from delta(gammaJ) on {e}")
            if labs.gamma2[e] != labs.gamma2.beta[sd.gammaM[e]]:
                problems.append(f"gamma2 differs from beta(gammaM) on {e}")
    report = left_modular(L)
    if report.lm_chain is not None and len(report.lm_chain) - 1 != extremality(L).length:
        problems.append("a maximal left modular chain is not longest")
    if verdict.equality != verdict.all_phi_lm:
        problems.append("equality of labellings disagrees with left modularity of the chain")
    return _outcome(problems)


def _with_off_spine_step(script: DoublingScript, rng: random.Random, max_size: int) -> DoublingScript:
    """Append one interval missing the spine, when one fits, so non-extremal cases are common."""
    L, _ = run_script(script, with_lm=False, verify=False)
    spine = bits.from_iter(length_spine(L)[1])
    options = [(a, b) for a in range(L.n) for b in bits.iter_bits(L.up[a])
               if not L.interval(a, b) & spine and L.n + bits.popcount(L.interval(a, b)) <= max_size]
    if not options:
        return script
    a, b = rng.choice(options)
    return DoublingScript(list(script.steps) + [{"interval": [a, b]}])


def _doubling_instance(seed: int, budget_ms: Optional[int]) -> Outcome:
    rng = random.Random(seed)
    mode = "force_spine" if rng.random() < 0.5 else "uniform_interval"
    steps = rng.randint(1, 12)
    script = random_script(steps, rng.randrange(1 << 32), mode, max_size=40)
    if mode == "uniform_interval" and rng.random() < 0.5:
        script = _with_off_spine_step(script, rng, 40)
    L, cert = run_script(script)
    verdicts = certify(cert)
    first = extremality(L).extremal
    lm = left_modular(L).lm_chain is not None
    one_source = disjoint_source_sets(facet_adjacency(L)).found is None
    problems = []
    if not cert.congruence_uniform:
        problems.append("interval script is not congruence uniform")
    if not verdicts.extremal == first == lm == one_source:
        problems.append(f"certificate={verdicts.extremal} first-principles={first} "
                        f"lm-chain={lm} no-disjoint-sources={one_source}")
    if verdicts.left_modular != lm:
        problems.append("certificate left modularity disagrees with the chain search")
    if mode == "force_spine" and not verdicts.extremal:
        problems.append("force_spine script is not extremal")
    if first:
        problems += galois_consistency(L)
    return _outcome(problems)


def _galois_instance(seed: int, budget_ms: Optional[int]) -> Outcome:
    rng = random.Random(seed)
    script = random_script(rng.randint(1, 10), rng.randrange(1 << 32), "force_spine", max_size=40)
    L, _ = run_script(script, with_lm=False)
    return _outcome(galois_consistency(L, samples=4))


def _dimension_instance(seed: int, budget_ms: Optional[int]) -> Outcome:
    rng = random.Random(seed)
    problems = []
    script = random_script(rng.randint(1, 9), rng.randrange(1 << 32), "force_spine", max_size=24)
    L, _ = run_script(script, with_lm=False)
    if L.n > 1:
        data = critical_pairs(L)
        coloring = chromatic_number(galois_graph(L).complement(), budget_ms)
        dim = coloring.chi
        if len(data.pairs) <= 20 and dimension_oracle(L, budget_ms=budget_ms) != dim:
            problems.append("cover-set oracle differs from the colouring route")
        bounds = dim_bounds(L)
        if not bounds.lower <= dim <= bounds.upper or bounds.cover_lb > dim:
            problems.append(f"dimension {dim} outside bounds {bounds}")
        comp = galois_graph(L).complement()
        omega = max_clique_size(comp.adj)
        if omega != max(len(d) for d in downward_label_sets(L).values()):
            problems.append("clique number differs from the largest downward label set")
        if not omega <= dim <= max((comp.degree(v) for v in range(comp.m)), default=0) + 1:
            problems.append("chromatic number outside clique and degree bounds")
    # distributive lattices
    P = random_poset(rng, rng.randint(1, 8))
    D = ideal_lattice(P)
    if D.n > 1:
        dim = dim_sd_extremal(D, budget_ms)
        width = width_of(D, irreducibles(D).jirr)
        if dim != width or width != max(1, width_of(P)):
            problems.append(f"distributive dimension {dim} differs from width {width}")
    return _outcome(problems)


def _random_triangle_free(rng: random.Random) -> Tuple[int, List[Tuple[int, int]]]:
    m = rng.randint(2, 8)
    edges: List[Tuple[int, int]] = []
    pairs = [(u, v) for u in range(m) for v in range(u + 1, m)]
    rng.shuffle(pairs)
    for u, v in pairs:
        if len(edges) >= 12:
            break
        if rng.random() < 0.5 and is_triangle_free(m, edges + [(u, v)]):
            edges.append((u, v))
    return m, edges


def _tafs_instance(seed: int, budget_ms: Optional[int]) -> Outcome:
    m, edges = _random_triangle_free(random.Random(seed))
    by_chi = admits_tafs(m, edges, "trianglefree_chi")
    by_sweep = admits_tafs(m, edges, "orientation_search")
    return _outcome([] if by_chi == by_sweep else
                    [f"chromatic criterion {by_chi} but orientation sweep {by_sweep} on {edges}"])


def _tafs_fixed(name: str, budget_ms: Optional[int]) -> Outcome:
    if name == "counterexample":
        report = counterexample_pipeline(strict=False)
        return _outcome([f"stage '{s}' failed" for s in report["failed_stages"]]
                        + ([f"elements={report['elements']}"] if "elements" in report["failed_stages"] else []))
    if name == "c5":
        c5 = [(i, (i + 1) % 5) for i in range(5)]
        return _outcome([] if admits_tafs(5, c5) and admits_tafs(5, c5, "orientation_search")
                        else ["C5 should admit a factorization system"])
    if name == "edge":
        return _outcome([] if admits_tafs(2, [(0, 1)]) and admits_tafs(2, [(0, 1)], "orientation_search")
                        else ["a single edge should admit a factorization system"])
    raise SuiteUnknown(name)


# families -------------------------------------------------------------------

def _compositions(n: int) -> List[Tuple[int, ...]]:
    out = []
    for cuts in product((0, 1), repeat=n - 1):
        parts, size = [], 1
        for c in cuts:
            if c:
                parts.append(size)
                size = 1
            else:
                size += 1
        out.append(tuple(parts + [size]))
    return out


def family_rows() -> List[Tuple]:
    rows: List[Tuple] = [("hoch", n) for n in range(1, 9)]
    rows += [("bubble", m, n) for m in range(7) for n in range(7) if 1 <= m + n <= 6]
    rows += [("words", m, n) for m in range(1, 4) for n in range(1, 6)]
    rows += [("ptam", a) for n in range(1, 8) for a in _compositions(n)]
    rows += [("gentle", o) for n in range(1, 7) for o in product((True, False), repeat=n - 1)]
    rows += [("torsion14",), ("product",)]
    return rows


def _family_lattice_problems(L: Lattice) -> List[str]:
    problems = []
    if not semidistributivity(L).is_sd:
        problems.append("not semidistributive")
    if not extremality(L).extremal:
        problems.append("not extremal")
    elif L.n > 1:
        problems += galois_consistency(L, samples=2)
    return problems


def _family_instance(row: Tuple, budget_ms: Optional[int]) -> Outcome:
    kind = row[0]
    problems: List[str] = []
    if kind == "hoch":
        n = row[1]
        _, L = hochschild(n)
        problems += _family_lattice_problems(L)
        if n >= 2 and not are_isomorphic(L, bubble(1, n - 1)[1]):
            problems.append("not isomorphic to Bub(1,n-1)")
        if n >= 2 and not are_isomorphic(dual(L), bubble(n - 1, 1)[1]):
            problems.append("dual not isomorphic to Bub(n-1,1)")
        if (dim := dim_sd_extremal(L, budget_ms)) != n:
            problems.append(f"dim {dim} != {n}")
    elif kind == "bubble":
        m, n = row[1], row[2]
        _, L = bubble(m, n)
        problems += _family_lattice_problems(L)
        if L.n > 1 and (dim := dim_sd_extremal(L, budget_ms)) != m + n:
            problems.append(f"dim {dim} != {m + n}")
    elif kind == "words":
        m, n = row[1], row[2]
        L = word_lattice(m, n)
        problems += _family_lattice_problems(L)
        if (dim := dim_sd_extremal(L, budget_ms)) != n:
            problems.append(f"dim {dim} != {n}")
        width = width_of(L, irreducibles(L).jirr)
        if n >= 2 and width != n + 1:
            problems.append(f"width(JIrr) {width} != {n + 1}")
        if len(irreducibles(L).jirr) != len(word_join_irreducibles(m, n)):
            problems.append("join-irreducible count differs")
        if m == 1 and n >= 2 and not are_isomorphic(L, hochschild(n)[1]):
            problems.append("W(1,n) not isomorphic to Hoch(n)")
    elif kind == "ptam":
        alpha = row[1]
        G, L = parabolic_tamari(alpha)
        problems += _family_lattice_problems(L)
        expected = sum(alpha) - max(alpha)
        dim = dim_sd_extremal(L, budget_ms) if L.n > 1 else chromatic_number(G.complement(), budget_ms).chi
        if dim != expected:
            problems.append(f"dim {dim} != {expected}")
        if arc_compatibility_graph(alpha).adj != G.complement().adj:
            problems.append("arc compatibility differs from the complemented Galois graph")
    elif kind == "gentle":
        T = GentleQuiver.path(row[1])
        if (dim := torsion_dim(T, budget_ms)) != T.n:
            problems.append(f"dim {dim} != {T.n}")
    elif kind == "torsion14":
        L = torsion_lattice(GentleQuiver(3, [(0, 1), (2, 1)]))
        if L.n != 14:
            problems.append(f"torsion lattice has {L.n} elements")
        problems += _family_lattice_problems(L)
    elif kind == "product":
        L = direct_product(hochschild(2)[1], hochschild(3)[1])
        if (dim := dim_sd_extremal(L, budget_ms)) != 5:
            problems.append(f"dim {dim} != 5")
    else:
        raise SuiteUnknown(kind)
    return _outcome(problems)


# driver -------------------------------------------------------------------------

_RANDOM: Dict[str, Callable[[int, Optional[int]], Outcome]] = {
    "labelling": _labelling_instance,
    "doubling": _doubling_instance,
    "galois": _galois_instance,
    "dimension": _dimension_instance,
    "tafs": _tafs_instance,
}


def _run_task(task) -> Outcome:
    suite, payload, budget_ms = task
    try:
        if suite == "families":
            return _family_instance(payload, budget_ms)
        if suite == "tafs-fixed":
            return _tafs_fixed(payload, budget_ms)
        return _RANDOM[suite](payload, budget_ms)
    except Exception as exc:  # a failing instance is reported, never fatal
        return False, f"{type(exc).__name__}: {exc}"


def instance_seeds(seed: int, count: int) -> List[int]:
    """Independent per-instance seeds spawned from one root seed."""
    return [int(child.generate_state(1)[0]) for child in np.random.SeedSequence(seed).spawn(count)]


def _tasks(suite: str, seed: int, count: int, budget_ms: Optional[int]) -> List[Tuple[str, Tuple, str]]:
    if suite == "families":
        return [(f"{r[0]} {' '.join(map(str, r[1:]))}".strip(), ("families", r, budget_ms))
                for r in family_rows()]
    tasks = [(f"seed={s}", (suite, s, budget_ms)) for s in instance_seeds(seed, count)]
    if suite == "tafs":
        tasks = [(name, ("tafs-fixed", name, budget_ms)) for name in ("counterexample", "c5", "edge")] + tasks
    return tasks


def run_suite(suite: str, seed: int = 0, count: Optional[int] = None, jobs: int = 1,
              budget_ms: Optional[int] = DEFAULT_BUDGET_MS) -> SuiteResult:
    if suite not in SUITES:
        raise SuiteUnknown(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    count = DEFAULT_COUNTS[suite] if count is None else count
    named = _tasks(suite, seed, count, budget_ms)
    payloads = [t for _, t in named]
    if jobs > 1 and len(payloads) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(_run_task, payloads, chunksize=1))
    else:
        outcomes = [_run_task(t) for t in payloads]
    failures = [{"index": i, "instance": name, "detail": detail}
                for i, ((name, _), (ok, detail)) in enumerate(zip(named, outcomes)) if not ok]
    return SuiteResult(suite, seed, len(named), len(named) - len(failures), failures)
