"""Day doubling of convex sets, doubling scripts and their certificates."""

import json
import random
from dataclasses import asdict, dataclass, field
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple, Union

from . import bits
from .errors import EmptyConvexSet, InvalidParameter, NotConvex, TheoremViolation
from .labelling import left_modular, lm_chain_elements
from .lattice import Lattice, irreducibles, lattice_from_down_sets, length_spine


class ConvexSet:
    """Nonempty convex subset of a host lattice, stored as a bitset."""

    def __init__(self, L: Lattice, elements):
        mask = elements if isinstance(elements, int) else bits.from_iter(elements)
        if not mask:
            raise EmptyConvexSet("convex set must be nonempty")
        if mask >> L.n:
            raise NotConvex(f"element ids out of range 0..{L.n - 1}")
        if L.filter(mask) & L.ideal(mask) != mask:
            raise NotConvex(f"{sorted(bits.iter_bits(mask))} is not convex")
        self.lattice = L
        self.mask = mask

    @classmethod
    def interval(cls, L: Lattice, a: int, b: int) -> "ConvexSet":
        if not (0 <= a < L.n and 0 <= b < L.n) or not L.leq(a, b):
            raise NotConvex(f"[{a}, {b}] is not an interval")
        return cls(L, L.interval(a, b))

    @classmethod
    def hull(cls, L: Lattice, elements) -> "ConvexSet":
        mask = bits.from_iter(elements)
        return cls(L, L.filter(mask) & L.ideal(mask))

    @property
    def elements(self) -> List[int]:
        return bits.to_list(self.mask)

    @property
    def minimal(self) -> int:
        return self.lattice.minimal(self.mask)

    @property
    def maximal(self) -> int:
        return self.lattice.maximal(self.mask)

    def __len__(self):
        return bits.popcount(self.mask)


def heart(L: Lattice, C) -> FrozenSet[int]:
    """Elements of C below every maximal and above every minimal element of C."""
    if not isinstance(C, ConvexSet):
        C = ConvexSet(L, C)
    keep = C.mask
    for m in bits.iter_bits(C.maximal):
        keep &= L.down[m]
    for m in bits.iter_bits(C.minimal):
        keep &= L.up[m]
    return frozenset(bits.iter_bits(keep))


def double(L: Lattice, C, verify: bool = True) -> Lattice:
    """The doubled lattice L[C]; new labels append the 0/1 layer bit."""
    if not isinstance(C, ConvexSet):
        C = ConvexSet(L, C)
    low = L.ideal(C.mask)
    high = (L.all_mask & ~low) | C.mask
    # (x, eps) sorted lexicographically is a linear extension of the product order
    elems: List[Tuple[int, int]] = []
    for x in range(L.n):
        if (low >> x) & 1:
            elems.append((x, 0))
        if (high >> x) & 1:
            elems.append((x, 1))
    index = {e: i for i, e in enumerate(elems)}
    down = []
    for x, eps in elems:
        mask = 0
        for y in bits.iter_bits(L.down[x]):
            if (low >> y) & 1:
                mask |= 1 << index[(y, 0)]
            if eps and (high >> y) & 1:
                mask |= 1 << index[(y, 1)]
        down.append(mask)
    labels = [L.label(x) + str(eps) if L.labels is not None else f"{x}.{eps}" for x, eps in elems]
    out = lattice_from_down_sets(down, labels, check=False)
    if verify:
        _check_doubling_counts(L, C, out)
    return out


def _check_doubling_counts(L: Lattice, C: ConvexSet, out: Lattice) -> None:
    before, after = irreducibles(L), irreducibles(out)
    if len(after.jirr) != len(before.jirr) + bits.popcount(C.minimal):
        raise TheoremViolation("join-irreducible count after doubling is off")
    if len(after.mirr) != len(before.mirr) + bits.popcount(C.maximal):
        raise TheoremViolation("meet-irreducible count after doubling is off")
    length, spine, _ = length_spine(L)
    grew = length_spine(out)[0] - length
    if grew != (1 if any((C.mask >> s) & 1 for s in spine) else 0):
        raise TheoremViolation("length change after doubling disagrees with spine test")


def one_element_lattice() -> Lattice:
    return lattice_from_down_sets([1], [""], check=False)


# scripts -----------------------------------------------------------------

Step = Dict[str, List[int]]


@dataclass
class DoublingScript:
    """Steps are ``{"convex": [ids]}`` or ``{"interval": [a, b]}`` in the current lattice."""

    steps: List[Step] = field(default_factory=list)

    @classmethod
    def from_dict(cls, data) -> "DoublingScript":
        if not isinstance(data, dict) or not isinstance(data.get("steps"), list):
            raise InvalidParameter('script JSON must be {"steps": [...]}')
        steps = []
        for i, step in enumerate(data["steps"], 1):
            if not isinstance(step, dict) or len(step) != 1 or not set(step) <= {"convex", "interval"}:
                raise InvalidParameter(f"step {i}: expected a 'convex' or 'interval' entry")
            key, val = next(iter(step.items()))
            if key == "interval" and len(val) != 2:
                raise InvalidParameter(f"step {i}: interval needs two ids")
            steps.append({key: [int(v) for v in val]})
        return cls(steps)

    @classmethod
    def from_json(cls, text: str) -> "DoublingScript":
        return cls.from_dict(json.loads(text))

    def to_json(self) -> str:
        return json.dumps({"steps": self.steps}, separators=(",", ":"))

    def __len__(self):
        return len(self.steps)


def _resolve(L: Lattice, step: Step) -> ConvexSet:
    if "interval" in step:
        a, b = step["interval"]
        return ConvexSet.interval(L, a, b)
    return ConvexSet(L, step["convex"])


@dataclass(frozen=True)
class StepCertificate:
    size_before: int
    convex: Tuple[int, ...]
    is_interval: bool
    is_lower_pseudo: bool
    is_upper_pseudo: bool
    hits_spine: bool
    heart: Tuple[int, ...]
    heart_hits_lm_chain: bool


@dataclass(frozen=True)
class DoublingCertificate:
    steps: Tuple[StepCertificate, ...]

    @property
    def congruence_uniform(self) -> bool:
        return all(s.is_interval for s in self.steps)

    @property
    def join_cu(self) -> bool:
        return all(s.is_lower_pseudo for s in self.steps)

    @property
    def meet_cu(self) -> bool:
        return all(s.is_upper_pseudo for s in self.steps)

    @property
    def congruence_normal(self) -> bool:
        return True

    def to_dict(self) -> dict:
        return {
            "steps": [asdict(s) for s in self.steps],
            "congruence_uniform": self.congruence_uniform,
            "join_cu": self.join_cu,
            "meet_cu": self.meet_cu,
            "congruence_normal": self.congruence_normal,
        }


def step_certificate(L: Lattice, C: ConvexSet, with_lm: bool = True) -> StepCertificate:
    spine = length_spine(L)[1]
    h = heart(L, C)
    hits_lm = False
    if with_lm:
        lm_mask = bits.from_iter(left_modular(L).lm_elements)
        on_chains = lm_chain_elements(L, lm_mask)
        hits_lm = any((on_chains >> x) & 1 for x in h)
    n_min, n_max = bits.popcount(C.minimal), bits.popcount(C.maximal)
    return StepCertificate(
        size_before=L.n,
        convex=tuple(C.elements),
        is_interval=n_min == 1 and n_max == 1,
        is_lower_pseudo=n_min == 1,
        is_upper_pseudo=n_max == 1,
        hits_spine=any((C.mask >> s) & 1 for s in spine),
        heart=tuple(sorted(h)),
        heart_hits_lm_chain=hits_lm,
    )


def run_script(script: Union[DoublingScript, Sequence[Step]], with_lm: bool = True,
               verify: bool = True) -> Tuple[Lattice, DoublingCertificate]:
    """Apply the steps to the one-element lattice, certifying each step."""
    if not isinstance(script, DoublingScript):
        script = DoublingScript(list(script))
    L = one_element_lattice()
    certs = []
    for i, step in enumerate(script.steps, 1):
        try:
            C = _resolve(L, step)
        except NotConvex as exc:
            raise type(exc)(str(exc), step=i) from None
        certs.append(step_certificate(L, C, with_lm))
        L = double(L, C, verify=verify)
    return L, DoublingCertificate(tuple(certs))


@dataclass(frozen=True)
class Verdicts:
    extremal: bool
    join_extremal: bool
    meet_extremal: bool
    left_modular: bool


def certify(cert: DoublingCertificate) -> Verdicts:
    steps = cert.steps
    spine_ok = all(s.hits_spine for s in steps)
    return Verdicts(
        extremal=spine_ok and cert.congruence_uniform,
        join_extremal=spine_ok and cert.join_cu,
        meet_extremal=spine_ok and cert.meet_cu,
        left_modular=all(s.heart_hits_lm_chain for s in steps),
    )


# random scripts ----------------------------------------------------------

MODES = ("uniform_interval", "force_spine", "normal")


def random_script(steps: int, seed: int, mode: str = "uniform_interval",
                  max_size: Optional[int] = None) -> DoublingScript:
    """Reproducible random script; ``max_size`` caps the final lattice size."""
    if steps < 1:
        raise InvalidParameter("steps must be at least 1")
    if mode not in MODES:
        raise InvalidParameter(f"mode must be one of {', '.join(MODES)}")
    if max_size is not None and max_size < steps + 1:
        raise InvalidParameter(f"max_size must be at least steps + 1 = {steps + 1}")
    rng = random.Random(seed)
    L = one_element_lattice()
    out: List[Step] = []
    for i in range(steps):
        budget = None if max_size is None else max_size - L.n - (steps - i - 1)
        step = _draw_step(L, rng, mode, budget)
        out.append(step)
        L = double(L, _resolve(L, step), verify=False)
    return DoublingScript(out)


def _draw_step(L: Lattice, rng: random.Random, mode: str, budget: Optional[int]) -> Step:
    spine = length_spine(L)[1]
    spine_mask = bits.from_iter(spine)
    if mode == "normal":
        for _ in range(50):
            picks = rng.sample(range(L.n), min(L.n, rng.randint(1, 3)))
            C = ConvexSet.hull(L, picks)
            if budget is None or len(C) <= budget:
                return {"convex": C.elements}
        return {"convex": [rng.randrange(L.n)]}
    pairs = []
    for a in range(L.n):
        for b in bits.iter_bits(L.up[a]):
            iv = L.interval(a, b)
            if mode == "force_spine" and not iv & spine_mask:
                continue
            if budget is not None and bits.popcount(iv) > budget:
                continue
            pairs.append((a, b))
    a, b = rng.choice(pairs)
    return {"interval": [a, b]}
