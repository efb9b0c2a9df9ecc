"""Limit sets and asymptotic sets.

Exact graph surgery for sofic subshifts, iterated images for the limit
language of a CA, and a sampled estimator for CA asymptotic windows.
"""

from collections import Counter
from dataclasses import dataclass, field
from math import gcd
from typing import List, Optional, Tuple

from . import blockmap as bm
from . import orbits, sofic
from .errors import ResourceError, SpecError
from .sofic import LabeledGraph
from .symbols import Word


def limit_graph(g: LabeledGraph) -> LabeledGraph:
    return sofic.prune_to_infinite_history(g)


def asymptotic_graph(g: LabeledGraph) -> LabeledGraph:
    """Limit graph with every arc between distinct SCCs removed."""
    h = limit_graph(g)
    dec = sofic.scc_decompose(h)
    arcs = [(s, t, a) for s, t, a in h.arcs if dec.component_of[s] == dec.component_of[t]]
    h2 = LabeledGraph.from_indexed(h.alphabet, h.names, arcs, h.twosided)
    keep = [dec.cyclic[dec.component_of[v]] for v in range(h.n)]
    return sofic.induced(h2, keep)


@dataclass(frozen=True)
class Cycle:
    vertices: Tuple[int, ...]
    label: Word
    period: int  # primitive period of the label word


@dataclass(frozen=True)
class SoficClassification:
    universal: bool
    countable: bool
    asymptotically_periodic: Optional[int]
    asymptotically_nilpotent_to: Optional[str]
    offending_component: Optional[Tuple[int, ...]] = None
    cycles: Tuple[Cycle, ...] = ()

    def to_json(self):
        return {
            "universal": self.universal,
            "countable": self.countable,
            "asymptotically_periodic": self.asymptotically_periodic,
            "asymptotically_nilpotent_to": self.asymptotically_nilpotent_to,
            "evidence": ({"non_cyclic_component": list(self.offending_component)}
                         if self.offending_component is not None else
                         {"cycles": [{"vertices": list(c.vertices), "label": str(c.label),
                                      "length": len(c.vertices), "period": c.period}
                                     for c in self.cycles]}),
        }


def _lcm(a, b):
    return a * b // gcd(a, b)


def classify_sofic(g: LabeledGraph) -> SoficClassification:
    """Universality / countability / asymptotic periodicity of a sofic subshift.

    Works on the deterministic minimal presentation, limit-pruned. Universal
    iff some SCC has a vertex with two arcs staying inside it. Otherwise every
    SCC is a simple cycle; the period is the lcm of the primitive periods of
    the cycle labels.
    """
    h = limit_graph(sofic.determinize(g))
    dec = sofic.scc_decompose(h)
    cycles = []
    for ci, comp in enumerate(dec.components):
        if not dec.cyclic[ci]:
            continue
        inside = [(s, t, a) for s, t, a in h.arcs if dec.component_of[s] == ci and dec.component_of[t] == ci]
        outdeg = Counter(s for s, _, _ in inside)
        if any(c >= 2 for c in outdeg.values()):
            return SoficClassification(True, False, None, None, comp)
        succ = {s: (t, a) for s, t, a in inside}
        v = comp[0]
        verts, label = [], []
        while True:
            verts.append(v)
            t, a = succ[v]
            label.append(a)
            v = t
            if v == comp[0]:
                break
        word = tuple(label)
        cycles.append(Cycle(tuple(h.names[x] for x in verts), Word(h.alphabet, word),
                            len(orbits.primitive_root(word))))
    p = 1
    for c in cycles:
        p = _lcm(p, c.period)
    nil = None
    if cycles and all(c.period == 1 for c in cycles) and len({c.label[0] for c in cycles}) == 1:
        nil = h.alphabet.name(cycles[0].label[0])
    return SoficClassification(False, True, p, nil, None, tuple(cycles))


def weak_preperiodicity_sofic(g: LabeledGraph):
    """(p, note) when the onesided shift on g's label system is weakly p-preperiodic."""
    c = classify_sofic(g)
    if c.asymptotically_periodic is None:
        return None
    return (c.asymptotically_periodic,
            "asymptotically periodic and weakly preperiodic coincide for onesided sofic subshifts")


@dataclass
class LimitLanguageReport:
    order: int
    language: List[Word]
    status: str  # "Exact" or "UpperBound"
    stabilized_at: Optional[int]
    horizon: int
    sizes: List[int] = field(default_factory=list)

    def to_json(self):
        return {
            "order": self.order,
            "status": self.status,
            "stabilized_at": self.stabilized_at,
            "language": [str(w) for w in self.language],
            "sizes": list(self.sizes),
        }


def ca_limit_language(rule: bm.BlockRule, g: LabeledGraph, k: int, T: int) -> LimitLanguageReport:
    """lang_k of F^T(Σ), exact once two consecutive images coincide.

    Images are minimized and memoized by canonical form. For a rule-invariant
    Σ the images decrease, so a revisited form can only be the previous one
    and the sequence is then constant: Ω = F^j(Σ).
    """
    if k < 1 or T < 1:
        raise SpecError("order and horizon must be at least 1")
    if not bm.check_invariance(rule, g):
        raise SpecError("ca_limit_language needs a rule-invariant domain")
    h = sofic.determinize(g)
    memo = {sofic.canonical_key(h): 0}
    sizes = [sofic.language_size(h, k)]
    stabilized = None
    for j in range(1, T + 1):
        try:
            h_next = sofic.determinize(bm.image_sofic(rule, h))
        except ResourceError as e:
            partial = LimitLanguageReport(k, sorted(sofic.label_language(h, k)), "UpperBound",
                                          None, j - 1, sizes)
            raise ResourceError(str(e), partial) from e
        key = sofic.canonical_key(h_next)
        if key in memo:
            stabilized = memo[key]
            break
        memo[key] = j
        h = h_next
        sizes.append(sofic.language_size(h, k))
    language = sorted(sofic.label_language(h, k))
    sizes += [sizes[-1]] * (T + 1 - len(sizes))
    if stabilized is not None:
        return LimitLanguageReport(k, language, "Exact", stabilized, T, sizes)
    return LimitLanguageReport(k, language, "UpperBound", None, T, sizes)


def surviving_symbols(rule: bm.BlockRule, g: LabeledGraph, t: int) -> frozenset:
    """Symbols still present in F^t(Σ)."""
    h = bm.iterate_image(rule, g, t)
    return frozenset(g.alphabet.name(w[0]) for w in sofic.label_language(h, 1))


def nilpotency_decision_at(rule: bm.BlockRule, g: LabeledGraph, t: int) -> bool:
    """True when F^t(Σ) is a single quiescent uniform point: nilpotent, preperiod <= t."""
    if t < 1:
        raise SpecError("generation must be at least 1")
    syms = surviving_symbols(rule, g, t)
    return len(syms) == 1 and next(iter(syms)) in bm.quiescent_states(rule)


def asymptotic_samples(rule: bm.BlockRule, configs, T: int, k: int) -> set:
    """Windows [0,k) seen at least twice among times T//2..T of each orbit.

    A heuristic estimate of which words the asymptotic set reaches, not ω_F.
    """
    if T < 2:
        raise SpecError("T must be at least 2")
    out = set()
    for x in configs:
        rows = orbits.spacetime(rule, x, 0, k, T + 1)
        counts = Counter(tuple(int(a) for a in row) for row in rows[T // 2:])
        out |= {Word(rule.alphabet, w) for w, c in counts.items() if c >= 2}
    return out
