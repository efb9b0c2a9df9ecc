"""Blocking words, equicontinuity evidence, preperiodicity and simulations.

The semi-decidable questions return an ``AnalysisVerdict``. Refuted
verdicts always carry configurations that replay the divergence through
``orbits.trace``; Proved verdicts name the certificate that justified them.
"""

import random
from dataclasses import dataclass, field
from math import ceil
from typing import Any, List, NamedTuple, Optional, Tuple

import numpy as np

from . import blockmap as bm
from . import orbits, sofic
from .blockmap import BlockRule
from .errors import InconsistencyError, SpecError
from .orbits import EpConfiguration
from .sofic import LabeledGraph
from .symbols import Alphabet, Word

PROVED = "Proved"
REFUTED = "Refuted"
UNKNOWN = "UnknownAtHorizon"


@dataclass(frozen=True)
class BlockingWitness:
    x: EpConfiguration
    y: EpConfiguration
    time: int
    x_window: Word
    y_window: Word

    def to_json(self):
        return {"x": str(self.x), "y": str(self.y), "time": self.time,
                "x_window": str(self.x_window), "y_window": str(self.y_window)}


@dataclass(frozen=True)
class AnalysisVerdict:
    status: str
    time: Optional[int] = None
    witness: Any = None
    certificate: Optional[str] = None
    horizon: Optional[int] = None
    detail: dict = field(default_factory=dict)

    def __bool__(self):
        return self.status == PROVED

    def __str__(self):
        if self.status == REFUTED:
            return f"Refuted({self.time})"
        if self.status == UNKNOWN:
            return f"UnknownAtHorizon({self.horizon})"
        return f"Proved[{self.certificate}]"

    def to_json(self):
        out = {"status": self.status}
        if self.time is not None:
            out["time"] = self.time
        w = self.witness
        if w is not None:
            out["witness"] = w.to_json() if hasattr(w, "to_json") else w
        if self.certificate is not None:
            out["certificate"] = self.certificate
        if self.horizon is not None:
            out["horizon"] = self.horizon
        for k, v in self.detail.items():
            out[k] = v
        return out


def _domain(rule: BlockRule) -> LabeledGraph:
    g = rule.domain if rule.domain is not None else sofic.full_shift(rule.alphabet)
    return sofic.essential(g)


# ---------------------------------------------------------------- completion

def _path_for_word(g: LabeledGraph, letters):
    """A vertex path labeled ``letters`` in g, or None."""
    layers = [{v: None for v in range(g.n)}]
    for a in letters:
        nxt = {}
        for v in layers[-1]:
            for b, w in g.out[v]:
                if b == a and w not in nxt:
                    nxt[w] = v
        if not nxt:
            return None
        layers.append(nxt)
    v = min(layers[-1])
    path = [v]
    for layer in reversed(layers[1:]):
        v = layer[v]
        path.append(v)
    return path[::-1]


def _to_cycle(g: LabeledGraph, v, forward=True):
    """Shortest path from v to a cycle (forward) or from a cycle to v (backward).

    Returns (path label, cycle label) with the path oriented left to right.
    """
    dec = sofic.scc_decompose(g)
    cyc = [dec.cyclic[dec.component_of[u]] for u in range(g.n)]
    if forward:
        adj = [[(a, w) for a, w in g.out[u]] for u in range(g.n)]
    else:
        adj = [[] for _ in range(g.n)]
        for s, t, a in g.arcs:
            adj[t].append((a, s))
    prev = {v: None}
    queue = [v]
    hit = v if cyc[v] else None
    while hit is None:
        nq = []
        for u in sorted(queue):
            for a, w in sorted(adj[u]):
                if w not in prev:
                    prev[w] = (u, a)
                    if cyc[w] and hit is None:
                        hit = w
                    nq.append(w)
        if not nq and hit is None:
            raise InconsistencyError("vertex of an essential graph cannot reach a cycle")
        queue = nq
    labels = []
    u = hit
    while prev[u] is not None:
        u, a = prev[u][0], prev[u][1]
        labels.append(a)
    # cycle through hit inside its component
    comp = dec.component_of[hit]
    cprev = {}
    queue = [hit]
    found = False
    while queue and not found:
        nq = []
        for u in queue:
            for a, w in sorted(adj[u]):
                if dec.component_of[w] != comp:
                    continue
                if w == hit:
                    cprev[hit] = (u, a)
                    found = True
                    break
                if w not in cprev:
                    cprev[w] = (u, a)
                    nq.append(w)
            if found:
                break
        queue = nq
    cyc_labels = []
    u, a = cprev[hit]
    cyc_labels.append(a)
    while u != hit:
        u, a = cprev[u]
        cyc_labels.append(a)
    if forward:
        return tuple(reversed(labels)), tuple(reversed(cyc_labels))
    return tuple(labels), tuple(cyc_labels)


def complete_word(g: LabeledGraph, letters, start_cell: int) -> EpConfiguration:
    """An eventually periodic point of g's twosided system with ``letters`` at start_cell."""
    e = sofic.essential(g)
    path = _path_for_word(e, letters)
    if path is None:
        raise SpecError("word is not in the language of the domain")
    head, left_cycle = _to_cycle(e, path[0], forward=False)
    tail, right_cycle = _to_cycle(e, path[-1], forward=True)
    center = head + tuple(letters) + tail
    return EpConfiguration(g.alphabet, left_cycle, center, right_cycle, start_cell - len(head))


def random_configuration(g: LabeledGraph, rng: random.Random, length: int) -> EpConfiguration:
    """Random walk of the given length in the essential graph, completed both ways."""
    e = sofic.essential(g)
    if e.n == 0:
        raise SpecError("domain has no bi-infinite points")
    v = rng.randrange(e.n)
    letters = []
    for _ in range(length):
        a, v = rng.choice(e.out[v])
        letters.append(a)
    return complete_word(g, letters, -(length // 2))


# ------------------------------------------------------------ marked systems

def marked_alphabet(a: Alphabet) -> Alphabet:
    return bm.product_alphabet(a, Alphabet("01"))


def marked_rule(R: BlockRule) -> BlockRule:
    """(F × id) over A×{0,1} for a symmetrized rule R."""
    q, D, r = R.q, R.diameter, R.anchor
    digits = bm.window_digits(2 * q, D)
    xs = digits // 2
    ys = digits % 2
    vals = R.table[bm.codes_of_columns(xs, q)]
    out = np.where(vals < 0, -1, vals * 2 + ys[:, r])
    return BlockRule(marked_alphabet(R.alphabet), r, D, out, strict=False)


def pair_rule(R: BlockRule) -> BlockRule:
    """(y, z) -> (y, F(z)) over A×A for a symmetrized rule R."""
    q, D, r = R.q, R.diameter, R.anchor
    digits = bm.window_digits(q * q, D)
    ys = digits // q
    zs = digits % q
    vals = R.table[bm.codes_of_columns(zs, q)]
    out = np.where(vals < 0, -1, ys[:, r] * q + vals)
    return BlockRule(bm.product_alphabet(R.alphabet, R.alphabet), r, D, out, strict=False)


def cylinder_system(domain: LabeledGraph, w: Word, i: int) -> LabeledGraph:
    """Marked presentation: domain points with [w] at cell -i and the mark at cell 0.

    Unmarked domain points are included too, so the result is a subshift.
    """
    dfa = sofic.canonical_dfa(domain)
    q = len(domain.alphabet)
    L = max(len(w), i + 1)
    PRE, POST = -1, L
    names, index, arcs = [], {}, []

    def vid(s, ph):
        k = (s, ph)
        j = index.get(k)
        if j is None:
            j = index[k] = len(names)
            names.append(k)
        return j

    for s in range(dfa.n):
        for ph in range(-1, L + 1):
            if ph == 0:
                continue
            src = vid(s, ph)
            for a in range(q):
                t = dfa.trans[s][a]
                if t < 0:
                    continue
                if ph in (PRE, POST):
                    arcs.append((src, vid(t, ph), 2 * a))
                if ph != POST:
                    pos = 0 if ph == PRE else ph
                    if pos < len(w) and w[pos] != a:
                        continue
                    nxt = pos + 1 if pos + 1 < L else POST
                    arcs.append((src, vid(t, nxt), 2 * a + (1 if pos == i else 0)))
    return LabeledGraph.from_indexed(marked_alphabet(domain.alphabet), names, arcs, twosided=True)


def marked_windows(g: LabeledGraph, k: int) -> set:
    """x-track words of length k sitting under the mark pattern 1 0^{k-1}."""
    dfa = sofic.canonical_dfa(g)
    level = [((), 0)]
    for j in range(k):
        want = 1 if j == 0 else 0
        nxt = []
        for w, s in level:
            for c in range(dfa.q):
                if c % 2 != want:
                    continue
                t = dfa.trans[s][c]
                if t >= 0:
                    nxt.append((w + (c // 2,), t))
        level = nxt
    return {w for w, _ in level}


# ------------------------------------------------------------- blocking words

def _refutation_witness(rule: BlockRule, domain: LabeledGraph, w: Word, i: int, k: int, t: int):
    R = bm.symmetrize(rule)
    r = R.anchor
    lo = min(-r * t, -i)
    hi = max(k + r * t, -i + len(w))
    fixed = {c - lo: w[c + i] for c in range(-i, -i + len(w))}
    dfa = sofic.canonical_dfa(domain)
    a0, a1 = -r * t - lo, k + r * t - lo
    found = {}
    budget = [2_000_000]

    def image(letters):
        seg = np.array(letters[a0:a1], dtype=np.int64)
        for _ in range(t):
            seg = bm.apply_letters(R, seg)
        return tuple(int(x) for x in seg)

    def dfs(prefix, s):
        budget[0] -= 1
        if budget[0] < 0:
            return True
        if len(prefix) == hi - lo:
            img = image(prefix)
            if img not in found:
                found[img] = prefix
            return len(found) >= 2
        pos = len(prefix)
        choices = [fixed[pos]] if pos in fixed else range(dfa.q)
        for a in choices:
            nt = dfa.trans[s][a]
            if nt >= 0 and dfs(prefix + (a,), nt):
                return True
        return False

    dfs((), 0)
    if len(found) < 2:
        raise InconsistencyError("marked system reported divergence but no witness pair was found")
    (wx, zx), (wy, zy) = list(found.items())[:2]
    x = complete_word(domain, zx, lo)
    y = complete_word(domain, zy, lo)
    tx = orbits.trace(rule, x, 0, k, t + 1)[t]
    ty = orbits.trace(rule, y, 0, k, t + 1)[t]
    if tx == ty or x.window(-i, -i + len(w)) != w or y.window(-i, -i + len(w)) != w:
        raise InconsistencyError("refutation witness does not replay")
    return BlockingWitness(x, y, t, tx, ty)


def is_k_blocking(rule: BlockRule, w, i: int, k: int, T: int) -> AnalysisVerdict:
    """Whether the [0,k) trace is the same for every point of [w] at cell -i.

    Iterates images of the marked cylinder system. Refuted at the first time
    two windows are possible. Proved when the minimized presentations cycle,
    or when the next presentation falls inside the union of the earlier ones
    and all of them show the same single window.
    """
    w = rule.alphabet.word(w)
    if k < 1:
        raise SpecError("k must be at least 1")
    if not 0 <= i <= len(w):
        raise SpecError("offset must satisfy 0 <= i <= |w|")
    if T < 0:
        raise SpecError("horizon must be nonnegative")
    domain = _domain(rule)
    R = bm.symmetrize(rule)
    MR = marked_rule(R)
    G = sofic.determinize(cylinder_system(domain, w, i))
    history = []
    keys = {}
    windows = []
    for t in range(T + 1):
        S = marked_windows(G, k)
        if not S:
            return AnalysisVerdict(PROVED, certificate="empty-cylinder", horizon=T)
        if len(S) > 1:
            witness = _refutation_witness(rule, domain, w, i, k, t)
            return AnalysisVerdict(REFUTED, time=t, witness=witness, horizon=T)
        windows.append(next(iter(S)))
        key = sofic.canonical_key(G)
        if key in keys:
            return AnalysisVerdict(PROVED, certificate="presentation-recurrence",
                                   horizon=T, detail={"cycle": [keys[key], t], "kind": "cycle"})
        keys[key] = t
        history.append(G)
        if t == T:
            break
        G = sofic.determinize(bm.image_sofic(MR, G))
        if len(set(windows)) == 1:
            union = sofic.disjoint_union(history)
            if sofic.language_included(G, union):
                return AnalysisVerdict(PROVED, certificate="presentation-recurrence", horizon=T,
                                       detail={"cycle": [0, t + 1], "kind": "union"})
    return AnalysisVerdict(UNKNOWN, horizon=T)


def _domain_words(rule: BlockRule, n: int):
    dfa = sofic.canonical_dfa(_domain(rule))
    return [Word(rule.alphabet, w) for w, _ in sorted(dfa.words(n))]


def find_blocking_words(rule: BlockRule, k: int, max_len: int, horizon: int):
    """(word, offset, verdict) by length then lexicographic order.

    Stops after finishing the length at which the first Proved entry appears.
    """
    if max_len < 1:
        raise SpecError("max_len must be at least 1")
    out = []
    for n in range(1, max_len + 1):
        hit = False
        for w in _domain_words(rule, n):
            for i in range(n + 1):
                v = is_k_blocking(rule, w, i, k, horizon)
                out.append((w, i, v))
                hit = hit or v.status == PROVED
        if hit:
            break
    return out


def equicontinuity_evidence(rule: BlockRule, T: int, max_k: int) -> AnalysisVerdict:
    """Kůrka's criterion: some k with every k-word r-blocking.

    Refuted here is evidence only: no r-blocking word of length <= max_k
    turned up, every candidate offset being refuted.
    """
    r = bm.radius(rule)
    all_refuted = True
    examples = []
    for L in range(1, max_k + 1):
        offsets = range(0, L - r + 1)
        every = True
        for w in _domain_words(rule, L):
            ok = False
            for i in offsets:
                v = is_k_blocking(rule, w, i, r, T)
                if v.status == PROVED:
                    ok = True
                    all_refuted = False
                    break
                if v.status == UNKNOWN:
                    all_refuted = False
                elif len(examples) < 3:
                    examples.append({"word": str(w), "offset": i, "time": v.time})
            if not ok:
                every = False
        if every and L >= r:
            return AnalysisVerdict(PROVED, certificate="kurka", horizon=T,
                                   detail={"k": L, "radius": r})
    if all_refuted:
        return AnalysisVerdict(REFUTED, horizon=T, witness={"refuted": examples},
                               detail={"radius": r, "conclusive": False,
                                       "note": f"no {r}-blocking word of length <= {max_k}; "
                                               "this is evidence of sensitivity, not a proof"})
    return AnalysisVerdict(UNKNOWN, horizon=T, detail={"radius": r})


def replay(rule: BlockRule, verdict: AnalysisVerdict) -> bool:
    """Re-simulate a Refuted blocking verdict's witness pair."""
    w = verdict.witness
    if not isinstance(w, BlockingWitness):
        return False
    k = len(w.x_window)
    tx = orbits.trace(rule, w.x, 0, k, w.time + 1)[w.time]
    ty = orbits.trace(rule, w.y, 0, k, w.time + 1)[w.time]
    return tx == w.x_window and ty == w.y_window and tx != ty


# ------------------------------------------------------------- preperiodicity

def _witness_family(rule, g, count=48, seed=0):
    rng = random.Random(seed)
    fam = []
    for a in range(rule.q):
        try:
            fam.append(complete_word(g, (a,) * 2, 0))
        except SpecError:
            pass
    for n in range(count):
        fam.append(random_configuration(g, rng, 4 + n % 12))
    return fam


def _identity_on(rule: BlockRule, Y: LabeledGraph, p: int) -> bool:
    """Whether F^p fixes every point of Y's twosided system."""
    R = bm.symmetrize(rule)
    PR = pair_rule(R)
    q = rule.q
    dfa = sofic.canonical_dfa(sofic.essential(Y))
    diag = LabeledGraph.from_indexed(PR.alphabet, range(dfa.n),
                                     [(s, t, a * q + a) for s, t, a in dfa.arcs()], twosided=True)
    h = sofic.determinize(diag)
    for _ in range(p):
        h = sofic.determinize(bm.image_sofic(PR, h))
    return all(c // q == c % q for (c,) in (w.letters for w in sofic.label_language(h, 1)))


def preperiodicity_check(rule: BlockRule, g: LabeledGraph, max_p: int, max_q: int) -> AnalysisVerdict:
    """Search (p, q) with F^{p+q} = F^q on Σ, by p+q then q.

    Each pair is first tested on a fixed family of eventually periodic
    witnesses; survivors get the exact test F^p = id on F^q(Σ).
    """
    if rule.domain is not None:
        g = rule.domain if g is None else g
    g = sofic.essential(g)
    if not bm.check_invariance(rule, g):
        raise SpecError("preperiodicity_check needs a rule-invariant domain")
    fam = _witness_family(rule, g)
    horizon = max_p + max_q
    orbs = []
    for x in fam:
        seq = [x]
        for _ in range(horizon):
            seq.append(orbits.step(rule, seq[-1]))
        orbs.append(seq)
    images = {}
    refuted = []
    for total in range(1, horizon + 1):
        for q in range(0, max_q + 1):
            p = total - q
            if p < 1 or p > max_p:
                continue
            bad = next((j for j, seq in enumerate(orbs) if seq[p + q] != seq[q]), None)
            if bad is not None:
                refuted.append([p, q])
                continue
            if q not in images:
                images[q] = bm.iterate_image(rule, g, q)
            if _identity_on(rule, images[q], p):
                return AnalysisVerdict(PROVED, certificate="exact", detail={"p": p, "q": q},
                                       horizon=horizon)
    return AnalysisVerdict(UNKNOWN, horizon=horizon,
                           detail={"max_p": max_p, "max_q": max_q, "pairs_refuted": len(refuted)})


# ----------------------------------------------------------------- simulation

@dataclass(frozen=True)
class FactorMap:
    """Cell-grouping block map: Φ(x)_i = φ(x[g·i + a, g·i + a + e))."""
    source: Alphabet
    target: Alphabet
    group: int
    offset: int
    diameter: int
    table: Tuple[int, ...]

    @classmethod
    def from_function(cls, source, target, group, offset, diameter, fn):
        digits = bm.window_digits(len(source), diameter)
        table = tuple(target.index(fn(tuple(int(x) for x in row))) for row in digits)
        return cls(source, target, group, offset, diameter, table)

    def __post_init__(self):
        if self.group < 1 or self.diameter < 1:
            raise SpecError("group size and diameter must be positive")
        if len(self.table) != len(self.source) ** self.diameter:
            raise SpecError("factor map table size does not match its diameter")


@dataclass(frozen=True)
class SimulationSpec:
    source: BlockRule
    source_domain: LabeledGraph
    target: BlockRule
    target_domain: LabeledGraph
    phi: FactorMap
    n: int = 1
    n_prime: int = 1
    conjugacy: bool = False

    def __post_init__(self):
        if self.n < 1 or self.n_prime < 1:
            raise SpecError("periods n and n' must be at least 1")
        if self.phi.source != self.source.alphabet or self.phi.target != self.target.alphabet:
            raise SpecError("factor map alphabets do not match the rules")


class SimulationResult(NamedTuple):
    holds: bool
    commutes: bool
    surjective: bool
    injective: Optional[bool]
    counterexample: Optional[Word]
    window: int

    def __bool__(self):
        return self.holds

    def to_json(self):
        return {"holds": self.holds, "commutes": self.commutes, "surjective": self.surjective,
                "injective": self.injective,
                "counterexample": None if self.counterexample is None else str(self.counterexample),
                "window": self.window}


def _apply_rows(rule: BlockRule, arr: np.ndarray) -> np.ndarray:
    d, q = rule.diameter, rule.q
    n = arr.shape[1] - d + 1
    out = np.empty((arr.shape[0], n), dtype=np.int64)
    for j in range(n):
        out[:, j] = rule.table[bm.codes_of_columns(arr[:, j:j + d], q)]
    if (out < 0).any():
        raise SpecError("rule undefined on a domain word")
    return out


def _phi_window(phi: FactorMap, arr: np.ndarray, start: int) -> np.ndarray:
    tbl = np.array(phi.table, dtype=np.int64)
    return tbl[bm.codes_of_columns(arr[:, start:start + phi.diameter], len(phi.source))]


def _block_presentation(phi: FactorMap, domain: LabeledGraph) -> LabeledGraph:
    """Presentation of Φ(Σ): g-blocks of Σ, then φ over the blocks it spans."""
    src = sofic.essential(domain)
    dfa = sofic.canonical_dfa(src)
    q, g, e = len(phi.source), phi.group, phi.diameter
    arcs = []
    for s in range(dfa.n):
        for blk, t in dfa.words(g, s):
            arcs.append((s, t, bm.code_of(blk, q)))
    blocks = Alphabet([f"b{j}" for j in range(q ** g)])
    bg = LabeledGraph.from_indexed(blocks, range(dfa.n), arcs, twosided=True)
    c = max(1, ceil(e / g))
    digits = bm.window_digits(q ** g, c)
    tbl = np.array(phi.table, dtype=np.int64)
    letters = np.concatenate([bm.window_digits(q, g)[digits[:, j]] for j in range(c)], axis=1)
    table = tbl[bm.codes_of_columns(letters[:, :e], q)]
    img = bm.image_core(table, q ** g, c, sofic.canonical_dfa(bg), blocks, phi.target, twosided=True)
    return img


def _injective(phi: FactorMap, domain: LabeledGraph) -> bool:
    """No two distinct twosided points of Σ share their Φ-image."""
    src = sofic.essential(domain)
    dfa = sofic.canonical_dfa(src)
    q, g, e = len(phi.source), phi.group, phi.diameter
    c = max(1, ceil(e / g))
    tbl = phi.table
    # vertex: (state, last c-1 blocks); arcs read one block and emit φ of c blocks
    verts = {}
    out = {}
    for s in range(dfa.n):
        for hist, t in dfa.words(g * (c - 1), s):
            verts[(s, hist)] = t
    for (s, hist), t in verts.items():
        lst = []
        for blk, t2 in dfa.words(g, t):
            lets = hist + blk
            sym = tbl[bm.code_of(lets[:e], q)]
            s_next = dfa.read(lets[:g], s) if c > 1 else t2
            nxt = (s_next, lets[g:]) if c > 1 else (t2, ())
            lst.append((sym, blk, nxt))
        out[(s, hist)] = lst
    names = list(verts)
    idx = {v: j for j, v in enumerate(names)}
    pairs, parcs = {}, []
    diff_arcs = []

    def pid(a, b):
        k = (a, b)
        if k not in pairs:
            pairs[k] = len(pairs)
        return pairs[k]

    for a in names:
        for b in names:
            for sym1, blk1, n1 in out[a]:
                for sym2, blk2, n2 in out[b]:
                    if sym1 != sym2:
                        continue
                    arc = (pid(idx[a], idx[b]), pid(idx[n1], idx[n2]), 0)
                    parcs.append(arc)
                    if blk1 != blk2:
                        diff_arcs.append(arc)
    pg = LabeledGraph.from_indexed(Alphabet("0"), range(len(pairs)), parcs, twosided=True)
    live_f = sofic._live(pg.n, pg.arcs, forward=True, backward=False)
    live_b = sofic._live(pg.n, pg.arcs, forward=False, backward=True)
    return not any(live_b[s] and live_f[t] for s, t, _ in diff_arcs)


def verify_simulation(spec: SimulationSpec, depth: int) -> SimulationResult:
    """Check Φ∘F^n = G^{n'}∘Φ on the source domain words, plus surjectivity of Φ.

    Injectivity is checked only when ``spec.conjugacy`` is set.
    """
    phi = spec.phi
    Fn = bm.power(spec.source, spec.n)
    Gn = bm.power(spec.target, spec.n_prime)
    a, e, g = phi.offset, phi.diameter, phi.group
    lhs_lo = a - Fn.anchor
    lhs_hi = a + e - 1 - Fn.anchor + Fn.diameter
    rhs_lo = g * (-Gn.anchor) + a
    rhs_hi = g * (Gn.diameter - 1 - Gn.anchor) + a + e
    lo, hi = min(lhs_lo, rhs_lo), max(lhs_hi, rhs_hi)
    W = hi - lo
    if depth < W:
        raise SpecError(f"depth {depth} below the combined diameter {W}")
    src = sofic.essential(spec.source_domain)
    words = sorted(w for w, _ in sofic.canonical_dfa(src).words(depth))
    counterexample = None
    commutes = True
    if words:
        arr = np.array(words, dtype=np.int64)
        for c in range(0, depth - W + 1):
            # cell 0 of the relation evaluated on σ^(c-lo)(x)
            seg = arr[:, c:c + W]
            z = seg[:, lhs_lo - lo:lhs_hi - lo]
            for _ in range(spec.n):
                z = _apply_rows(spec.source, z)
            left = _phi_window(phi, z, 0)
            cols = [_phi_window(phi, seg, rhs_lo - lo + g * j) for j in range(Gn.diameter)]
            right = np.stack(cols, axis=1)
            right = Gn.table[bm.codes_of_columns(right, Gn.q)]
            bad = np.nonzero(left != right)[0]
            if bad.size:
                commutes = False
                counterexample = Word(spec.source.alphabet, tuple(int(x) for x in seg[bad[0]]))
                break
    img = _block_presentation(phi, spec.source_domain)
    surjective = sofic.language_equivalent(img, sofic.essential(spec.target_domain))
    injective = _injective(phi, spec.source_domain) if spec.conjugacy else None
    holds = commutes and surjective and (injective is not False)
    return SimulationResult(holds, commutes, surjective, injective, counterexample, W)


def sigma_k_limit_equals_omega_hint(rule: BlockRule) -> bm.KRange:
    """The k for which σ^k∘F is oblic, so that Ω_F = ω_{σ^k F}."""
    r = bm.reduce_rule(rule)
    if bm.is_constant(r):
        return bm.KRange(0, 0, every=True)
    return bm.KRange(r.anchor + 1, r.anchor - r.diameter)
