"""Labeled graphs presenting sofic subshifts.

A ``LabeledGraph`` presents a onesided label system by default: the set of
labels of its right-infinite paths. With ``twosided=True`` it presents the
bi-infinite label system instead. Their finite languages can differ when the
graph has transient vertices, so every language-level operation first trims
the graph to the vertices that matter (forward-live or essential) and then
works on a canonical minimal DFA.

The canonical DFA is the subset construction started from the set of all
trimmed vertices, minimized with missing transitions treated as a dead
state and renumbered breadth-first. Two graphs have the same finite
language exactly when their canonical DFAs are identical, which turns
equivalence into equality of a hashable key.
"""

from collections import deque
from typing import Hashable, Iterable, NamedTuple, Optional, Sequence, Tuple

from .errors import ARC_BYTES, ResourceError, SpecError, mem_cap_bytes
from .symbols import Alphabet, Word


class LabeledGraph:
    """Finite graph with arcs labeled by alphabet symbols.

    Parameters
    ----------
    alphabet : Alphabet
    vertices : sequence of hashable names, or an int n meaning 0..n-1
    arcs : iterable of (source, target, label); source and target are vertex
        names, label is a symbol name or index
    twosided : bool
        Whether the bi-infinite label system is meant.
    """

    __slots__ = ("alphabet", "names", "arcs", "twosided", "_index", "_out", "_dfa")

    def __init__(self, alphabet: Alphabet, vertices, arcs: Iterable = (), twosided: bool = False):
        if isinstance(vertices, int):
            vertices = range(vertices)
        names = tuple(vertices)
        index = {}
        for i, v in enumerate(names):
            if v in index:
                raise SpecError(f"duplicate vertex {v!r}")
            index[v] = i
        triples = []
        for arc in arcs:
            s, t, a = arc
            if s not in index:
                raise SpecError(f"arc source {s!r} is not a vertex")
            if t not in index:
                raise SpecError(f"arc target {t!r} is not a vertex")
            triples.append((index[s], index[t], alphabet.index(a)))
        self._setup(alphabet, names, index, triples, twosided)

    @classmethod
    def from_indexed(cls, alphabet, names, arcs, twosided=False):
        """Fast path for internal constructions: index triples, duplicates merged."""
        g = cls.__new__(cls)
        names = tuple(names)
        g._setup(alphabet, names, {v: i for i, v in enumerate(names)}, list(set(arcs)), twosided)
        return g

    def _setup(self, alphabet, names, index, triples, twosided):
        st = set(triples)
        if len(st) != len(triples):
            dup = next(t for t in triples if triples.count(t) > 1)
            raise SpecError(f"duplicate arc {names[dup[0]]!r} -{alphabet.name(dup[2])}-> {names[dup[1]]!r}")
        self.alphabet = alphabet
        self.names = names
        self._index = index
        self.arcs = tuple(sorted(st))
        self.twosided = bool(twosided)
        self._out = None
        self._dfa = None

    @property
    def n(self):
        return len(self.names)

    def vertex(self, name) -> int:
        return self._index[name]

    @property
    def out(self):
        if self._out is None:
            out = [[] for _ in range(self.n)]
            for s, t, a in self.arcs:
                out[s].append((a, t))
            self._out = tuple(tuple(o) for o in out)
        return self._out

    def with_orientation(self, twosided: bool) -> "LabeledGraph":
        if twosided == self.twosided:
            return self
        return LabeledGraph.from_indexed(self.alphabet, self.names, self.arcs, twosided)

    def named_arcs(self):
        return [(self.names[s], self.names[t], self.alphabet.name(a)) for s, t, a in self.arcs]

    def __eq__(self, other):
        return (isinstance(other, LabeledGraph) and self.alphabet == other.alphabet
                and self.names == other.names and self.arcs == other.arcs
                and self.twosided == other.twosided)

    def __hash__(self):
        return hash((self.alphabet, self.names, self.arcs, self.twosided))

    def __repr__(self):
        kind = "twosided" if self.twosided else "onesided"
        return f"LabeledGraph({self.n} vertices, {len(self.arcs)} arcs, {kind})"


class SccDecomposition(NamedTuple):
    components: Tuple[Tuple[int, ...], ...]
    condensation: frozenset
    component_of: Tuple[int, ...]
    cyclic: Tuple[bool, ...]


def _tarjan(n, succ):
    """Iterative Tarjan. Returns components as lists of vertices."""
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack = []
    comps = []
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, i = work[-1]
            if i < len(succ[v]):
                work[-1] = (v, i + 1)
                w = succ[v][i]
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w]:
                    low[v] = min(low[v], index[w])
            else:
                work.pop()
                if work:
                    u = work[-1][0]
                    low[u] = min(low[u], low[v])
                if low[v] == index[v]:
                    comp = []
                    while True:
                        w = stack.pop()
                        on_stack[w] = False
                        comp.append(w)
                        if w == v:
                            break
                    comps.append(comp)
    return comps


def _scc(n, arcs):
    succ = [[] for _ in range(n)]
    for s, t, _ in arcs:
        succ[s].append(t)
    comps = sorted((tuple(sorted(c)) for c in _tarjan(n, succ)), key=lambda c: c[0])
    comp_of = [0] * n
    for ci, c in enumerate(comps):
        for v in c:
            comp_of[v] = ci
    cyclic = [len(c) > 1 for c in comps]
    cond = set()
    for s, t, _ in arcs:
        cs, ct = comp_of[s], comp_of[t]
        if cs == ct:
            cyclic[cs] = True
        else:
            cond.add((cs, ct))
    return SccDecomposition(tuple(comps), frozenset(cond), tuple(comp_of), tuple(cyclic))


def scc_decompose(g: LabeledGraph) -> SccDecomposition:
    return _scc(g.n, g.arcs)


def _live(n, arcs, forward=True, backward=False):
    """Vertices surviving repeated removal of sinks (forward) and/or sources (backward)."""
    alive = [True] * n
    outdeg = [0] * n
    indeg = [0] * n
    succ = [[] for _ in range(n)]
    pred = [[] for _ in range(n)]
    for s, t, _ in arcs:
        outdeg[s] += 1
        indeg[t] += 1
        succ[s].append(t)
        pred[t].append(s)
    queue = deque(v for v in range(n) if (forward and outdeg[v] == 0) or (backward and indeg[v] == 0))
    for v in queue:
        alive[v] = False
    while queue:
        v = queue.popleft()
        for u in pred[v]:
            outdeg[u] -= 1
            if alive[u] and forward and outdeg[u] == 0:
                alive[u] = False
                queue.append(u)
        for w in succ[v]:
            indeg[w] -= 1
            if alive[w] and backward and indeg[w] == 0:
                alive[w] = False
                queue.append(w)
    return alive


def induced(g: LabeledGraph, keep) -> LabeledGraph:
    keep = list(keep)
    kept = [v for v in range(g.n) if keep[v]]
    if len(kept) == g.n:
        return g
    new = {v: i for i, v in enumerate(kept)}
    arcs = [(new[s], new[t], a) for s, t, a in g.arcs if keep[s] and keep[t]]
    return LabeledGraph.from_indexed(g.alphabet, [g.names[v] for v in kept], arcs, g.twosided)


def trim(g: LabeledGraph) -> LabeledGraph:
    """Drop vertices that never carry a word of the language.

    Onesided: keep forward-live vertices (those starting an infinite path).
    Twosided: keep the essential part (infinite paths both ways).
    """
    return induced(g, _live(g.n, g.arcs, forward=True, backward=g.twosided))


def essential(g: LabeledGraph) -> LabeledGraph:
    """The essential part, flagged twosided: presents the bi-infinite label system."""
    g2 = g.with_orientation(True)
    return induced(g2, _live(g2.n, g2.arcs, forward=True, backward=True))


def _reachable_from_cycles(g: LabeledGraph):
    dec = scc_decompose(g)
    seen = [False] * g.n
    queue = deque(v for v in range(g.n) if dec.cyclic[dec.component_of[v]])
    for v in queue:
        seen[v] = True
    while queue:
        v = queue.popleft()
        for _, w in g.out[v]:
            if not seen[w]:
                seen[w] = True
                queue.append(w)
    return seen


def prune_to_infinite_history(g: LabeledGraph) -> LabeledGraph:
    """Induced subgraph on vertices reachable from some cycle.

    For a onesided label system this presents its limit set. A twosided
    label system is its own limit set, so twosided input comes back as is.
    """
    if g.twosided:
        return g
    return induced(g, _reachable_from_cycles(g))


class Dfa:
    """Deterministic automaton, every state accepting, missing transitions reject.

    ``trans[s][a]`` is the target state or -1. State 0 is initial. The
    empty language has no states at all.
    """

    __slots__ = ("q", "trans", "key")

    def __init__(self, q: int, trans):
        self.q = q
        self.trans = tuple(tuple(row) for row in trans)
        self.key = (q, self.trans)

    @property
    def n(self):
        return len(self.trans)

    def read(self, letters, state=0):
        if not self.trans:
            return -1
        for a in letters:
            state = self.trans[state][a]
            if state < 0:
                return -1
        return state

    def accepts(self, letters) -> bool:
        return self.read(letters) >= 0

    def words(self, length: int, state: int = 0):
        """All accepted words of the given length from ``state`` as index tuples, sorted."""
        if not self.trans:
            return []
        level = [((), state)]
        for _ in range(length):
            nxt = []
            for w, s in level:
                row = self.trans[s]
                for a in range(self.q):
                    t = row[a]
                    if t >= 0:
                        nxt.append((w + (a,), t))
            level = nxt
        return level

    def arcs(self):
        return [(s, t, a) for s, row in enumerate(self.trans) for a, t in enumerate(row) if t >= 0]

    def __eq__(self, other):
        return isinstance(other, Dfa) and self.key == other.key

    def __hash__(self):
        return hash(self.key)


STATE_BYTES = 256
SET_ELEM_BYTES = 40


def _subset_construction(n, out, q, start):
    start = frozenset(start)
    ids = {start: 0}
    order = [start]
    trans = []
    cap = mem_cap_bytes()
    used = 0
    i = 0
    while i < len(order):
        S = order[i]
        i += 1
        row = [-1] * q
        targets = [set() for _ in range(q)]
        for v in S:
            for a, w in out[v]:
                targets[a].add(w)
        for a in range(q):
            if targets[a]:
                T = frozenset(targets[a])
                j = ids.get(T)
                if j is None:
                    j = ids[T] = len(order)
                    order.append(T)
                    # the stored subsets dominate: charge their elements, not just the arcs
                    used += STATE_BYTES + SET_ELEM_BYTES * len(T) + ARC_BYTES * q
                row[a] = j
        trans.append(row)
        if used > cap:
            raise ResourceError(f"subset construction exceeded memory cap ({len(order)} states)")
    return trans


def minimize_dfa(q: int, trans) -> Dfa:
    """Moore refinement, then breadth-first renumbering from state 0."""
    n = len(trans)
    sink = n
    full = [list(row) for row in trans] + [[sink] * q]
    for row in full:
        for a in range(q):
            if row[a] < 0:
                row[a] = sink
    cls = [0] * n + [1]
    count = 2 if n else 1
    while True:
        sig = {}
        new = []
        for s in range(n + 1):
            key = (cls[s],) + tuple(cls[t] for t in full[s])
            c = sig.get(key)
            if c is None:
                c = sig[key] = len(sig)
            new.append(c)
        if len(sig) == count:
            cls = new
            break
        cls, count = new, len(sig)
    dead = cls[sink]
    # breadth-first renumbering, labels ascending
    rep = {}
    for s in range(n + 1):
        rep.setdefault(cls[s], s)
    order = {cls[0]: 0}
    queue = deque([cls[0]])
    rows = []
    while queue:
        c = queue.popleft()
        s = rep[c]
        row = []
        for a in range(q):
            tc = cls[full[s][a]]
            if tc == dead:
                row.append(-1)
                continue
            if tc not in order:
                order[tc] = len(order)
                queue.append(tc)
            row.append(order[tc])
        rows.append(row)
    return Dfa(q, rows)


def canonical_dfa(g: LabeledGraph) -> Dfa:
    """Minimal DFA of the finite language of g's label system (cached)."""
    if g._dfa is None:
        t = trim(g)
        if t.n == 0:
            g._dfa = Dfa(len(g.alphabet), ())
        else:
            trans = _subset_construction(t.n, t.out, len(g.alphabet), range(t.n))
            g._dfa = minimize_dfa(len(g.alphabet), trans)
    return g._dfa


def dfa_to_graph(dfa: Dfa, alphabet: Alphabet, twosided=False) -> LabeledGraph:
    g = LabeledGraph.from_indexed(alphabet, range(dfa.n), dfa.arcs(), twosided)
    if not g.twosided:
        return g
    # drop transient states that the twosided reading would discard; the language is unchanged
    return trim(g)


def determinize(g: LabeledGraph) -> LabeledGraph:
    """Deterministic (and minimal) presentation of the same finite language."""
    return dfa_to_graph(canonical_dfa(g), g.alphabet, g.twosided)


def canonical_key(g: LabeledGraph):
    return canonical_dfa(g).key


def _check_alphabets(g1, g2):
    if g1.alphabet != g2.alphabet:
        raise SpecError(f"alphabet mismatch: {g1.alphabet} vs {g2.alphabet}")


def language_equivalent(g1: LabeledGraph, g2: LabeledGraph) -> bool:
    _check_alphabets(g1, g2)
    return canonical_dfa(g1).key == canonical_dfa(g2).key


def dfa_included(d1: Dfa, d2: Dfa) -> bool:
    if d1.q != d2.q:
        return False
    if not d1.trans:
        return True
    if not d2.trans:
        return False
    seen = {(0, 0)}
    stack = [(0, 0)]
    while stack:
        s1, s2 = stack.pop()
        for a in range(d1.q):
            t1 = d1.trans[s1][a]
            if t1 < 0:
                continue
            t2 = d2.trans[s2][a]
            if t2 < 0:
                return False
            if (t1, t2) not in seen:
                seen.add((t1, t2))
                stack.append((t1, t2))
    return True


def language_included(g1: LabeledGraph, g2: LabeledGraph) -> bool:
    """Every finite word of g1's label system belongs to g2's."""
    _check_alphabets(g1, g2)
    return dfa_included(canonical_dfa(g1), canonical_dfa(g2))


def label_language(g: LabeledGraph, n: int) -> set:
    if n < 0:
        raise SpecError(f"negative length {n}")
    return {Word(g.alphabet, w) for w, _ in canonical_dfa(g).words(n)}


def language_size(g: LabeledGraph, n: int) -> int:
    """Number of words of length n, counted without materializing them."""
    d = canonical_dfa(g)
    if not d.n:
        return 0
    counts = [0] * d.n
    counts[0] = 1
    for _ in range(n):
        nxt = [0] * d.n
        for s, c in enumerate(counts):
            if c:
                for t in d.trans[s]:
                    if t >= 0:
                        nxt[t] += c
        counts = nxt
    return sum(counts)


COUNT_CAP = 2 ** 32


class FiniteCheck(NamedTuple):
    finite: bool
    count: Optional[int]

    def __bool__(self):
        return self.finite


def is_finite_label_system(g: LabeledGraph) -> FiniteCheck:
    """Whether the label system has finitely many points, with their number.

    Decided on the canonical DFA: finite iff every state lying on a cycle has
    out-degree one. Then every point is a path from the initial state into a
    cycle, and distinct paths carry distinct labels. The count is capped.
    """
    d = canonical_dfa(g)
    arcs = d.arcs()
    dec = _scc(d.n, arcs)
    on_cycle = [dec.cyclic[dec.component_of[s]] for s in range(d.n)]
    for s in range(d.n):
        if on_cycle[s] and sum(1 for t in d.trans[s] if t >= 0) != 1:
            return FiniteCheck(False, None)
    # transient states form a DAG; components come out of Tarjan in reverse topological order
    ways = [0] * d.n
    for comp in _tarjan_order(d):
        for s in comp:
            if on_cycle[s]:
                ways[s] = 1
            else:
                ways[s] = min(COUNT_CAP, sum(ways[t] for t in d.trans[s] if t >= 0))
    return FiniteCheck(True, ways[0] if d.n else 0)


def _tarjan_order(d: Dfa):
    succ = [[t for t in row if t >= 0] for row in d.trans]
    return _tarjan(d.n, succ)


def intersect(g1: LabeledGraph, g2: LabeledGraph) -> LabeledGraph:
    """Product graph, trimmed. Presents the intersection of the label systems."""
    _check_alphabets(g1, g2)
    names = []
    index = {}
    arcs = []
    by_label = [[] for _ in range(len(g2.alphabet))]
    for s, t, a in g2.arcs:
        by_label[a].append((s, t))

    def vid(u, v):
        k = (u, v)
        i = index.get(k)
        if i is None:
            i = index[k] = len(names)
            names.append((g1.names[u], g2.names[v]))
        return i

    for s1, t1, a in g1.arcs:
        for s2, t2 in by_label[a]:
            arcs.append((vid(s1, s2), vid(t1, t2), a))
    g = LabeledGraph.from_indexed(g1.alphabet, names, arcs, g1.twosided and g2.twosided)
    return trim(g)


def disjoint_union(graphs: Sequence[LabeledGraph]) -> LabeledGraph:
    if not graphs:
        raise SpecError("empty union")
    alphabet = graphs[0].alphabet
    names, arcs = [], []
    for k, g in enumerate(graphs):
        _check_alphabets(graphs[0], g)
        base = len(names)
        names.extend((k, v) for v in g.names)
        arcs.extend((s + base, t + base, a) for s, t, a in g.arcs)
    return LabeledGraph.from_indexed(alphabet, names, arcs, all(g.twosided for g in graphs))


def full_shift(alphabet: Alphabet, twosided=False) -> LabeledGraph:
    return LabeledGraph(alphabet, ["*"], [("*", "*", a) for a in alphabet.symbols], twosided)


def empty_graph(alphabet: Alphabet) -> LabeledGraph:
    return LabeledGraph(alphabet, [], [])
