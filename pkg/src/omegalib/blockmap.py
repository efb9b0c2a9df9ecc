"""Cellular automata and partial CA as sliding-block rules.

A rule (m, d, f) acts by F(x)_i = f(x[i-m, i-m+d)). The table is a dense
array indexed by the lexicographic code of the window. Partial rules keep
-1 in undefined entries together with a domain graph; looking up an
undefined entry raises ``DomainError``.
"""

from typing import Callable, NamedTuple, Optional

import numpy as np

from . import _kernels, sofic
from .errors import DomainError, ResourceError, SpecError, UnderflowError, arc_cap
from .sofic import LabeledGraph
from .symbols import Alphabet, Word


class BlockRule:
    __slots__ = ("alphabet", "anchor", "diameter", "table", "domain", "name")

    def __init__(self, alphabet: Alphabet, anchor: int, diameter: int, table,
                 domain: Optional[LabeledGraph] = None, name: str = None, strict: bool = True):
        if diameter < 1:
            raise SpecError(f"diameter must be positive, got {diameter}")
        q = len(alphabet)
        table = np.array(table, dtype=np.int64).reshape(-1)
        if table.shape[0] != q ** diameter:
            raise SpecError(f"table has {table.shape[0]} entries, expected {q}^{diameter} = {q ** diameter}")
        if ((table < -1) | (table >= q)).any():
            raise SpecError("table values must be symbol indices")
        if strict and (table < 0).any() and domain is None:
            raise SpecError("a partial table needs a domain graph")
        if domain is not None and domain.alphabet != alphabet:
            raise SpecError("domain graph is over a different alphabet")
        table.setflags(write=False)
        self.alphabet = alphabet
        self.anchor = int(anchor)
        self.diameter = int(diameter)
        self.table = table
        self.domain = domain
        self.name = name

    @classmethod
    def from_function(cls, alphabet, anchor, diameter, fn: Callable, domain=None, name=None):
        """``fn`` maps a tuple of d symbol indices to a symbol index or name."""
        q = len(alphabet)
        digits = window_digits(q, diameter)
        table = [alphabet.index(fn(tuple(int(x) for x in row))) for row in digits]
        return cls(alphabet, anchor, diameter, table, domain, name)

    @classmethod
    def from_entries(cls, alphabet, anchor, diameter, entries: dict, domain=None, name=None):
        """Build from ``{window word: symbol}``; windows not listed stay undefined."""
        q = len(alphabet)
        table = np.full(q ** diameter, -1, dtype=np.int64)
        for w, a in entries.items():
            w = alphabet.word(w)
            if len(w) != diameter:
                raise SpecError(f"rule entry {w} has length {len(w)}, expected {diameter}")
            table[code_of(w.letters, q)] = alphabet.index(a)
        return cls(alphabet, anchor, diameter, table, domain, name)

    @property
    def q(self):
        return len(self.alphabet)

    @property
    def partial(self):
        return bool((self.table < 0).any())

    def local(self, window) -> int:
        v = int(self.table[code_of(window, self.q)])
        if v < 0:
            raise DomainError(f"rule undefined on window {self._fmt(window)}", tuple(window))
        return v

    def _fmt(self, window):
        return str(Word(self.alphabet, tuple(window)))

    def entries(self):
        """(window letters, value) pairs for every defined window, lexicographic."""
        for row, v in zip(window_digits(self.q, self.diameter), self.table):
            if v >= 0:
                yield tuple(int(x) for x in row), int(v)

    def with_domain(self, domain):
        return BlockRule(self.alphabet, self.anchor, self.diameter, self.table, domain, self.name)

    def with_anchor(self, anchor):
        return BlockRule(self.alphabet, anchor, self.diameter, self.table, self.domain, self.name, strict=False)

    def __eq__(self, other):
        return (isinstance(other, BlockRule) and self.alphabet == other.alphabet
                and self.anchor == other.anchor and self.diameter == other.diameter
                and np.array_equal(self.table, other.table) and self.domain == other.domain)

    def __hash__(self):
        return hash((self.alphabet, self.anchor, self.diameter, self.table.tobytes()))

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"BlockRule({label.strip() or 'rule'}, m={self.anchor}, d={self.diameter}, |A|={self.q})"


def code_of(letters, q) -> int:
    c = 0
    for a in letters:
        c = c * q + a
    return c


def window_digits(q, d):
    """Array of shape (q**d, d): every window, lexicographic."""
    idx = np.arange(q ** d, dtype=np.int64)
    out = np.empty((q ** d, d), dtype=np.int64)
    for j in range(d - 1, -1, -1):
        out[:, j] = idx % q
        idx //= q
    return out


def identity_rule(alphabet: Alphabet, domain=None) -> BlockRule:
    return BlockRule(alphabet, 0, 1, np.arange(len(alphabet)), domain, "identity")


def shift_rule(alphabet: Alphabet, k: int = 1, domain=None) -> BlockRule:
    """sigma^k, that is F(x)_i = x_{i+k}."""
    return BlockRule(alphabet, -k, 1, np.arange(len(alphabet)), domain, "sigma" if k == 1 else f"sigma^{k}")


def constant_rule(alphabet: Alphabet, symbol=0, diameter: int = 1) -> BlockRule:
    a = alphabet.index(symbol)
    return BlockRule(alphabet, 0, diameter, np.full(len(alphabet) ** diameter, a), None, f"const{alphabet.name(a)}")


def _apply(rule: BlockRule, letters) -> np.ndarray:
    arr = np.asarray(letters, dtype=np.int64)
    if rule.partial:
        codes = _kernels.window_codes(arr, rule.diameter, rule.q)
        vals = rule.table[codes]
        bad = np.nonzero(vals < 0)[0]
        if bad.size:
            i = int(bad[0])
            w = tuple(int(x) for x in arr[i:i + rule.diameter])
            raise DomainError(f"rule undefined on window {rule._fmt(w)}", w)
        return vals.astype(np.int64)
    return _kernels.apply_rule(rule.table, arr, rule.diameter, rule.q)


def apply_letters(rule: BlockRule, letters) -> np.ndarray:
    if len(letters) < rule.diameter:
        raise UnderflowError(f"word of length {len(letters)} shorter than diameter {rule.diameter}")
    return _apply(rule, letters)


def apply_to_word(rule: BlockRule, u: Word) -> Word:
    """Sliding application: |u|-d+1 output letters."""
    if u.alphabet != rule.alphabet:
        raise SpecError("word and rule use different alphabets")
    return Word(rule.alphabet, tuple(int(x) for x in apply_letters(rule, u.letters)))


def compose(outer: BlockRule, inner: BlockRule) -> BlockRule:
    """outer ∘ inner: diameter d1+d2-1, anchor m1+m2."""
    if outer.alphabet != inner.alphabet:
        raise SpecError("cannot compose rules over different alphabets")
    q = outer.q
    d1, d2 = outer.diameter, inner.diameter
    if outer.partial or inner.partial:
        digits = window_digits(q, d1 + d2 - 1)
        mid = np.stack([inner.table[codes_of_columns(digits[:, s:s + d2], q)] for s in range(d1)], axis=1)
        undefined = (mid < 0).any(axis=1)
        mid[mid < 0] = 0
        table = outer.table[codes_of_columns(mid, q)].copy()
        table[undefined] = -1
    else:
        table = _kernels.compose_table(outer.table, d1, inner.table, d2, q)
    return BlockRule(outer.alphabet, outer.anchor + inner.anchor, d1 + d2 - 1, table, inner.domain, strict=False)


def codes_of_columns(digits, q):
    code = np.zeros(digits.shape[0], dtype=np.int64)
    for j in range(digits.shape[1]):
        code = code * q + digits[:, j]
    return code


def power(rule: BlockRule, n: int) -> BlockRule:
    if n < 0:
        raise SpecError("negative power")
    if n == 0:
        return identity_rule(rule.alphabet, rule.domain)
    result = None
    base = rule
    while n:
        if n & 1:
            result = base if result is None else compose(result, base)
        n >>= 1
        if n:
            base = compose(base, base)
    return result


def is_constant(rule: BlockRule) -> bool:
    vals = rule.table[rule.table >= 0]
    return vals.size > 0 and bool((vals == vals[0]).all())


def reduce_rule(rule: BlockRule) -> BlockRule:
    """Strip boundary columns the table does not depend on.

    A constant rule reduces to diameter 1, anchor 0.
    """
    if is_constant(rule):
        v = int(rule.table[rule.table >= 0][0])
        return BlockRule(rule.alphabet, 0, 1, np.full(rule.q, v), rule.domain, rule.name)
    q = rule.q
    table = rule.table.reshape((q,) * rule.diameter) if rule.diameter > 1 else rule.table
    m = rule.anchor
    while table.ndim > 1:
        first = table[0]
        if all(np.array_equal(first, table[a]) for a in range(1, q)):
            table = first
            m -= 1
            continue
        last = table[..., 0]
        if all(np.array_equal(last, table[..., a]) for a in range(1, q)):
            table = last
            continue
        break
    # independence also covers undefined entries, which survive as -1 only when consistent
    return BlockRule(rule.alphabet, m, table.ndim, table.reshape(-1), rule.domain, rule.name, strict=False)


def is_oneway(rule: BlockRule) -> bool:
    r = reduce_rule(rule)
    if is_constant(r):
        return True
    return r.anchor <= 0 or r.anchor >= r.diameter - 1


def is_oblic(rule: BlockRule) -> bool:
    r = reduce_rule(rule)
    if is_constant(r):
        return True
    return r.anchor < 0 or r.anchor >= r.diameter


def quiescent_states(rule: BlockRule) -> frozenset:
    q, d = rule.q, rule.diameter
    out = set()
    for a in range(q):
        if int(rule.table[code_of((a,) * d, q)]) == a:
            out.add(rule.alphabet.name(a))
    return frozenset(out)


def radius(rule: BlockRule) -> int:
    return max(1, rule.anchor, rule.diameter - 1 - rule.anchor)


def symmetrize(rule: BlockRule, r: int = None) -> BlockRule:
    """Same global map, re-anchored as anchor r, diameter 2r+1."""
    rmin = radius(rule)
    r = rmin if r is None else r
    if r < rmin:
        raise SpecError(f"radius {r} below the rule's radius {rmin}")
    q = rule.q
    D = 2 * r + 1
    if rule.anchor == r and rule.diameter == D:
        return rule
    digits = window_digits(q, D)
    start = r - rule.anchor
    table = rule.table[codes_of_columns(digits[:, start:start + rule.diameter], q)]
    return BlockRule(rule.alphabet, r, D, table, rule.domain, rule.name, strict=False)


def product_alphabet(a: Alphabet, b: Alphabet) -> Alphabet:
    return Alphabet([f"{x}|{y}" for x in a.symbols for y in b.symbols])


def _domain_dfa(rule):
    return None if rule.domain is None else sofic.canonical_dfa(rule.domain)


def image_sofic(rule: BlockRule, g: LabeledGraph) -> LabeledGraph:
    """Presentation of F(Σ) where Σ is g's label system.

    Built on g's canonical DFA: a vertex is a state s with a word u of length
    d-1 readable from s; arcs append a letter and carry f of the full window.
    """
    if g.alphabet != rule.alphabet:
        raise SpecError("graph and rule use different alphabets")
    dfa = sofic.canonical_dfa(g)
    return image_of_dfa(rule, dfa, g.twosided)


def image_of_dfa(rule: BlockRule, dfa, twosided=False) -> LabeledGraph:
    return image_core(rule.table, rule.q, rule.diameter, dfa, rule.alphabet, rule.alphabet,
                      twosided, _domain_dfa(rule))


def image_core(table, q, d, dfa, in_alphabet, out_alphabet, twosided=False, dom=None) -> LabeledGraph:
    """Image of the DFA's language under the sliding map with this table.

    ``table`` is indexed by window codes over q input letters and holds
    output symbol indices (-1 for undefined windows).
    """
    high = q ** (d - 1)
    names = []
    index = {}
    arcs = []
    cap = arc_cap()
    start = []
    for s in range(dfa.n):
        for w, t in dfa.words(d - 1, s):
            key = (s, code_of(w, q))
            index[key] = len(names)
            names.append(key)
            start.append(t)
    for vid, (s, ucode) in enumerate(names):
        t = start[vid]
        s_next = dfa.trans[s][ucode // (high // q)] if d > 1 else None
        for a in range(q):
            if dfa.trans[t][a] < 0:
                continue
            wcode = ucode * q + a
            val = int(table[wcode])
            if val < 0 or (dom is not None and not dom.accepts(_digits(wcode, q, d))):
                w = _digits(wcode, q, d)
                raise DomainError(f"rule consulted outside its domain on window "
                                  f"{Word(in_alphabet, w)}", w)
            if d > 1:
                target = index[(s_next, wcode % high)]
            else:
                target = index[(dfa.trans[s][a], 0)]
            arcs.append((vid, target, val))
        if len(arcs) > cap:
            raise ResourceError(f"image presentation exceeded memory cap ({len(arcs)} arcs)")
    return LabeledGraph.from_indexed(out_alphabet, range(len(names)), arcs, twosided)


def _digits(code, q, d):
    out = [0] * d
    for j in range(d - 1, -1, -1):
        out[j] = code % q
        code //= q
    return tuple(out)


def iterate_image(rule: BlockRule, g: LabeledGraph, t: int) -> LabeledGraph:
    """F^t(Σ), minimized after every step."""
    h = g
    for _ in range(t):
        h = sofic.determinize(image_sofic(rule, h))
    return h


def check_invariance(rule: BlockRule, g: LabeledGraph) -> bool:
    """F(Σ) ⊆ Σ."""
    return sofic.language_included(image_sofic(rule, g), g)


def is_surjective(rule: BlockRule, g: LabeledGraph) -> bool:
    """F(Σ) = Σ, for a rule-invariant Σ."""
    img = image_sofic(rule, g)
    if not sofic.language_included(img, g):
        raise SpecError("is_surjective needs a rule-invariant domain; F(Σ) is not contained in Σ")
    return sofic.language_equivalent(img, g)


class KRange(NamedTuple):
    """Integers k with k >= upper or k <= lower; ``every`` means all k."""
    upper: int
    lower: int
    every: bool = False

    def __contains__(self, k):
        return self.every or k >= self.upper or k <= self.lower
