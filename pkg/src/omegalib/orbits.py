"""Exact dynamics on eventually periodic configurations.

An ``EpConfiguration`` is ^∞u · v · w^∞ with the first letter of v at cell
``offset``. The left tail is anchored at the offset: cell offset-1 holds the
last letter of u. Construction always canonicalizes, so equality of fields
is equality of bi-infinite sequences.
"""

from dataclasses import dataclass
from typing import List, NamedTuple, Optional, Tuple

import numpy as np

from . import blockmap as bm
from . import sofic
from .errors import DomainError, InconsistencyError, ResourceError, SpecError, mem_cap_bytes
from .symbols import Alphabet, Word


def primitive_root(word: Tuple[int, ...]) -> Tuple[int, ...]:
    n = len(word)
    for t in range(1, n + 1):
        if n % t == 0 and word[:t] * (n // t) == word:
            return word[:t]
    return word


def _min_rotation_start(block: Tuple[int, ...]) -> int:
    n = len(block)
    doubled = block + block
    return min(range(n), key=lambda o: doubled[o:o + n])


@dataclass(frozen=True)
class EpConfiguration:
    alphabet: Alphabet
    left: Tuple[int, ...]
    center: Tuple[int, ...]
    right: Tuple[int, ...]
    offset: int

    def __init__(self, alphabet: Alphabet, left, center, right, offset: int = 0):
        u, v, w = (_letters(alphabet, t) for t in (left, center, right))
        if not u or not w:
            raise SpecError("tail periods must be nonempty")
        u, v, w, offset = _canonicalize(u, v, w, int(offset))
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "left", u)
        object.__setattr__(self, "center", v)
        object.__setattr__(self, "right", w)
        object.__setattr__(self, "offset", offset)

    @classmethod
    def uniform(cls, alphabet, symbol):
        return cls(alphabet, [alphabet.index(symbol)], [], [alphabet.index(symbol)], 0)

    @classmethod
    def block(cls, alphabet, background, block, offset=0):
        """^∞b · block · b^∞ with the block starting at ``offset``."""
        b = [alphabet.index(background)]
        return cls(alphabet, b, alphabet.word(block).letters, b, offset)

    @classmethod
    def periodic(cls, alphabet, block, offset=0):
        """Spatially periodic configuration with block[0] at ``offset``."""
        letters = alphabet.word(block).letters
        return cls(alphabet, letters, [], letters, offset)

    @property
    def end(self):
        return self.offset + len(self.center)

    def cell(self, i: int) -> int:
        return _raw_cell(self.left, self.center, self.right, self.offset, i)

    def cells(self, i: int, k: int) -> np.ndarray:
        if k < i:
            raise SpecError(f"bad cell range [{i},{k})")
        pos = np.arange(i, k, dtype=np.int64)
        out = np.empty(k - i, dtype=np.int64)
        u = np.array(self.left, dtype=np.int64)
        v = np.array(self.center, dtype=np.int64)
        w = np.array(self.right, dtype=np.int64)
        lm = pos < self.offset
        rm = pos >= self.end
        cm = ~(lm | rm)
        out[lm] = u[(pos[lm] - self.offset) % len(u)]
        out[rm] = w[(pos[rm] - self.end) % len(w)]
        out[cm] = v[pos[cm] - self.offset]
        return out

    def window(self, i: int, k: int) -> Word:
        return Word(self.alphabet, tuple(int(a) for a in self.cells(i, k)))

    def shifted(self, k: int) -> "EpConfiguration":
        """σ^k(x), so the result at cell i is x_{i+k}."""
        return EpConfiguration(self.alphabet, self.left, self.center, self.right, self.offset - k)

    @property
    def is_uniform(self):
        return len(self.left) == 1 and self.left == self.right and not self.center

    @property
    def is_periodic(self):
        return not self.center and self.left == self.right

    def size(self):
        return len(self.left) + len(self.center) + len(self.right)

    def __str__(self):
        a = self.alphabet

        def fmt(t):
            return str(Word(a, t))

        return f"^∞({fmt(self.left)})·{fmt(self.center)}·({fmt(self.right)})^∞ @{self.offset}"


def _raw_cell(u, v, w, offset, i):
    if i < offset:
        return u[(i - offset) % len(u)]
    j = i - offset
    if j < len(v):
        return v[j]
    return w[(j - len(v)) % len(w)]


def _letters(alphabet, t):
    # step() hands over plain int tuples; skip re-parsing those
    if type(t) is tuple and all(type(a) is int for a in t):
        n = len(alphabet)
        if all(0 <= a < n for a in t):
            return t
    return tuple(alphabet.word(t).letters)


def _raw_cells(u, v, w, offset, lo, hi):
    pos = np.arange(lo, hi, dtype=np.int64)
    end = offset + len(v)
    out = np.empty(hi - lo, dtype=np.int64)
    lm, rm = pos < offset, pos >= end
    cm = ~(lm | rm)
    out[lm] = np.array(u, dtype=np.int64)[(pos[lm] - offset) % len(u)]
    out[rm] = np.array(w, dtype=np.int64)[(pos[rm] - end) % len(w)]
    if len(v):
        out[cm] = np.array(v, dtype=np.int64)[pos[cm] - offset]
    return out


def _canonicalize(u, v, w, offset):
    u = primitive_root(u)
    w = primitive_root(w)
    p, q = len(u), len(w)
    end = offset + len(v)
    limit = offset - (p + q)
    lo = limit - p
    hi = end + 2 * (p + q) + 1
    buf = _raw_cells(u, v, w, offset, lo, hi)

    def x(i):
        if lo <= i < hi:
            return int(buf[i - lo])
        return _raw_cell(u, v, w, offset, i)

    def run(a, b):
        return tuple(buf[a - lo:b - lo].tolist())

    # b_R: largest j in [limit, end) with x(j) != x(j+q); fully periodic if none
    js = np.arange(limit, end)
    bad = js[buf[js - lo] != buf[js + q - lo]]
    e = int(bad[-1]) + 1 if bad.size else limit
    if e <= limit:
        block = tuple(x(i) for i in range(q))
        o = _min_rotation_start(block)
        r = block[o:] + block[:o]
        return r, (), r, o
    # b_L: first s >= offset with x(s) != x(s-p)
    js = np.arange(offset, hi)
    bad = js[buf[js - lo] != buf[js - p - lo]]
    if bad.size:
        s = int(bad[0])
    else:
        s = hi
        while x(s) == x(s - p):
            s += 1
    if s <= e:
        return run(s - p, s), run(s, e), tuple(x(i) for i in range(e, e + q)), s
    # tails overlap: the left period already holds up to cell s > e
    return tuple(x(i) for i in range(e - p, e)), (), tuple(x(i) for i in range(e, e + q)), e


def _check_domain(rule, letters):
    if rule.domain is None:
        return
    dfa = sofic.canonical_dfa(rule.domain)
    d = rule.diameter
    for i in range(len(letters) - d + 1):
        win = tuple(int(a) for a in letters[i:i + d])
        if not dfa.accepts(win):
            raise DomainError(f"configuration leaves the rule's domain at window "
                              f"{Word(rule.alphabet, win)}", win)


def step(rule: bm.BlockRule, x: EpConfiguration) -> EpConfiguration:
    if x.alphabet != rule.alphabet:
        raise SpecError("configuration and rule use different alphabets")
    m, d = rule.anchor, rule.diameter
    p, q = len(x.left), len(x.right)
    i_l = x.offset + m - d - p + 1
    i_r = x.end + m
    src = x.cells(i_l - m, i_r + q - m + d - 1)
    _check_domain(rule, src)
    img = bm.apply_letters(rule, src)
    n_c = i_r - i_l
    img = img.tolist()
    return EpConfiguration(rule.alphabet, tuple(img[:p]), tuple(img[p:n_c]),
                           tuple(img[n_c:n_c + q]), i_l + p)


def iterate(rule, x, t):
    for _ in range(t):
        x = step(rule, x)
    return x


@dataclass(frozen=True)
class OrbitVerdict:
    kind: str  # "Preperiodic", "NilpotentTo" or "Unresolved"
    p: Optional[int] = None
    q: Optional[int] = None
    z: Optional[EpConfiguration] = None
    horizon: Optional[int] = None

    def __str__(self):
        if self.kind == "Preperiodic":
            return f"Preperiodic(p={self.p}, q={self.q})"
        if self.kind == "NilpotentTo":
            return f"NilpotentTo({self.z}, q={self.q})"
        return f"Unresolved(horizon={self.horizon})"


class OrbitReport(NamedTuple):
    steps: List[EpConfiguration]
    verdict: OrbitVerdict


CELL_BYTES = 8


def orbit(rule: bm.BlockRule, x: EpConfiguration, max_steps: int) -> OrbitReport:
    """Iterate until a canonical form repeats, or for ``max_steps`` steps."""
    if max_steps < 1:
        raise SpecError("max_steps must be at least 1")
    cap = mem_cap_bytes()
    seen = {x: 0}
    steps = [x]
    used = x.size() * CELL_BYTES
    for t in range(1, max_steps + 1):
        x = step(rule, x)
        steps.append(x)
        used += x.size() * CELL_BYTES
        if x in seen:
            q = seen[x]
            p = t - q
            if p == 1 and x.is_uniform:
                return OrbitReport(steps, OrbitVerdict("NilpotentTo", p=1, q=q, z=x))
            return OrbitReport(steps, OrbitVerdict("Preperiodic", p=p, q=q))
        seen[x] = t
        if used > cap:
            raise ResourceError(f"orbit exceeded memory cap after {t} steps",
                                OrbitReport(steps, OrbitVerdict("Unresolved", horizon=t)))
    return OrbitReport(steps, OrbitVerdict("Unresolved", horizon=max_steps))


def spacetime(rule: bm.BlockRule, x: EpConfiguration, i: int, k: int, steps: int) -> np.ndarray:
    """Rows t = 0..steps-1 hold F^t(x)[i,k)."""
    if not i < k:
        raise SpecError("window must satisfy i < k")
    if steps < 1:
        raise SpecError("steps must be at least 1")
    rows = np.empty((steps, k - i), dtype=np.int64)
    for t in range(steps):
        rows[t] = x.cells(i, k)
        if t + 1 < steps:
            x = step(rule, x)
    return rows


def trace(rule: bm.BlockRule, x: EpConfiguration, i: int, k: int, steps: int) -> List[Word]:
    rows = spacetime(rule, x, i, k, steps)
    return [Word(rule.alphabet, tuple(int(a) for a in row)) for row in rows]


def concat_at(x: EpConfiguration, y: EpConfiguration, i: int) -> EpConfiguration:
    """x left of cell i, y from cell i on."""
    if x.alphabet != y.alphabet:
        raise SpecError("configurations use different alphabets")
    lo = min(i, x.offset)
    hi = max(i, y.end)
    left = tuple(int(a) for a in x.cells(lo - len(x.left), lo))
    mid = tuple(int(a) for a in x.cells(lo, i)) + tuple(int(a) for a in y.cells(i, hi))
    right = tuple(int(a) for a in y.cells(hi, hi + len(y.right)))
    return EpConfiguration(x.alphabet, left, mid, right, lo)


class ConcatCheck(NamedTuple):
    holds: bool
    vacuous: bool

    def __bool__(self):
        return self.holds


def shared_window(rule: bm.BlockRule, i: int) -> Tuple[int, int]:
    """Cells where x and y must agree for F(x ⋈_i y) = F(x) ⋈_i F(y)."""
    m, d = rule.anchor, rule.diameter
    return min(i, i - m), max(i, i - m + d - 1)


def check_concat_property(rule: bm.BlockRule, x: EpConfiguration, y: EpConfiguration,
                          i: int, q: int) -> ConcatCheck:
    """Check F^t(x ⋈_i y) = F^t(x) ⋈_i F^t(y) for t <= q.

    The hypothesis is that the traces of x and y agree on the shared window
    for every t < q. When it fails the result is flagged vacuous.
    """
    lo, hi = shared_window(rule, i)
    z = concat_at(x, y, i)
    xs, ys = x, y
    hypothesis = True
    holds = True
    for t in range(q + 1):
        if z != concat_at(xs, ys, i):
            holds = False
            break
        if t == q:
            break
        if hi > lo and not np.array_equal(xs.cells(lo, hi), ys.cells(lo, hi)):
            hypothesis = False
            break
        xs, ys, z = step(rule, xs), step(rule, ys), step(rule, z)
    if not hypothesis:
        return ConcatCheck(True, True)
    return ConcatCheck(holds, False)


def _zero_run(x, i, k, zero):
    return bool((x.cells(i, k) == zero).all())


def is_separated(rule: bm.BlockRule, x: EpConfiguration, k: int, J: int, s: int, zero=0) -> bool:
    """Whether x is (F,0)-separated with width k, time J and shift s."""
    if k < 1 or J < 1:
        raise SpecError("k and J must be at least 1")
    R = bm.symmetrize(rule)
    r = R.anchor
    z = rule.alphabet.index(zero)
    if abs(s) > r * J:
        raise SpecError(f"|s| must be at most rJ = {r * J}")
    if not _zero_run(x, -2 * r * J, 0, z) or not _zero_run(x, k, k + 2 * r * J, z):
        return False
    img = iterate(R, x, J)
    lhs = img.cells(-r * J, k + r * J)
    rhs = x.cells(s - r * J, s + k + r * J)
    return bool(np.array_equal(lhs, rhs)) and not bool((rhs == z).all())


def build_jointly_periodic(rule: bm.BlockRule, x: EpConfiguration, k: int, J: int, s: int,
                           zero=0) -> EpConfiguration:
    """Spatially periodic y with y[0,P) = x[0,P), P = k+2rJ, and F^J(y) = σ^s(y)."""
    if not is_separated(rule, x, k, J, s, zero):
        raise SpecError("configuration is not (F,0)-separated with these parameters")
    r = bm.radius(rule)
    P = k + 2 * r * J
    y = EpConfiguration.periodic(rule.alphabet, tuple(int(a) for a in x.cells(0, P)), 0)
    if iterate(rule, y, J) != y.shifted(s):
        raise InconsistencyError("jointly periodic construction failed F^J(y) = σ^s(y)")
    if iterate(rule, y, P * J) != y:
        raise InconsistencyError("jointly periodic construction failed F^{PJ}(y) = y")
    return y
