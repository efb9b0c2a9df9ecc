"""Subshifts of finite type from forbidden words."""

from dataclasses import dataclass
from itertools import product
from typing import FrozenSet, Iterable

from . import sofic
from .errors import SpecError
from .sofic import LabeledGraph
from .symbols import Alphabet, Word


@dataclass(frozen=True)
class ForbiddenSpec:
    alphabet: Alphabet
    forbidden: FrozenSet[Word]
    order: int

    def __init__(self, alphabet: Alphabet, forbidden: Iterable, order: int = None):
        words = frozenset(alphabet.word(w) for w in forbidden)
        for w in words:
            if len(w) == 0:
                raise SpecError("forbidden words must be nonempty")
        k = max((len(w) for w in words), default=1)
        if order is None:
            order = k
        if order < k:
            raise SpecError(f"declared order {order} below longest forbidden word ({k})")
        if order < 1:
            raise SpecError("order must be at least 1")
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "forbidden", words)
        object.__setattr__(self, "order", order)


def _allowed(letters, banned, lengths):
    n = len(letters)
    for L in lengths:
        for i in range(n - L + 1):
            if letters[i:i + L] in banned:
                return False
    return True


def word_allowed(spec: ForbiddenSpec, w: Word) -> bool:
    banned = {f.letters for f in spec.forbidden}
    lengths = sorted({len(f) for f in spec.forbidden})
    return _allowed(tuple(w.letters), banned, lengths)


def sft_to_graph(spec: ForbiddenSpec, twosided: bool = False) -> LabeledGraph:
    """de Bruijn presentation on the allowed words of length k-1.

    The arc u -> v exists when u·v[-1] is allowed, and it carries the first
    letter of u. Reading labels from the front (rather than the appended
    letter) keeps the onesided label system equal to the SFT itself; the
    label-last convention only presents its image under the (k-1)-th shift,
    which is a proper subset when some letters cannot be preceded.
    """
    k = spec.order
    q = len(spec.alphabet)
    banned = {f.letters for f in spec.forbidden}
    lengths = sorted({len(f) for f in spec.forbidden})
    if k == 1:
        loops = [("", "", a) for a in range(q) if (a,) not in banned]
        return sofic.trim(LabeledGraph(spec.alphabet, [""], loops, twosided))
    verts = [u for u in product(range(q), repeat=k - 1) if _allowed(u, banned, lengths)]
    index = {u: i for i, u in enumerate(verts)}
    arcs = []
    for u in verts:
        for a in range(q):
            ua = u + (a,)
            if not _allowed(ua, banned, lengths):
                continue
            arcs.append((index[u], index[ua[1:]], u[0]))
    names = ["".join(spec.alphabet.name(a) for a in u) if spec.alphabet.compact
             else " ".join(spec.alphabet.name(a) for a in u) for u in verts]
    g = LabeledGraph.from_indexed(spec.alphabet, names, arcs, twosided)
    return sofic.trim(g)


def forbidden_complement(g: LabeledGraph, k: int) -> ForbiddenSpec:
    """Forbid every k-word outside lang_k(g)."""
    present = {w.letters for w in sofic.label_language(g, k)}
    absent = [Word(g.alphabet, w) for w in product(range(len(g.alphabet)), repeat=k) if w not in present]
    return ForbiddenSpec(g.alphabet, absent, k)


def is_sft_of_order(g: LabeledGraph, k: int) -> bool:
    if k < 1:
        raise SpecError("order must be at least 1")
    h = sft_to_graph(forbidden_complement(g, k), twosided=g.twosided)
    return sofic.language_equivalent(g, h)
