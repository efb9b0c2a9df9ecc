"""Builtin rules and graphs used by fixtures, tests and the CLI."""

from .blockmap import BlockRule, compose, constant_rule, identity_rule, shift_rule
from .analysis import FactorMap
from .sofic import LabeledGraph, full_shift
from .symbols import Alphabet

BINARY = Alphabet("01")
TERNARY = Alphabet("012")


def min_rule():
    return BlockRule.from_function(BINARY, 0, 2, lambda w: w[0] & w[1], name="min")


def shift_min_rule():
    r = compose(shift_rule(BINARY), min_rule())
    r.name = "shift-min"
    return r


def xor_rule():
    return BlockRule.from_function(BINARY, 0, 2, lambda w: w[0] ^ w[1], name="xor")


def _p012(w):
    a, b, c, d = w
    if a != b and b != c and c == d:
        return (a + 1) % 3
    return (b + 1) % 3


def p012_rule():
    return BlockRule.from_function(TERNARY, 1, 4, _p012, name="p012")


def goldenmean():
    return LabeledGraph(BINARY, ["p", "q"], [("p", "p", "0"), ("p", "q", "1"), ("q", "p", "0")])


def zerostar_oneinf():
    return LabeledGraph(BINARY, ["v0", "v1"], [("v0", "v0", "0"), ("v0", "v1", "1"), ("v1", "v1", "1")])


def omega_min():
    """Configurations whose 1s are connected."""
    return LabeledGraph(BINARY, ["L", "B", "R"], [("L", "L", "0"), ("L", "B", "1"), ("B", "B", "1"),
                                                   ("B", "R", "0"), ("R", "R", "0")])


def two_loops():
    return LabeledGraph(BINARY, ["z", "o"], [("z", "z", "0"), ("o", "o", "1")])


def three_cycle():
    return LabeledGraph(TERNARY, ["a", "b", "c"], [("a", "b", "0"), ("b", "c", "1"), ("c", "a", "2")])


def tail_zero():
    """Closure of 1·0^∞: a transient 1 feeding a 0 loop."""
    return LabeledGraph(BINARY, ["t", "z"], [("t", "z", "1"), ("z", "z", "0")])


FREE, YES, NO = "free", "yes", "no"


def sigma_k():
    """Σ_K over {0,1,2}: no tripled letter, doubled letters only at one parity.

    A state is (last letter, flag). ``free``: no doubling seen yet. ``yes``:
    a doubling may start at the current cell. ``no``: it may not. Repeating
    the last letter needs ``free`` or ``yes`` and leads to ``no``; a new
    letter swaps ``yes`` and ``no`` and keeps ``free``.
    """
    verts = [(a, f) for a in range(3) for f in (FREE, YES, NO)]
    arcs = []
    swap = {FREE: FREE, YES: NO, NO: YES}
    for a, f in verts:
        for b in range(3):
            if b == a:
                if f in (FREE, YES):
                    arcs.append(((a, f), (b, NO), b))
            else:
                arcs.append(((a, f), (b, swap[f]), b))
    names = {v: f"{v[0]}{v[1][0]}" for v in verts}
    return LabeledGraph(TERNARY, [names[v] for v in verts],
                        [(names[s], names[t], str(c)) for s, t, c in arcs], twosided=True)


def p012_phi():
    return FactorMap.from_function(TERNARY, BINARY, 2, 0, 2, lambda w: 1 if w[0] != w[1] else 0)


RULES = {
    "min": min_rule,
    "shift-min": shift_min_rule,
    "p012": p012_rule,
    "sigma": lambda: shift_rule(BINARY),
    "identity": lambda: identity_rule(BINARY),
    "const0": lambda: constant_rule(BINARY, "0"),
    "xor": xor_rule,
}

GRAPHS = {
    "fullshift": lambda: full_shift(BINARY),
    "fullshift3": lambda: full_shift(TERNARY),
    "goldenmean": goldenmean,
    "zerostar-oneinf": zerostar_oneinf,
    "omega-min": omega_min,
    "two-loops": two_loops,
    "three-cycle": three_cycle,
    "tail-zero": tail_zero,
    "sigma-k": sigma_k,
}


def rule(name):
    try:
        return RULES[name]()
    except KeyError:
        raise KeyError(f"unknown builtin rule {name!r}; known: {', '.join(sorted(RULES))}") from None


def graph(name):
    try:
        return GRAPHS[name]()
    except KeyError:
        raise KeyError(f"unknown builtin graph {name!r}; known: {', '.join(sorted(GRAPHS))}") from None
