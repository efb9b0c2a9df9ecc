import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from omegalib import blockmap as bm
from omegalib import catalog
from omegalib.errors import SpecError
from omegalib.longterm import (asymptotic_graph, asymptotic_samples, ca_limit_language, classify_sofic,
                               limit_graph, nilpotency_decision_at, surviving_symbols,
                               weak_preperiodicity_sofic)
from omegalib.orbits import EpConfiguration as E
from omegalib.sofic import (LabeledGraph, full_shift, label_language, language_equivalent,
                            language_included, language_size)
from omegalib.symbols import Alphabet

from conftest import lang, random_graph, small_cap, strs

B = catalog.BINARY
MIN = catalog.min_rule()
SIGMA = bm.shift_rule(B)
CONST0 = bm.constant_rule(B, "0")
ABC = Alphabet(["a", "b", "c"])


def test_limit_graph_examples():
    g = LabeledGraph(Alphabet(["a", "b"]), ["v0", "v1"], [("v0", "v1", "a"), ("v1", "v1", "b")])
    assert lang(limit_graph(g), 3) == {"bbb"}
    gm = catalog.goldenmean()
    assert language_equivalent(limit_graph(gm), gm)
    path = LabeledGraph(ABC, 3, [(0, 1, "a"), (1, 2, "b")])
    assert limit_graph(path).n == 0


def test_asymptotic_graph_examples():
    two = catalog.graph("two-loops")
    assert language_equivalent(asymptotic_graph(catalog.zerostar_oneinf()), two)
    cyc = LabeledGraph(ABC, 3, [(0, 1, "a"), (1, 2, "b"), (2, 0, "c")])
    assert language_equivalent(asymptotic_graph(cyc), cyc)
    assert language_equivalent(asymptotic_graph(catalog.omega_min()), two)


def test_classify_examples():
    c = classify_sofic(full_shift(B))
    assert c.universal and not c.countable
    c = classify_sofic(catalog.zerostar_oneinf())
    assert not c.universal and c.countable and c.asymptotically_periodic == 1
    assert c.asymptotically_nilpotent_to is None
    c = classify_sofic(catalog.tail_zero())
    assert c.asymptotically_nilpotent_to == "0"
    c = classify_sofic(catalog.three_cycle())
    assert c.asymptotically_periodic == 3 and c.asymptotically_nilpotent_to is None


def test_classify_period_is_lcm_of_label_periods():
    # a 2-cycle labeled 00 has primitive period 1
    g = LabeledGraph(B, 5, [(0, 1, "0"), (1, 0, "0"), (2, 3, "1"), (3, 4, "0"), (4, 2, "0"), (0, 2, "1")])
    c = classify_sofic(g)
    assert c.asymptotically_periodic == 3


def test_classify_json_shape():
    j = classify_sofic(catalog.three_cycle()).to_json()
    assert list(j) == ["universal", "countable", "asymptotically_periodic",
                       "asymptotically_nilpotent_to", "evidence"]
    assert j["evidence"]["cycles"][0]["length"] == 3


def test_weak_preperiodicity_examples():
    assert weak_preperiodicity_sofic(catalog.zerostar_oneinf())[0] == 1
    assert weak_preperiodicity_sofic(full_shift(B)) is None
    assert weak_preperiodicity_sofic(catalog.three_cycle())[0] == 3


def test_limit_language_min():
    r = ca_limit_language(MIN, full_shift(B), 3, 4)
    assert strs(r.language) == {"000", "001", "010", "011", "100", "110", "111"}
    assert r.sizes == [8, 7, 7, 7, 7]
    assert r.status == "UpperBound"


def test_limit_language_exact_cases():
    r = ca_limit_language(CONST0, full_shift(B), 2, 2)
    assert strs(r.language) == {"00"} and (r.status, r.stabilized_at) == ("Exact", 1)
    r = ca_limit_language(SIGMA, full_shift(B), 2, 3)
    assert len(r.language) == 4 and (r.status, r.stabilized_at) == ("Exact", 0)


def test_limit_language_json_keys():
    j = ca_limit_language(CONST0, full_shift(B), 2, 2).to_json()
    assert list(j) == ["order", "status", "stabilized_at", "language", "sizes"]


def test_limit_language_rejects_non_invariant_domain():
    flip = bm.BlockRule.from_function(B, 0, 1, lambda w: 1 - w[0])
    with pytest.raises(SpecError):
        ca_limit_language(flip, LabeledGraph(B, ["z"], [("z", "z", "0")]), 1, 2)


def test_nilpotency_examples():
    assert nilpotency_decision_at(CONST0, full_shift(B), 1)
    for t in range(1, 9):
        assert not nilpotency_decision_at(MIN, full_shift(B), t)
        assert "1" in surviving_symbols(MIN, full_shift(B), t)
    r = bm.compose(CONST0, catalog.xor_rule())
    assert nilpotency_decision_at(r, full_shift(B), 2)


def test_asymptotic_samples_min():
    # zeros spread leftwards, so a 0 left of cell 0 leaves it at 1 for ever
    configs = [E.block(B, "0", "1" * L, 0) for L in range(1, 6)] + [E.block(B, "1", "0", -3)]
    assert strs(asymptotic_samples(MIN, configs, 64, 1)) == {"0", "1"}


def test_asymptotic_samples_identity():
    x = E.block(B, "0", "0110", -1)
    got = strs(asymptotic_samples(bm.identity_rule(B), [x], 6, 3))
    assert got == {str(x.window(0, 3))}


def test_asymptotic_samples_shift_min():
    sm = catalog.shift_min_rule()
    got = strs(asymptotic_samples(sm, [E(B, "1", "", "0", 0)], 32, 2))
    assert got <= {"00", "10", "11"}


# ---------------------------------------------------------------- properties

graphs = st.builds(lambda seed: random_graph(random.Random(seed), B, max_v=6), st.integers(0, 10 ** 9))
rules = st.builds(lambda m, d, seed: bm.BlockRule(B, m, d, np.random.default_rng(seed).integers(0, 2, 2 ** d)),
                  st.integers(-1, 2), st.integers(1, 2), st.integers(0, 2 ** 32 - 1))


@given(graphs)
def test_limit_graph_idempotent_and_contains_asymptotic(g):
    h = limit_graph(g)
    assert language_equivalent(limit_graph(h), h)
    assert language_included(asymptotic_graph(g), h)


@given(graphs)
def test_classification_matches_growth(g):
    c = classify_sofic(g)
    h = limit_graph(g)
    # countable parts grow like a polynomial of degree < #vertices, so at most
    # ~6*11 bits at N=2000; a universal part here has entropy >= ~0.16 bits/letter
    N = 2000
    bits = language_size(h, N).bit_length() / N
    if c.universal:
        assert bits > 0.1
    else:
        assert bits < 0.1


@given(rules, st.integers(1, 3))
def test_limit_language_sizes_non_increasing(f, k):
    with small_cap():
        r = ca_limit_language(f, full_shift(B), k, 4)
        assert r.sizes == sorted(r.sizes, reverse=True)
        if r.status == "Exact":
            h = bm.iterate_image(f, full_shift(B), r.stabilized_at)
            for extra in range(1, 4):
                more = bm.iterate_image(f, h, extra)
                assert label_language(more, k) == label_language(h, k)


@given(rules, st.integers(1, 3))
def test_nilpotency_persists(f, t):
    with small_cap():
        if nilpotency_decision_at(f, full_shift(B), t):
            assert nilpotency_decision_at(f, full_shift(B), t + 1)
            assert nilpotency_decision_at(f, full_shift(B), t + 3)
