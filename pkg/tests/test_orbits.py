from pathlib import Path

import numpy as np
import pytest
from hypothesis import assume, given, strategies as st

from omegalib import blockmap as bm
from omegalib import catalog
from omegalib.cli import emit
from omegalib.errors import DomainError, InconsistencyError, SpecError
from omegalib.orbits import (EpConfiguration as E, build_jointly_periodic, check_concat_property,
                             concat_at, is_separated, iterate, orbit, primitive_root, spacetime,
                             step, trace)

GOLDEN = Path(__file__).parent / "golden"
B = catalog.BINARY
MIN = catalog.min_rule()
SIGMA = bm.shift_rule(B)
ID = bm.identity_rule(B)


def block(text, offset=0, bg="0"):
    return E.block(B, bg, text, offset)


def test_primitive_root():
    assert primitive_root((0, 1, 0, 1)) == (0, 1)
    assert primitive_root((0, 1, 1)) == (0, 1, 1)


def test_canonical_forms():
    x = E(B, "00", "0110", "0101", 0)
    assert (x.left, x.center, x.right, x.offset) == ((0,), (1, 1, 0), (0, 1), 1)
    assert E(B, "0", "", "0", 7) == E.uniform(B, "0")
    assert E(B, "01", "01", "01", 0) == E.periodic(B, "01")
    assert E(B, "1", "", "0", 3).center == ()


def test_tails_must_be_nonempty():
    with pytest.raises(SpecError):
        E(B, "", "1", "0")


def test_step_examples():
    assert step(MIN, block("111", -1)) == block("11", -1)
    assert step(SIGMA, block("1", 0)) == block("1", -1)
    ones = E.uniform(B, "1")
    assert step(MIN, ones) == ones


def test_step_checks_domain():
    g = catalog.goldenmean()
    r = MIN.with_domain(g)
    assert step(r, block("101")) == E.uniform(B, "0")
    with pytest.raises(DomainError):
        step(r, block("11"))


def test_orbit_examples():
    rep = orbit(MIN, block("11111"), 20)
    assert rep.verdict.kind == "NilpotentTo"
    assert rep.verdict.q == 5 and rep.verdict.z == E.uniform(B, "0")
    v = orbit(ID, block("101", 3), 5).verdict
    assert (v.kind, v.p, v.q) == ("Preperiodic", 1, 0)
    v = orbit(SIGMA, block("1"), 30).verdict
    assert v.kind == "Unresolved" and v.horizon == 30


def test_orbit_periodic_glider_on_ring():
    # on a spatially periodic point the shift is periodic
    v = orbit(SIGMA, E.periodic(B, "001"), 10).verdict
    assert (v.kind, v.p, v.q) == ("Preperiodic", 3, 0)


def test_trace_examples():
    assert [str(w) for w in trace(MIN, block("11", -1), 0, 1, 3)] == ["1", "0", "0"]
    x = block("0110", -2)
    assert [str(w) for w in trace(ID, x, -1, 2, 4)] == ["110"] * 4
    sm = catalog.shift_min_rule()
    assert [str(w) for w in trace(sm, E.uniform(B, "1"), 0, 1, 2)] == ["1", "1"]


def test_spacetime_golden_min():
    rows = spacetime(MIN, block("111", -1), -2, 3, 3)
    assert emit.spacetime_ascii(rows, B) == (GOLDEN / "min_spacetime.txt").read_text()
    assert emit.spacetime_pgm(rows, B) == (GOLDEN / "min_spacetime.pgm").read_text()


def test_spacetime_golden_sigma():
    rows = spacetime(SIGMA, block("1"), -2, 3, 3)
    assert emit.spacetime_ascii(rows, B) == (GOLDEN / "sigma_spacetime.txt").read_text()


def test_spacetime_constant_rule():
    rows = spacetime(bm.constant_rule(B, "0"), block("1101", -1), -3, 4, 2)
    assert not rows[1].any()


def test_concat_examples():
    z = concat_at(E.uniform(B, "0"), E.uniform(B, "1"), 0)
    assert z == E(B, "0", "", "1", 0)
    x = block("101", 2)
    assert concat_at(x, x, 3) == x
    assert concat_at(block("1"), E.uniform(B, "0"), 1) == block("1")


def test_concat_property_examples():
    zero = E.uniform(B, "0")
    assert check_concat_property(MIN, zero, zero, 0, 5)
    c = check_concat_property(MIN, block("111", 2), zero, 0, 4)
    assert c.holds and not c.vacuous


def test_concat_property_vacuous_when_traces_differ():
    c = check_concat_property(MIN, E.uniform(B, "1"), E.uniform(B, "0"), 0, 3)
    assert c.vacuous


def test_separated_examples():
    x = block("1")
    assert is_separated(ID, x, 1, 1, 0)
    assert is_separated(SIGMA, x, 1, 1, 1)
    assert not any(is_separated(MIN, block("11"), 2, 1, s) for s in range(-1, 2))


def test_jointly_periodic_examples():
    x = block("1")
    y = build_jointly_periodic(ID, x, 1, 1, 0)
    assert y == E.periodic(B, "100")
    assert step(ID, y) == y
    y = build_jointly_periodic(SIGMA, x, 1, 1, 1)
    assert y == E.periodic(B, "100")
    assert iterate(SIGMA, y, 3) == y
    with pytest.raises(SpecError):
        build_jointly_periodic(ID, E.uniform(B, "0"), 1, 1, 0)


def test_separated_shift_bound():
    with pytest.raises(SpecError):
        is_separated(ID, block("1"), 1, 1, 2)


def test_min_blocks_die_after_length_steps():
    for L in range(1, 65):
        v = orbit(MIN, block("1" * L), L + 2).verdict
        assert v.kind == "NilpotentTo" and v.q == L and v.z.is_uniform


# ---------------------------------------------------------------- properties

tails = st.lists(st.integers(0, 1), min_size=1, max_size=3)
centers = st.lists(st.integers(0, 1), max_size=8)
configs = st.builds(lambda u, v, w, o: E(B, tuple(u), tuple(v), tuple(w), o),
                    tails, centers, tails, st.integers(-6, 6))
rules = st.builds(lambda m, d, seed: bm.BlockRule(B, m, d, np.random.default_rng(seed).integers(0, 2, 2 ** d)),
                  st.integers(-2, 3), st.integers(1, 3), st.integers(0, 2 ** 32 - 1))


@given(tails, centers, tails, st.integers(-6, 6))
def test_canonical_form_denotes_the_same_sequence(u, v, w, o):
    x = E(B, tuple(u), tuple(v), tuple(w), o)
    R = 3 * (len(u) + len(v) + len(w)) + 12
    for i in range(-R, R):
        if i < o:
            want = u[(i - o) % len(u)]
        elif i < o + len(v):
            want = v[i - o]
        else:
            want = w[(i - o - len(v)) % len(w)]
        assert x.cell(i) == want


@given(configs, configs)
def test_equal_iff_same_windows(x, y):
    R = 3 * (x.size() + y.size()) + 12
    same = np.array_equal(x.cells(-R, R), y.cells(-R, R))
    assert (x == y) == same


@given(rules, configs)
def test_step_commutes_with_shift(f, x):
    assert step(f, x.shifted(1)) == step(f, x).shifted(1)


@given(rules, configs)
def test_step_matches_word_application(f, x):
    lo, hi = -10, 10
    y = step(f, x)
    src = x.cells(lo - f.anchor, hi - f.anchor + f.diameter - 1)
    assert np.array_equal(y.cells(lo, hi), bm.apply_letters(f, src))


@given(rules, configs, st.integers(1, 5))
def test_trace_equals_spacetime_rows(f, x, T):
    rows = spacetime(f, x, -2, 3, T)
    tr = trace(f, x, -2, 3, T)
    assert [list(w.letters) for w in tr] == rows.tolist()


@given(rules, configs, configs, st.integers(-3, 3), st.integers(0, 5))
def test_concat_property_when_hypothesis_holds(f, x, y, i, q):
    c = check_concat_property(f, x, y, i, q)
    assert c.holds
