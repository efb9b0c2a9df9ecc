import random

import pytest
from hypothesis import given, settings, strategies as st

from omegalib import analysis as an
from omegalib import blockmap as bm
from omegalib import catalog, orbits
from omegalib.analysis import PROVED, REFUTED, UNKNOWN, FactorMap, SimulationSpec
from omegalib.errors import SpecError
from omegalib.longterm import nilpotency_decision_at
from omegalib.sofic import full_shift

B = catalog.BINARY
T3 = catalog.TERNARY
MIN = catalog.min_rule()
SIGMA = bm.shift_rule(B)
ID = bm.identity_rule(B)
CONST0 = bm.constant_rule(B, "0")

small_rules = st.builds(
    lambda m, d, seed: bm.BlockRule.from_function(
        B, m, d, lambda w, _r=random.Random(seed).getrandbits(2 ** d): (_r >> bm.code_of(w, 2)) & 1),
    st.integers(-1, 1), st.integers(1, 2), st.integers(0, 2 ** 32 - 1))


# ------------------------------------------------------------- blocking words

def test_min_zero_is_blocking():
    v = an.is_k_blocking(MIN, "0", 0, 1, 8)
    assert v.status == PROVED
    assert v.certificate


def test_shift_refuted_at_time_one():
    v = an.is_k_blocking(SIGMA, "0", 0, 1, 4)
    assert v.status == REFUTED and v.time == 1
    w = v.witness
    assert {str(w.x_window), str(w.y_window)} == {"0", "1"}
    assert an.replay(SIGMA, v)
    # both witnesses lie in the cylinder [0] at cell 0
    assert w.x.cell(0) == 0 and w.y.cell(0) == 0


@pytest.mark.parametrize("w", ["0", "1", "01", "110"])
def test_identity_always_blocking(w):
    assert an.is_k_blocking(ID, w, 0, 1, 2).status == PROVED


def test_blocking_preconditions():
    with pytest.raises(SpecError):
        an.is_k_blocking(MIN, "0", 0, 0, 4)
    with pytest.raises(SpecError):
        an.is_k_blocking(MIN, "0", 2, 1, 4)


def test_unknown_at_short_horizon():
    # no recurrence can be seen before any image has been taken
    v = an.is_k_blocking(MIN, "0", 0, 1, 0)
    assert v.status == UNKNOWN and v.horizon == 0


def test_find_blocking_min():
    found = an.find_blocking_words(MIN, 1, 1, 8)
    proved = [(str(w), i) for w, i, v in found if v.status == PROVED]
    assert proved[0] == ("0", 0)


def test_find_blocking_shift_none():
    found = an.find_blocking_words(SIGMA, 1, 3, 8)
    assert found
    assert all(v.status == REFUTED for _, _, v in found)
    assert all(an.replay(SIGMA, v) for _, _, v in found)


def test_find_blocking_const0():
    found = {(str(w), i): v.status for w, i, v in an.find_blocking_words(CONST0, 1, 1, 2)}
    assert found[("0", 0)] == PROVED and found[("1", 0)] == PROVED


def test_find_blocking_order():
    found = an.find_blocking_words(SIGMA, 1, 2, 4)
    keys = [(len(w), w.letters, i) for w, i, _ in found]
    assert keys == sorted(keys)


def test_verdict_json():
    v = an.is_k_blocking(SIGMA, "0", 0, 1, 4)
    j = v.to_json()
    assert j["status"] == REFUTED and j["time"] == 1 and "witness" in j


# ------------------------------------------------------------- equicontinuity

def test_equicontinuity_examples():
    assert an.equicontinuity_evidence(ID, 2, 1).status == PROVED
    assert an.equicontinuity_evidence(CONST0, 2, 1).status == PROVED
    v = an.equicontinuity_evidence(SIGMA, 8, 3)
    assert v.status == REFUTED
    assert v.detail["conclusive"] is False


def test_min_not_equicontinuous_evidence():
    # 1 is never blocking for Min, so Kůrka's criterion cannot hold
    assert an.equicontinuity_evidence(MIN, 8, 2).status != PROVED


# ------------------------------------------------------------- preperiodicity

def test_preperiodicity_examples():
    v = an.preperiodicity_check(ID, full_shift(B), 3, 3)
    assert v.status == PROVED and (v.detail["p"], v.detail["q"]) == (1, 0)
    v = an.preperiodicity_check(CONST0, full_shift(B), 3, 3)
    assert v.status == PROVED and (v.detail["p"], v.detail["q"]) == (1, 1)
    v = an.preperiodicity_check(SIGMA, full_shift(B), 3, 3)
    assert v.status == UNKNOWN


def test_xor_not_preperiodic():
    assert an.preperiodicity_check(catalog.xor_rule(), full_shift(B), 4, 4).status == UNKNOWN


def test_p012_preperiodicity_unknown():
    v = an.preperiodicity_check(catalog.p012_rule(), full_shift(T3), 6, 6)
    assert v.status == UNKNOWN


def test_preperiodicity_needs_invariance():
    with pytest.raises(SpecError):
        an.preperiodicity_check(catalog.xor_rule(), catalog.goldenmean(), 2, 2)


# ----------------------------------------------------------------- simulation

def identity_phi(a):
    return FactorMap.from_function(a, a, 1, 0, 1, lambda w: w[0])


def test_simulation_identity():
    spec = SimulationSpec(MIN, full_shift(B), MIN, full_shift(B), identity_phi(B))
    r = an.verify_simulation(spec, 6)
    assert r.holds and r.commutes and r.surjective and r.counterexample is None


def test_simulation_conjugacy_identity():
    spec = SimulationSpec(SIGMA, full_shift(B), SIGMA, full_shift(B), identity_phi(B), conjugacy=True)
    assert an.verify_simulation(spec, 6).injective is True


def test_simulation_wrong_target():
    spec = SimulationSpec(MIN, full_shift(B), SIGMA, full_shift(B), identity_phi(B))
    r = an.verify_simulation(spec, 6)
    assert not r.holds and not r.commutes
    w = r.counterexample
    assert w is not None
    # the counterexample really separates the two sides at cell 0
    assert min(w[0], w[1]) != w[1]


def test_simulation_shift_by_grouping():
    # grouping pairs turns σ² into σ on the pair alphabet
    pairs = bm.product_alphabet(B, B)
    phi = FactorMap.from_function(B, pairs, 2, 0, 2, lambda w: w[0] * 2 + w[1])
    spec = SimulationSpec(SIGMA, full_shift(B), bm.shift_rule(pairs), full_shift(pairs), phi, n=2)
    assert an.verify_simulation(spec, 8).holds


def test_simulation_not_surjective():
    phi = FactorMap.from_function(B, B, 1, 0, 1, lambda w: 0)
    spec = SimulationSpec(ID, full_shift(B), ID, full_shift(B), phi)
    r = an.verify_simulation(spec, 4)
    assert r.commutes and not r.surjective and not r.holds


def test_simulation_depth_error():
    spec = SimulationSpec(MIN, full_shift(B), MIN, full_shift(B), identity_phi(B))
    with pytest.raises(SpecError):
        an.verify_simulation(spec, 1)


def test_simulation_spec_validation():
    with pytest.raises(SpecError):
        SimulationSpec(MIN, full_shift(B), MIN, full_shift(B), identity_phi(B), n=0)
    with pytest.raises(SpecError):
        FactorMap(B, B, 0, 0, 1, (0, 1))


def test_p012_flipped_phi_fails():
    flipped = FactorMap.from_function(T3, B, 2, 0, 2, lambda w: 1 if w[0] == w[1] else 0)
    spec = SimulationSpec(catalog.p012_rule(), catalog.sigma_k(), MIN, full_shift(B), flipped)
    r = an.verify_simulation(spec, 12)
    assert not r.holds and r.counterexample is not None


def test_non_injective_factor():
    phi = FactorMap.from_function(B, B, 1, 0, 1, lambda w: 0)
    zero = bm.constant_rule(B, "0")
    spec = SimulationSpec(zero, full_shift(B), zero, catalog.two_loops(), phi, conjugacy=True)
    assert an.verify_simulation(spec, 4).injective is False


# ---------------------------------------------------------------- sigma hints

def test_sigma_hints():
    h = an.sigma_k_limit_equals_omega_hint(MIN)
    assert all((k in h) == (k >= 1 or k <= -2) for k in range(-6, 7))
    assert 0 in an.sigma_k_limit_equals_omega_hint(catalog.shift_min_rule())
    h = an.sigma_k_limit_equals_omega_hint(ID)
    assert all((k in h) == (k != 0) for k in range(-6, 7))


def test_sigma_hint_matches_oblic():
    for rule in (MIN, ID, catalog.xor_rule(), catalog.p012_rule()):
        h = an.sigma_k_limit_equals_omega_hint(rule)
        for k in range(-5, 6):
            sk = bm.shift_rule(rule.alphabet, k) if k else bm.identity_rule(rule.alphabet)
            assert (k in h) == bm.is_oblic(bm.reduce_rule(bm.compose(sk, rule)))


# ----------------------------------------------------------------- properties

@given(small_rules, st.sampled_from(["0", "1", "01", "10"]), st.integers(0, 1))
def test_refutations_replay(f, w, i):
    v = an.is_k_blocking(f, w, i, 1, 4)
    if v.status == REFUTED:
        assert an.replay(f, v)
        x = v.witness.x
        assert str(x.window(-i, -i + len(w))) == w


@given(small_rules, st.sampled_from(["0", "1", "00", "11", "010"]), st.integers(1, 3))
def test_blocking_monotone_in_width(f, w, k):
    if an.is_k_blocking(f, w, 0, k, 6).status == PROVED:
        for k2 in range(1, k):
            assert an.is_k_blocking(f, w, 0, k2, 6).status == PROVED


def test_blocking_concatenation_min():
    u = v = "0"
    assert an.is_k_blocking(MIN, u, 0, 1, 8).status == PROVED
    assert an.is_k_blocking(MIN, v, 0, 1, 8).status == PROVED
    uv = u + v
    # the two blocked columns sit side by side, so uv blocks a width-2 window
    assert an.is_k_blocking(MIN, uv, 0, 2, 8).status == PROVED
    assert an.is_k_blocking(MIN, uv + "1", 0, 2, 8).status == PROVED


@settings(max_examples=25)
@given(small_rules)
def test_preperiodic_implies_equicontinuous(f):
    v = an.preperiodicity_check(f, full_shift(B), 2, 2)
    if v.status == PROVED:
        assert an.equicontinuity_evidence(f, 8, 3).status == PROVED


@settings(max_examples=25)
@given(small_rules, st.integers(0, 2 ** 32 - 1))
def test_nilpotency_implies_trace_nilpotency(f, seed):
    t = next((t for t in range(1, 4) if nilpotency_decision_at(f, full_shift(B), t)), None)
    if t is None:
        return
    z = int(bm.apply_letters(bm.power(f, t), [0] * bm.power(f, t).diameter)[0])
    rng = random.Random(seed)
    for _ in range(5):
        x = an.random_configuration(full_shift(B), rng, 8)
        row = orbits.spacetime(f, x, -4, 4, t + 1)[t]
        assert all(int(c) == z for c in row)


def test_complete_word_roundtrip():
    g = catalog.goldenmean()
    x = an.complete_word(g, (0, 1, 0), -1)
    assert str(x.window(-1, 2)) == "010"
    with pytest.raises(SpecError):
        an.complete_word(g, (1, 1), 0)
