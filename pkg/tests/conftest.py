import contextlib
import itertools
import os
import random

from hypothesis import assume, settings

from omegalib.errors import ResourceError
from omegalib.sofic import LabeledGraph, label_language
from omegalib.symbols import Alphabet

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


def strs(words):
    return {str(w) for w in words}


def lang(g, n):
    return strs(label_language(g, n))


def brute_lang(g, n):
    """Labels of length-n paths that continue forever, by direct path search."""
    V = g.n
    # live[v]: v starts a path of length V, hence an infinite one
    live = [True] * V
    for _ in range(V):
        live = [any(live[w] for _, w in g.out[v]) for v in range(V)]
    level = {(v, ()) for v in range(V)}
    for _ in range(n):
        level = {(w, lab + (a,)) for v, lab in level for a, w in g.out[v]}
    out = {lab for v, lab in level if live[v]}
    return {"".join(g.alphabet.name(a) for a in w) if w else "ε" for w in out}


def random_graph(rng: random.Random, alphabet: Alphabet, max_v=5, density=0.35):
    n = rng.randint(1, max_v)
    arcs = set()
    for s, t in itertools.product(range(n), repeat=2):
        for a in range(len(alphabet)):
            if rng.random() < density / len(alphabet):
                arcs.add((s, t, a))
    return LabeledGraph(alphabet, n, sorted(arcs))


# one line per acceptance criterion, printed at the end of the run
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[n])


@contextlib.contextmanager
def small_cap(mb="8"):
    """Lower the memory cap and discard draws whose presentations explode."""
    old = os.environ.get("OMEGALIB_MEM_CAP_MB")
    os.environ["OMEGALIB_MEM_CAP_MB"] = mb
    try:
        yield
    except ResourceError:
        assume(False)
    finally:
        if old is None:
            del os.environ["OMEGALIB_MEM_CAP_MB"]
        else:
            os.environ["OMEGALIB_MEM_CAP_MB"] = old
