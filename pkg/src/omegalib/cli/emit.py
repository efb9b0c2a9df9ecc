"""Output formats: JSON, DOT, ASCII grids and plain PGM."""

import json

import numpy as np

from ..sofic import LabeledGraph


def to_json(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _vname(v):
    if isinstance(v, tuple):
        return ",".join(_vname(x) for x in v)
    return str(v)


def graph_json(g: LabeledGraph) -> dict:
    return {
        "alphabet": list(g.alphabet.symbols),
        "twosided": g.twosided,
        "vertices": [_vname(v) for v in g.names],
        "arcs": [[_vname(g.names[s]), g.alphabet.name(a), _vname(g.names[t])] for s, t, a in g.arcs],
    }


def _dot_id(s):
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def graph_dot(g: LabeledGraph, name="G") -> str:
    lines = [f"digraph {name} {{"]
    for v in g.names:
        lines.append(f"  {_dot_id(_vname(v))};")
    for s, t, a in g.arcs:
        lines.append(f"  {_dot_id(_vname(g.names[s]))} -> {_dot_id(_vname(g.names[t]))} "
                     f"[label={_dot_id(g.alphabet.name(a))}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def spacetime_ascii(rows: np.ndarray, alphabet) -> str:
    sep = "" if alphabet.compact else " "
    return "".join(sep.join(alphabet.name(int(a)) for a in row) + "\n" for row in rows)


def spacetime_pgm(rows: np.ndarray, alphabet) -> str:
    """Plain P2: one row per generation, symbol index as gray level."""
    h, w = rows.shape
    maxval = max(1, len(alphabet) - 1)
    body = "".join(" ".join(str(int(a)) for a in row) + "\n" for row in rows)
    return f"P2\n{w} {h}\n{maxval}\n{body}"
