"""The line-oriented system file format.

Each non-blank line is ``section.key = value``; ``#`` starts a comment.
Keys marked repeatable append to a list, the others may appear once.

    alphabet.symbols = 0 1
    ca.anchor = 0
    ca.diameter = 2
    ca.rule = 00->0 01->0 10->0 11->1
    graph.vertices = p q
    graph.arcs = p -0-> p ; p -1-> q
    graph.arcs = q -0-> p
    config.left = 0
    config.center = 111
    config.right = 0
    config.offset = -1
"""

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Optional

from .. import analysis, catalog, sft, sofic
from ..blockmap import BlockRule
from ..errors import SpecError, SymbolError
from ..orbits import EpConfiguration
from ..symbols import Alphabet

LIST, INT, BOOL, WORD, NAME, TEXT = "list", "int", "bool", "word", "name", "text"

SCHEMA = {
    "alphabet": {"symbols": (LIST, False)},
    "ca": {"builtin": (NAME, False), "anchor": (INT, False), "diameter": (INT, False),
           "rule": (LIST, True), "domain": (NAME, False)},
    "graph": {"builtin": (NAME, False), "vertices": (LIST, True), "arcs": (TEXT, True),
              "twosided": (BOOL, False)},
    "sft": {"forbidden": (LIST, True), "order": (INT, False), "twosided": (BOOL, False)},
    "config": {"left": (WORD, False), "center": (WORD, False), "right": (WORD, False),
               "offset": (INT, False)},
    "phi": {"group": (INT, False), "offset": (INT, False), "diameter": (INT, False),
            "rule": (LIST, True), "target_alphabet": (LIST, False), "target_ca": (NAME, False),
            "target_graph": (NAME, False), "period": (INT, False), "steps": (INT, False),
            "conjugacy": (BOOL, False)},
}

SECTION_ORDER = list(SCHEMA)

LINE = re.compile(r"^\s*([A-Za-z_]+)\.([A-Za-z_]+)\s*=\s*(.*?)\s*$")
ARC = re.compile(r"^\s*(\S+)\s+-(\S+)->\s+(\S+)\s*$")
ENTRY = re.compile(r"^(.+)->(\S+)$")


@dataclass
class SystemFile:
    sections: Dict[str, dict] = field(default_factory=dict)

    def __eq__(self, other):
        return isinstance(other, SystemFile) and self.sections == other.sections

    def has(self, section):
        return section in self.sections

    def get(self, section, key, default=None):
        return self.sections.get(section, {}).get(key, default)

    def require(self, section, what):
        if section not in self.sections:
            raise SpecError(f"system file has no [{section}] section, needed for {what}")
        return self.sections[section]

    # -------------------------------------------------------- interpretation

    @property
    def alphabet(self) -> Alphabet:
        syms = self.get("alphabet", "symbols")
        if syms is not None:
            return Alphabet(syms)
        b = self.get("ca", "builtin")
        if b is not None:
            return catalog.rule(b).alphabet
        b = self.get("graph", "builtin")
        if b is not None:
            return catalog.graph(b).alphabet
        raise SpecError("alphabet.symbols is required", key="alphabet.symbols")

    def rule(self) -> BlockRule:
        ca = self.require("ca", "a cellular automaton")
        domain = None
        dom = ca.get("domain")
        if dom not in (None, "none"):
            if dom not in ("graph", "sft"):
                raise SpecError(f"unknown domain source {dom!r}", key="ca.domain")
            domain = self.graph() if dom == "graph" else self._sft_graph()
        if "builtin" in ca:
            try:
                r = catalog.rule(ca["builtin"])
            except KeyError as e:
                raise SpecError(str(e.args[0]), key="ca.builtin") from None
            if self.get("alphabet", "symbols") is not None and r.alphabet != self.alphabet:
                raise SpecError(f"builtin {ca['builtin']} uses alphabet {r.alphabet}", key="ca.builtin")
            return r.with_domain(domain) if domain is not None else r
        A = self.alphabet
        for key in ("anchor", "diameter", "rule"):
            if key not in ca:
                raise SpecError("missing key", key=f"ca.{key}")
        entries = _entries(A, ca["rule"], "ca.rule")
        d = ca["diameter"]
        for w in entries:
            if len(w) != d:
                raise SpecError(f"entry {''.join(w)} has length {len(w)}, diameter is {d}", key="ca.rule")
        if len(entries) != len(A) ** d and domain is None:
            raise SpecError(f"table has {len(entries)} entries, expected {len(A) ** d}", key="ca.rule")
        return BlockRule.from_entries(A, ca["anchor"], d, {tuple(w): v for w, v in entries.items()}, domain)

    def _sft_graph(self):
        s = self.require("sft", "an SFT")
        A = self.alphabet
        forb = [A.word(w) for w in s.get("forbidden", [])]
        spec = sft.ForbiddenSpec(A, forb, s.get("order"))
        return sft.sft_to_graph(spec, twosided=s.get("twosided", False))

    def graph(self, default_full=False) -> sofic.LabeledGraph:
        if "graph" not in self.sections:
            if "sft" in self.sections:
                return self._sft_graph()
            if default_full:
                return sofic.full_shift(self.alphabet)
            raise SpecError("system file has no [graph] or [sft] section")
        gs = self.sections["graph"]
        if "builtin" in gs:
            try:
                g = catalog.graph(gs["builtin"])
            except KeyError as e:
                raise SpecError(str(e.args[0]), key="graph.builtin") from None
            if "twosided" in gs:
                g = g.with_orientation(gs["twosided"])
            return g
        A = self.alphabet
        arcs = []
        for text in gs.get("arcs", []):
            for part in text.split(";"):
                if not part.strip():
                    continue
                m = ARC.match(part)
                if not m:
                    raise SpecError(f"cannot parse arc {part.strip()!r}", key="graph.arcs")
                s, a, t = m.groups()
                arcs.append((s, t, A.index(a)))
        verts = list(gs.get("vertices", []))
        seen = set(verts)
        for s, t, _ in arcs:
            for v in (s, t):
                if v not in seen:
                    if verts:
                        raise SpecError(f"arc uses undeclared vertex {v!r}", key="graph.arcs")
                    seen.add(v)
        if not verts:
            verts = sorted(seen)
        return sofic.LabeledGraph(A, verts, arcs, gs.get("twosided", False))

    def config(self) -> EpConfiguration:
        c = self.require("config", "a configuration")
        A = self.alphabet
        for key in ("left", "right"):
            if key not in c:
                raise SpecError("missing key", key=f"config.{key}")
        return EpConfiguration(A, A.word(c["left"]), A.word(c.get("center", "")),
                               A.word(c["right"]), c.get("offset", 0))

    def simulation(self) -> analysis.SimulationSpec:
        p = self.require("phi", "a simulation")
        F = self.rule()
        src_dom = self.graph(default_full=True)
        tgt_rule = catalog.rule(p["target_ca"]) if "target_ca" in p else None
        if tgt_rule is None:
            raise SpecError("missing key", key="phi.target_ca")
        B = Alphabet(p["target_alphabet"]) if "target_alphabet" in p else tgt_rule.alphabet
        if B != tgt_rule.alphabet:
            raise SpecError("target alphabet does not match the target rule", key="phi.target_alphabet")
        tgt_dom = catalog.graph(p["target_graph"]) if "target_graph" in p else sofic.full_shift(B)
        for key in ("group", "diameter", "rule"):
            if key not in p:
                raise SpecError("missing key", key=f"phi.{key}")
        A = self.alphabet
        e = p["diameter"]
        raw = _entries(A, p["rule"], "phi.rule", target=B)
        if len(raw) != len(A) ** e:
            raise SpecError(f"phi table has {len(raw)} entries, expected {len(A) ** e}", key="phi.rule")
        table = dict(raw)

        def fn(w):
            return table[w]

        phi = analysis.FactorMap.from_function(A, B, p["group"], p.get("offset", 0), e, fn)
        return analysis.SimulationSpec(F, src_dom, tgt_rule, tgt_dom, phi, p.get("period", 1),
                                       p.get("steps", 1), p.get("conjugacy", False))


def _entries(A: Alphabet, items, key, target: Alphabet = None):
    target = target or A
    out = {}
    for item in items:
        m = ENTRY.match(item)
        if not m:
            raise SpecError(f"rule entry {item!r} is not of the form uvw->a", key=key)
        lhs, rhs = m.groups()
        parts = lhs.split(",") if "," in lhs else list(lhs)
        try:
            w = tuple(A.index(s) for s in parts)
            v = target.index(rhs)
        except SymbolError as e:
            raise SymbolError(str(e), key=key) from None
        if w in out:
            raise SpecError(f"duplicate rule entry for {lhs}", key=key)
        out[w] = v
    return out


def _convert(kind, raw, lineno, key):
    if kind == LIST:
        return raw.split()
    if kind == INT:
        try:
            return int(raw)
        except ValueError:
            raise SpecError(f"expected an integer, got {raw!r}", line=lineno, key=key) from None
    if kind == BOOL:
        if raw.lower() in ("true", "yes", "1"):
            return True
        if raw.lower() in ("false", "no", "0"):
            return False
        raise SpecError(f"expected true or false, got {raw!r}", line=lineno, key=key)
    if kind == NAME:
        if not raw or " " in raw:
            raise SpecError(f"expected a single name, got {raw!r}", line=lineno, key=key)
        return raw
    return raw


def parse_system(source) -> SystemFile:
    """Parse a path or the text of a system file."""
    if isinstance(source, Path) or (isinstance(source, str) and "\n" not in source and Path(source).is_file()):
        text = Path(source).read_text(encoding="utf-8")
    else:
        text = source
    sections: Dict[str, dict] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        body = line.split("#", 1)[0]
        if not body.strip():
            continue
        m = LINE.match(body)
        if not m:
            raise SpecError(f"expected 'section.key = value', got {body.strip()!r}", line=lineno)
        sec, key, raw = m.groups()
        if sec not in SCHEMA:
            raise SpecError(f"unknown section {sec!r}", line=lineno, key=f"{sec}.{key}")
        if key not in SCHEMA[sec]:
            raise SpecError("unknown key", line=lineno, key=f"{sec}.{key}")
        kind, repeat = SCHEMA[sec][key]
        value = _convert(kind, raw, lineno, f"{sec}.{key}")
        d = sections.setdefault(sec, {})
        if repeat:
            d.setdefault(key, [])
            if kind == LIST:
                d[key].extend(value)
            else:
                d[key].append(value)
        else:
            if key in d:
                raise SpecError("key given twice", line=lineno, key=f"{sec}.{key}")
            d[key] = value
    sf = SystemFile(sections)
    _validate(sf)
    return sf


def _validate(sf: SystemFile):
    """Semantic checks that do not need a full build."""
    if sf.has("alphabet"):
        try:
            Alphabet(sf.get("alphabet", "symbols", []))
        except SpecError as e:
            raise SpecError(str(e), key="alphabet.symbols") from None
    if sf.has("ca") and "builtin" not in sf.sections["ca"]:
        sf.rule()
    if sf.has("graph") or sf.has("sft"):
        sf.graph()
    if sf.has("config"):
        sf.config()


def emit_system(sf: SystemFile) -> str:
    lines = []
    for sec in SECTION_ORDER:
        if sec not in sf.sections:
            continue
        for key, (kind, repeat) in SCHEMA[sec].items():
            if key not in sf.sections[sec]:
                continue
            val = sf.sections[sec][key]
            if kind == LIST:
                lines.append(f"{sec}.{key} = {' '.join(val)}")
            elif repeat:
                for v in val:
                    lines.append(f"{sec}.{key} = {v}")
            elif kind == BOOL:
                lines.append(f"{sec}.{key} = {'true' if val else 'false'}")
            else:
                lines.append(f"{sec}.{key} = {val}")
    return "\n".join(lines) + "\n"


FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def resolve_system(name_or_path: str) -> SystemFile:
    """A path to a .sys file, or the name of a bundled fixture."""
    p = Path(name_or_path)
    if p.exists():
        return parse_system(p)
    stem = name_or_path[:-4] if name_or_path.endswith(".sys") else name_or_path
    f = FIXTURES / f"{Path(stem).name}.sys"
    if f.exists():
        return parse_system(f)
    raise SpecError(f"no system file or bundled fixture named {name_or_path!r}")
