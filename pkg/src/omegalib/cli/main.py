"""omegalib command line.

Every subcommand reads a system file (a path or a bundled fixture name)
and prints JSON unless --format asks for dot, ascii or pgm. Exit status is
0 on success, 2 on errors, and 1 with --strict when the finding is negative
(refuted, unresolved, false).
"""

import argparse
import sys

from .. import analysis, blockmap, longterm, orbits, sofic
from ..errors import OmegaError
from . import emit
from .sysfile import resolve_system


def _graph_out(g, fmt):
    if fmt == "dot":
        return emit.graph_dot(g), True
    return emit.to_json(emit.graph_json(g)), True


def cmd_spacetime(sf, a):
    rule, x = sf.rule(), sf.config()
    rows = orbits.spacetime(rule, x, a.start, a.end, a.steps)
    if a.format == "ascii":
        return emit.spacetime_ascii(rows, rule.alphabet), True
    if a.format == "pgm":
        return emit.spacetime_pgm(rows, rule.alphabet), True
    sep = "" if rule.alphabet.compact else " "
    return emit.to_json({"window": [a.start, a.end], "steps": a.steps,
                         "rows": [sep.join(rule.alphabet.name(int(c)) for c in r) for r in rows]}), True


def cmd_image(sf, a):
    g = sofic.determinize(blockmap.image_sofic(sf.rule(), sf.graph(default_full=True)))
    return _graph_out(g, a.format)


def cmd_limit_graph(sf, a):
    return _graph_out(longterm.limit_graph(sf.graph()), a.format)


def cmd_asymptotic_graph(sf, a):
    return _graph_out(longterm.asymptotic_graph(sf.graph()), a.format)


def cmd_limit_lang(sf, a):
    r = longterm.ca_limit_language(sf.rule(), sf.graph(default_full=True), a.order, a.horizon)
    return emit.to_json(r.to_json()), r.status == "Exact"


def cmd_classify(sf, a):
    return emit.to_json(longterm.classify_sofic(sf.graph()).to_json()), True


def cmd_blocking(sf, a):
    rule = sf.rule()
    if a.word is not None:
        v = analysis.is_k_blocking(rule, a.word, a.offset, a.width, a.horizon)
        return emit.to_json(v.to_json()), v.status == analysis.PROVED
    found = analysis.find_blocking_words(rule, a.width, a.maxlen, a.horizon)
    out = [{"word": str(w), "offset": i, **v.to_json()} for w, i, v in found]
    proved = [e for e in out if e["status"] == analysis.PROVED]
    return emit.to_json({"first_proved": proved[0] if proved else None, "candidates": out}), bool(proved)


def cmd_equicontinuity(sf, a):
    v = analysis.equicontinuity_evidence(sf.rule(), a.horizon, a.maxk)
    return emit.to_json(v.to_json()), v.status == analysis.PROVED


def cmd_preperiodicity(sf, a):
    v = analysis.preperiodicity_check(sf.rule(), sf.graph(default_full=True), a.maxp, a.maxq)
    return emit.to_json(v.to_json()), v.status == analysis.PROVED


def cmd_nilpotency(sf, a):
    rule, g = sf.rule(), sf.graph(default_full=True)
    ok = longterm.nilpotency_decision_at(rule, g, a.generation)
    syms = sorted(longterm.surviving_symbols(rule, g, a.generation))
    return emit.to_json({"generation": a.generation, "nilpotent": ok, "surviving_symbols": syms}), ok


def cmd_orbit(sf, a):
    rep = orbits.orbit(sf.rule(), sf.config(), a.max_steps)
    v = rep.verdict
    out = {"verdict": v.kind, "p": v.p, "q": v.q,
           "z": None if v.z is None else str(v.z), "horizon": v.horizon,
           "steps": [str(x) for x in rep.steps] if a.show_steps else len(rep.steps)}
    return emit.to_json(out), v.kind != "Unresolved"


def cmd_surjective(sf, a):
    ok = blockmap.is_surjective(sf.rule(), sf.graph(default_full=True))
    return emit.to_json({"surjective": ok}), ok


def cmd_verify_simulation(sf, a):
    r = analysis.verify_simulation(sf.simulation(), a.depth)
    return emit.to_json(r.to_json()), r.holds


def cmd_separated(sf, a):
    rule, x = sf.rule(), sf.config()
    ok = orbits.is_separated(rule, x, a.width, a.time, a.shift)
    out = {"separated": ok}
    if ok and a.build:
        y = orbits.build_jointly_periodic(rule, x, a.width, a.time, a.shift)
        out["jointly_periodic"] = str(y)
        out["period"] = a.width + 2 * blockmap.radius(rule) * a.time
    return emit.to_json(out), ok


COMMANDS = {
    "spacetime": cmd_spacetime,
    "image": cmd_image,
    "limit-graph": cmd_limit_graph,
    "limit-lang": cmd_limit_lang,
    "asymptotic-graph": cmd_asymptotic_graph,
    "classify": cmd_classify,
    "blocking": cmd_blocking,
    "equicontinuity": cmd_equicontinuity,
    "preperiodicity": cmd_preperiodicity,
    "nilpotency": cmd_nilpotency,
    "orbit": cmd_orbit,
    "surjective": cmd_surjective,
    "verify-simulation": cmd_verify_simulation,
    "separated": cmd_separated,
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--system", required=True, help="system file path or bundled fixture name")
    common.add_argument("--format", default="json", choices=["json", "dot", "ascii", "pgm"])
    common.add_argument("--strict", action="store_true", help="exit 1 on negative findings")

    p = argparse.ArgumentParser(prog="omegalib", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("spacetime", parents=[common])
    s.add_argument("--from", dest="start", type=int, default=-8)
    s.add_argument("--to", dest="end", type=int, default=8)
    s.add_argument("--steps", type=int, default=8)

    for name in ("image", "limit-graph", "asymptotic-graph", "classify", "surjective"):
        sub.add_parser(name, parents=[common])

    s = sub.add_parser("limit-lang", parents=[common])
    s.add_argument("--order", type=int, required=True)
    s.add_argument("--horizon", type=int, required=True)

    s = sub.add_parser("blocking", parents=[common])
    s.add_argument("--width", type=int, default=1)
    s.add_argument("--maxlen", type=int, default=2)
    s.add_argument("--horizon", type=int, default=8)
    s.add_argument("--word", default=None, help="test a single word instead of searching")
    s.add_argument("--offset", type=int, default=0)

    s = sub.add_parser("equicontinuity", parents=[common])
    s.add_argument("--horizon", type=int, default=8)
    s.add_argument("--maxk", type=int, default=2)

    s = sub.add_parser("preperiodicity", parents=[common])
    s.add_argument("--maxp", type=int, default=4)
    s.add_argument("--maxq", type=int, default=4)

    s = sub.add_parser("nilpotency", parents=[common])
    s.add_argument("--generation", type=int, default=4)

    s = sub.add_parser("orbit", parents=[common])
    s.add_argument("--max-steps", type=int, default=100)
    s.add_argument("--show-steps", action="store_true")

    s = sub.add_parser("verify-simulation", parents=[common])
    s.add_argument("--depth", type=int, default=12)

    s = sub.add_parser("separated", parents=[common])
    s.add_argument("--width", type=int, required=True)
    s.add_argument("--time", type=int, default=1)
    s.add_argument("--shift", type=int, default=0)
    s.add_argument("--build", action="store_true", help="also build the jointly periodic configuration")
    return p


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    graph_cmds = ("image", "limit-graph", "asymptotic-graph")
    if args.format == "dot" and args.command not in graph_cmds:
        print(f"error: --format dot applies to {', '.join(graph_cmds)}", file=stderr)
        return 2
    if args.format in ("ascii", "pgm") and args.command != "spacetime":
        print("error: --format ascii/pgm applies to spacetime", file=stderr)
        return 2
    try:
        sf = resolve_system(args.system)
        text, positive = COMMANDS[args.command](sf, args)
    except (OmegaError, KeyError, OSError) as e:
        print(f"error: {e}", file=stderr)
        return 2
    stdout.write(text)
    return 1 if (args.strict and not positive) else 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
