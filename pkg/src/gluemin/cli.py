"""The ``gluemin`` command.

Exit codes: 0 success, 1 semantic failure (invalid document, languages
differ, table mismatch), 2 malformed input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import io
from .automaton import (
    DEFAULT_BUDGET, GluedAutomaton, auto_check, auto_equiv, auto_eval, from_wfa, linearize,
    minimize_report, obs, reach, stats,
)
from .errors import GlueminError, MalformedInput
from .glued import GluedMorphism, GluedSpace, morphism_check, normalize_map
from .wfa import WFA, wfa_eval, wfa_minimize


class Failure(Exception):
    """Semantic failure: exit code 1."""


def _budget(args) -> int:
    if args.budget is not None:
        return args.budget
    env = os.environ.get("GLUEMIN_BUDGET")
    if env is None:
        return DEFAULT_BUDGET
    try:
        b = int(env)
    except ValueError:
        raise MalformedInput(f"GLUEMIN_BUDGET must be an integer, got {env!r}") from None
    if b < 1:
        raise MalformedInput("GLUEMIN_BUDGET must be at least 1")
    return b


def _load(path, kinds=None):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise MalformedInput(f"{path}: {exc.strerror}") from None
    doc = io.loads_json(text)
    kind = doc.get("type") if isinstance(doc, dict) else None
    if kinds is not None and kind not in kinds:
        raise MalformedInput(f"{path}: expected a document of type {' or '.join(kinds)}, got {kind!r}")
    return kind, io.from_json(doc)


def _automaton(path) -> GluedAutomaton:
    kind, obj = _load(path, ("glued_automaton", "wfa"))
    if isinstance(obj, WFA):
        return from_wfa(obj)
    _check(obj)
    return obj


def _check(a: GluedAutomaton):
    try:
        normalize_map(a.states)
    except GlueminError as exc:
        raise Failure(f"{type(exc).__name__}: {exc}") from None
    try:
        auto_check(a)
    except GlueminError as exc:
        raise Failure(f"{type(exc).__name__}: {exc}") from None


def _emit(text: str, out):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _report(d: dict):
    print(json.dumps(d, sort_keys=True))


def _value(v) -> str:
    return str(v) if isinstance(v, int) else io.rat(v)


# --- commands -------------------------------------------------------------------

def cmd_validate(args):
    kind, obj = _load(args.file)
    try:
        if isinstance(obj, GluedSpace):
            nf = normalize_map(obj)
            if nf.space != obj:
                _report({"valid": True, "type": kind, "normalized": False})
                return 0
        elif isinstance(obj, GluedAutomaton):
            _check(obj)
        elif isinstance(obj, GluedMorphism):
            morphism_check(obj)
    except Failure as exc:
        _report({"valid": False, "type": kind, "error": str(exc)})
        return 1
    except GlueminError as exc:
        _report({"valid": False, "type": kind, "error": f"{type(exc).__name__}: {exc}"})
        return 1
    _report({"valid": True, "type": kind})
    return 0


def _evaluator(path):
    kind, obj = _load(path, ("glued_automaton", "wfa"))
    if isinstance(obj, WFA):
        return obj.alphabet, lambda w: wfa_eval(obj, w)
    _check(obj)
    return obj.alphabet, lambda w: auto_eval(obj, w)


def cmd_eval(args):
    alphabet, ev = _evaluator(args.file)
    if args.table:
        _, entries = _load(args.table, ("language_table",))
        bad = 0
        for word, expected in entries:
            got = ev(word)
            if got != expected:
                bad += 1
                print(f"mismatch on {''.join(word)!r}: expected {_value(expected)}, got {_value(got)}")
        print(f"{len(entries) - bad}/{len(entries)} entries match")
        return 1 if bad else 0
    word = io.parse_word(args.word or "", alphabet)
    print(_value(ev(word)))
    return 0


def cmd_minimize(args):
    kind, obj = _load(args.file, ("glued_automaton", "wfa"))
    a = from_wfa(obj) if isinstance(obj, WFA) else obj
    if not isinstance(obj, WFA):
        _check(a)
    m = minimize_report(a, _budget(args))
    rep = dict(stats(m.automaton), exact=m.exact, minimality_certified=m.exact, input=stats(a))
    if isinstance(obj, WFA):
        rep["wfa_minimal_dim"] = wfa_minimize(obj).dim
    if not m.exact:
        rep["note"] = "reach was widened; the result is a valid quotient but minimality is not certified"
    if args.out:
        io.save(m.automaton, args.out)
    _report(rep)
    return 0


def cmd_reach(args):
    a = _automaton(args.file)
    r = reach(a, _budget(args))
    _emit(io.dumps(r.automaton), args.out)
    if args.out:
        _report(dict(stats(r.automaton), exact=r.exact))
    elif not r.exact:
        print("warning: reach was widened (exact=false)", file=sys.stderr)
    return 0


def cmd_obs(args):
    a = _automaton(args.file)
    o = obs(a)
    _emit(io.dumps(o.automaton), args.out)
    if args.out:
        _report(stats(o.automaton))
    return 0


def cmd_equiv(args):
    a, b = _automaton(args.file), _automaton(args.other)
    same = auto_equiv(a, b)
    print("true" if same else "false")
    return 0 if same else 1


def cmd_linearize(args):
    a = _automaton(args.file)
    _emit(io.dumps(linearize(a)), args.out)
    return 0


def _import(kind):
    def cmd(args):
        _, a = _load(args.file, (kind,))
        _emit(io.dumps(a), args.out)
        return 0
    return cmd


def cmd_stats(args):
    kind, obj = _load(args.file, ("glued_automaton", "wfa", "glued_space"))
    if isinstance(obj, GluedSpace):
        _report({"components": obj.size, "dims": list(obj.components), "total_dim": obj.total_dim,
                 "gluings": obj.gluing_count()})
    else:
        _report(stats(from_wfa(obj) if isinstance(obj, WFA) else obj))
    return 0


COMMANDS = {
    "validate": cmd_validate,
    "eval": cmd_eval,
    "minimize": cmd_minimize,
    "reach": cmd_reach,
    "obs": cmd_obs,
    "equiv": cmd_equiv,
    "linearize": cmd_linearize,
    "import-dfa": _import("dfa_table"),
    "import-duvs": _import("duvs_table"),
    "stats": cmd_stats,
}


def parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gluemin", description="Exact minimization of hybrid set-vector automata.")
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        c = sub.add_parser(name)
        c.add_argument("file")
        if name == "equiv":
            c.add_argument("other")
        c.add_argument("--budget", type=int, default=None)
        c.add_argument("--out", default=None)
        c.add_argument("--word", default=None)
        if name == "eval":
            c.add_argument("--table", default=None, help="language table to check against")
    return p


def main(argv=None) -> int:
    try:
        args = parser().parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    if args.budget is not None and args.budget < 1:
        print("error: --budget must be at least 1", file=sys.stderr)
        return 2
    try:
        return COMMANDS[args.command](args)
    except MalformedInput as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Failure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (GlueminError, KeyError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
