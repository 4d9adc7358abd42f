"""JSON documents.

Rationals are strings ``"p/q"`` (``"p"`` when q = 1), matrices row-major
nested arrays.  :func:`dumps` is canonical (sorted keys, fixed indentation)
so golden files are byte stable.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .automaton import GluedAutomaton, output_object
from .errors import GlueminError, MalformedInput
from .glued import GluedMorphism, GluedSpace, Point, graph, make_space, relation_to_gluing
from .linalg import Matrix, span
from .wfa import WFA


def rat(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_rat(x) -> Fraction:
    if isinstance(x, bool) or isinstance(x, float):
        raise MalformedInput(f"rational expected as string or integer, got {x!r}")
    try:
        return Fraction(x.strip()) if isinstance(x, str) else Fraction(int(x))
    except (ValueError, ZeroDivisionError, TypeError, AttributeError):
        raise MalformedInput(f"bad rational {x!r}") from None


def vec_json(v) -> list:
    return [rat(x) for x in v]


def parse_vec(v, n: int | None = None) -> tuple:
    if not isinstance(v, list):
        raise MalformedInput(f"vector expected, got {v!r}")
    out = tuple(parse_rat(x) for x in v)
    if n is not None and len(out) != n:
        raise MalformedInput(f"vector of length {len(out)}, expected {n}")
    return out


def mat_json(m: Matrix) -> list:
    return [vec_json(r) for r in m.data]


def parse_mat(rows, shape) -> Matrix:
    r, c = shape
    if not isinstance(rows, list) or len(rows) != r:
        raise MalformedInput(f"matrix with {r} rows expected, got {rows!r}")
    return Matrix(r, c, tuple(parse_vec(row, c) for row in rows))


# --- to JSON -----------------------------------------------------------------

def space_json(g: GluedSpace) -> dict:
    gl = []
    for (i, j), rels in g.gluings:
        for r in rels:
            dom, phi = relation_to_gluing(r, g.components[i], g.components[j])
            gl.append({"i": i, "j": j, "domain": [vec_json(b) for b in dom.basis], "phi": mat_json(phi)})
    return {"type": "glued_space", "components": list(g.components), "gluings": gl}


def assignment_json(m: GluedMorphism) -> list:
    return [{"target": t, "matrix": mat_json(f)} for t, f in m.assignment]


def morphism_json(m: GluedMorphism) -> dict:
    return {"type": "morphism", "source": space_json(m.source), "target": space_json(m.target),
            "assignment": assignment_json(m)}


def wfa_json(w: WFA) -> dict:
    return {"type": "wfa", "alphabet": list(w.alphabet), "dim": w.dim,
            "initial": vec_json(w.initial), "final": vec_json(w.final),
            "transitions": {s: mat_json(w.transitions[s]) for s in w.alphabet}}


def automaton_json(a: GluedAutomaton) -> dict:
    return {
        "type": "glued_automaton",
        "profile": a.profile,
        "alphabet": list(a.alphabet),
        "states": space_json(a.states),
        "initial": {"component": a.initial.component, "vector": vec_json(a.initial.vector)},
        "final": {"assignment": assignment_json(a.final)},
        "transitions": {s: {"assignment": assignment_json(a.transitions[s])} for s in a.alphabet},
    }


def word_json(word, alphabet) -> str | list:
    if all(len(s) == 1 for s in alphabet):
        return "".join(word)
    return list(word)


def table_json(entries, alphabet) -> dict:
    """Language table; values are rationals (weighted) or output indices (set profile)."""
    out = []
    for word, value in entries:
        out.append({"word": word_json(word, alphabet),
                    "value": value if isinstance(value, int) and not isinstance(value, Fraction) else rat(value)})
    return {"type": "language_table", "alphabet": list(alphabet), "entries": out}


def to_json(obj) -> dict:
    if isinstance(obj, WFA):
        return wfa_json(obj)
    if isinstance(obj, GluedAutomaton):
        return automaton_json(obj)
    if isinstance(obj, GluedSpace):
        return space_json(obj)
    if isinstance(obj, GluedMorphism):
        return morphism_json(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj) -> str:
    doc = obj if isinstance(obj, dict) else to_json(obj)
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


# --- from JSON ---------------------------------------------------------------

def _need(d: dict, key: str):
    if not isinstance(d, dict) or key not in d:
        raise MalformedInput(f"missing field {key!r}")
    return d[key]


def parse_space(d: dict) -> GluedSpace:
    comps = _need(d, "components")
    if not isinstance(comps, list) or not all(isinstance(n, int) and n >= 0 for n in comps):
        raise MalformedInput("components must be a list of dimensions")
    rels: dict = {}
    for g in d.get("gluings", []):
        i, j = _need(g, "i"), _need(g, "j")
        if not (isinstance(i, int) and isinstance(j, int) and 0 <= i < len(comps)
                and 0 <= j < len(comps) and i != j):
            raise MalformedInput(f"bad gluing indices {(i, j)}")
        dom = span([parse_vec(v, comps[i]) for v in _need(g, "domain")], comps[i])
        phi = parse_mat(_need(g, "phi"), (comps[j], comps[i]))
        rels.setdefault((i, j), []).append(graph(dom, phi))
    return make_space(comps, rels)


def parse_assignment(items, source: GluedSpace, target: GluedSpace) -> tuple:
    if not isinstance(items, list) or len(items) != source.size:
        raise MalformedInput(f"assignment needs {source.size} entries")
    out = []
    for i, it in enumerate(items):
        t = _need(it, "target")
        if not isinstance(t, int) or not (0 <= t < target.size):
            raise MalformedInput(f"assignment {i}: bad target {t!r}")
        out.append((t, parse_mat(_need(it, "matrix"), (target.components[t], source.components[i]))))
    return tuple(out)


def parse_morphism(d: dict) -> GluedMorphism:
    src, tgt = parse_space(_need(d, "source")), parse_space(_need(d, "target"))
    return GluedMorphism(src, tgt, parse_assignment(_need(d, "assignment"), src, tgt))


def parse_wfa(d: dict) -> WFA:
    alphabet = tuple(_need(d, "alphabet"))
    n = _need(d, "dim")
    tr = _need(d, "transitions")
    try:
        return WFA(alphabet, n, parse_vec(_need(d, "initial"), n), parse_vec(_need(d, "final"), n),
                   {s: parse_mat(tr[s], (n, n)) for s in alphabet})
    except KeyError as exc:
        raise MalformedInput(f"missing transition {exc}") from None
    except (ValueError, GlueminError) as exc:
        if isinstance(exc, MalformedInput):
            raise
        raise MalformedInput(str(exc)) from None


def parse_automaton(d: dict) -> GluedAutomaton:
    profile = _need(d, "profile")
    try:
        out = output_object(profile)
    except (GlueminError, ValueError):
        raise MalformedInput(f"unknown profile {profile!r}") from None
    alphabet = tuple(_need(d, "alphabet"))
    states = parse_space(_need(d, "states"))
    ini = _need(d, "initial")
    c = _need(ini, "component")
    if not isinstance(c, int) or not (0 <= c < states.size):
        raise MalformedInput(f"initial component {c!r} out of range")
    init = Point(c, parse_vec(_need(ini, "vector"), states.components[c]))
    final = GluedMorphism(states, out, parse_assignment(_need(_need(d, "final"), "assignment"), states, out))
    tr = _need(d, "transitions")
    trans = {}
    for s in alphabet:
        if s not in tr:
            raise MalformedInput(f"missing transition for {s!r}")
        trans[s] = GluedMorphism(states, states, parse_assignment(_need(tr[s], "assignment"), states, states))
    return GluedAutomaton(alphabet, profile, states, init, final, trans)


def parse_word(w, alphabet) -> tuple:
    if isinstance(w, list):
        return tuple(w)
    if not isinstance(w, str):
        raise MalformedInput(f"word must be a string or list, got {w!r}")
    if all(len(s) == 1 for s in alphabet):
        return tuple(w)
    return tuple(x for x in w.replace(",", " ").split() if x)


def parse_table(d: dict) -> list:
    alphabet = tuple(d.get("alphabet", ()))
    out = []
    for e in _need(d, "entries"):
        v = _need(e, "value")
        out.append((parse_word(_need(e, "word"), alphabet), v if isinstance(v, int) else parse_rat(v)))
    return out


PARSERS = {
    "wfa": parse_wfa,
    "glued_space": parse_space,
    "glued_automaton": parse_automaton,
    "morphism": parse_morphism,
    "language_table": parse_table,
}


def from_json(d):
    kind = _need(d, "type")
    if kind not in PARSERS:
        raise MalformedInput(f"unknown document type {kind!r}")
    return PARSERS[kind](d)


def loads_json(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def loads(text: str):
    return from_json(loads_json(text))


def load(path) -> object:
    return loads(Path(path).read_text())


def save(obj, path):
    Path(path).write_text(dumps(obj))


# --- import tables -------------------------------------------------------------

def parse_dfa_table(d: dict) -> GluedAutomaton:
    from .automaton import import_dfa
    n, q0 = _need(d, "states"), _need(d, "initial")
    alphabet = _need(d, "alphabet")
    table = _need(d, "transitions")
    if not isinstance(table, list) or not all(isinstance(r, (dict, list)) for r in table):
        raise MalformedInput("transitions must be a list of rows")
    for q, row in enumerate(table):
        if isinstance(row, dict) and set(row) != set(alphabet):
            raise MalformedInput(f"row {q} does not cover the alphabet")
        if isinstance(row, list) and len(row) != len(alphabet):
            raise MalformedInput(f"row {q} has {len(row)} entries, expected {len(alphabet)}")
    return import_dfa(n, q0, table, _need(d, "accepting"), alphabet=alphabet)


def parse_duvs_table(d: dict) -> GluedAutomaton:
    from .automaton import import_duvs
    indices, dims = _need(d, "indices"), _need(d, "dims")
    if not isinstance(indices, list) or not isinstance(dims, list) or len(indices) != len(dims):
        raise MalformedInput("indices and dims must be lists of equal length")
    dim = dict(zip(indices, dims))
    alphabet = _need(d, "alphabet")
    ini = _need(d, "initial")
    idx = _need(ini, "index")
    if idx not in dim:
        raise MalformedInput(f"unknown initial index {idx!r}")
    initial = (idx, parse_vec(_need(ini, "vector"), dim[idx]))
    fin = _need(d, "final")
    final = {k: Matrix(1, dim[k], (parse_vec(_need(fin, k), dim[k]),)) for k in indices}
    trans = {}
    tr = _need(d, "transitions")
    for a in alphabet:
        row = _need(tr, a)
        trans[a] = {}
        for k in indices:
            e = _need(row, k)
            t = _need(e, "target")
            if t not in dim:
                raise MalformedInput(f"unknown target index {t!r}")
            trans[a][k] = (t, parse_mat(_need(e, "matrix"), (dim[t], dim[k])))
    return import_duvs(indices, dims, initial, final, trans, alphabet=alphabet)


PARSERS["dfa_table"] = parse_dfa_table
PARSERS["duvs_table"] = parse_duvs_table
