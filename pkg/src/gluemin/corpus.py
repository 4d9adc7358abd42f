"""The worked examples, as builders plus independently computed language tables.

The leading language over {a, b, c} sends u to 2^{|u|_a} when u has an even
number of b's and no c, and to 0 otherwise.  The tables below are computed
from that formula (or from a recurrence, for the rotation), never by running
the automata, so they double as golden oracles.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from pathlib import Path

from .automaton import GluedAutomaton, from_wfa, import_dfa, import_duvs
from .wfa import WFA

ABC = ("a", "b", "c")
CORPUS_DIR = Path(__file__).with_name("corpus")


def words(alphabet, max_len: int):
    for n in range(max_len + 1):
        yield from product(alphabet, repeat=n)


def ell(word) -> Fraction:
    if "c" in word or word.count("b") % 2:
        return Fraction(0)
    return Fraction(2) ** word.count("a")


def a_vec() -> WFA:
    return WFA.build(ABC, [1, 0], [1, 0], {
        "a": [[2, 0], [0, 2]],
        "b": [[0, 1], [1, 0]],
        "c": [[0, 0], [0, 0]],
    })


def a_vec_glued() -> GluedAutomaton:
    return from_wfa(a_vec())


# where c sends (even, x) and (odd, x); the default keeps the index
C_VARIANTS = {
    "duvs": ("even", "odd"),
    "exchange": ("odd", "even"),
    "to_even": ("even", "even"),
    "to_odd": ("odd", "odd"),
}


def duvs_tables(variant: str = "duvs") -> dict:
    """Plain-data description of the DUVS automaton, as read by import_duvs."""
    ce, co = C_VARIANTS[variant]
    return {
        "indices": ["even", "odd"],
        "dims": [1, 1],
        "alphabet": list(ABC),
        "initial": ("even", (Fraction(1),)),
        "final": {"even": [1], "odd": [0]},
        "transitions": {
            "a": {"even": ("even", [[2]]), "odd": ("odd", [[2]])},
            "b": {"even": ("odd", [[1]]), "odd": ("even", [[1]])},
            "c": {"even": (ce, [[0]]), "odd": (co, [[0]])},
        },
    }


def a_duvs(variant: str = "duvs") -> GluedAutomaton:
    t = duvs_tables(variant)
    return import_duvs(t["indices"], t["dims"], t["initial"], t["final"], t["transitions"],
                       alphabet=t["alphabet"])


ROTATION = [[Fraction(3, 5), Fraction(-4, 5)], [Fraction(4, 5), Fraction(3, 5)]]


def rotation() -> WFA:
    return WFA.build(("r",), [1, 0], [1, 0], {"r": ROTATION})


def rotation_value(n: int) -> Fraction:
    """cos(n t) with cos t = 3/5, by the Chebyshev recurrence."""
    prev, cur = Fraction(1), Fraction(3, 5)
    if n == 0:
        return prev
    for _ in range(n - 1):
        prev, cur = cur, 2 * Fraction(3, 5) * cur - prev
    return cur


# a's counted mod 3, with state 3 a duplicate of state 0
DFA4 = {
    "states": 4,
    "initial": 0,
    "alphabet": ["a", "b"],
    "transitions": [{"a": 1, "b": 0}, {"a": 2, "b": 1}, {"a": 3, "b": 2}, {"a": 1, "b": 3}],
    "accepting": [0, 3],
}


def dfa4() -> GluedAutomaton:
    return import_dfa(DFA4["states"], DFA4["initial"], DFA4["transitions"], DFA4["accepting"],
                      alphabet=DFA4["alphabet"])


def dfa4_value(word) -> int:
    return int(word.count("a") % 3 == 0)


def tables() -> dict:
    """name -> (alphabet, [(word, value)])."""
    lead = [(w, ell(w)) for w in words(ABC, 3)]
    rot = [(("r",) * n, rotation_value(n)) for n in range(16)]
    dfa = [(w, dfa4_value(w)) for w in words(("a", "b"), 3)]
    out = {"a_vec": (ABC, lead), "a_vec_glued": (ABC, lead), "rotation": (("r",), rot),
           "dfa4": (("a", "b"), dfa)}
    for v in C_VARIANTS:
        out[f"a_{v}" if v == "duvs" else f"a_duvs_{v}"] = (ABC, lead)
    return out


def automata() -> dict:
    out = {"a_vec": a_vec(), "a_vec_glued": a_vec_glued(), "rotation": rotation(), "dfa4": dfa4()}
    for v in C_VARIANTS:
        out[f"a_{v}" if v == "duvs" else f"a_duvs_{v}"] = a_duvs(v)
    return out


def import_tables() -> dict:
    """Inputs for the import-dfa and import-duvs commands."""
    from .io import rat
    t = duvs_tables()
    duvs = {
        "type": "duvs_table",
        "indices": t["indices"],
        "dims": t["dims"],
        "alphabet": t["alphabet"],
        "initial": {"index": t["initial"][0], "vector": [rat(x) for x in t["initial"][1]]},
        "final": {k: [rat(x) for x in v] for k, v in t["final"].items()},
        "transitions": {a: {k: {"target": tgt, "matrix": [[rat(x) for x in r] for r in m]}
                            for k, (tgt, m) in row.items()} for a, row in t["transitions"].items()},
    }
    dfa = dict(DFA4, type="dfa_table")
    return {"a_duvs.duvs": duvs, "dfa4.dfa": dfa}


def render() -> dict:
    """file name -> canonical text of every golden file."""
    from .io import dumps, table_json
    out = {}
    for name, obj in automata().items():
        out[f"{name}.json"] = dumps(obj)
    for name, (alphabet, entries) in tables().items():
        out[f"{name}.table.json"] = dumps(table_json(entries, alphabet))
    for name, doc in import_tables().items():
        out[f"{name}.json"] = dumps(doc)
    return out


def write(directory=CORPUS_DIR):
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    for name, text in render().items():
        (directory / name).write_text(text)


if __name__ == "__main__":
    write()
