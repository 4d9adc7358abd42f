"""The leading example: one language, three automata, one minimal glued space.

The language sends a word over {a, b, c} to 2^(number of a's) when it has an
even number of b's and no c, and to 0 otherwise.
"""

from gluemin import auto_equiv, auto_eval, auto_iso, minimize_report, reach, stats, wfa_eval, wfa_minimize
from gluemin.corpus import C_VARIANTS, a_duvs, a_vec, a_vec_glued

vec = a_vec()
print("A_vec is a 2-dimensional weighted automaton.")
for w in ["", "abba", "ab", "aac"]:
    print(f"  A_vec({w or 'empty word'}) = {wfa_eval(vec, w)}")
print("As a weighted automaton it is already minimal: dim", wfa_minimize(vec).dim)

# Only the two coordinate axes are ever visited.
r = reach(a_vec_glued())
print("\nreach(A_vec) visits:", [str(s) for s in r.families[0]], "exact =", r.exact)

# The disjoint-union automaton tracks the parity of b's in a discrete index.
duvs = a_duvs()
print("\nA_duvs has states", stats(duvs), "and agrees with A_vec:", auto_equiv(a_vec_glued(), duvs))

# The choice made by c is arbitrary; four variants, no two isomorphic.
variants = {v: a_duvs(v) for v in C_VARIANTS}
print("variants pairwise isomorphic?",
      any(auto_iso(x, y) is not None for kx, x in variants.items() for ky, y in variants.items() if kx != ky))

# Minimizing any of them gives two lines glued at their origins.
print("\nminimal automata:")
mins = []
for name, a in [("A_vec", a_vec_glued())] + list(variants.items()):
    rep = minimize_report(a)
    mins.append(rep.automaton)
    print(f"  {name:9s} -> {stats(rep.automaton)} exact={rep.exact}")
print("all isomorphic:", all(auto_iso(mins[0], m) is not None for m in mins))
m = mins[0]
print("the gluing:", m.states.gluings)
print("and it still computes the language:", [str(auto_eval(m, w)) for w in ["", "abb", "aabb", "bc"]])
