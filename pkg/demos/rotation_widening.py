"""When reach cannot be exact: a rational rotation.

The rotation by the angle with cosine 3/5 has infinite order, so the orbit of
(1, 0) meets infinitely many lines.  reach keeps a bounded family per
component and widens to the whole plane once the budget is exceeded.
"""

from gluemin import auto_equiv, from_wfa, minimize_report, reach, wfa_eval
from gluemin.corpus import rotation, rotation_value

w = rotation()
print("first coordinate after n steps:", [str(wfa_eval(w, "r" * n)) for n in range(5)])
print("matches cos(n t):", all(wfa_eval(w, "r" * n) == rotation_value(n) for n in range(30)))

a = from_wfa(w)
for budget in (1, 4, 8, 16):
    r = reach(a, budget)
    print(f"budget {budget:2d}: components {r.automaton.states.components} exact={r.exact}")

rep = minimize_report(a, 8)
print("\nminimize:", rep.automaton.states.components, "exact =", rep.exact)
print("language preserved:", auto_equiv(a, rep.automaton))
print("minimality is only certified when exact is true.")
