"""
End to end checks for one N per series
======================================

verify_sandwich collects every computable check into a report; here we
print it stage by stage.
"""
from k3sandwich.exactalg import T
from k3sandwich.series import enhancement_plan, solve_section_series2, verify_sandwich

# %%
# series 1 with N = 5: the lattice plan and the half-height obstruction
plan = enhancement_plan(1, 5)
print("v =", plan.v, "glue", plan.glue["v_prime_square"], "disc NS(Y')", plan.expected_quotient_disc)
rep = verify_sandwich(1, 5)
for st in rep.stages:
    print("  ", st.name, "ok" if st.passed else "FAILED", st.values)

# %%
# series 2 with N = 4 on an explicit member
m, P = solve_section_series2(1, T ** 2)
rep = verify_sandwich(2, 4, m, P)
print("series 2, N = 4:", "pass" if rep.passed else "fail")
for st in rep.stages:
    print("  ", st.name, "ok" if st.passed else "FAILED", st.values)

# %%
# asking for the wrong N shows which stages break
bad = verify_sandwich(2, 5, m, P)
print("N = 5 on the same data:", [s.name for s in bad.stages if not s.passed])
