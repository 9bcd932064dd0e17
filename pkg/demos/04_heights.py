"""
Sections and heights
====================

Solve for a family member carrying a section of prescribed shape, then
compute its height and its image under the 2-isogeny and its dual.
"""
from k3sandwich.exactalg import T
from k3sandwich.ellsurf import height, height_report, kodaira_classify, ns_disc
from k3sandwich.isogeny import dual, map_point, preimage_point, quotient_curve
from k3sandwich.series import solve_section_series2, solve_section_series3

# %%
# Series 2 with x(P) = 1 forces a = w^2 - t/alpha - alpha
m2, P2 = solve_section_series2(1, T ** 2)
print("series 2 member", m2.model)
print("report", height_report(m2.model, P2))

# %%
# Series 3 with x(P) = t^2
m3, P3 = solve_section_series3(1, T ** 2 + 1)
print("series 3 member", m3.model)
print("report", height_report(m3.model, P3))

# %%
# Heights double across the isogeny
for W, P in ((m2.model, P2), (m3.model, P3)):
    iso = quotient_curve(W)
    print(height(W, P), "->", height(iso.target, map_point(iso, P)))

# %%
# On the quotient of series 2, P itself pulls back through the dual isogeny
iso = quotient_curve(m2.model)
Q = preimage_point(dual(iso), P2)
fibres = kodaira_classify(iso.target)
h = height(iso.target, Q, fibres)
print("half section height", h, "NS disc", ns_disc(fibres, [[h]], 2))
