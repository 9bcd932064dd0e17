"""
Singular fibres of the three families
=====================================

Run Tate's algorithm at every bad place of a generic member of each family
and check that the Euler numbers add up to 24.
"""
from k3sandwich.ellsurf import euler_number, fiber_table, kodaira_classify
from k3sandwich.isogeny import quotient_curve
from k3sandwich.series import build_member

for series in (1, 2, 3):
    m = build_member(series)
    fibres = m.fibers()
    print(f"series {series}: {m.model}")
    for f in fibres:
        print("   ", f.symbol, "at", f.place, "euler", f.euler)
    print("    table", fiber_table(fibres), "sum", euler_number(fibres))

    # %%
    # the 2-isogeny needs a rational 2-torsion section, which series 1 only
    # has on its other fibration
    W = m.alt_model if series == 1 else m.model
    if series == 1:
        print("    alternate", fiber_table(m.alt_fibers()))
    Y = quotient_curve(W).target
    print("    quotient", fiber_table(kodaira_classify(Y)))
