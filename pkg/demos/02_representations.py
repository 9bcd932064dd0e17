"""
Primitive representations and the series criteria
==================================================

Compare the closed-form criteria against brute force enumeration of
primitive representations by the three binary forms.
"""
import time

from k3sandwich.quadform import SERIES_FORMS, criterion, lemma_report, primitive_representations

# %%
# The forms attached to each series
for s, Q in SERIES_FORMS.items():
    print("series", s, Q)

# %%
# A few values by hand
for N in (1, 2, 3, 5, 7, 38):
    reps = {s: primitive_representations(Q, N)[:2] for s, Q in SERIES_FORMS.items()}
    crit = {s: criterion(s, N) for s in SERIES_FORMS}
    print(N, "criterion", crit, "reps", reps)

# %%
# Full sweep; series 3 disagrees from N = 38 on
for s in SERIES_FORMS:
    t0 = time.perf_counter()
    rep = lemma_report(s, 5000)
    print(f"series {s}: {len(rep['counterexamples'])} counterexamples "
          f"(first {rep['counterexamples'][:5]}) in {time.perf_counter() - t0:.2f}s")
