# coding: utf-8

# # Exhaustive GBF search for tiny types
#
# Spectra are computed exactly in Z[zeta_t]; no floating point.

# In[1]:

import time

from gbfcert.gbf import GBFCandidate, all_tables, batch_parseval, exhaustive_search, is_gbf, spectrum


# In[2]:

f = GBFCandidate.from_function(2, 2, lambda x: x[0] * x[1])
for e in spectrum(f):
    print(e.lam, e.value, e.flat)


# In[3]:

for n, t in [(1, 2), (2, 2), (1, 3), (1, 4), (1, 5), (1, 6)]:
    t0 = time.perf_counter()
    res = exhaustive_search(n, t)
    print(f"[{n},{t}]", res.count, "of", res.candidates, f"{time.perf_counter() - t0:.2f}s")


# Type [1, 6] has none, although every candidate still satisfies Parseval.

# In[4]:

print(batch_parseval(all_tables(1, 6), 6, 1).all())
print(is_gbf(GBFCandidate.from_function(1, 3, lambda x: x[0] ** 2)))
