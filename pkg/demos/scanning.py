# coding: utf-8

# # Scanning for certified primes
#
# With g = (p-1)/f fixed at 8 and f odd, l = 4 and the bound is 2^(8 + 4n).
# Scanning just above the bound finds the first certified primes quickly.

# In[1]:

import time

from gbfcert.scanner import ScanFilter, density_series, scan, smallest_certified, wieferich_scan


# In[2]:

for n in (3, 11, 15):
    t = time.perf_counter()
    hit = smallest_certified(n, 8)
    print(n, hit.p, f"{time.perf_counter() - t:.2f}s")


# The first few for n = 3:

# In[3]:

flt = ScanFilter(lo=2**20, g=8, f_parity="odd", p_mod_8=1, require_certified=(3, 1))
print([h.p for h in scan(flt, 5)])


# Threads do not change the answer.

# In[4]:

flt = ScanFilter(lo=3, hi=200000, g=8)
print(scan(flt, workers=4) == scan(flt))


# Counting primes with a given g. Without the bound this is an Artin-type
# count; with it nothing survives below a million for n = 3.

# In[5]:

for rep in density_series(2, 3, 8, [10**4, 10**5, 10**6], apply_bound=False):
    print(rep.x, rep.M, rep.pi_x, float(rep.ratio))
for rep in density_series(2, 3, 8, [10**6]):
    print("with bound:", rep.M)


# In[6]:

print(wieferich_scan(2, 10**5))
