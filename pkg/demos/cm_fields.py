# coding: utf-8

# # Exact arithmetic in Q(zeta_p) and its complex subfields
#
# gamma = zeta - zeta^-1, xi is its norm down to the fixed field E of H and
# delta = xi * conj(xi) lies in the real subfield F.

# In[1]:

import random

from gbfcert.cyclotomic import (
    CyclotomicInt,
    absolute_norm,
    complex_subfields,
    delta_report,
    gamma,
    half_representation,
    norm_by_resultant,
    random_integral_element,
    subfield_norm,
)


# In[2]:

z = CyclotomicInt.zeta(7)
print(z * z.conj(), z + z**2 + z**3 + z**4 + z**5 + z**6)
print(absolute_norm(gamma(13)), norm_by_resultant(gamma(13)))


# Every complex subfield for a handful of primes:

# In[3]:

for p in (5, 7, 11, 13):
    for spec in complex_subfields(p):
        rep = delta_report(p, spec)
        print(p, spec.subgroup, spec.degree, rep.ok, rep.norm_delta_real)


# Integral elements of E can be written as (x + y*xi)/2 with x, y real.

# In[4]:

spec = complex_subfields(13)[1]
xi = subfield_norm(gamma(13), spec)
rng = random.Random(0)
beta = random_integral_element(spec, rng)
x, y = half_representation(beta, 13, spec)
print(beta)
print(x + y * xi == beta * 2)
