# coding: utf-8

# # Certificates for GBF nonexistence
#
# A prime p with f = ord_p(2) > 1 rules out GBFs of type [n, 2p] once p
# clears the bound 2^(2B(l) + n*l). Here we look at a few primes by hand.

# In[1]:

from gbfcert.arith import factor, mult_order
from gbfcert.criterion import classify_known, gbf_criterion, replay


# The order of 2 mod p comes from the factorization of p - 1.

# In[2]:

p = 1049177
print(factor(p - 1))
print(mult_order(2, p))


# In[3]:

cert = gbf_criterion(3, p)
print(cert.verdict, cert.bound_expr)
for line in cert.reasons:
    print("  ", line)


# Small primes rarely clear the bound. p = 89 has f = 11 and l = 4, so
# the bound is 2^20 and the criterion cannot decide.

# In[4]:

print(gbf_criterion(3, 89).verdict)
print(classify_known(3, 89))


# Prime powers need 2^f != 1 mod p^2. At a Wieferich prime this fails.

# In[5]:

c = gbf_criterion(3, 1093, e=2)
print(c.verdict, c.wieferich_ok)


# Certificates carry every intermediate value, so they replay exactly.

# In[6]:

print(replay(cert), cert.to_json()["l"])
