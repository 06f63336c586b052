# coding: utf-8

# # Class-group relations
#
# Fixtures hold the class group of the decomposition field of 2 and the
# classes of the primes above 2. If no combination
# sum n_j x_j + (n - n_j) conj(x_j) vanishes, there is no GBF of type [n, 2p].

# In[1]:

from gbfcert.relsearch import batch_check, fixture_dir, load_fixture, max_np, relation_solvable


# In[2]:

fx = load_fixture("p89.fx")
print(fx.invariants, fx.vectors)
print(fx.provenance)


# In[3]:

for p in (89, 233, 937, 1289, 1433, 1609, 1721, 1913, 2441, 2969):
    r = max_np(load_fixture(f"p{p}.fx"))
    print(p, r.value, r.first_solvable, r.evaluations)


# The first solvable n comes with a witness.

# In[4]:

w = relation_solvable(load_fixture("p89.fx"), 5)
print(w, w.holds(load_fixture("p89.fx")))


# The batch of smaller primes with f = (p-1)/8 odd. Coverage depends on
# which fixtures have been generated.

# In[5]:

rep = batch_check(fixture_dir() / "closing")
print(rep["fixtures"], "of", rep["targets"], "complete:", rep["complete"])
for row in rep["solvable_cases"]:
    print(row)
