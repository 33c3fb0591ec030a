"""Effective and movable cones, bigness, orbit sums, with exact certificates.

Run: python demos/03_cones.py
"""
# %% -K is effective, movable and big
from coxabc import Params, anticanonical, exceptional, hyperplane
from coxabc.cones import in_effective_cone, in_movable_cone, is_big, orbit_sum_multiple

for triple in [(2, 1, 3), (2, 3, 3), (3, 2, 3)]:
    p = Params(*triple)
    k = anticanonical(p)
    print(triple, in_effective_cone(k, p).member, in_movable_cone(k, p).member, is_big(k, p))

# %% Certificates: coefficients for members, a separating functional otherwise
p = Params(2, 3, 3)
print("\nH:", in_effective_cone(hyperplane(1, p), p).to_json())
print("-E_1:", in_effective_cone(-exceptional(1, p), p).to_json())
print("E_1 movable?", in_movable_cone(exceptional(1, p), p).to_json())

# %% The sum of all (-1)-divisors is a positive multiple of -K
for triple in [(2, 1, 3), (2, 3, 3), (3, 1, 3), (2, 3, 5)]:
    print(triple, "lambda =", orbit_sum_multiple(Params(*triple)))
