"""Picard lattice, pairing and root system of X_{a,b,c}.

Run: python demos/01_lattice_and_roots.py
"""
# %% Parameters and derived constants
from coxabc import Params, anticanonical, anticanonical_degree, dynkin_type, format_divisor, mukai_pairing
from coxabc.roots import cartan_csv, leg_lengths, simple_roots

for triple in [(2, 3, 3), (2, 3, 5), (3, 2, 3), (3, 3, 3)]:
    p = Params(*triple)
    print(f"X_{p}: rank {p.rank}, dim {p.dim}, kappa {p.kappa}, type {dynkin_type(p)}")

# %% The anticanonical class is orthogonal to every simple root
p = Params(2, 3, 4)
k = anticanonical(p)
rs = simple_roots(p)
print("\n-K =", format_divisor(k), " deg(-K) =", anticanonical_degree(k, p))
for r in rs.simple_roots:
    print(f"  {format_divisor(r):28s} (r,r)={mukai_pairing(r, r, p)}  (r,-K)={mukai_pairing(r, k, p)}")

# %% Cartan matrix as CSV; legs of the T-shaped diagram
print("\nlegs", leg_lengths(rs))
print(cartan_csv(rs))
