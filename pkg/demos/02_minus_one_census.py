"""Weyl orbits and the (-1)-divisors.

Run: python demos/02_minus_one_census.py
"""
# %% The E_8 case: 2160 classes
import time

from coxabc import Params, classes_up_to_point_symmetry, format_divisor, minus_one_divisors
from coxabc.weyl import verify_sqm_duality

t0 = time.perf_counter()
orb = minus_one_divisors(Params(2, 3, 5))
classes = classes_up_to_point_symmetry(orb)
print(f"{len(orb)} divisors in {len(classes)} classes ({time.perf_counter() - t0:.2f}s)")
for rep, n in classes:
    print(f"  {format_divisor(rep):34s} x{n}")

# %% Del Pezzo surfaces: blow-ups of P^2 at 4..8 points
for b in range(1, 6):
    print(f"(2,{b},3): {len(minus_one_divisors(Params(2, b, 3)))}")

# %% (a,b,c) and (c,b,a) have equal censuses
report = verify_sqm_duality(Params(3, 2, 4))
print("\nduality", report["abc"]["params"], report["abc"]["count"], report["cba"]["params"], report["cba"]["count"])

# %% Factor symmetry merges classes when there are several factors
orb = minus_one_divisors(Params(3, 2, 3))
print(len(classes_up_to_point_symmetry(orb)), "point classes,",
      len(classes_up_to_point_symmetry(orb, include_factor_symmetry=True)), "with factor swaps")
