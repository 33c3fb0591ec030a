"""Checking degree-1 generation of the Cox ring in low degree.

Run: python demos/05_cox_generation.py   (about 15 s)
"""
# %% Degree-1 effective classes: (-1)-divisors plus occasional extras
from coxabc import Params, anticanonical, format_divisor
from coxabc.coxgen import (
    cox_generation_report,
    decompositions,
    degree_one_effectives,
    generator_degree_bound,
    multiplication_image_rank,
)
from coxabc.interp import InterpConfig, h0
from coxabc.weyl import minus_one_divisors

cfg = InterpConfig()
for triple in [(2, 3, 3), (2, 5, 3), (2, 3, 4), (3, 2, 3)]:
    p = Params(*triple)
    s = degree_one_effectives(p, cfg)
    extra = sorted(set(s.classes) - set(minus_one_divisors(p)), key=lambda d: d.coords)
    print(triple, len(s), "extras:", [format_divisor(e) for e in extra])

# %% One class by hand: -K on the degree-6 del Pezzo surface
p = Params(2, 1, 3)
s = degree_one_effectives(p, cfg)
k = anticanonical(p)
decs = decompositions(k, s)
print(f"\n-K = sum of 3 degree-1 classes in {len(decs)} ways; "
      f"image rank {multiplication_image_rank(p, k, decs, cfg, s)} of h0 {h0(p, k, cfg)}")

# %% Full reports
for triple, deg in [((2, 2, 3), 4), ((3, 2, 3), 2)]:
    rep = cox_generation_report(Params(*triple), deg, cfg)
    print(f"{triple} up to degree {deg}: {len(rep.rows)} classes, all generated: {rep.verdict}, "
          f"generator degree bound {generator_degree_bound(Params(*triple))}")
print(rep.to_csv().splitlines()[0])
