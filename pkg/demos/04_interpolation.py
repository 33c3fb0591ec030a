"""Sections through fat points over F_p.

Run: python demos/04_interpolation.py
"""
# %% Dimensions of linear systems
from coxabc import Params, parse_divisor
from coxabc.interp import InterpConfig, condition_matrix, h0, h0_consensus, sample_points, section_basis

cfg = InterpConfig()  # prime 2^31 - 1, seed 0
cases = [((2, 3, 3), "[3 | 1,1,1,1,1,1]"), ((2, 3, 4), "[2 | 1,1,1,1,1,1,1]"),
         ((3, 2, 3), "[1,1 | 1,1,1,1,1]"), ((2, 1, 3), "[2 | 3,0,0,0]")]
for triple, text in cases:
    p = Params(*triple)
    d = parse_divisor(text, p)
    rows, cols = condition_matrix(p, d, cfg).shape
    print(f"{triple} {text:24s} conditions {rows:2d} x {cols:2d}  h0 = {h0(p, d, cfg)}")

# %% Independent seeds agree
p = Params(2, 3, 3)
print(h0_consensus(p, parse_divisor("[3 | 1,1,1,1,1,1]", p), cfg, seeds=(0, 1, 2)))

# %% The line through two of six points misses the other four
d = parse_divisor("[1 | 1,1,0,0,0,0]", p)
basis = section_basis(p, d, cfg)
print("values at the six points:", basis.evaluate(sample_points(p, cfg).reshape(6, -1))[0].tolist())
