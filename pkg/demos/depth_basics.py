"""Exact halfspace depth on a small dataset, duplicates and all.

Run:  python3 demos/depth_basics.py
"""

from fractions import Fraction as F

from halfmed import dataset, tukey_depth

# Four points, one of them doubled: the kind of input float pipelines mangle.
ds = dataset([(0, 0), (2, 0), (1, 1), (1, 1)])

print(f"dataset: {ds.n} points in d={ds.dim}")
for p in ds.points:
    print(f"  {tuple(map(str, p))}")
print()

for label, x in [
    ("the doubled point", (F(1), F(1))),
    ("the segment midpoint", (F(1), F(0))),
    ("a hull vertex", (F(0), F(0))),
    ("outside the hull", (F(5), F(5))),
]:
    res = tukey_depth(x, ds)
    print(f"depth at {label} {tuple(map(str, x))}:")
    print(f"  value    {res.value}  ({res.count} of {res.n} points)")
    print(f"  witness  {tuple(map(str, res.witness))}  "
          f"(a closed halfspace normal attaining the minimum)")
    print(f"  boundary {res.boundary_count} points on the witness hyperplane")
    print()

print("Duplicates count with multiplicity: the doubled point reaches depth 1/2")
print("even though no other point exceeds 1/4 — degeneracy changes the answer.")
