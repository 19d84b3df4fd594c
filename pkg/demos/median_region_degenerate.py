"""Depth regions and the halfspace median on degenerate (non-generic) data.

Run:  python3 demos/median_region_degenerate.py
"""

from fractions import Fraction as F

from halfmed import dataset, depth_region, enumerate_irrotatable, median_region

ds = dataset([(0, 0), (2, 0), (1, 1), (1, 1)])

print("Nested depth regions (each level is a convex polytope):")
for k in (1, 2):
    tau = F(k, ds.n)
    poly = depth_region(ds, tau).polytope
    verts = ", ".join(str(tuple(map(str, v))) for v in poly.vertices)
    print(f"  depth >= {tau}: {len(poly.vertices)} vertices: {verts}")
poly = depth_region(ds, F(3, 4)).polytope
print(f"  depth >= 3/4: {'empty' if poly.empty else 'non-empty'} "
      f"(nothing exceeds the maximal depth)")
print()

med = median_region(ds)
print(f"maximal depth lambda* = {med.lambda_star}")
print(f"halfspace median      = {tuple(map(str, med.median))}")
print()

print("Region certificates at the median level (boundary-supported halfspaces")
print("that cannot rotate to cut more points):")
for cert in enumerate_irrotatable(ds, F(1, 2)):
    print(f"  normal {tuple(map(str, cert.halfspace.normal))} "
          f"offset {cert.halfspace.offset}: "
          f"{len(cert.boundary_indices)} boundary points, cuts {cert.cut_count}")
print()
print("On generic data every certificate has exactly 2 boundary points and")
print("cuts exactly (required - 1); the duplicated point makes two of these")
print("carry 3 boundary points, one of them cutting 0 — the degenerate shape")
print("a general-position assumption would rule out.")
