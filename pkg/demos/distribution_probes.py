"""Statistical probes: symmetry, smoothness, and depth continuity.

Run:  python3 demos/distribution_probes.py   (~20 s of Monte Carlo)
"""

from halfmed import (
    atom_on_hyperplane,
    ball_sphere_mixture,
    depth_continuity_probe,
    discrete_cloud,
    halfspace_symmetry_probe,
    smoothness_probe,
)

center = (0.0, 0.0)

print("== ball/sphere mixture: not absolutely continuous, yet smooth ==")
mix = ball_sphere_mixture(2)
print(halfspace_symmetry_probe(mix, center, N=100_000))
print(smoothness_probe(mix, center, N=100_000))
print(depth_continuity_probe(mix, center, (1.0, 0.0)))
print()

print("== hyperplane atom (mass 0.4 on a line): non-smooth, depth jumps ==")
atom = atom_on_hyperplane(2, m0=0.4)
rep = smoothness_probe(atom, center, N=100_000)
print(rep)
print(f"   witness direction {rep.details['witness_direction']}: the slab mass")
print(f"   never shrinks below the atom's weight")
cont = depth_continuity_probe(atom, center, (1.0, 0.0))
print(cont)
print(f"   approach-side depth estimates "
      f"{[round(e, 3) for _r, e, _hw in cont.details['side_estimates']]} stay below")
print(f"   (1 - 0.4)/2 = 0.3 (+ tolerance) while the center sits near 1/2")
print()

print("== an asymmetric cloud fails the symmetry probe ==")
cloud = discrete_cloud([(0, 0), (1, 0), (2, 0)])
print(halfspace_symmetry_probe(cloud, (2.0, 0.0), N=100_000))
