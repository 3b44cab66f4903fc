"""Numeric side: basepoint-freeness thresholds and coordinate counts.

How large a twist guarantees the sections exist, and how many sections the
construction uses: ell + d + 1 coordinates for a fiber with ell components
in dimension d.
"""

from skeletrop import BoundQuery, coordinate_count, corollary_twist, phi_upper_bound

print("basepoint-freeness thresholds phi(d):")
print("  d   general d(d+1)/2+1   optimal d+1 (known for d <= 4)")
for d in range(1, 7):
    general = phi_upper_bound(BoundQuery(d=d))
    try:
        optimal = phi_upper_bound(BoundQuery(d=d, mode="fujita"))
    except ValueError:
        optimal = "conjectural"
    print(f"  {d}   {general:>18}   {optimal}")

print("\nsections used for a faithful tropicalization (ell + d + 1):")
for ell, d in ((2, 1), (4, 2), (6, 3)):
    print(f"  ell={ell}, d={d}: {coordinate_count(ell, d)} sections")

print("\nspecial cases in dimension <= 4:")
for d in range(1, 5):
    print(f"  d={d}: trivial canonical bundle from twist "
          f"{corollary_twist(d, 'trivial_canonical')}, "
          f"ample canonical from twist {corollary_twist(d, 'ample_canonical')}")
