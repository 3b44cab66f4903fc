"""Dual intersection complexes: strata, faces, and points in simplices.

A degenerate fiber with ell components determines a complex: one vertex
per component, one simplex per stratum of the intersection pattern.  This
script builds a few complexes, walks their face structure, and moves
points between a simplex and its faces.
"""

from fractions import Fraction

from skeletrop import (SimplexPoint, build_delta_complex, build_from_facets,
                       connected_components, face_restriction,
                       relint_membership, validate_complex)

# Two surfaces meeting along a curve, with a third surface hitting one of
# them: facets name the maximal intersections, faces are generated.
complex_ = build_from_facets(ell=4, d=2, facets=[[1, 2, 3], [3, 4]])
print("strata of the complex on facets {1,2,3}, {3,4}:")
for s in complex_.strata:
    print(f"  {s.id:>7}  vertices {s.vertices}  dimension {s.dim}")
print("violations:", validate_complex(complex_) or "none")
print("connected components:", connected_components(complex_))

print()
triangle = complex_.stratum("1-2-3")
print(f"faces of {triangle.id}: {sorted(complex_.faces_of(triangle).items(), key=str)}")

# A point on the triangle with a vanishing weight sits on an edge; the face
# restriction renames its coordinates to that edge, without moving it.
p = SimplexPoint("1-2-3", (Fraction(1, 3), Fraction(2, 3), 0))
print(f"\npoint {p.u} on {p.stratum}: relative interior? {relint_membership(p)}")
q = face_restriction(complex_, p, "1-2")
print(f"restricted to the edge: {q.stratum} with weights {q.u}, "
      f"relative interior? {relint_membership(q)}")

# Delta-complexes allow two strata with the same vertex set, e.g. two
# curves meeting in two points ("banana" degeneration).
banana = build_delta_complex(
    ell=2, d=1,
    strata=[("v1", [1]), ("v2", [2]), ("e1", [1, 2]), ("e2", [1, 2])],
    face_entries=[("e1", [1], "v1"), ("e1", [2], "v2"),
                  ("e2", [1], "v1"), ("e2", [2], "v2")])
print("\nbanana complex (two edges on the same two vertices):")
print("  violations:", validate_complex(banana) or "none")
print("  e1 and e2 share a vertex set but are distinct strata:",
      banana.stratum("e1").vertices == banana.stratum("e2").vertices)
