"""From vanishing orders to affine coordinates on the skeleton.

The distinguished sections s_0 .. s_ell are known to the tool only through
their vanishing orders along the components.  On each simplex, the order
rows restrict to affine functions of the barycentric weights; this script
prints the canonical orders of a square degeneration and the vertex value
table that drives every separation argument.
"""

from fractions import Fraction

from skeletrop import (build_from_facets, canonical_order_matrix,
                       concavity_lower_bound, restrict_affine, validate_orders)

# Four surfaces arranged in a 4-cycle (a "square" degeneration).
square = build_from_facets(ell=4, d=1, facets=[[1, 2], [2, 3], [3, 4], [1, 4]])
orders = canonical_order_matrix(square)
print("canonical order matrix (row i = section s_i, column j = component j):")
for i, row in enumerate(orders.orders):
    print(f"  s_{i}: {row}")
print("order axioms violated:", validate_orders(orders, square) or "none")

print("\nvertex value table for g_i = -log|s_i/s_0|:")
header = "      " + "".join(f"  v_{j}" for j in range(1, 5))
print(header)
for i in range(1, 5):
    values = [restrict_affine(orders, i, square.stratum(str(j))).evaluate((1,))
              for j in range(1, 5)]
    print(f"  g_{i}:" + "".join(f"  {str(v):>3}" for v in values))
print("(0 at its own vertex, 1 at the two neighbors, and 1 elsewhere here)")

edge = square.stratum("1-2")
g1 = restrict_affine(orders, 1, edge)
print(f"\ng_1 on the edge {edge.vertices}: coefficients {g1.coefficients}, "
      f"so g_1(u) = u_2 there")
for t in (0, Fraction(1, 4), Fraction(1, 2), 1):
    print(f"  u = ({1 - t}, {t}) -> g_1 = {g1.evaluate((1 - t, t))}")

# Rows with effective horizontal part obey a concavity lower bound: the
# value at u dominates the weighted average of the vertex orders.  With
# orders-only data the two coincide.
far = square.stratum("3-4")
u = (Fraction(2, 5), Fraction(3, 5))
print(f"\ng_1 on the far edge {far.vertices} at u = {u}:")
print("  affine value      ", restrict_affine(orders, 1, far).evaluate(u))
print("  concavity bound   ", concavity_lower_bound(orders, 1, far, u))
