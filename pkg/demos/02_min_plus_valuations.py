"""Min-plus valuations of monomial families.

At a point of a canonical simplex with barycentric weights u, the negative
log absolute value of a monomial family is the minimum of <u, m> over the
exponent support.  Only the support matters; coefficients enter as
present/absent.
"""

from fractions import Fraction

from skeletrop import MonomialSupport, eval_min_plus, trop_eq, trop_normalize, INFINITY

u = (Fraction(1, 3), Fraction(2, 3))

unit = MonomialSupport.from_exponents([(0, 0)])
print("unit (nonvanishing function):", eval_min_plus(unit, u))

uniformizer = MonomialSupport.from_exponents([(1, 1)])
print("uniformizer T1*T2 at any simplex point:", eval_min_plus(uniformizer, u))

coords = MonomialSupport.from_exponents([(1, 0), (0, 1)])
print("T1 + T2 at u = (1/3, 2/3):", eval_min_plus(coords, u))

# The valuation is concave and piecewise linear in u.
f = MonomialSupport.from_exponents([(3, 0), (1, 1), (0, 4)])
a = (Fraction(1, 4), Fraction(3, 4))
b = (Fraction(7, 8), Fraction(1, 8))
mid = tuple((x + y) / 2 for x, y in zip(a, b))
print("\nconcavity on", sorted(f.exponents), ":")
print("  value at midpoint    ", eval_min_plus(f, mid))
print("  average of endpoints ", (eval_min_plus(f, a) + eval_min_plus(f, b)) / 2)

# Products of families with generic coefficients: supports add, values add.
g = MonomialSupport.from_exponents([(0, 2), (1, 0)])
print("\nmultiplicativity:",
      eval_min_plus(f.minkowski_sum(g), u) == eval_min_plus(f, u) + eval_min_plus(g, u))

# Tropical projective points: coordinates modulo a common shift.
x = trop_normalize((3, 5, INFINITY))
print("\nnormalized (3, 5, oo):", x.coords)
print("same projective point as (10, 12, oo)?", trop_eq(x, (10, 12, INFINITY)))
print("same as (3, 5, 7)?", trop_eq(x, (3, 5, 7)))
