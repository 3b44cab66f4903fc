"""Faithfulness: global injectivity of the skeleton coordinates.

Unimodularity makes every piece injective; faithfulness additionally needs
the images of the open simplices of distinct strata to be disjoint.  The
check runs two independent routes per pair: a separating coordinate read
off the order matrix, and an exact polytope-disjointness oracle over the
rationals.  The banana degeneration (two curves meeting twice) is the
canonical failure: its two edges carry identical coordinates.
"""

from skeletrop import (canonical_order_matrix, check_faithful, emit_certificate,
                       generate_fixture, images_relint_disjoint_exact, input_digest,
                       build_map, separation_certificate)

pentagon = generate_fixture("cycle", n=5)
report = check_faithful(pentagon.complex, canonical_order_matrix(pentagon.complex),
                        mode="both")
print(f"pentagon: {report.overall} "
      f"({len(report.certificates)} strata, {len(report.pairs)} pairs)")

coords = build_map(pentagon.complex, canonical_order_matrix(pentagon.complex))
orders = canonical_order_matrix(pentagon.complex)
a = separation_certificate(coords, orders, "1-2", "3-4")
print(f"separating coordinate for edges {{1,2}} vs {{3,4}}: g_{a} "
      f"(below 1 on the first open edge, at least 1 on the second)")

verdict = images_relint_disjoint_exact(coords, "1-2", "3-4")
print(f"exact oracle on the same pair: disjoint={verdict.disjoint} "
      f"via {verdict.method}")

print()
banana = generate_fixture("cycle", n=2)
report = check_faithful(banana.complex, canonical_order_matrix(banana.complex),
                        mode="both")
print(f"banana: {report.overall}")
for e in report.pairs:
    if e.disjoint is False:
        witness = [str(x) for x in e.exact.witness]
        print(f"  colliding pair {e.left}/{e.right}: both open edges hit {witness}")
for d in report.defects:
    print(f"  defect: {d}")

print("\ncertificate document (first lines):")
text = emit_certificate(report, input_digest(banana))
print("\n".join(text.splitlines()[:12]))
