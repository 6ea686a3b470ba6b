"""The bar construction, its homology, and explicit small models.

The reduced bar complex of an augmented graded algebra computes
Tor^A(F_p, F_p).  For one-generator algebras the answer has a small
model: an exterior class, a divided power tower, or their tensor
product.  The package carries explicit chain maps in both directions
and checks on the nose that they are quasi-isomorphisms and respect
the shuffle product.
"""

from hochhom import (
    AlgebraPresentation,
    bar_homology,
    iterated_tor,
    polynomial,
    tor_presentation,
    truncated,
    verify_quasi_iso,
)

p = 3

print(f"bar homology of F_{p}[x]/x^3 with |x| = 2, by (hom, internal):")
alg = AlgebraPresentation(p, (truncated("x", 3, 2),))
dims = bar_homology(alg, 5, 16)
for (h, i), d in sorted(dims.by_bidegree().items()):
    print(f"  ({h:2d},{i:3d}): {d}")
print("one exterior class (1,2) times divided powers of a class (2,6)")

print()
print("the same answer by rewriting the presentation:")
T = tor_presentation(alg, 16)
for g in T.generators:
    print(f"  {g.name:8s} {g.kind:10s} ({g.hom},{g.internal})")

print()
print("explicit quasi-isomorphisms onto the small models:")
for case, xd, pp, m in (("poly", 2, 3, None), ("truncated", 2, 3, 3),
                        ("exterior", 3, 3, None)):
    rep = verify_quasi_iso(case, xd, pp, m, max_s=4, max_internal=12)
    status = "ok" if rep.ok else "FAILED"
    print(f"  {case:10s} |x|={xd} p={pp} m={m}: {status}")

print()
print("iterating Tor from a degree-2 polynomial class (p = 2):")
start = AlgebraPresentation(2, (polynomial("u", 2),))
for it in range(4):
    dims = iterated_tor(start, it, 16).total_series(16)
    sig = " + ".join(f"{c}t^{d}" if d else str(c)
                     for d, c in sorted(dims.items()))
    print(f"  after {it} rewrites: {sig}")
