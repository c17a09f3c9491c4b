"""Walk through the type-A tube condition and enclose the biharmonic radii."""

from bihcheck import tubes
from bihcheck.exact import RationalInterval
from fractions import Fraction

from bihcheck.realalg import isolate_roots, refine_root

for n, m in [(2, 0), (3, 1), (5, 2)]:
    cond = tubes.biharmonic_polynomial(tubes.spectrum("A", n, m))
    roots = isolate_roots(cond.poly, RationalInterval.open(0, None), "X")
    print(f"n={n} m={m}  {cond.poly}  radicand {tubes.radicand(n, m)}")
    for iv in roots.intervals:
        tight = refine_root(cond.poly, iv, Fraction(1, 10**6), "X")
        print(f"    root in [{float(tight.lo):.7f}, {float(tight.hi):.7f}]")

for family, n in (("D", 9), ("E", 15)):
    cond = tubes.biharmonic_polynomial(tubes.spectrum(family, n))
    q1, q2 = tubes.POSITIVITY_SPLIT[family]
    print(f"{family}: {cond.poly} = X^2*({q1}) + ({q2})")
