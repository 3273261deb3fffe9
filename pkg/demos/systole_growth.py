"""How fast must volume grow for the systole to shrink?

For arithmetic manifolds, short geodesics force large trace-field degree,
which in turn forces large volume; chaining a Dobrowolski-type bound with a
degree/volume bound gives a systole lower bound that decays like
(log log log V / log log V)^3.  Non-arithmetic examples only need volume of
order 1 / systole^(n-2).  The constants below are placeholders; only the
shapes of the two curves are meaningful.
"""

from lehmer import BoundConstants, growth_table
from lehmer.bounds import monotone_volume_threshold

k = BoundConstants()
start = monotone_volume_threshold(k)
print(f"the arithmetic bound decreases from volume {start:.4g} on\n")
print(f"{'volume':>12} {'arith. systole >=':>20} {'non-arith. systole <=':>22}")
for vol, arith, nonarith in growth_table(start, 1e200, 9, k):
    print(f"{vol:12.3e} {arith:20.6e} {nonarith:22.6e}")

print(
    "\nThe arithmetic lower bound barely moves over 190 orders of magnitude,"
    "\nwhile the non-arithmetic upper bound collapses like 1/volume."
)
