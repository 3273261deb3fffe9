"""Closed-geodesic lengths from traces.

A hyperbolic element with trace t = u + 1/u translates its axis by 2 log|u|
in the hyperbolic plane (log|u| in hyperbolic 3-space, where u may be
complex).  When only the minimal polynomial of the trace is known, the
polynomial of u is the resultant of q(y) and x^2 - y x + 1, and the length is
read off its Mahler measure.
"""

import math

from lehmer import LEHMER_POLYNOMIAL, DomainError, displacement_from_trace, parse, to_trace_polynomial

print(" t   length (roots)      2 acosh(t/2)")
for t in range(3, 9):
    d = displacement_from_trace(parse(f"{-t},1"))
    print(f"{t:2d}   {d.length_dim2:.15f}   {2 * math.acosh(t / 2):.15f}")

# a quadratic trace field: t^2 - t - 3 has roots (1 +/- sqrt 13) / 2
d = displacement_from_trace(parse("-3,-1,1"))
print(f"\ntrace polynomial y^2 - y - 3 lifts to {d.u_polynomial}")
print(f"  length in dimension 2: {d.length_dim2:.12f}")
print(f"  length in dimension 3: {d.length_dim3:.12f}")

# the shortest lengths come from small measures
q = to_trace_polynomial(LEHMER_POLYNOMIAL).q
d = displacement_from_trace(q)
print(f"\ntrace polynomial {q} lifts to {d.u_polynomial}")
print(f"  length in dimension 3: {d.length_dim3:.12f}")

for wire, label in (("-2,1", "t = 2"), ("-1,1", "t = 1")):
    try:
        displacement_from_trace(parse(wire))
    except DomainError as exc:
        print(f"\n{label}: {exc}")
