"""Tell Salem numbers from Pisot numbers with exact root counting.

A Salem polynomial is palindromic with one root outside the unit circle, one
inside, and the rest on it.  Writing P(x) = x^s q(x + 1/x) turns "on the
circle" into "real and inside (-2, 2)", which Sturm sequences count exactly.
"""

from lehmer import classify, mahler_measure, multiply, parse

examples = {
    "Lehmer's polynomial": "1,1,0,-1,-1,-1,-1,-1,0,1,1",
    "smallest Salem quartic": "1,-1,-1,-1,1",
    "plastic-number cubic": "-1,-1,0,1",
    "golden square": "1,-3,1",
    "Lehmer times x^2 + x + 1": multiply(parse("1,1,0,-1,-1,-1,-1,-1,0,1,1"), parse("1,1,1")).to_wire(),
    "sixth cyclotomic": "1,-1,1",
    "two roots outside": "1,-1,-4,0,1",
}

for name, wire in examples.items():
    p = parse(wire)
    c = classify(p)
    line = f"{name:28s} {c.kind.value:18s}"
    if c.dominant_root is not None:
        line += f" root {c.dominant_root:.10f}   M = {mahler_measure(p).value:.10f}"
    print(line)
    if c.kind.value == "Salem":
        cert = c.certificate
        print(
            f"{'':28s}   trace polynomial {cert['trace_polynomial']}: "
            f"{cert['roots_above_2']} root above 2, "
            f"{cert['roots_in_open_interval']} in (-2, 2)"
        )
