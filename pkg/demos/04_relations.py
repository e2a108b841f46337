# Relations among coefficients
#
# When a network has more coefficients than parameters, the coefficients
# satisfy polynomial equations.  We find them one graded piece at a time by
# sampling and taking a kernel, then confirm each one symbolically.

from lcrid import find_relations, parse_network

n = parse_network("(R1 | C1) & L1")
for r in find_relations(n, cdeg=1, ddeg=1, wdeg=2):
    print(f"(R|C)&L:  {r} = 0    exact: {r.verified_exact}")

# Four elements, six coefficients: one quartic relation.  Compare it with the
# resultant of c2 x^2 + c1 x + c0 and d2 x^2 + d1 x + d0.

n = parse_network("(R1 | C1) & (R2 | L1)")
for r in find_relations(n, cdeg=2, ddeg=2, wdeg=4):
    print(f"\n(R1|C)&(R2|L):  {r} = 0    exact: {r.verified_exact}")
print("resultant:      c0^2*d2^2 - c1*c0*d2*d1 + c2*c0*d1^2 - 2*c2*c0*d2*d0 + c1^2*d2*d0 - c2*c1*d1*d0 + c2^2*d0^2")

# The swapped network (R1&C)|(R2&L) satisfies a different relation in the
# same stratum.

n = parse_network("(R1 & C1) | (R2 & L1)")
for r in find_relations(n, cdeg=2, ddeg=2, wdeg=4):
    print(f"\n(R1&C)|(R2&L):  {r} = 0")
