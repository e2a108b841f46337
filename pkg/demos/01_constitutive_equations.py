# Constitutive equations of small circuits
#
# Every series-parallel network of resistors, inductors and capacitors obeys a
# single linear ODE  f1(D) V = f2(D) I.  Build a few and look at them.

from lcrid import Param, build_consteq, format_network, parse_network

# Series R and L: the voltages add.

n = parse_network("R1 & L1")
print(format_network(n), "   ", build_consteq(n))

# In parallel the currents add instead.  Nothing is divided out, so the
# equation keeps a common factor of the operators.

n = parse_network("R1 | L1")
print(format_network(n), "   ", build_consteq(n))

# A longer chain.  The capacitor parameter is the inverse capacitance, which
# keeps every coefficient a polynomial.

n = parse_network("L1 & R1 & C1")
print(format_network(n), "   ", build_consteq(n))

# Five elements, third order on both sides.

n = parse_network("L1 | (R1 & (C1 | C2 | L2))")
print(format_network(n))
print("   ", build_consteq(n))

# The projective form gives each element two parameters x_0, x_1, so every
# coefficient is homogeneous.

n = parse_network("(R1 | C1) & L1")
print(format_network(n))
print("    affine:    ", build_consteq(n))
print("    projective:", build_consteq(n, Param.PROJECTIVE))
