# Which circuits can be recovered from their equation?
#
# A network is locally identifiable when its parameters can be read back
# (up to finitely many choices) from the normalized coefficients.  The test is
# the rank of a Jacobian at random points mod p = 2^61 - 1.

from lcrid import count_criterion, enumerate_networks, is_locally_identifiable, parse_network


def show(text):
    v = is_locally_identifiable(parse_network(text), seed=42)
    word = "identifiable" if v.locally_identifiable else "NOT identifiable"
    print(f"{text:36} rank {v.generic_rank}/{v.n_params}, {v.n_nonmonic} coefficients  -> {word}")


show("L1 & R1 & C1")
show("R1 | R2")

# More coefficients than parameters is not enough on its own:

show("L1 | (R1 & (C1 | C2 | L2))")

# A chain where adding one resistor helps and a second one hurts.

show("(R1 | C1) & (R2 | L1)")
show("(R1 | C1) & (R2 | L1) & R3")
show("(R1 | C1) & (R2 | L1) & R3 & R4")

# With only two element kinds, counting coefficients is enough.  Check it on
# every such network with up to five elements.

total = agree = 0
for kinds in ("RL", "RC", "LC"):
    for n in enumerate_networks(kinds, 5):
        total += 1
        agree += count_criterion(n).locally_identifiable == is_locally_identifiable(n).locally_identifiable
print(f"\ncount criterion vs rank test: {agree}/{total} agree")
