# Types, LC tables and duality
#
# The type of an equation records how its two sides' degree ranges compare
# and whether each side alternates.  Types combine by fixed rules, which
# leaves only 22 of the 36 conceivable quadruples.

from lcrid import dual_network, format_network, is_locally_identifiable, parse_network, type_closure
from lcrid.typesys import FORBIDDEN_TYPES, LC_TABLES

closed = sorted(type_closure())
print(len(closed), "reachable types;", len(FORBIDDEN_TYPES), "never occur")
for t in closed:
    print("  ", t)

# For inductor/capacitor networks only four types exist, A..D.  The tables
# say what happens when two identifiable pieces are combined.

for op, rows in LC_TABLES.items():
    print(f"\n{op.value}:")
    for row in rows:
        js = row.to_json()
        print(f"   {''.join(js['pair'])}  coefficients {js['nonmonic']:8} -> {js['result']}"
              f"  {'identifiable' if row.identifiable else ''}")

# Swapping series with parallel and L with C gives the dual network.  Its
# verdict is always the same.

for text in ["(R1 & C1) | (R2 & L1)", "L1 | (R1 & (C1 | C2 | L2))"]:
    n = parse_network(text)
    d = dual_network(n)
    a = is_locally_identifiable(n).locally_identifiable
    b = is_locally_identifiable(d).locally_identifiable
    print(f"\n{format_network(n)}  ->  {format_network(d)}   ({a}, {b})")
