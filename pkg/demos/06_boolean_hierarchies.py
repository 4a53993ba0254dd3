"""
Hierarchies in finite boolean algebras
======================================

Levels generated from a family C by complements and meets, the
alternating union/intersection chain of a family of sets, and a quotient
of a field of sets by an ideal.
"""

from descset.hierarchy import FieldOfSets, FiniteBA, hierarchy_levels, min_ord, powerset_field, quotient, ring_levels

ba = FiniteBA(2)  # elements 0..3 as bitmasks over two atoms
levels, order = hierarchy_levels(ba, {0b01})
for k, lev in enumerate(levels):
    print(f"level {k}: {sorted(lev)}")
print("first full level:", order)

print("empty C:", hierarchy_levels(ba, set()))
print("least order over all C in the 8-element algebra:", min_ord(FiniteBA(3)))

# union then intersection closure, until nothing changes
fam = FieldOfSets("abc", [frozenset(), frozenset("a"), frozenset("b")], "family")
levels, index, closure = ring_levels(fam, require_ring=False)
print("stabilizes at index", index, "with", len(closure), "members")

# F/I for the power set of {0, 1} and the ideal generated by {0}
q = quotient(powerset_field((0, 1)), [frozenset(), frozenset({0})])
print("quotient has", q.algebra.size, "elements; classes:", q.classes(), "audit:", q.audit())
