"""Finite monoids as multiplication tables.

Builds the small monoids used throughout, shows what validation reports on a
bad table, and generates a monoid from transformations of a finite set.
"""
from pactkit.errors import BadIdentity, NotAssociative
from pactkit.monoid import fixture_monoids, monoid_from_transformations, validate_monoid

print("Fixture monoids:")
for m in fixture_monoids():
    print(f"  {m.name:<11} size {m.size}  table {m.table}")

print("\nDeclaring the wrong identity for {e, a} with a*a = a:")
try:
    validate_monoid([[0, 1], [1, 1]], identity=1)
except BadIdentity as exc:
    print("  rejected:", exc)

print("\nA table that is not associative:")
try:
    validate_monoid([[0, 1, 2], [1, 2, 1], [2, 2, 1]], identity=0)
except NotAssociative as exc:
    print("  rejected:", exc)

# the maps x -> 0 and the swap on two points generate all four self-maps
m = monoid_from_transformations(2, [(0, 0), (1, 0)])
print(f"\nClosure of a constant map and the swap on 2 points: {m.size} elements")
for row in m.table:
    print("  ", row)
