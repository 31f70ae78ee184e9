"""A strong partial action on a finite space with no globalization.

Z2 acts on two points by identities. The whole space is indiscrete, but the
domain of the non-identity element carries the discrete topology. Set-wise
everything is global; topologically, the square that would have to be a
pullback forces the identity from the indiscrete to the discrete space to be
continuous, and it is not.
"""
from pactkit.fintop import FinTopSpace, top_counterexample_report
from pactkit.textio import format_top

coarse, fine = FinTopSpace.indiscrete(2), FinTopSpace.discrete(2)
print("space:\n" + format_top(coarse) + "domain of the non-identity element:\n" + format_top(fine))

r = top_counterexample_report(coarse, fine)
print("strong:", r.strong)
print("globalizable:", r.globalizable)
print(f"comparison map at element {r.failing_m}: {list(r.mediator.images)}, continuous: {r.mediator_continuous}")

print("\nWith equal topologies the same construction succeeds:")
print("  counterexample:", top_counterexample_report(coarse, coarse).confirmed)
