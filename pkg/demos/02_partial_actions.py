"""Partial actions and the strong condition.

Two partial actions of {e, a} (a*a = a) on {0, 1} differ only in where a
sends 0. One is strong, the other is not, and the checker names the witness.
"""
from pactkit import PartialActionDatum, check_partial, idempotent_monoid
from pactkit.finset import FinMap
from pactkit.paction import GlobalAction, restrict
from pactkit.monoid import cyclic_group

M = idempotent_monoid()
fixing = PartialActionDatum.from_dicts(M, 2, [{0: 0, 1: 1}, {0: 0}])
moving = PartialActionDatum.from_dicts(M, 2, [{0: 0, 1: 1}, {0: 1}])

for label, d in [("a fixes 0", fixing), ("a sends 0 to 1", moving)]:
    report = check_partial(d)
    print(f"{label}: partial={report.is_partial} strong={report.is_strong}")
    for line in report.lines():
        print("   ", line)

print("\nRestricting a global action always gives a strong partial action.")
swap = GlobalAction(cyclic_group(2), 2, ((0, 1), (1, 0)))
d = restrict(swap, FinMap(1, 2, (0,)))
print("  swap restricted to {0}:", d.as_dicts(), "strong:", check_partial(d).is_strong)
