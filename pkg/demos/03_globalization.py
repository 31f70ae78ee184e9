"""The quotient globalization and its verification.

Y is built from copies of X indexed by the monoid, glued wherever the partial
action is defined. For a strong partial action the result restricts back to
the original; otherwise some square fails to be a pullback.
"""
from pactkit import PartialActionDatum, build_globalization, idempotent_monoid, verify_globalization
from pactkit.paction import restrict
from pactkit.textio import format_globalization

M = idempotent_monoid()
for label, image in [("strong", 0), ("not strong", 1)]:
    d = PartialActionDatum.from_dicts(M, 2, [{0: 0, 1: 1}, {0: image}])
    G = build_globalization(d)
    print(f"--- {label}: a(0) = {image}")
    print(format_globalization(G), end="")
    v = verify_globalization(d, G.action, G.embed)
    print("globalization:", v.is_globalization)
    if not v.is_globalization:
        print(f"  square for element {v.failing_m} differs by {v.pullback_mismatch}")
    else:
        print("  restriction recovers the datum:", restrict(G.action, G.embed) == d)
    print()
