"""Three constructions of the same reflection, and the coequalizer theorem.

The quotient, the colimit of the associated diagram and the coequalizer of
the parallel pair give identical tables. The theorem check then confirms,
against every global action on at most three points, that the reflection's
transpose is a coequalizer and that the coequalizer yields a reflection.
"""
from pactkit import PartialActionDatum, idempotent_monoid
from pactkit.diagram import associated_diagram, build_pq, check_reflection_coequalizer_theorem, route_tables

d = PartialActionDatum.from_dicts(idempotent_monoid(), 2, [{0: 0, 1: 1}, {0: 1}])

diagram = associated_diagram(d)
print(f"associated diagram: {len(diagram.node_sizes)} nodes, {len(diagram.arrows)} arrows")
pq = build_pq(d)
print("parallel pair p:", pq.p.images, " q:", pq.q.images)

for name, (k, beta, iota) in route_tables(d).items():
    print(f"{name:<12} |Y|={k} beta={beta} iota={iota}")

report = check_reflection_coequalizer_theorem(d, max_target=3)
print(f"\nreflection -> coequalizer: {report.reflection_to_coequalizer}")
print(f"coequalizer -> reflection: {report.coequalizer_to_reflection}")
print(f"global actions tested as targets: {report.targets_checked}")
