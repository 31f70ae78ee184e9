"""Seeded random sweep: strong and globalizable coincide.

Half the samples are restrictions of random global actions (always strong),
half are rejection-sampled partial actions. Every sample is run through the
strong checker, the globalization test and the three-route comparison.
"""
from collections import Counter

from pactkit.diagram import route_tables
from pactkit.globalize import decide_globalizable
from pactkit.paction import check_partial
from pactkit.testkit import GenConfig, gen_partial_maybe_nonstrong, gen_strong_partial

cfg = GenConfig(seed=2026, samples=400)
tally = Counter()
for i in range(cfg.samples):
    d = gen_strong_partial(cfg, i) if i % 2 == 0 else gen_partial_maybe_nonstrong(cfg, i, tally)
    strong = check_partial(d).is_strong
    tally[f"strong={strong} globalizable={decide_globalizable(d)}"] += 1
    tally["routes agree"] += len(set(route_tables(d).values())) == 1

for key in sorted(k for k in tally if "=" in k):
    print(f"{key:<36} {tally[key]}")
print(f"{'routes agree':<36} {tally['routes agree']} / {cfg.samples}")
print(f"rejection sampler: {tally['attempts']} attempts for {cfg.samples // 2} partial actions")
