"""Acceptance criteria, one check per criterion.

Each check prints a single ``[PASS]``/``[FAIL]`` line with its runtime and
time limit. Run directly for the summary alone::

    python3 tests/test_acceptance.py
"""
from __future__ import annotations

import itertools
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from make_golden import expected_outputs  # noqa: E402
from oracles import oracle_is_strong, parts_of, table_of  # noqa: E402
from pactkit.cli import run  # noqa: E402
from pactkit.diagram import (  # noqa: E402
    check_reflection_coequalizer_theorem,
    coproduct_actions,
    coproduct_transpose,
    coproduct_transpose_inverse,
    route_tables,
)
from pactkit.finset import FinMap, all_maps  # noqa: E402
from pactkit.fintop import ContinuousMap, is_continuous, top_counterexample_report  # noqa: E402
from pactkit.globalize import build_globalization, decide_globalizable, verify_reflection_against  # noqa: E402
from pactkit.monoid import fixture_monoids, idempotent_monoid  # noqa: E402
from pactkit.paction import (  # noqa: E402
    GlobalAction,
    PartialActionDatum,
    check_strong,
    datum_morphism_mask,
    enumerate_global_actions,
    restrict,
)
from pactkit.testkit import (  # noqa: E402
    GenConfig,
    all_topologies,
    enumerate_all_data,
    enumerate_all_partial_actions,
    gen_action_and_mono,
    gen_global_action,
    gen_partial_maybe_nonstrong,
    gen_strong_partial,
    pullback_universal,
    pullback_universal_top,
)

HERE = Path(__file__).parent
IDEM = idempotent_monoid()
STRONG = PartialActionDatum.from_dicts(IDEM, 2, [{0: 0, 1: 1}, {0: 0}])
NONSTRONG = PartialActionDatum.from_dicts(IDEM, 2, [{0: 0, 1: 1}, {0: 1}])


def _monoids_of_size(n):
    return [m for m in fixture_monoids() if m.size == n]


# -- the checks ---------------------------------------------------------------------------

def strong_iff_globalizable():
    counts = {"strong": 0, "non_strong": 0}
    for msize, xsize in [(1, 1), (1, 2), (2, 1), (2, 2), (3, 2)]:
        for monoid in _monoids_of_size(msize):
            tb = table_of(monoid)
            for d in enumerate_all_partial_actions(monoid, xsize):
                strong = check_strong(d).is_strong
                if strong != decide_globalizable(d):
                    return False, f"disagreement on {d.as_dicts()} over {monoid.name}"
                if strong != oracle_is_strong(tb, monoid.identity, parts_of(d), xsize):
                    return False, f"checker disagrees with the oracle on {d.as_dicts()}"
                counts["strong" if strong else "non_strong"] += 1
    ok = counts["strong"] > 0 and counts["non_strong"] > 0
    return ok, f"{counts['strong']} strong, {counts['non_strong']} non-strong, all agree"


def restriction_is_strong():
    cfg = GenConfig(seed=2024, max_monoid=6, max_carrier=6)
    biggest = 0
    for i in range(1000):
        g, iota = gen_action_and_mono(cfg, i)
        if g.monoid.size > 6 or g.carrier_size > 6:
            return False, f"sample {i} exceeds the size bounds"
        if not check_strong(restrict(g, iota)).is_strong:
            return False, f"sample {i}: restriction not strong"
        biggest = max(biggest, g.carrier_size)
    return True, f"1000 restrictions strong (largest |Y| = {biggest})"


def strong_round_trip():
    cfg = GenConfig(seed=77)
    for i in range(500):
        d = gen_strong_partial(cfg, i)
        G = build_globalization(d)
        if restrict(G.action, G.embed) != d:
            return False, f"sample {i} does not round-trip"
    return True, "500 strong data restored exactly"


def route_equality():
    cfg = GenConfig(seed=1234)
    kinds = {True: 0, False: 0}
    for i in range(500):
        d = gen_strong_partial(cfg, i) if i % 2 == 0 else gen_partial_maybe_nonstrong(cfg, i)
        kinds[check_strong(d).is_strong] += 1
        tables = route_tables(d)
        if len(set(tables.values())) != 1:
            return False, f"sample {i}: routes differ"
    ok = kinds[True] > 0 and kinds[False] > 0
    return ok, f"{kinds[True]} strong and {kinds[False]} non-strong data, identical tables"


def reflection_property():
    data = targets = morphisms = 0
    for monoid in fixture_monoids():
        if monoid.size > 2:
            continue
        all_targets = [g for z in range(3) for g in enumerate_global_actions(monoid, z)]
        for xsize in range(3):
            # every datum, partial action or not: the quotient reflects them all
            for d in enumerate_all_data(monoid, xsize):
                data += 1
                G = build_globalization(d)
                for target in all_targets:
                    targets += 1
                    if not verify_reflection_against(d, G, target):
                        return False, f"{d.as_dicts()} fails against a {target.carrier_size}-point target"
                    fs = all_maps(xsize, target.carrier_size)
                    morphisms += int(datum_morphism_mask(fs, d, target).sum())
    return True, f"{data} data x targets = {targets} checks, {morphisms} datum morphisms factor uniquely"


def reflection_coequalizer():
    data = [STRONG, NONSTRONG]
    cfg = GenConfig(seed=606, max_monoid=3, max_carrier=3)
    data += [gen_partial_maybe_nonstrong(cfg, i) for i in range(50)]
    for i, d in enumerate(data):
        report = check_reflection_coequalizer_theorem(d, max_target=3)
        if not report.passed:
            return False, f"datum {i}: {report.witness}"
    return True, f"{len(data)} data pass both directions"


def transpose_bijection():
    checks = 0
    cases = []
    for monoid in fixture_monoids():
        for z in range(4):
            cases += [(monoid, t) for t in enumerate_global_actions(monoid, z)]
    cfg = GenConfig(seed=55, max_monoid=3, max_carrier=3)
    seeded = [gen_global_action(cfg, i) for i in range(20)]
    cases += [(t.monoid, t) for t in seeded]
    for monoid, target in cases:
        z = target.carrier_size
        for xsize in range(4):
            d = GlobalAction.trivial(monoid, xsize).as_datum()
            _, copies = coproduct_actions(d)
            big = all_maps(copies.carrier_size, z)
            morphisms = {tuple(int(v) for v in r) for r in big[datum_morphism_mask(big, copies, target)]}
            images = set()
            for row in all_maps(xsize, z):
                f = FinMap(xsize, z, tuple(int(v) for v in row))
                h = coproduct_transpose(d, target, f)
                if h.images not in morphisms or coproduct_transpose_inverse(d, h) != f:
                    return False, f"transpose fails for {f} into {target.maps}"
                images.add(h.images)
            if images != morphisms or len(morphisms) != z ** xsize:
                return False, f"{len(morphisms)} morphisms vs {z ** xsize} maps"
            checks += 1
    return True, f"{checks} (monoid, X, target) cases incl. 20 seeded targets; counts equal |Z|^|X|"


def golden_files():
    expected = expected_outputs()
    for fname, text in expected.items():
        if (HERE / "golden" / fname).read_text() != text:
            return False, f"golden file {fname} differs from the oracle"
    import io

    for name in ("strong-example", "nonstrong-example"):
        out = io.StringIO()
        run(["globalize", str(HERE / "data" / f"{name}.paction")], out)
        if out.getvalue() != expected[f"{name}.globalize.txt"]:
            return False, f"globalize output for {name} differs"
        out = io.StringIO()
        run(["verify", str(HERE / "data" / f"{name}.paction"),
             str(HERE / "data" / f"{name}-reflection.gaction"), "0,1"], out)
        if out.getvalue() != expected[f"{name}.verify.txt"]:
            return False, f"verify output for {name} differs"
    strong = build_globalization(STRONG).classes()
    weak = build_globalization(NONSTRONG).classes()
    if strong != [[(0, 0), (1, 0)], [(0, 1)], [(1, 1)]] or weak != [[(0, 0)], [(0, 1), (1, 0), (1, 1)]]:
        return False, "fixture classes differ"
    return True, "3 and 2 classes, mismatch {(1,1)}; goldens match oracle and CLI"


def top_counterexample():
    r = top_counterexample_report()
    ok = r.confirmed and r.mediator == FinMap.identity(2) and r.mediator_continuous is False
    return ok, f"strong={r.strong} globalizable={r.globalizable} identity mediator continuous={r.mediator_continuous}"


def _homeomorphism_representatives(n):
    reps, seen = [], set()
    for space in all_topologies(n):
        key = min(
            tuple(sorted(
                (perm[x], sum(1 << perm[y] for y in range(n) if space.nbhd[x] >> y & 1)) for x in range(n)
            ))
            for perm in itertools.permutations(range(n))
        )
        if key not in seen:
            seen.add(key)
            reps.append(space)
    return reps


def pullback_universal_property():
    # finite sets: every cospan of sizes <= 3, every cone with apex <= 3
    set_cases = 0
    for z, a, b in itertools.product(range(4), repeat=3):
        for f in itertools.product(range(z), repeat=a):
            for g in itertools.product(range(z), repeat=b):
                if not pullback_universal(FinMap(a, z, f), FinMap(b, z, g), max_apex=3):
                    return False, f"Set pullback of {f}, {g} into {z} fails"
                set_cases += 1
    # finite spaces: all topologies up to 2 points, and every cospan with one
    # 3-point space up to homeomorphism; apexes are all spaces up to 2 points
    apexes = [s for n in range(3) for s in all_topologies(n)]
    labelled = {n: all_topologies(n) for n in range(3)}
    labelled[3] = []
    reps = {n: _homeomorphism_representatives(n) for n in range(4)}
    top_cases = 0
    for sizes in itertools.product(range(4), repeat=3):
        pool = reps if 3 in sizes else labelled
        if sorted(sizes)[1] == 3:
            continue
        zs, as_, bs = sizes
        for Z in pool[zs]:
            for A in pool[as_]:
                fs = [FinMap(as_, zs, f) for f in itertools.product(range(zs), repeat=as_)]
                fs = [ContinuousMap(f, A, Z) for f in fs if is_continuous(f, A, Z)]
                for B in pool[bs]:
                    gs = [FinMap(bs, zs, g) for g in itertools.product(range(zs), repeat=bs)]
                    gs = [ContinuousMap(g, B, Z) for g in gs if is_continuous(g, B, Z)]
                    for f in fs:
                        for g in gs:
                            if not pullback_universal_top(f, g, apexes):
                                return False, f"Top pullback of {f.map}, {g.map} fails"
                            top_cases += 1
    return True, f"{set_cases} Set cospans, {top_cases} FinTop cospans"


CRITERIA = [
    (1, "strong iff globalizable, exhaustive", strong_iff_globalizable, 10),
    (2, "restrictions are strong, 1000 samples", restriction_is_strong, 5),
    (3, "strong round-trip, 500 samples", strong_round_trip, 5),
    (4, "three routes give equal tables, 500 samples", route_equality, 10),
    (5, "reflection property, all data with |M|,|X|,|Z| <= 2", reflection_property, 30),
    (6, "reflection <-> coequalizer, fixtures + 50 data, |Z| <= 3", reflection_coequalizer, 60),
    (7, "transpose bijection, |X|,|Z|,|M| <= 3", transpose_bijection, 30),
    (8, "worked fixtures, golden files", golden_files, None),
    (9, "finite-space counterexample", top_counterexample, 1),
    (10, "pullback universal property, Set and FinTop", pullback_universal_property, 30),
]


def evaluate(number):
    _, title, check, limit = CRITERIA[number - 1]
    start = time.perf_counter()
    ok, detail = check()
    elapsed = time.perf_counter() - start
    in_time = limit is None or elapsed < limit
    passed = ok and in_time
    budget = f"{elapsed:.2f}s" + (f" / {limit}s" if limit is not None else "")
    timing = "" if in_time else " TOO SLOW"
    line = f"[{'PASS' if passed else 'FAIL'}] criterion {number}: {title} ({budget}{timing}) - {detail}"
    return passed, line


@pytest.mark.parametrize("number", [c[0] for c in CRITERIA])
def test_criterion(number, capsys):
    passed, line = evaluate(number)
    with capsys.disabled():
        print("\n" + line)
    assert passed, line


if __name__ == "__main__":
    results = [evaluate(n) for n, *_ in CRITERIA]
    for _, line in results:
        print(line)
    sys.exit(0 if all(p for p, _ in results) else 1)
