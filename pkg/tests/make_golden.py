"""Regenerate the golden CLI outputs from the brute-force oracle.

Only ``oracles`` is used here: classes come from a Warshall closure and the
text is produced by local formatting code, so the goldens do not depend on
the package under test.

    python3 tests/make_golden.py
"""
from pathlib import Path

from oracles import oracle_globalization

HERE = Path(__file__).parent
IDEM = [[0, 1], [1, 1]]
FIXTURES = {
    "strong-example": [{0: 0, 1: 1}, {0: 0}],
    "nonstrong-example": [{0: 0, 1: 1}, {0: 1}],
}


def dump(k, classes, beta, iota):
    lines = [f"classes {k}"]
    for i, members in enumerate(classes):
        lines.append(f"{i}: " + " ".join(f"({m},{x})" for m, x in members))
    for m, row in enumerate(beta):
        lines.append(f"beta {m}:" + "".join(f" {v}" for v in row))
    lines.append("iota:" + "".join(f" {v}" for v in iota))
    injective = "true" if len(set(iota)) == len(iota) else "false"
    lines.append(f"iota_injective {injective}")
    lines.append(f"RESULT: classes={k} iota_injective={injective}")
    return "\n".join(lines) + "\n"


def verdict(parts, beta, iota):
    n = len(iota)
    for m, part in enumerate(parts):
        pb = {(x, y) for x in range(n) for y in range(n) if beta[m][iota[x]] == iota[y]}
        diff = sorted(pb ^ set(part.items()))
        if diff:
            return (
                "globalization false\n"
                f"failing_m {m}\n"
                "pullback_mismatch " + " ".join(f"({x},{y})" for x, y in diff) + "\n"
                "RESULT: globalization=false\n"
            )
    return "globalization true\nRESULT: globalization=true\n"


def expected_outputs():
    out = {}
    for name, parts in FIXTURES.items():
        k, classes, beta, iota = oracle_globalization(IDEM, 0, parts, 2)
        out[f"{name}.globalize.txt"] = dump(k, classes, beta, iota)
        out[f"{name}.verify.txt"] = verdict(parts, beta, iota)
    return out


if __name__ == "__main__":
    for fname, text in expected_outputs().items():
        (HERE / "golden" / fname).write_text(text)
        print("wrote", fname)
