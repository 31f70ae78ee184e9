"""Plain-text formats for monoids, actions, topologies and globalization dumps.

Monoid::

    monoid <size> <identity>
    <size rows of size indices; row a lists a*b>

Partial action (monoid path relative to the action file)::

    paction <carrier_size> <monoid-file>
    <m>: x1>y1 x2>y2 ...

Global action::

    gaction <carrier_size> <monoid-file>
    <m>: y0 y1 ... y_{n-1}

Topology::

    top <size>
    <one open set per line, space separated; "-" is the empty set>

``#`` starts a comment anywhere on a line.
"""
from __future__ import annotations

from pathlib import Path
from typing import Iterable, Optional

from .errors import ParseError, PactError
from .finset import FinMap
from .fintop import FinTopSpace
from .globalize import Globalization, GlobalizationVerdict
from .monoid import FiniteMonoid
from .paction import GlobalAction, PartialActionDatum


def _lines(text: str):
    for number, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield number, line


def _ints(tokens, path, number):
    try:
        return [int(t) for t in tokens]
    except ValueError as exc:
        raise ParseError(f"expected integers, got {' '.join(tokens)!r}", path, number) from exc


def parse_monoid(text: str, path=None) -> FiniteMonoid:
    lines = list(_lines(text))
    if not lines:
        raise ParseError("empty monoid file", path)
    number, head = lines[0]
    parts = head.split()
    if len(parts) != 3 or parts[0] != "monoid":
        raise ParseError("header must be 'monoid <size> <identity>'", path, number)
    size, identity = _ints(parts[1:], path, number)
    rows = [_ints(line.split(), path, n) for n, line in lines[1:]]
    if len(rows) != size:
        raise ParseError(f"expected {size} table rows, found {len(rows)}", path)
    try:
        return FiniteMonoid(tuple(tuple(r) for r in rows), identity, Path(path).stem if path else "")
    except PactError as exc:
        raise ParseError(str(exc), path) from exc


def format_monoid(monoid: FiniteMonoid) -> str:
    out = [f"monoid {monoid.size} {monoid.identity}"]
    out += [" ".join(str(v) for v in row) for row in monoid.table]
    return "\n".join(out) + "\n"


def load_monoid(path) -> FiniteMonoid:
    path = Path(path)
    return parse_monoid(path.read_text(), str(path))


def _action_header(lines, kind, path, base_dir):
    if not lines:
        raise ParseError(f"empty {kind} file", path)
    number, head = lines[0]
    parts = head.split(None, 2)
    if len(parts) != 3 or parts[0] != kind:
        raise ParseError(f"header must be '{kind} <carrier_size> <monoid-file>'", path, number)
    (size,) = _ints(parts[1:2], path, number)
    mpath = Path(parts[2])
    if not mpath.is_absolute() and base_dir is not None:
        mpath = Path(base_dir) / mpath
    try:
        monoid = load_monoid(mpath)
    except OSError as exc:
        raise ParseError(f"cannot read monoid file {mpath}", path, number) from exc
    return size, monoid


def _element_lines(lines, monoid, path):
    seen = {}
    for number, line in lines[1:]:
        label, sep, rest = line.partition(":")
        if not sep:
            raise ParseError("element lines look like '<m>: ...'", path, number)
        (m,) = _ints([label.strip()], path, number)
        if not 0 <= m < monoid.size or m in seen:
            raise ParseError(f"element {m} out of range or repeated", path, number)
        seen[m] = (number, rest.split())
    if len(seen) != monoid.size:
        missing = sorted(set(range(monoid.size)) - set(seen))
        raise ParseError(f"no line for monoid elements {missing}", path)
    return [seen[m] for m in range(monoid.size)]


def parse_paction(text: str, path=None, base_dir=None) -> PartialActionDatum:
    lines = list(_lines(text))
    size, monoid = _action_header(lines, "paction", path, base_dir)
    maps = []
    for number, tokens in _element_lines(lines, monoid, path):
        pairs = {}
        for tok in tokens:
            x, sep, y = tok.partition(">")
            if not sep:
                raise ParseError(f"expected 'x>y', got {tok!r}", path, number)
            x, y = _ints([x, y], path, number)
            if x in pairs or not (0 <= x < size and 0 <= y < size):
                raise ParseError(f"bad pair {tok!r}", path, number)
            pairs[x] = y
        maps.append(pairs)
    return PartialActionDatum.from_dicts(monoid, size, maps)


def parse_gaction(text: str, path=None, base_dir=None) -> GlobalAction:
    lines = list(_lines(text))
    size, monoid = _action_header(lines, "gaction", path, base_dir)
    maps = []
    for number, tokens in _element_lines(lines, monoid, path):
        images = _ints(tokens, path, number)
        if len(images) != size or any(not 0 <= v < size for v in images):
            raise ParseError(f"expected {size} images in 0..{size - 1}", path, number)
        maps.append(FinMap(size, size, images))
    try:
        return GlobalAction(monoid, size, tuple(maps))
    except PactError as exc:
        raise ParseError(str(exc), path) from exc


def load_paction(path) -> PartialActionDatum:
    path = Path(path)
    return parse_paction(path.read_text(), str(path), path.parent)


def load_gaction(path) -> GlobalAction:
    path = Path(path)
    return parse_gaction(path.read_text(), str(path), path.parent)


def format_paction(d: PartialActionDatum, monoid_file: str) -> str:
    out = [f"paction {d.carrier_size} {monoid_file}"]
    for m, part in enumerate(d.parts):
        out.append(f"{m}:" + "".join(f" {x}>{y}" for x, y in part.items()))
    return "\n".join(out) + "\n"


def format_gaction(g: GlobalAction, monoid_file: str) -> str:
    out = [f"gaction {g.carrier_size} {monoid_file}"]
    for m, f in enumerate(g.maps):
        out.append(f"{m}:" + "".join(f" {y}" for y in f.images))
    return "\n".join(out) + "\n"


def parse_top(text: str, path=None) -> FinTopSpace:
    lines = list(_lines(text))
    if not lines:
        raise ParseError("empty topology file", path)
    number, head = lines[0]
    parts = head.split()
    if len(parts) != 2 or parts[0] != "top":
        raise ParseError("header must be 'top <size>'", path, number)
    (size,) = _ints(parts[1:], path, number)
    opens = []
    for n, line in lines[1:]:
        opens.append([] if line == "-" else _ints(line.split(), path, n))
    try:
        return FinTopSpace.from_opens(size, opens)
    except PactError as exc:
        raise ParseError(str(exc), path) from exc


def format_top(space: FinTopSpace) -> str:
    out = [f"top {space.size}"]
    for o in space.open_sets():
        out.append(" ".join(str(x) for x in o) if o else "-")
    return "\n".join(out) + "\n"


def parse_map(text: str, dst_size: int) -> FinMap:
    """``"0,2"`` or ``"0 2"`` as a map into ``dst_size`` points."""
    tokens = text.replace(",", " ").split()
    images = _ints(tokens, None, None)
    try:
        return FinMap(len(images), dst_size, images)
    except PactError as exc:
        raise ParseError(str(exc)) from exc


def format_globalization(G: Globalization) -> str:
    out = [f"classes {G.quotient_size}"]
    for k, members in enumerate(G.classes()):
        out.append(f"{k}: " + " ".join(f"({m},{x})" for m, x in members))
    for m, f in enumerate(G.action.maps):
        out.append(f"beta {m}:" + "".join(f" {y}" for y in f.images))
    out.append("iota:" + "".join(f" {y}" for y in G.embed.images))
    out.append(f"iota_injective {'true' if G.embed_injective else 'false'}")
    return "\n".join(out) + "\n"


def format_verdict(v: GlobalizationVerdict) -> str:
    if v.is_globalization:
        return "globalization true\n"
    pairs = " ".join(f"({x},{y})" for x, y in (v.pullback_mismatch or ()))
    lines = [
        "globalization false",
        f"failing_m {v.failing_m}",
        f"pullback_mismatch {pairs if pairs else '-'}",
    ]
    if not v.iota_mono:
        lines.append("iota not injective")
    return "\n".join(lines) + "\n"
