"""Diagram files: JSON PD format and signed Gauss code.

JSON layout (keys in this order, two-space indent, trailing newline)::

    {
      "format_version": 1,
      "m": 2,
      "components": [[1, 2], [3, 4]],
      "crossings": [{"id": 0, "pd": [1, 3, 2, 4], "sign": 1}, ...],
      "labels": ["1", "2"],
      "provenance": {...}          # only when present
    }

``components`` lists each component's edges in traversal order.  A
crossingless component is a single edge that appears in no crossing.

Gauss code: one line per component, tokens ``O<n><s>`` / ``U<n><s>``
for passing crossing ``n`` over / under, ``s`` the crossing sign
(``+``/``-``).  A crossingless component is written ``()``.  Blank lines
and lines starting with ``#`` are ignored; ``|`` also separates
components, and spaces or commas between tokens are ignored.  The
positive Hopf link is ``O1+U2+ | O2+U1+``, or::

    O1+U2+
    O2+U1+
"""

from __future__ import annotations

import json
import re
from collections import Counter

from .diagram import Crossing, DiagramError, LinkDiagram, make_crossing, trace_components, validate

FORMAT_VERSION = 1


class ParseError(DiagramError):
    pass


# ---------------------------------------------------------------- JSON

def to_dict(d: LinkDiagram) -> dict:
    out = {
        "format_version": FORMAT_VERSION,
        "m": d.m,
        "components": [list(c) for c in d.components],
        "crossings": [{"id": k, "pd": list(x.pd), "sign": x.sign}
                      for k, x in enumerate(d.crossings)],
        "labels": list(d.labels) if d.labels else None,
    }
    if d.provenance:
        out["provenance"] = d.provenance
    return out


def serialize(d: LinkDiagram) -> str:
    return json.dumps(to_dict(d), indent=2) + "\n"


def parse(text: str) -> LinkDiagram:
    """Read a JSON diagram; errors name the offending crossing or component."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"not valid JSON: {exc}") from None
    return from_dict(data)


def _int(v, where):
    if isinstance(v, bool) or not isinstance(v, int):
        raise ParseError(f"{where}: expected an integer, got {v!r}")
    return v


def from_dict(data) -> LinkDiagram:
    if not isinstance(data, dict):
        raise ParseError("diagram file must be a JSON object")
    for key in ("format_version", "m", "components", "crossings"):
        if key not in data:
            raise ParseError(f"missing field {key!r}")
    if data["format_version"] != FORMAT_VERSION:
        raise ParseError(f"unsupported format_version {data['format_version']!r}")

    crossings = []
    for k, c in enumerate(data["crossings"]):
        where = f"crossing {k}"
        if not isinstance(c, dict) or "pd" not in c or "sign" not in c:
            raise ParseError(f"{where}: needs fields 'pd' and 'sign'")
        pd = c["pd"]
        if not isinstance(pd, list) or len(pd) != 4:
            n = len(pd) if isinstance(pd, list) else "no"
            raise ParseError(f"{where}: pd has {n} entries (expected 4)")
        pd = tuple(_int(e, where) for e in pd)
        sign = _int(c["sign"], where)
        if sign not in (1, -1):
            raise ParseError(f"{where}: sign must be 1 or -1, got {sign}")
        crossings.append(Crossing(pd, sign))
    _check_edges(crossings)

    comps = data["components"]
    m = _int(data["m"], "field 'm'")
    if not isinstance(comps, list) or len(comps) != m:
        raise ParseError(f"m = {m} but {len(comps) if isinstance(comps, list) else 'no'} components given")
    traced = {min(c): c for c in trace_components(crossings)}
    used = {e for x in crossings for e in x.pd}
    components = []
    for i, cyc in enumerate(comps):
        if not isinstance(cyc, list) or not cyc:
            raise ParseError(f"component {i}: needs a non-empty edge list")
        cyc = tuple(_int(e, f"component {i}") for e in cyc)
        if len(cyc) == 1 and cyc[0] not in used:
            components.append(cyc)
            continue
        want = traced.get(min(cyc))
        if want is None or sorted(want) != sorted(cyc):
            raise ParseError(f"component {i}: edges {list(cyc)} do not form a component of the crossings")
        j = want.index(cyc[0])
        if want[j:] + want[:j] != cyc:
            raise ParseError(f"component {i}: edges are not in traversal order")
        components.append(cyc)
    covered = {e for c in components for e in c}
    missing = used - covered
    if missing:
        raise ParseError(f"edges {sorted(missing)} belong to no listed component")
    labels = data.get("labels")
    if labels is not None and (not isinstance(labels, list) or len(labels) != m):
        raise ParseError(f"labels must be a list of {m} strings")
    d = LinkDiagram(tuple(crossings), tuple(components),
                    tuple(str(s) for s in labels) if labels else None, data.get("provenance"))
    problems = validate(d)
    if problems:
        raise ParseError("; ".join(problems))
    return d


def _check_edges(crossings):
    where: dict = {}
    incoming: dict = {}
    for k, x in enumerate(crossings):
        for s, e in enumerate(x.pd):
            where.setdefault(e, []).append(k)
        for s in x.in_slots():
            e = x.pd[s]
            if e in incoming:
                raise ParseError(
                    f"crossing {k}: orientation contradiction, edge {e} is also "
                    f"incoming at crossing {incoming[e]}")
            incoming[e] = k
    for e, ks in sorted(where.items()):
        if len(ks) == 1:
            raise ParseError(f"crossing {ks[0]}: edge {e} is dangling (appears once)")
        if len(ks) > 2:
            raise ParseError(f"crossing {ks[2]}: edge {e} appears {len(ks)} times (expected 2)")


# ---------------------------------------------------------------- Gauss code

_TOKEN = re.compile(r"([OU])(\d+)([+-])")


def to_gauss(d: LinkDiagram) -> str:
    """Gauss code, crossings numbered by first visit."""
    at = {}
    for k, x in enumerate(d.crossings):
        at[x.under_in] = (k, "U")
        at[x.over_in] = (k, "O")
    number: dict = {}
    lines = []
    for cyc in d.components:
        toks = []
        for e in cyc:
            if e not in at:
                continue
            k, role = at[e]
            number.setdefault(k, len(number) + 1)
            toks.append(f"{role}{number[k]}{'+' if d.crossings[k].sign > 0 else '-'}")
        lines.append("".join(toks) if toks else "()")
    return "\n".join(lines) + "\n"


def _gauss_tokens(part: str, lineno: int) -> list:
    if part == "()":
        return []
    pos, toks = 0, []
    for mt in _TOKEN.finditer(part):
        if mt.start() != pos:
            break
        toks.append((mt.group(1), int(mt.group(2)), 1 if mt.group(3) == "+" else -1))
        pos = mt.end()
    if pos != len(part):
        raise ParseError(f"line {lineno}: cannot read {part[pos:]!r}")
    return toks


def parse_gauss(text: str) -> LinkDiagram:
    """Read signed Gauss code (see the module docstring)."""
    comps = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        for part in line.split("|"):
            part = part.replace(",", "").replace(" ", "").replace("\t", "")
            if not part:
                raise ParseError(f"line {lineno}: empty component (write () for a crossingless one)")
            comps.append(_gauss_tokens(part, lineno))
    if not comps:
        raise ParseError("no components")

    visits = Counter((n, role) for toks in comps for role, n, _ in toks)
    signs: dict = {}
    for toks in comps:
        for role, n, s in toks:
            if signs.setdefault(n, s) != s:
                raise ParseError(f"crossing {n}: inconsistent signs")
    for n in sorted(signs):
        if visits[(n, "O")] != 1 or visits[(n, "U")] != 1:
            raise ParseError(f"crossing {n}: needs exactly one O and one U visit, "
                             f"got {visits[(n, 'O')]} and {visits[(n, 'U')]}")

    ends: dict = {}
    components = []
    edge = 0
    for toks in comps:
        if not toks:
            edge += 1
            components.append((edge,))
            continue
        first = edge + 1
        ids = [first + j for j in range(len(toks))]
        edge += len(toks)
        components.append(tuple(ids))
        for j, (role, n, _) in enumerate(toks):
            ends.setdefault(n, {})[role] = (ids[j - 1], ids[j])
    crossings = []
    for n in sorted(signs):
        (ui, uo), (oi, oo) = ends[n]["U"], ends[n]["O"]
        crossings.append(make_crossing(ui, uo, oi, oo, signs[n]))
    d = LinkDiagram(tuple(crossings), tuple(components))
    problems = validate(d)
    if problems:
        raise ParseError("; ".join(problems))
    return d
