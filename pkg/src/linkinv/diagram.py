"""Oriented link diagrams as signed PD codes.

A crossing is a 4-tuple ``(a, b, c, d)`` of edge ids listed
counterclockwise starting from the incoming under-strand, so the
under-strand runs ``a -> c``.  The sign fixes the direction of the
over-strand::

            c                      c
            ^                      ^
      d ----|---> b          d <---|---- b
            |                      |
            a                      a
         sign +1                sign -1

A positive crossing has the over-strand running ``d -> b``, a negative
one ``b -> d``.  Together with the sign the tuple is self-describing:
every edge is outgoing at exactly one crossing slot and incoming at
exactly one, which is all that is needed to recover the components.

Edge ids are integers.  Components without crossings are stored as a
one-edge cycle whose edge appears in no crossing.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Sequence


class DiagramError(ValueError):
    """Raised for malformed diagrams or illegal operations on them."""


@dataclass(frozen=True)
class Crossing:
    pd: tuple[int, int, int, int]
    sign: int

    def __post_init__(self):
        if len(self.pd) != 4:
            raise DiagramError(f"crossing {self.pd!r} does not have 4 entries")
        if self.sign not in (1, -1):
            raise DiagramError(f"crossing sign must be +1 or -1, got {self.sign!r}")

    @property
    def under_in(self) -> int:
        return self.pd[0]

    @property
    def under_out(self) -> int:
        return self.pd[2]

    @property
    def over_in(self) -> int:
        return self.pd[3] if self.sign > 0 else self.pd[1]

    @property
    def over_out(self) -> int:
        return self.pd[1] if self.sign > 0 else self.pd[3]

    def in_slots(self) -> tuple[int, int]:
        return (0, 3) if self.sign > 0 else (0, 1)

    def out_slots(self) -> tuple[int, int]:
        return (2, 1) if self.sign > 0 else (2, 3)

    def relabel(self, mapping) -> "Crossing":
        return Crossing(tuple(mapping[e] for e in self.pd), self.sign)

    def switched(self) -> "Crossing":
        """The same crossing with over and under exchanged."""
        a, b, c, d = self.pd
        # new under-strand is the old over-strand
        if self.sign > 0:
            return Crossing((d, a, b, c), -1)
        return Crossing((b, c, d, a), 1)


def make_crossing(under_in: int, under_out: int, over_in: int, over_out: int,
                  sign: int) -> Crossing:
    """Build a crossing from the four strand ends and the sign."""
    if sign > 0:
        return Crossing((under_in, over_out, under_out, over_in), 1)
    return Crossing((under_in, over_in, under_out, over_out), -1)


def _successors(crossings: Sequence[Crossing]) -> dict[int, tuple[int, int, str]]:
    """Map each incoming edge to (outgoing edge, crossing index, 'under'|'over')."""
    succ = {}
    for k, x in enumerate(crossings):
        for e_in, e_out, role in ((x.under_in, x.under_out, "under"),
                                  (x.over_in, x.over_out, "over")):
            if e_in in succ:
                raise DiagramError(f"edge {e_in} enters two crossing slots")
            succ[e_in] = (e_out, k, role)
    return succ


def trace_components(crossings: Sequence[Crossing]) -> list[tuple[int, ...]]:
    """Edge cycles of all components that meet at least one crossing.

    Each cycle starts at its lowest edge id; cycles are sorted by that id.
    """
    succ = _successors(crossings)
    seen: set[int] = set()
    cycles = []
    for start in sorted(succ):
        if start in seen:
            continue
        cyc = []
        e = start
        while e not in seen:
            seen.add(e)
            cyc.append(e)
            if e not in succ:
                raise DiagramError(f"edge {e} has no incoming slot")
            e = succ[e][0]
        if e != start:
            raise DiagramError(f"strand starting at edge {start} does not close up")
        cycles.append(tuple(cyc))
    return cycles


def _rotate_to(cycle: Sequence[int], first: int) -> tuple[int, ...]:
    i = list(cycle).index(first)
    return tuple(cycle[i:]) + tuple(cycle[:i])


@dataclass(frozen=True)
class LinkDiagram:
    """An oriented link diagram.

    ``components`` lists the edge cycle of each component in traversal
    order; its ordering *is* the component numbering used by every
    invariant (component ``i`` is ``components[i]``).
    """

    crossings: tuple[Crossing, ...]
    components: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...] | None = None
    provenance: dict | None = field(default=None, compare=False, hash=False)

    # ---- construction -------------------------------------------------

    @classmethod
    def from_crossings(cls, crossings: Iterable[Crossing], free_loops: int = 0,
                       order: Sequence[int] | None = None,
                       labels: Sequence[str] | None = None,
                       provenance: dict | None = None) -> "LinkDiagram":
        """Assemble a diagram, tracing components from the crossings.

        ``order`` optionally lists one edge per traced component, fixing
        component order and the starting edge of each cycle.  Free loops
        (crossingless unknotted components) come last and get fresh
        edge ids.
        """
        crossings = tuple(crossings)
        cycles = trace_components(crossings)
        if order is not None:
            by_edge = {e: c for c in cycles for e in c}
            if len(order) != len(cycles):
                raise DiagramError(
                    f"order names {len(order)} components, diagram has {len(cycles)}")
            cycles = [_rotate_to(by_edge[e], e) for e in order]
            if len({min(c) for c in cycles}) != len(cycles):
                raise DiagramError("order names the same component twice")
        top = max((e for c in cycles for e in c), default=0)
        loops = [(top + 1 + j,) for j in range(free_loops)]
        comps = tuple(tuple(c) for c in cycles) + tuple(loops)
        return cls(crossings, comps, tuple(labels) if labels else None, provenance)

    @classmethod
    def unlink(cls, m: int) -> "LinkDiagram":
        return cls((), tuple((j + 1,) for j in range(m)))

    # ---- basic accessors ----------------------------------------------

    @property
    def m(self) -> int:
        return len(self.components)

    def __len__(self) -> int:
        return len(self.crossings)

    def edges(self) -> list[int]:
        return [e for c in self.components for e in c]

    def component_of(self) -> dict[int, int]:
        return {e: i for i, c in enumerate(self.components) for e in c}

    def successor(self) -> dict[int, int]:
        """Next edge along the orientation, for every edge."""
        nxt = {}
        for c in self.components:
            for j, e in enumerate(c):
                nxt[e] = c[(j + 1) % len(c)]
        return nxt

    def crossing_components(self, k: int) -> tuple[int, int]:
        """(under component, over component) of crossing ``k``."""
        comp = self.component_of()
        x = self.crossings[k]
        return comp[x.under_in], comp[x.over_in]

    def with_labels(self, labels: Sequence[str] | None) -> "LinkDiagram":
        return LinkDiagram(self.crossings, self.components,
                           tuple(labels) if labels else None, self.provenance)

    def with_provenance(self, provenance: dict | None) -> "LinkDiagram":
        return LinkDiagram(self.crossings, self.components, self.labels, provenance)

    def reorder(self, perm: Sequence[int]) -> "LinkDiagram":
        """Renumber components: new component ``j`` is old ``perm[j]``."""
        labels = tuple(self.labels[p] for p in perm) if self.labels else None
        return LinkDiagram(self.crossings, tuple(self.components[p] for p in perm),
                           labels, self.provenance)

    # ---- invariants of the diagram -------------------------------------

    def writhe(self) -> list[int]:
        """Self-writhe of each component (sum of signs of self-crossings)."""
        comp = self.component_of()
        w = [0] * self.m
        for x in self.crossings:
            if comp[x.under_in] == comp[x.over_in]:
                w[comp[x.under_in]] += x.sign
        return w

    def relabel(self, mapping) -> "LinkDiagram":
        return LinkDiagram(tuple(x.relabel(mapping) for x in self.crossings),
                           tuple(tuple(mapping[e] for e in c) for c in self.components),
                           self.labels, self.provenance)

    def canonical(self) -> "LinkDiagram":
        """Relabel edges 1..n by a deterministic traversal.

        Component 0 is tried from every starting edge and the
        lexicographically smallest encoding wins; later components start
        at the first edge met at a crossing with an already-numbered
        strand (or, if they share no crossing with earlier components,
        at every possible start).  Two diagrams are equal up to edge
        relabeling iff their canonical forms are equal.
        """
        best = None
        for enc, mapping in self._canonical_candidates():
            if best is None or enc < best[0]:
                best = (enc, mapping)
        if best is None:
            return self
        return self.relabel(best[1])

    def _canonical_candidates(self):
        if not self.components:
            return
        partial = [({}, 0)]
        for i, cyc in enumerate(self.components):
            grown = []
            for mapping, n in partial:
                for start in self._starts(cyc, mapping):
                    mp = dict(mapping)
                    rot = _rotate_to(cyc, start)
                    for j, e in enumerate(rot):
                        mp[e] = n + j + 1
                    grown.append((mp, n + len(cyc)))
            partial = grown
        for mapping, _ in partial:
            enc = tuple(sorted((tuple(mapping[e] for e in x.pd), x.sign)
                               for x in self.crossings))
            yield enc, mapping

    def _starts(self, cyc, mapping):
        own = set(cyc)
        best = None
        for x in self.crossings:
            mine = [e for e in (x.under_out, x.over_out) if e in own]
            if mine and any(e in mapping for e in x.pd):
                # label-free key: the numbered edges and where they sit
                key = (tuple(mapping.get(e, 0) for e in x.pd), x.sign)
                if best is None or key < best[0]:
                    best = (key, mine[0])
        if best is not None:
            return [best[1]]
        return list(cyc)

    def equal_up_to_relabeling(self, other: "LinkDiagram") -> bool:
        if self.m != other.m or len(self) != len(other):
            return False
        a, b = self.canonical(), other.canonical()
        return a.crossings_key() == b.crossings_key() and \
            [len(c) for c in a.components] == [len(c) for c in b.components]

    def crossings_key(self):
        return tuple(sorted((x.pd, x.sign) for x in self.crossings))


# ---------------------------------------------------------------------------
# validation


class ValidationReport(list):
    """Violated invariants of a diagram, one message each."""

    @property
    def ok(self) -> bool:
        return not self


def validate(d: LinkDiagram) -> ValidationReport:
    """Return every violated invariant of ``d``; empty iff well formed."""
    problems = ValidationReport()
    if d.m < 1:
        problems.append("component count: a link has at least one component")
    slot_count: dict[int, int] = defaultdict(int)
    in_count: dict[int, int] = defaultdict(int)
    for k, x in enumerate(d.crossings):
        if len(x.pd) != 4:
            problems.append(f"arity: crossing {k} has {len(x.pd)} entries")
            continue
        if x.sign not in (1, -1):
            problems.append(f"sign: crossing {k} has sign {x.sign}")
            continue
        for e in x.pd:
            slot_count[e] += 1
        for s in x.in_slots():
            in_count[x.pd[s]] += 1
    for e, n in sorted(slot_count.items()):
        if n != 2:
            problems.append(f"edge multiplicity: edge {e} appears {n} times (expected 2)")
        elif in_count[e] != 1:
            problems.append(
                f"orientation: edge {e} is incoming at {in_count[e]} slots (expected 1)")

    seen: dict[int, int] = {}
    for i, cyc in enumerate(d.components):
        if not cyc:
            problems.append(f"component {i}: empty arc cycle")
        for e in cyc:
            if e in seen:
                problems.append(f"partition: edge {e} lies on components {seen[e]} and {i}")
            seen[e] = i
    all_edges = set(slot_count)
    missing = all_edges - set(seen)
    if missing:
        problems.append(f"partition: edges {sorted(missing)} belong to no component")
    for i, cyc in enumerate(d.components):
        if len(cyc) == 1 and cyc[0] not in all_edges:
            continue
        if any(e not in all_edges for e in cyc):
            problems.append(f"component {i}: edge not used by any crossing")
    if problems:
        return problems

    try:
        succ = _successors(d.crossings)
    except DiagramError as exc:
        return ValidationReport([f"orientation: {exc}"])
    for i, cyc in enumerate(d.components):
        if len(cyc) == 1 and cyc[0] not in all_edges:
            continue
        for j, e in enumerate(cyc):
            nxt = cyc[(j + 1) % len(cyc)]
            if succ[e][0] != nxt:
                problems.append(
                    f"traversal: component {i} goes {e} -> {nxt} but the crossing "
                    f"continues {e} -> {succ[e][0]}")
                break
    if d.labels is not None and len(d.labels) != d.m:
        problems.append(f"labels: {len(d.labels)} labels for {d.m} components")
    if not problems:
        problems += _planarity(d)
    return problems


def _planarity(d: LinkDiagram) -> list[str]:
    # Euler: each connected piece with V crossings has 2V edges and V + 2 faces
    from .moves import faces, projection_groups
    comp = d.component_of()
    piece = {i: n for n, g in enumerate(projection_groups(d)) for i in g}
    count: dict[int, list[int]] = defaultdict(lambda: [0, 0])
    for x in d.crossings:
        count[piece[comp[x.under_in]]][0] += 1
    for face in faces(d):
        count[piece[comp[face[0][0]]]][1] += 1
    return [f"planarity: projection piece {n} has {v} crossings but {f} faces "
            f"(expected {v + 2})" for n, (v, f) in sorted(count.items()) if f != v + 2]


def check(d: LinkDiagram) -> LinkDiagram:
    """Validate and return ``d``; raise DiagramError listing the problems."""
    problems = validate(d)
    if problems:
        raise DiagramError("; ".join(problems))
    return d


# ---------------------------------------------------------------------------
# linking numbers


def linking_matrix(d: LinkDiagram) -> list[list[int]]:
    """Pairwise linking numbers off the diagonal, self-writhe on it."""
    comp = d.component_of()
    twice = [[0] * d.m for _ in range(d.m)]
    for x in d.crossings:
        i, j = comp[x.under_in], comp[x.over_in]
        if i == j:
            twice[i][i] += 2 * x.sign
        else:
            twice[i][j] += x.sign
            twice[j][i] += x.sign
    out = [[v // 2 for v in row] for row in twice]
    return out


def linking_number(d: LinkDiagram, i: int, j: int) -> int:
    return linking_matrix(d)[i][j]


def is_projection_connected(d: LinkDiagram) -> bool:
    """True iff the projection (a 4-valent planar graph plus free loops) is connected."""
    if d.m <= 1 and (d.m == 0 or len(d.crossings) > 0 or len(d.components[0]) == 1):
        return True
    parent = list(range(d.m))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    comp = d.component_of()
    for x in d.crossings:
        a, b = find(comp[x.under_in]), find(comp[x.over_in])
        parent[a] = b
    return len({find(i) for i in range(d.m)}) == 1


def mirror(d: LinkDiagram) -> LinkDiagram:
    """Mirror image: every crossing switched."""
    return LinkDiagram(tuple(x.switched() for x in d.crossings), d.components,
                       d.labels, d.provenance)


def reverse_component(d: LinkDiagram, i: int) -> LinkDiagram:
    """Reverse the orientation of component ``i``."""
    comp = d.component_of()
    out = []
    for x in d.crossings:
        u_rev = comp[x.under_in] == i
        o_rev = comp[x.over_in] == i
        ui, uo, oi, oo = x.under_in, x.under_out, x.over_in, x.over_out
        if u_rev:
            ui, uo = uo, ui
        if o_rev:
            oi, oo = oo, oi
        # geometry: under-strand now points south if reversed; sign flips
        # once per reversed strand
        sign = x.sign * (-1 if u_rev else 1) * (-1 if o_rev else 1)
        out.append(_crossing_from_geometry(x, ui, uo, oi, oo, sign))
    cyc = d.components[i]
    comps = list(d.components)
    comps[i] = (cyc[0],) + tuple(reversed(cyc[1:]))
    return LinkDiagram(tuple(out), tuple(comps), d.labels, d.provenance)


def _crossing_from_geometry(x: Crossing, ui, uo, oi, oo, sign) -> Crossing:
    # the planar cyclic order of the four edges is unchanged; only the
    # starting slot moves to the new incoming under-edge
    cyc = list(x.pd)
    k = cyc.index(ui) if cyc.count(ui) == 1 else _slot_of(x, ui, uo)
    pd = tuple(cyc[k:] + cyc[:k])
    out = Crossing(pd, sign)
    if (out.under_in, out.under_out, out.over_in, out.over_out) != (ui, uo, oi, oo):
        raise DiagramError(f"inconsistent reorientation of crossing {x.pd}")
    return out


def _slot_of(x: Crossing, ui, uo) -> int:
    # loop edge occupying two slots: choose the slot whose opposite is uo
    for k in range(4):
        if x.pd[k] == ui and x.pd[(k + 2) % 4] == uo:
            return k
    raise DiagramError(f"edge {ui} not on a strand of crossing {x.pd}")


def gcd_all(values: Iterable[int]) -> int:
    g = 0
    for v in values:
        g = gcd(g, v)
    return g
