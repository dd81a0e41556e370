"""Faces, Seifert circles and local moves on PD diagrams.

Faces are traced from corners: corner ``(k, s)`` is the sector of crossing
``k`` between slots ``s`` and ``s + 1`` (counterclockwise).  Walking out
along slot ``s + 1`` keeps the face on the right; arriving at the far end
of that edge in slot ``s'`` continues with corner ``(k', s')``.

Move sites are tuples of edge ids:

=========  ==============================================================
``R1+``    ``(e, sign, first_under)``: kink on edge ``e``; the strand
           passes the new crossing first as under iff ``first_under``
``R1-``    ``(l,)``: remove the kink whose loop edge is ``l``
``R2+``    ``(e, e_side, f, f_side, e_over)``: push a finger of ``e``
           across ``f`` inside the face on side ``e_side`` of ``e``
           ("L"/"R" of its orientation), which must be the face on side
           ``f_side`` of ``f``
``R2-``    ``(g, h)``: remove the bigon with edges ``g`` and ``h``
``R3``     ``(a, b, c)``: slide across the triangle with these edges
``switch`` ``(k,)``: crossing index ``k`` changes sign
``smooth`` ``(k,)``: oriented smoothing of crossing ``k``
=========  ==============================================================

R2+ between edges of different split pieces of the projection (or free
loops) is always admissible: the pieces can be placed side by side.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .diagram import Crossing, DiagramError, LinkDiagram, make_crossing

KINDS = ("R1+", "R1-", "R2+", "R2-", "R3", "switch", "smooth")


class MoveError(DiagramError):
    pass


@dataclass(frozen=True)
class MoveSpec:
    kind: str
    site: tuple

    def __post_init__(self):
        if self.kind not in KINDS:
            raise MoveError(f"unknown move kind {self.kind!r}")
        object.__setattr__(self, "site", tuple(self.site))


# ---------------------------------------------------------------- structure

def occurrences(d: LinkDiagram) -> dict:
    occ: dict = {}
    for k, x in enumerate(d.crossings):
        for s, e in enumerate(x.pd):
            occ.setdefault(e, []).append((k, s))
    return occ


def _is_out(x: Crossing, s: int) -> bool:
    return s in x.out_slots()


def faces(d: LinkDiagram) -> list:
    """Faces as lists of ``(edge, agrees)``: the boundary edges in walking
    order (face on the right) and whether the edge's orientation agrees
    with the walk.  Free loops are not part of any face."""
    occ = occurrences(d)
    seen = set()
    out = []
    for k0, x0 in enumerate(d.crossings):
        for s0 in range(4):
            if (k0, s0) in seen:
                continue
            face = []
            k, s = k0, s0
            while (k, s) not in seen:
                seen.add((k, s))
                x = d.crossings[k]
                s1 = (s + 1) % 4
                e = x.pd[s1]
                face.append((e, _is_out(x, s1)))
                a, b = occ[e]
                k, s = b if a == (k, s1) else a
            out.append(face)
    return out


def face_index(d: LinkDiagram) -> dict:
    """``(edge, side) -> face number``; side "R" is the face on the right."""
    idx = {}
    for n, face in enumerate(faces(d)):
        for e, agrees in face:
            idx[(e, "R" if agrees else "L")] = n
    return idx


def seifert_circles(d: LinkDiagram) -> list:
    """Edge cycles after the oriented smoothing of every crossing.

    Free loops are circles of their own.
    """
    nxt = {}
    for x in d.crossings:
        nxt[x.under_in] = x.over_out
        nxt[x.over_in] = x.under_out
    seen = set()
    circles = []
    for cyc in d.components:
        for e in cyc:
            if e in seen:
                continue
            if e not in nxt:
                seen.add(e)
                circles.append((e,))
                continue
            c = []
            while e not in seen:
                seen.add(e)
                c.append(e)
                e = nxt[e]
            circles.append(tuple(c))
    return circles


def projection_groups(d: LinkDiagram) -> list:
    """Components grouped by connectivity of the projection, by lowest index."""
    parent = list(range(d.m))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    comp = d.component_of()
    for x in d.crossings:
        a, b = find(comp[x.under_in]), find(comp[x.over_in])
        if a != b:
            parent[max(a, b)] = min(a, b)
    groups: dict = {}
    for i in range(d.m):
        groups.setdefault(find(i), []).append(i)
    return [groups[r] for r in sorted(groups)]


# ---------------------------------------------------------------- rebuilding

class _Edges:
    def __init__(self, d: LinkDiagram):
        self.parent: dict = {}
        self.top = max(d.edges(), default=0)

    def new(self) -> int:
        self.top += 1
        return self.top

    def find(self, e):
        while e in self.parent:
            e = self.parent[e]
        return e

    def union(self, *es):
        roots = {self.find(e) for e in es}
        keep = min(roots)
        for r in roots:
            if r != keep:
                self.parent[r] = keep


def _rebuild(d: LinkDiagram, crossings: Sequence[tuple], E: _Edges, keep_labels: bool) -> LinkDiagram:
    """Assemble from ``(sign, ui, uo, oi, oo)`` tuples; edges of ``d`` are
    looked up through ``E`` to keep the component order."""
    raw = [(s, *(E.find(e) for e in ends)) for s, *ends in crossings]
    succ = {}
    for s, ui, uo, oi, oo in raw:
        succ[ui] = uo
        succ[oi] = oo
    ids: dict = {}
    comps = []
    for cyc in d.components:
        for e in cyc:
            r = E.find(e)
            if r in ids:
                continue
            if r not in succ:
                ids[r] = len(ids) + 1
                comps.append((ids[r],))
                continue
            c = []
            while r not in ids:
                ids[r] = len(ids) + 1
                c.append(ids[r])
                r = succ[r]
            comps.append(tuple(c))
    if len([e for e in succ if e not in ids]):
        raise MoveError("move produced a component unrelated to the input")
    xs = tuple(make_crossing(ids[ui], ids[uo], ids[oi], ids[oo], s)
               for s, ui, uo, oi, oo in raw)
    labels = d.labels if keep_labels and len(comps) == d.m else None
    return LinkDiagram(xs, tuple(comps), labels, d.provenance)


def _ends(x: Crossing) -> tuple:
    return (x.sign, x.under_in, x.under_out, x.over_in, x.over_out)


def _replace_edge(raw: list, e, out_end, in_end):
    """Edge ``e`` leaves its source as ``out_end`` and enters its target as ``in_end``."""
    out = []
    for s, ui, uo, oi, oo in raw:
        out.append((s, in_end if ui == e else ui, out_end if uo == e else uo,
                    in_end if oi == e else oi, out_end if oo == e else oo))
    return out


def _sign(over_dir, under_dir) -> int:
    c = over_dir[0] * under_dir[1] - over_dir[1] * under_dir[0]
    return 1 if c > 0 else -1


# ---------------------------------------------------------------- moves

def apply_move(d: LinkDiagram, mv: MoveSpec) -> LinkDiagram:
    fn = {"R1+": _r1_add, "R1-": _r1_remove, "R2+": _r2_add, "R2-": _r2_remove,
          "R3": _r3, "switch": _switch, "smooth": _smooth}[mv.kind]
    return fn(d, mv.site)


def _check_edge(d: LinkDiagram, e):
    if e not in d.component_of():
        raise MoveError(f"invalid site: edge {e} is not in the diagram")


def _crossing_index(d: LinkDiagram, site) -> int:
    if len(site) != 1 or not isinstance(site[0], int) or not 0 <= site[0] < len(d.crossings):
        raise MoveError(f"invalid site {site!r}: expected one crossing index 0..{len(d) - 1}")
    return site[0]


def _switch(d: LinkDiagram, site) -> LinkDiagram:
    k = _crossing_index(d, site)
    xs = list(d.crossings)
    xs[k] = xs[k].switched()
    return LinkDiagram(tuple(xs), d.components, d.labels, d.provenance)


def _smooth(d: LinkDiagram, site) -> LinkDiagram:
    k = _crossing_index(d, site)
    x = d.crossings[k]
    E = _Edges(d)
    E.union(x.under_in, x.over_out)
    E.union(x.over_in, x.under_out)
    raw = [_ends(y) for j, y in enumerate(d.crossings) if j != k]
    return _rebuild(d, raw, E, keep_labels=False)


def _r1_add(d: LinkDiagram, site) -> LinkDiagram:
    if len(site) != 3:
        raise MoveError(f"invalid R1+ site {site!r}")
    e, sign, first_under = site
    _check_edge(d, e)
    if sign not in (1, -1):
        raise MoveError(f"invalid R1+ sign {sign!r}")
    E = _Edges(d)
    e1, loop, e2 = E.new(), E.new(), E.new()
    free = all(e not in x.pd for x in d.crossings)
    if free:
        e2 = e1
    raw = _replace_edge([_ends(x) for x in d.crossings], e, e1, e2)
    if first_under:
        raw.append((sign, e1, loop, loop, e2))
    else:
        raw.append((sign, loop, e2, e1, loop))
    E.parent[e] = e1
    return _rebuild(d, raw, E, keep_labels=True)


def _r1_remove(d: LinkDiagram, site) -> LinkDiagram:
    if len(site) != 1:
        raise MoveError(f"invalid R1- site {site!r}")
    (l,) = site
    for k, x in enumerate(d.crossings):
        for s in range(4):
            if x.pd[s] == l and x.pd[(s + 1) % 4] == l:
                E = _Edges(d)
                E.union(l, x.pd[(s + 2) % 4], x.pd[(s + 3) % 4])
                raw = [_ends(y) for j, y in enumerate(d.crossings) if j != k]
                return _rebuild(d, raw, E, keep_labels=True)
    raise MoveError(f"invalid site: edge {l} is not the loop of a kink")


def _same_face_ok(d: LinkDiagram, e, es, f, fs) -> bool:
    comp = d.component_of()
    groups = projection_groups(d)
    g_of = {i: n for n, g in enumerate(groups) for i in g}
    if g_of[comp[e]] != g_of[comp[f]]:
        return True
    idx = face_index(d)
    if (e, es) not in idx or (f, fs) not in idx:
        # a free loop alone in its group: any side is fine
        return (e, es) not in idx and (f, fs) not in idx and e != f
    return idx[(e, es)] == idx[(f, fs)]


def _r2_add(d: LinkDiagram, site) -> LinkDiagram:
    if len(site) != 5:
        raise MoveError(f"invalid R2+ site {site!r}")
    e, es, f, fs, e_over = site
    _check_edge(d, e)
    _check_edge(d, f)
    if e == f:
        raise MoveError("invalid site: R2+ needs two different edges")
    if es not in ("L", "R") or fs not in ("L", "R"):
        raise MoveError(f"invalid R2+ sides {es!r}, {fs!r}")
    if not _same_face_ok(d, e, es, f, fs):
        raise MoveError(f"invalid site: edges {e} and {f} do not share that face")
    # local picture: the face lies between e (below) and f (above); the
    # walk goes west along e and east along f
    e_east = es == "L"
    f_east = fs == "R"
    E = _Edges(d)
    e1, em, e2, f1, fm, f2 = (E.new() for _ in range(6))
    used = {y for x in d.crossings for y in x.pd}
    if e not in used:
        e2 = e1
    if f not in used:
        f2 = f1
    raw = [_ends(x) for x in d.crossings]
    raw = _replace_edge(raw, e, e1, e2)
    raw = _replace_edge(raw, f, f1, f2)
    # e meets x=a then x=b when running east; f likewise
    e_at = {"a": ((0, 1), e1, em), "b": ((0, -1), em, e2)} if e_east else \
           {"b": ((0, 1), e1, em), "a": ((0, -1), em, e2)}
    f_at = {"a": ((1, 0), f1, fm), "b": ((1, 0), fm, f2)} if f_east else \
           {"b": ((-1, 0), f1, fm), "a": ((-1, 0), fm, f2)}
    for p in ("a", "b"):
        (ed, ei, eo), (fd, fi, fo) = e_at[p], f_at[p]
        if e_over:
            raw.append((_sign(ed, fd), fi, fo, ei, eo))
        else:
            raw.append((_sign(fd, ed), ei, eo, fi, fo))
    E.parent[e] = e1
    E.parent[f] = f1
    return _rebuild(d, raw, E, keep_labels=True)


def _role(x: Crossing, e) -> set:
    return {"under" if s in (0, 2) else "over" for s in range(4) if x.pd[s] == e}


def _bigons(d: LinkDiagram):
    occ = occurrences(d)
    for face in faces(d):
        if len(face) != 2:
            continue
        (g, _), (h, _) = face
        kg = {k for k, _ in occ[g]}
        kh = {k for k, _ in occ[h]}
        if len(kg) != 2 or kg != kh:
            continue
        k1, k2 = sorted(kg)
        if _role(d.crossings[k1], g) == _role(d.crossings[k2], g):
            yield tuple(sorted((g, h))), (k1, k2)


def _r2_remove(d: LinkDiagram, site) -> LinkDiagram:
    site = tuple(sorted(site))
    for key, (k1, k2) in _bigons(d):
        if key != site:
            continue
        E = _Edges(d)
        occ = occurrences(d)
        for t in key:
            group = [t]
            for k, s in occ[t]:
                group.append(d.crossings[k].pd[(s + 2) % 4])
            E.union(*group)
        raw = [_ends(y) for j, y in enumerate(d.crossings) if j not in (k1, k2)]
        return _rebuild(d, raw, E, keep_labels=True)
    raise MoveError(f"invalid site: edges {site} do not bound a removable bigon")


def _triangles(d: LinkDiagram):
    occ = occurrences(d)
    for face in faces(d):
        if len(face) != 3:
            continue
        edges = [e for e, _ in face]
        if len(set(edges)) != 3:
            continue
        ks = set()
        ok = True
        for e in edges:
            kk = {k for k, _ in occ[e]}
            if len(kk) != 2:
                ok = False
            ks |= kk
        if not ok or len(ks) != 3:
            continue
        # some strand must be over at both of its triangle crossings
        tops = [e for e in edges
                if all(_role(d.crossings[k], e) == {"over"} for k, _ in occ[e])]
        if tops:
            yield tuple(sorted(edges))


def _r3(d: LinkDiagram, site) -> LinkDiagram:
    site = tuple(sorted(site))
    if site not in set(_triangles(d)):
        raise MoveError(f"invalid site: R3 pattern not present at edges {site}")
    occ = occurrences(d)
    strands = {}
    for t in site:
        (k1, s1), (k2, s2) = occ[t]
        if not _is_out(d.crossings[k1], s1):
            (k1, s1), (k2, s2) = (k2, s2), (k1, s1)
        t_in = d.crossings[k1].pd[(s1 + 2) % 4]
        t_out = d.crossings[k2].pd[(s2 + 2) % 4]
        strands[t] = (k1, k2, t_in, t_out)
    new = {}
    for t, (src, dst, t_in, t_out) in strands.items():
        # after the slide the strand meets dst's partner first
        for k, ends in ((dst, (t_in, t)), (src, (t, t_out))):
            role = "under" if any(d.crossings[k].pd[s] == t and s in (0, 2) for s in range(4)) \
                else "over"
            new.setdefault(k, {})[role] = ends
    raw = []
    for k, x in enumerate(d.crossings):
        if k in new:
            (ui, uo), (oi, oo) = new[k]["under"], new[k]["over"]
            raw.append((x.sign, ui, uo, oi, oo))
        else:
            raw.append(_ends(x))
    return _rebuild(d, raw, _Edges(d), keep_labels=True)


# ---------------------------------------------------------------- sites

def move_sites(d: LinkDiagram, kind: str) -> list:
    """Every admissible site of one move kind, in increasing order."""
    if kind not in KINDS:
        raise MoveError(f"unknown move kind {kind!r}")
    edges = sorted(d.component_of())
    if kind == "R1+":
        sites = [(e, s, fu) for e in edges for s in (1, -1) for fu in (True, False)]
    elif kind == "R1-":
        sites = sorted({(x.pd[s],) for x in d.crossings for s in range(4)
                        if x.pd[s] == x.pd[(s + 1) % 4]})
    elif kind == "R2+":
        sites = _r2_add_sites(d, edges)
    elif kind == "R2-":
        sites = sorted({key for key, _ in _bigons(d)})
    elif kind == "R3":
        sites = sorted(set(_triangles(d)))
    else:
        sites = [(k,) for k in range(len(d.crossings))]
    return [MoveSpec(kind, s) for s in sites]


def _r2_add_sites(d: LinkDiagram, edges) -> list:
    comp = d.component_of()
    g_of = {i: n for n, g in enumerate(projection_groups(d)) for i in g}
    idx = face_index(d)
    sides = {}
    for (e, side), n in idx.items():
        sides.setdefault(n, []).append((e, side))
    sites = []
    for n in sorted(sides):
        members = sorted(sides[n])
        for e, es in members:
            for f, fs in members:
                if e != f:
                    sites += [(e, es, f, fs, o) for o in (True, False)]
    for e in edges:
        for f in edges:
            if g_of[comp[e]] != g_of[comp[f]]:
                sites += [(e, es, f, fs, o) for es in "LR" for fs in "LR" for o in (True, False)]
    # a lone free loop has no faces but can still take a finger
    return sorted(set(sites))


def connect_projection(d: LinkDiagram) -> LinkDiagram:
    """Join split pieces of the projection by R2+ moves (one per extra piece)."""
    while True:
        groups = projection_groups(d)
        if len(groups) <= 1:
            return d
        e = min(d.components[groups[0][0]])
        f = min(d.components[groups[1][0]])
        d = apply_move(d, MoveSpec("R2+", (e, "L", f, "R", True)))


def sublink(d: LinkDiagram, keep: Sequence[int]) -> LinkDiagram:
    """The sublink of the components ``keep`` (0-based, in that order)."""
    keep = list(keep)
    if not keep or any(not 0 <= i < d.m for i in keep) or len(set(keep)) != len(keep):
        raise MoveError(f"invalid component selection {keep!r}")
    comp = d.component_of()
    kept = set(keep)
    E = _Edges(d)
    raw = []
    for x in d.crossings:
        u, o = comp[x.under_in] in kept, comp[x.over_in] in kept
        if u and o:
            raw.append(_ends(x))
        elif u:
            E.union(x.under_in, x.under_out)
        elif o:
            E.union(x.over_in, x.over_out)
    labels = tuple(d.labels[i] for i in keep) if d.labels else None
    part = LinkDiagram(d.crossings, tuple(d.components[i] for i in keep), labels, d.provenance)
    return _rebuild(part, raw, E, keep_labels=True)
