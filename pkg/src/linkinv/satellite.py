"""Parallels, cables and Whitehead doubles of one component of a PD diagram.

Component ``i`` is replaced by ``n`` parallel copies offset to the right
of its direction of travel (the blackboard framing).  Copy ``c`` sits at
offset ``c``; a copy may run against the original orientation.  Every
crossing of the original involving component ``i`` becomes a grid of
crossings.  On the first edge of component ``i`` a *band* region is
inserted: twists between neighbouring copies, and either a straight
reconnection (cable) or a clasp (Whitehead double).

Geometry of a grid crossing, with the original under-strand running
north and the original over-strand running east (positive) or west
(negative): under-copy ``c`` is at ``x = c`` and over-copy ``c`` at
``y = -c`` (positive) or ``y = +c`` (negative).
"""

from __future__ import annotations

from typing import Sequence

from .diagram import DiagramError, LinkDiagram, make_crossing


class _Builder:
    def __init__(self):
        self.crossings = []      # (sign, ui, uo, oi, oo) on tokens
        self.alias = {}
        self.fresh = 0

    def new(self, tag):
        self.fresh += 1
        return ("n", tag, self.fresh)

    def find(self, t):
        while t in self.alias:
            t = self.alias[t]
        return t

    def join(self, a, b):
        a, b = self.find(a), self.find(b)
        if a != b:
            self.alias[a] = b

    def cross(self, sign, u, o, eps_u, eps_o):
        """Add a crossing.  ``u`` and ``o`` are ``(lo, hi)`` token pairs in
        the geometric direction; ``eps`` says whether the strand actually
        runs that way.  ``sign`` is the sign when both do."""
        ui, uo = u if eps_u > 0 else u[::-1]
        oi, oo = o if eps_o > 0 else o[::-1]
        self.crossings.append((sign * eps_u * eps_o, ui, uo, oi, oo))

    def assemble(self, order_tokens, labels, provenance) -> LinkDiagram:
        """Number edges component by component in traversal order."""
        raw = [(s, *(self.find(t) for t in ends)) for s, *ends in self.crossings]
        succ = {}
        for s, ui, uo, oi, oo in raw:
            succ[ui] = uo
            succ[oi] = oo
        ids = {}
        comps = []
        for t in order_tokens:
            t = self.find(t)
            if t not in succ:
                ids[t] = len(ids) + 1
                comps.append((ids[t],))
                continue
            if t in ids:
                raise DiagramError("two requested components coincide")
            cyc = []
            e = t
            while e not in ids:
                ids[e] = len(ids) + 1
                cyc.append(ids[e])
                e = succ[e]
            comps.append(tuple(cyc))
        if len(ids) < len(succ):
            raise DiagramError("satellite construction left an untraced component")
        xs = tuple(make_crossing(ids[ui], ids[uo], ids[oi], ids[oo], s)
                   for s, ui, uo, oi, oo in raw)
        return LinkDiagram(xs, tuple(comps), tuple(labels) if labels else None, provenance)


def _band_twists(b: _Builder, pos, eps, gaps: Sequence[tuple]):
    """Apply crossings between neighbouring band positions.

    ``pos[p]`` is ``[copy, current geometric token]``.  ``gaps`` lists
    ``(p, right_over)``: positions ``p`` and ``p+1`` swap, and the strand
    moving right is over iff ``right_over`` (a positive crossing when
    both strands run forward).
    """
    for p, right_over in gaps:
        (ca, ta), (cb, tb) = pos[p], pos[p + 1]
        ha, hb = b.new("tw"), b.new("tw")
        if right_over:
            b.cross(1, (tb, hb), (ta, ha), eps[cb], eps[ca])
        else:
            b.cross(-1, (ta, ha), (tb, hb), eps[ca], eps[cb])
        pos[p], pos[p + 1] = [cb, hb], [ca, ha]


def full_twist_gaps(n: int, positive: bool) -> list:
    """One full twist ``(s_1 ... s_{n-1})^n`` of an ``n``-strand band."""
    return [(p, positive) for _ in range(n) for p in range(n - 1)]


def _parallel(d: LinkDiagram, i: int, eps: Sequence[int], gaps, clasp: int | None,
              labels, provenance) -> LinkDiagram:
    if not 0 <= i < d.m:
        raise DiagramError(f"component {i + 1} out of range 1..{d.m}")
    n = len(eps)
    comp = d.component_of()
    e0 = d.components[i][0]
    b = _Builder()

    def copies(e):
        return range(n) if comp[e] == i else range(1)

    def lo(e, c):
        return ("E", e, c)

    def hi(e, c):
        # the end of edge e where it enters the next crossing
        return ("T", e, c) if e == e0 else ("E", e, c)

    def strand_eps(e, c):
        return eps[c] if comp[e] == i else 1

    for k, x in enumerate(d.crossings):
        cu, co = list(copies(x.under_in)), list(copies(x.over_in))
        # over-copies met by an under-copy, south to north
        o_order = co[::-1] if x.sign > 0 else co
        # under-copies met by an over-copy, along its direction
        u_order = cu if x.sign > 0 else cu[::-1]
        under_tok = {}
        for c in cu:
            toks = [hi(x.under_in, c)] + [b.new(("gu", k, c)) for _ in co[1:]] + [lo(x.under_out, c)]
            under_tok[c] = {o: (toks[j], toks[j + 1]) for j, o in enumerate(o_order)}
        over_tok = {}
        for c in co:
            toks = [hi(x.over_in, c)] + [b.new(("go", k, c)) for _ in cu[1:]] + [lo(x.over_out, c)]
            over_tok[c] = {u: (toks[j], toks[j + 1]) for j, u in enumerate(u_order)}
        for u in cu:
            for o in co:
                b.cross(x.sign, under_tok[u][o], over_tok[o][u],
                        strand_eps(x.under_in, u), strand_eps(x.over_in, o))

    # band region on e0: bottom tokens lo(e0, c), top tokens hi(e0, c)
    pos = [[c, lo(e0, c)] for c in range(n)]
    _band_twists(b, pos, eps, gaps)
    if clasp is None:
        perm = [c for c, _ in pos]
        if perm != list(range(n)):
            raise DiagramError("band twists must return every copy to its position")
        for c, t in pos:
            b.join(t, hi(e0, c))
    else:
        _clasp(b, pos, [hi(e0, c) for c in range(n)], eps, clasp)
    if all(comp[x.under_in] != i and comp[x.over_in] != i for x in d.crossings):
        # crossingless component: the band closes on itself
        for c in range(n):
            b.join(hi(e0, c), lo(e0, c))

    order = []
    for j, cyc in enumerate(d.components):
        if j == i:
            order += [lo(e0, c) for c in range(n)] if clasp is None else [lo(e0, 0)]
        else:
            order.append(lo(cyc[0], 0))
    return b.assemble(order, labels, provenance)


def _clasp(b: _Builder, pos, top, eps, sign: int):
    """Close a two-strand band with a clasp whose two crossings have sign ``sign``.

    The bottom cap joins positions 0 and 1 arriving from below; the top
    cup joins them from above and hooks through the cap: the cap's top
    crosses both legs of the cup, at P1 (left) and P2 (right).  Above the
    clasp copy 0 leaves upward at position 0, so the cup always runs
    ``t1 -> P2 -> P1 -> t0``; the cap runs either way depending on the
    twists below.
    """
    (c0, b0), (c1, b1) = pos
    if eps[c0] == eps[c1]:
        raise DiagramError("a clasp needs oppositely oriented band strands")
    t0, t1 = top
    BB, TT = b.new("cap"), b.new("cup")
    cup1, cup2 = (TT, t0), (t1, TT)
    if eps[c0] > 0:     # cap runs b0 -> P1 -> P2 -> b1
        cap1, cap2 = (b0, BB), (BB, b1)
        cap_over_first = sign > 0
    else:               # cap runs b1 -> P2 -> P1 -> b0
        cap1, cap2 = (BB, b0), (b1, BB)
        cap_over_first = sign < 0
    if cap_over_first:
        _raw(b, sign, under=cup1, over=cap1)
        _raw(b, sign, under=cap2, over=cup2)
    else:
        _raw(b, sign, under=cap1, over=cup1)
        _raw(b, sign, under=cup2, over=cap2)


def _raw(b: _Builder, sign, under, over):
    b.crossings.append((sign, under[0], under[1], over[0], over[1]))


def _labels(d: LinkDiagram, i: int, new: Sequence[str]):
    old = list(d.labels) if d.labels else [str(j + 1) for j in range(d.m)]
    return old[:i] + list(new) + old[i + 1:]


def cable(d: LinkDiagram, i: int, n: int) -> LinkDiagram:
    """Zero-framed ``n``-parallel of component ``i`` (0-based).

    Copies are numbered in pushoff order (left to right looking along the
    component) and labelled ``<label>_1 .. <label>_n``.
    """
    if n < 1:
        raise DiagramError("cable needs n >= 1")
    if not 0 <= i < d.m:
        raise DiagramError(f"component {i + 1} out of range 1..{d.m}")
    if n == 1:
        return d
    w = d.writhe()[i]
    gaps = full_twist_gaps(n, w < 0) * abs(w)
    lab = _labels(d, i, [])
    base = (d.labels[i] if d.labels else str(i + 1))
    labels = lab[:i] + [f"{base}_{c + 1}" for c in range(n)] + lab[i:]
    prov = dict(d.provenance or {})
    prov["cable"] = prov.get("cable", []) + [[i + 1, n]]
    return _parallel(d, i, [1] * n, gaps, None, labels, prov)


def whitehead_double(d: LinkDiagram, i: int, clasp: int = -1, half_twists: int = 0) -> LinkDiagram:
    """Whitehead double of component ``i`` (0-based).

    Blackboard 2-parallel with oppositely oriented strands, ``-w(i)``
    full twists restoring zero framing, ``half_twists`` further
    half-twists (positive = right-handed), then a clasp of sign
    ``clasp`` (``-1`` is the left-handed clasp).
    """
    if clasp not in (1, -1):
        raise DiagramError(f"clasp sign must be +1 or -1, got {clasp}")
    if not 0 <= i < d.m:
        raise DiagramError(f"component {i + 1} out of range 1..{d.m}")
    w = d.writhe()[i]
    gaps = full_twist_gaps(2, w < 0) * abs(w)
    gaps += [(0, half_twists > 0)] * abs(half_twists)
    labels = _labels(d, i, [d.labels[i] if d.labels else str(i + 1)])
    prov = dict(d.provenance or {})
    prov["doubled"] = prov.get("doubled", []) + [
        {"component": i + 1, "clasp": clasp, "half_twists": half_twists,
         "framing_full_twists": -w}]
    return _parallel(d, i, [1, -1], gaps, clasp, labels, prov)
