"""Turn planar drawings into PD diagrams.

A drawing is a list of closed polylines, one per component, with
vertices ``(x, y)`` or ``(x, y, h)``.  The optional third coordinate is
a height, interpolated linearly along each segment; where two segments
cross in the plane the higher one is the over-strand.  All arithmetic
is exact (``Fraction``), and degenerate drawings (segments meeting at a
vertex, overlapping, or crossing at equal height) are rejected.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .diagram import DiagramError, LinkDiagram, make_crossing

Point = tuple


def _pt(v):
    x, y = Fraction(v[0]), Fraction(v[1])
    h = Fraction(v[2]) if len(v) > 2 else Fraction(0)
    return x, y, h


def _cross(ax, ay, bx, by):
    return ax * by - ay * bx


def _intersect(p, q, r, s):
    """Parameters (t, u) of a proper crossing of segments pq and rs, or None."""
    dx1, dy1 = q[0] - p[0], q[1] - p[1]
    dx2, dy2 = s[0] - r[0], s[1] - r[1]
    den = _cross(dx1, dy1, dx2, dy2)
    ox, oy = r[0] - p[0], r[1] - p[1]
    if den == 0:
        if _cross(ox, oy, dx1, dy1) == 0:
            # collinear: overlapping is degenerate, disjoint is fine
            t0 = _proj(p, q, r)
            t1 = _proj(p, q, s)
            lo, hi = min(t0, t1), max(t0, t1)
            if hi >= 0 and lo <= 1:
                raise DiagramError(f"collinear overlapping segments near {tuple(map(float, p[:2]))}")
        return None
    t = _cross(ox, oy, dx2, dy2) / den
    u = _cross(ox, oy, dx1, dy1) / den
    if t < 0 or t > 1 or u < 0 or u > 1:
        return None
    return t, u


def _proj(p, q, r):
    dx, dy = q[0] - p[0], q[1] - p[1]
    return ((r[0] - p[0]) * dx + (r[1] - p[1]) * dy) / (dx * dx + dy * dy)


def diagram_from_drawing(polylines: Sequence[Sequence[Point]],
                         labels: Sequence[str] | None = None,
                         provenance: dict | None = None) -> LinkDiagram:
    """Compute the signed PD diagram of a drawing.

    Components keep the order of ``polylines`` and their orientation is
    the vertex order.
    """
    comps = [[_pt(v) for v in pl] for pl in polylines]
    segs = []  # (component, index, p, q)
    for ci, pts in enumerate(comps):
        if len(pts) < 3:
            raise DiagramError(f"component {ci} needs at least 3 vertices")
        for k in range(len(pts)):
            segs.append((ci, k, pts[k], pts[(k + 1) % len(pts)]))

    events: list[list] = [[] for _ in comps]  # (position, crossing id, role)
    xinfo = []  # per crossing: (under_dir, over_dir)
    for a in range(len(segs)):
        ca, ka, p, q = segs[a]
        for b in range(a + 1, len(segs)):
            cb, kb, r, s = segs[b]
            n_a = len(comps[ca])
            if ca == cb and (kb - ka) % n_a in (1, n_a - 1):
                continue  # neighbours share an endpoint
            hit = _intersect(p, q, r, s)
            if hit is None:
                continue
            t, u = hit
            if t in (0, 1) or u in (0, 1):
                raise DiagramError(
                    f"segments cross at a vertex near {float(p[0] + t * (q[0] - p[0])):.3f},"
                    f"{float(p[1] + t * (q[1] - p[1])):.3f}")
            ha = p[2] + t * (q[2] - p[2])
            hb = r[2] + u * (s[2] - r[2])
            if ha == hb:
                raise DiagramError(
                    f"crossing at equal heights between components {ca} and {cb}")
            cid = len(xinfo)
            da = (q[0] - p[0], q[1] - p[1])
            db = (s[0] - r[0], s[1] - r[1])
            if ha > hb:
                xinfo.append((db, da))
                events[ca].append((ka + t, cid, "over"))
                events[cb].append((kb + u, cid, "under"))
            else:
                xinfo.append((da, db))
                events[ca].append((ka + t, cid, "under"))
                events[cb].append((kb + u, cid, "over"))

    ends = [dict() for _ in xinfo]  # role -> [in_edge, out_edge]
    next_edge = 1
    order = []
    free = 0
    free_positions = []
    for ci, ev in enumerate(events):
        if not ev:
            free += 1
            free_positions.append(ci)
            continue
        ev.sort()
        r = len(ev)
        ids = list(range(next_edge, next_edge + r))
        next_edge += r
        # edge ids[j] runs from event j to event j+1 (cyclically)
        for j, (_, cid, role) in enumerate(ev):
            slot = ends[cid].setdefault(role, [None, None])
            slot[0] = ids[(j - 1) % r]
            slot[1] = ids[j]
        order.append(ids[-1])

    crossings = []
    for cid, (du, do) in enumerate(xinfo):
        sign = 1 if _cross(do[0], do[1], du[0], du[1]) > 0 else -1
        u_in, u_out = ends[cid]["under"]
        o_in, o_out = ends[cid]["over"]
        crossings.append(make_crossing(u_in, u_out, o_in, o_out, sign))

    d = LinkDiagram.from_crossings(crossings, free_loops=free, order=order)
    if free and free_positions != list(range(len(order), len(comps))):
        # restore the drawing's component order
        traced = iter(range(len(order)))
        loops = iter(range(len(order), len(comps)))
        perm = [next(loops) if ci in free_positions else next(traced)
                for ci in range(len(comps))]
        d = d.reorder(perm)
    if labels:
        d = d.with_labels(labels)
    return d.with_provenance(provenance)


def braid_closure_drawing(word: Sequence[int], strands: int):
    """Polylines of the closure of a braid word.

    Generator ``p`` (1-based) crosses positions ``p`` and ``p+1`` with the
    strand moving right passing over (a positive crossing when the strands
    run upward); ``-p`` is its inverse.
    """
    n = strands
    L = len(word)
    perm_paths = {}
    # walk each starting position up through the braid
    for start in range(1, n + 1):
        pos = start
        pts = [(pos, 0, 0)]
        for lvl, g in enumerate(word):
            p = abs(g)
            if not 1 <= p < n:
                raise DiagramError(f"generator {g} out of range for {n} strands")
            if pos in (p, p + 1):
                step = 1 if pos == p else -1
                h = step if g > 0 else -step
                q = Fraction(1, 4)
                pts.append((pos + step * q, lvl + q, h))
                pts.append((pos + step * 3 * q, lvl + 3 * q, h))
                pos += step
            pts.append((pos, lvl + 1, 0))
        perm_paths[start] = (pts, pos)

    polylines = []
    used = set()
    for start in range(1, n + 1):
        if start in used:
            continue
        pts = []
        pos = start
        while pos not in used:
            used.add(pos)
            path, end = perm_paths[pos]
            pts.extend(path)
            off = n + 1 - end
            pts.extend([(end, L + off), (n + off, L + off), (n + off, -off), (end, -off)])
            pos = end
        polylines.append(_dedupe(pts))
    return polylines


def _dedupe(pts):
    out = []
    for v in pts:
        if out and out[-1][:2] == v[:2]:
            continue
        out.append(v)
    # drop collinear interior vertices so straight runs form single segments
    cleaned = []
    m = len(out)
    for k in range(m):
        a, b, c = out[k - 1], out[k], out[(k + 1) % m]
        flat = all(len(v) < 3 or v[2] == 0 for v in (a, b, c))
        if flat and _cross(b[0] - a[0], b[1] - a[1], c[0] - b[0], c[1] - b[1]) == 0:
            continue
        cleaned.append(b)
    return cleaned


def braid_closure(word: Sequence[int], strands: int, **kw) -> LinkDiagram:
    return diagram_from_drawing(braid_closure_drawing(word, strands), **kw)
