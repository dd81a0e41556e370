"""Drawing of Milnor's chain links ``M_k`` and their twisted versions.

One component is a small loop ``K1``; the other is a crochet chain.  The
bight ``B_1`` passes through ``K1``, each ``B_{j+1}`` is pulled through
the loop of ``B_j``, and the free end of the yarn is pulled through the
loop of ``B_k`` (the rightmost clasp) before returning to its start.

Layout: bight ``j`` has a frame ``(u, v)``; its legs run along ``u`` at
lateral offsets ``t = -W`` (leg 1, outgoing) and ``t = +W`` (leg 2,
returning).  The mouth of ``B_{j+1}`` lies inside the loop of ``B_j`` and
its legs leave that loop passing over the leg of ``B_j`` on the ``+W``
side.  The yarn joining the mouth of ``B_j`` to the mouth of ``B_{j+1}``
runs along the inside of ``B_j`` below everything else, as the standing
part does in a daisy chain.  The closing arc runs further below.  (With
this closure the chain component is itself knotted for ``k >= 2``; only
the Milnor invariants are pinned down.)  Half-twists along the disk pierced by ``B_j`` are crossings
between the two legs of ``B_j``.
"""

from __future__ import annotations

from fractions import Fraction as F
from typing import Sequence

W = F(1, 2)          # half-width of a band
DELTA = F(1, 16)     # vertex offset around a crossing
C = -W / 3           # lateral offset of the joining yarn inside a band
T0 = 2               # where the twist region of a band starts
Z_JOIN = -3          # height of the joining yarn
Z_RETURN = -10       # height of the closing arc
SLOT = (-W, W)


def _frame(j: int):
    """``(u, v)`` for bight ``j``; ``v`` of bight ``j+1`` is ``u`` of bight ``j``."""
    return ((1, 0), (0, -1)) if j % 2 == 1 else ((0, -1), (1, 0))


def _twist_pair(n: int, lat, axis0, step, over_from_first: bool):
    """Two strands swapping lateral slots ``n`` times along an axis.

    Strand ``k`` starts in slot ``lat[k]``.  Points ``(axis, lateral, z)``
    are listed in level order.  At each crossing the strand leaving slot 0
    is over iff ``over_from_first``.
    """
    pos = [0, 1]
    pts = [[], []]
    for i in range(n):
        a0 = axis0 + i * step
        for k in (0, 1):
            frm, to = pos[k], 1 - pos[k]
            d = lat[to] - lat[frm]
            z = 1 if (frm == 0) == over_from_first else -1
            pts[k].append((a0 + step / 4, lat[frm] + d / 4, z))
            pts[k].append((a0 + 3 * step / 4, lat[frm] + 3 * d / 4, z))
            pos[k] = to
    return pts, pos


class _Bight:
    def __init__(self, j: int, origin, half_twists: int):
        self.j = j
        self.o = origin
        self.u, self.v = _frame(j)
        self.h = half_twists
        self.a = T0 + abs(half_twists) + 1 + W   # mouth of the next bight
        self.tip = self.a + W + 1

    def at(self, s, t, z=0):
        return (self.o[0] + s * self.u[0] + t * self.v[0],
                self.o[1] + s * self.u[1] + t * self.v[1], z)

    def legs(self):
        """``(paths, end_slot)``: ``paths[k]`` lists the ``(s, t, z)`` of
        the leg that is in slot ``k`` at the mouth, in increasing ``s``."""
        if self.j == 1:
            # through K1: over its near side, under its far side
            pierce = [(F(3, 4) - DELTA, 1), (F(3, 4) + DELTA, 1),
                      (F(5, 4) - DELTA, -1), (F(5, 4) + DELTA, -1)]
        else:
            # out of the previous loop, over its leg
            pierce = [(W - DELTA, 1), (W + DELTA, 1)]
        paths = [[(F(0), t, 0)] + [(s, t, z) for s, z in pierce] for t in SLOT]
        twist, end = _twist_pair(abs(self.h), SLOT, T0, 1, self.h > 0)
        for k in (0, 1):
            paths[k] += twist[k]
            paths[k].append((T0 + abs(self.h) + F(1, 2), SLOT[end[k]], 0))
        return paths, end


def milnor_chain_drawing(k: int, twists: Sequence[int] | None = None,
                         clasp_twists: int = 0):
    """Polylines ``[chain, K1]`` of the (twisted) Milnor link ``M_k``.

    ``twists[j-1]`` half-twists go along disk ``j`` (the disk of ``K1``
    for ``j = 1``, the loop of ``B_{j-1}`` otherwise).  ``clasp_twists``
    full twists are added to the band entering the rightmost clasp.
    """
    if k < 1:
        raise ValueError("M_k needs k >= 1")
    twists = list(twists) if twists is not None else [0] * k
    if len(twists) != k:
        raise ValueError(f"need {k} twist counts, got {len(twists)}")
    twists[-1] += 2 * clasp_twists

    bights = []
    origin = (F(0), F(0))
    for j in range(1, k + 1):
        b = _Bight(j, origin, twists[j - 1])
        bights.append(b)
        origin = b.at(b.a, 0)[:2]

    b1 = bights[0]
    k1 = [b1.at(F(3, 4), -2 * W), b1.at(F(5, 4), -2 * W),
          b1.at(F(5, 4), 2 * W), b1.at(F(3, 4), 2 * W)]

    yarn = []
    for idx, b in enumerate(bights):
        paths, end = b.legs()
        yarn += [b.at(*p) for p in paths[0]]
        yarn += [b.at(b.tip, SLOT[end[0]]), b.at(b.tip, SLOT[end[1]])]
        yarn += [b.at(*p) for p in reversed(paths[1])]
        yarn += [b.at(-F(1, 4), W, Z_JOIN), b.at(-F(1, 4), C, Z_JOIN)]
        if idx < k - 1:
            yarn.append(b.at(b.a - W, C, Z_JOIN))
        else:
            # the free end comes up through the last loop and over its leg
            yarn += [b.at(b.a, C, Z_JOIN), b.at(b.a, W - DELTA * 2, 1),
                     b.at(b.a, W + DELTA * 2, 1), b.at(b.a, W + 1, Z_RETURN)]

    # closing arc, below everything, into the mouth of B_1 from outside
    xs = [p[0] for p in yarn] + [p[0] for p in k1]
    ys = [p[1] for p in yarn] + [p[1] for p in k1]
    right = max(xs) + F(17, 7)
    low = min(ys) - F(23, 7)
    left = min(xs) - F(19, 7)
    top = max(ys) + F(13, 7)
    entry = b1.at(C, -W - 1, Z_RETURN)
    yarn += [(right, low, Z_RETURN), (left, low, Z_RETURN), (left, top, Z_RETURN),
             (entry[0], top, Z_RETURN), entry, b1.at(C, -W, Z_RETURN)]
    return [yarn, k1]
