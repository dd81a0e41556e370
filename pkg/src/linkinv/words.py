"""Free-group words, Wirtinger presentations and longitudes.

Generators are arbitrary hashable ids.  In a Wirtinger presentation they
are arc indices ``0..n-1``; every arc is tagged with its component.

Conventions (fixed once, used everywhere):

* walking along the under-strand of a crossing of sign ``e`` with
  over-arc ``x``, the outgoing arc is ``x^-e * (incoming) * x^e``;
* the longitude of component ``i`` is the product of ``x^e`` over the
  under-crossings met while walking from the start of the base arc,
  times ``(base meridian)^-w(i)`` so that it is zero-framed.

With these choices the exponent sum of the meridians of component ``j``
in the longitude of ``i`` is ``lk(i, j)``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping, Sequence

from .diagram import DiagramError, LinkDiagram, is_projection_connected
from .magnus import MagnusSeries


class WordError(ValueError):
    pass


def _reduce(letters: Iterable[tuple]) -> tuple:
    out: list = []
    for g, e in letters:
        if e not in (1, -1):
            raise WordError(f"exponent must be +-1, got {e}")
        if out and out[-1][0] == g and out[-1][1] == -e:
            out.pop()
        else:
            out.append((g, e))
    return tuple(out)


@dataclass(frozen=True)
class FreeWord:
    """A freely reduced word; ``letters`` is a tuple of ``(generator, +-1)``.

    >>> x, y = FreeWord.gen("x"), FreeWord.gen("y")
    >>> (x * y * x.inverse()).letters
    (('x', 1), ('y', 1), ('x', -1))
    >>> (x * x.inverse()).is_identity()
    True
    """

    letters: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", _reduce(self.letters))

    @classmethod
    def gen(cls, g: Hashable, e: int = 1) -> "FreeWord":
        if e == 0:
            return cls(())
        return cls(((g, 1 if e > 0 else -1),) * abs(e))

    def __mul__(self, other: "FreeWord") -> "FreeWord":
        return FreeWord(self.letters + other.letters)

    def __pow__(self, n: int) -> "FreeWord":
        base = self if n >= 0 else self.inverse()
        return FreeWord(base.letters * abs(n))

    def __len__(self) -> int:
        return len(self.letters)

    def inverse(self) -> "FreeWord":
        return FreeWord(tuple((g, -e) for g, e in reversed(self.letters)))

    def is_identity(self) -> bool:
        return not self.letters

    def generators(self) -> set:
        return {g for g, _ in self.letters}

    def exponent_sum(self, g) -> int:
        return sum(e for h, e in self.letters if h == g)

    def substitute(self, images: Mapping[Hashable, "FreeWord"]) -> "FreeWord":
        out: tuple = ()
        for g, e in self.letters:
            w = images.get(g, FreeWord.gen(g))
            out += (w if e > 0 else w.inverse()).letters
        return FreeWord(out)

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return " ".join(f"{g}" if e > 0 else f"{g}^-1" for g, e in self.letters)


def commutator(a: FreeWord, b: FreeWord) -> FreeWord:
    """``[a, b] = a^-1 b^-1 a b``."""
    return a.inverse() * b.inverse() * a * b


def random_word(rng: random.Random, gens: Sequence, length: int) -> FreeWord:
    """A uniformly sampled freely reduced word of exactly ``length`` letters."""
    letters: list = []
    while len(letters) < length:
        g, e = rng.choice(gens), rng.choice((1, -1))
        if letters and letters[-1] == (g, -e):
            continue
        letters.append((g, e))
    return FreeWord(tuple(letters))


# ---------------------------------------------------------------- Magnus

def meridian_images(gens: Iterable, D: int, caps=None) -> dict:
    return {g: MagnusSeries.variable(g, D, caps) for g in gens}


def expand(w: FreeWord, subst: Mapping | None = None, D: int = 4,
           caps=None) -> MagnusSeries:
    """Magnus image of ``w`` truncated at degree ``D``.

    Unmapped generators fail unless ``subst`` is None, in which case every
    generator ``g`` goes to ``1 + X_g``.

    >>> x, y = FreeWord.gen(1), FreeWord.gen(2)
    >>> print(expand(commutator(x, y), D=2).dump())
    1: 1
    X1*X2: 1
    X2*X1: -1
    """
    if D < 1:
        raise WordError("degree must be at least 1")
    if subst is None:
        subst = meridian_images(w.generators(), D, caps)
    inverses: dict = {}
    out = MagnusSeries.one(D, caps)
    for g, e in w.letters:
        if g not in subst:
            raise WordError(f"generator {g!r} has no image")
        if e > 0:
            s = subst[g]
        else:
            s = inverses.get(g)
            if s is None:
                s = inverses[g] = subst[g].inverse()
        out = out * s
    return out.truncate(D)


def lcs_weight(w: FreeWord, D: int):
    """Magnus weight of ``w``: the first degree at which ``expand(w) - 1``
    is nonzero, or the string ``">=D"`` when nothing shows up through ``D``.

    >>> x, y = FreeWord.gen(1), FreeWord.gen(2)
    >>> lcs_weight(x, 4), lcs_weight(commutator(x, y), 4)
    (1, 2)
    >>> lcs_weight(commutator(commutator(x, y), y), 4)
    3
    >>> lcs_weight(x * x.inverse(), 4)
    '>=4'
    """
    d = expand(w, None, D).min_degree_of_deviation()
    return f">={D}" if d is None else d


# ---------------------------------------------------------------- Wirtinger

@dataclass(frozen=True)
class Walk:
    """The under-crossings met along one component, starting at its base arc."""

    arcs: tuple            # arcs in order, arcs[0] is the base arc
    overs: tuple           # over-arc at the k-th under-crossing
    signs: tuple           # its sign


@dataclass(frozen=True)
class WirtingerPresentation:
    generators: tuple                  # arc ids 0..n-1
    component: tuple                   # owning component of each arc
    relations: tuple                   # one relator FreeWord per crossing
    base_arc: tuple                    # per component
    walks: tuple = field(repr=False)   # per component
    writhe: tuple = field(repr=False)  # self-writhe per component

    @property
    def m(self) -> int:
        return len(self.base_arc)


def arcs_of(d: LinkDiagram) -> tuple[dict, list]:
    """Map each edge to its arc index; also return each arc's edge list.

    An arc begins at an under-crossing's outgoing edge (or is a whole
    component without under-crossings).  Arcs are numbered in the order of
    their smallest edge.
    """
    under_out = {x.under_out for x in d.crossings}
    succ = d.successor()
    groups: list = []
    seen: set = set()
    for comp in d.components:
        if not comp:
            continue
        starts = [e for e in comp if e in under_out] or [min(comp)]
        for s in starts:
            if s in seen:
                continue
            run = [s]
            seen.add(s)
            e = succ[s]
            while e not in under_out and e not in seen:
                run.append(e)
                seen.add(e)
                e = succ[e]
            groups.append(run)
    groups.sort(key=min)
    arc_of = {e: a for a, run in enumerate(groups) for e in run}
    return arc_of, groups


def wirtinger(d: LinkDiagram, base_edges: Sequence[int] | None = None,
              allow_disconnected: bool = False) -> WirtingerPresentation:
    """Wirtinger presentation with one generator per arc.

    ``base_edges`` optionally overrides the default base arc of each
    component (the arc of its lowest edge); this is how re-basing tests
    move the longitude's starting point.  ``allow_disconnected`` skips the
    connected-projection precondition: the presentation of a split
    diagram is still a presentation of the link group (a crossingless
    component contributes one free generator), which is all the Milnor
    algorithm needs.
    """
    if not allow_disconnected and not is_projection_connected(d):
        raise DiagramError("wirtinger needs a connected projection; apply connect_projection first")
    arc_of, groups = arcs_of(d)
    comp_of_edge = d.component_of()
    component = tuple(comp_of_edge[run[0]] for run in groups)

    relations = []
    for x in d.crossings:
        y, z, o = arc_of[x.under_in], arc_of[x.under_out], arc_of[x.over_in]
        e = x.sign
        # z = o^-e y o^e
        rel = FreeWord.gen(z, -1) * FreeWord.gen(o, -e) * FreeWord.gen(y) * FreeWord.gen(o, e)
        relations.append(rel)

    under_at = {x.under_in: x for x in d.crossings}
    under_out = {x.under_out for x in d.crossings}
    succ = d.successor()
    base, walks = [], []
    for i, comp in enumerate(d.components):
        e0 = min(comp) if base_edges is None else base_edges[i]
        if comp_of_edge.get(e0) != i:
            raise DiagramError(f"base edge {e0} is not on component {i}")
        b = arc_of[e0]
        base.append(b)
        start = groups[b][0]
        arcs, overs, signs = [b], [], []
        e = start
        while True:
            x = under_at.get(e)
            if x is not None:
                overs.append(arc_of[x.over_in])
                signs.append(x.sign)
            e = succ[e]
            if e == start:
                break
            if e in under_out:
                arcs.append(arc_of[e])
        walks.append(Walk(tuple(arcs), tuple(overs), tuple(signs)))
    return WirtingerPresentation(
        generators=tuple(range(len(groups))), component=component,
        relations=tuple(relations), base_arc=tuple(base), walks=tuple(walks),
        writhe=tuple(d.writhe()))


def longitude(p: WirtingerPresentation, i: int) -> FreeWord:
    """Zero-framed longitude of component ``i`` (0-based) in arc generators."""
    if not 0 <= i < p.m:
        raise WordError(f"component {i} out of range 0..{p.m - 1}")
    w = p.walks[i]
    letters = tuple((o, s) for o, s in zip(w.overs, w.signs))
    return FreeWord(letters) * FreeWord.gen(p.base_arc[i], -p.writhe[i])


def arc_images(p: WirtingerPresentation, depth: int, D: int, caps=None) -> dict:
    """Milnor's iterated substitution expressing every arc through the base
    meridians, carried out directly in the Magnus ring.

    After ``depth`` rounds each image is correct modulo degree ``depth + 1``.
    The base meridian of component ``i`` is the variable ``i``.
    """
    meridian = [MagnusSeries.variable(i, D, caps) for i in range(p.m)]
    meridian_inv = [s.inverse() for s in meridian]
    img = {a: meridian[p.component[a]] for a in p.generators}
    inv = {a: meridian_inv[p.component[a]] for a in p.generators}
    for _ in range(depth):
        new_img, new_inv = {}, {}
        for i, walk in enumerate(p.walks):
            P = MagnusSeries.one(D, caps)
            Pinv = MagnusSeries.one(D, caps)
            new_img[walk.arcs[0]] = meridian[i]
            new_inv[walk.arcs[0]] = meridian_inv[i]
            for k in range(len(walk.arcs) - 1):
                o, s = walk.overs[k], walk.signs[k]
                if s > 0:
                    P, Pinv = P * img[o], inv[o] * Pinv
                else:
                    P, Pinv = P * inv[o], img[o] * Pinv
                a = walk.arcs[k + 1]
                new_img[a] = Pinv * meridian[i] * P
                new_inv[a] = Pinv * meridian_inv[i] * P
        img, inv = new_img, new_inv
    return img


def longitude_series(p: WirtingerPresentation, i: int, depth: int, D: int,
                     caps=None) -> MagnusSeries:
    return expand(longitude(p, i), arc_images(p, depth, D, caps), D, caps)
