"""Generators for the link families: unlinks, Hopf links, Borromean rings,
Milnor's links ``M_k`` and iterated Whitehead doubles ``W_k``, plus the
doubling and cabling operators.

Conventions:

* ``M_k`` has components ``(chain, loop)``; ``mu-bar(1^{2k} 2 2) = +1``.
  The drawing in :mod:`linkinv.chain` produces the mirror image, which
  is why :func:`milnor` mirrors it.
* A *left-handed* clasp is a clasp whose two crossings are negative.
* A *positive* half-twist of a band is right-handed, i.e. its crossing
  is negative when the two band edges run in opposite directions.
* ``W_k`` doubles component 1 of the positive Hopf link, then alternates
  between the two components; which component is doubled can be set
  per stage.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Sequence

from .chain import milnor_chain_drawing
from .diagram import DiagramError, LinkDiagram, check, mirror
from .drawing import braid_closure, diagram_from_drawing
from .satellite import cable, whitehead_double

__all__ = [
    "FamilyError", "FamilySpec", "generate", "hopf", "unlink", "borromean",
    "trefoil", "figure_eight", "milnor", "whitehead_iter", "whitehead_double",
    "cable", "clasp_twist_family", "parallel_for_sequence", "mirror", "corpus",
]

FAMILIES = ("unlink", "hopf", "borromean", "milnor", "whitehead_iter")


class FamilyError(DiagramError):
    pass


@dataclass(frozen=True)
class FamilySpec:
    """Which member of which family.

    ``k`` is the stage (``M_k``, ``W_k``) or, for ``unlink``, the number
    of components.  ``twists`` has one entry per stage.  ``clasp_sign``
    is the Hopf sign for ``hopf`` and the per-stage clasp sign for
    ``whitehead_iter`` (an int applies to every stage).
    ``clasp_twists`` counts full twists in the rightmost clasp of ``M_k``;
    ``doubled`` lists the 1-based component doubled at each stage of
    ``W_k``.
    """

    family: str
    k: int = 0
    twists: tuple = ()
    clasp_sign: object = None
    clasp_twists: int = 0
    doubled: tuple = ()

    def to_dict(self) -> dict:
        out = asdict(self)
        out["twists"] = list(self.twists)
        out["doubled"] = list(self.doubled)
        if isinstance(self.clasp_sign, tuple):
            out["clasp_sign"] = list(self.clasp_sign)
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "FamilySpec":
        cs = data.get("clasp_sign")
        return cls(data["family"], int(data.get("k", 0)), tuple(data.get("twists", ())),
                   tuple(cs) if isinstance(cs, list) else cs,
                   int(data.get("clasp_twists", 0)), tuple(data.get("doubled", ())))


def generate(spec: FamilySpec) -> LinkDiagram:
    """Validated diagram of the family member ``spec``."""
    f = spec.family
    if f not in FAMILIES:
        raise FamilyError(f"unknown family {f!r} (known: {', '.join(FAMILIES)})")
    if f != "milnor" and spec.clasp_twists:
        raise FamilyError("clasp_twists only applies to the milnor family")
    if f != "whitehead_iter" and spec.doubled:
        raise FamilyError("doubled only applies to the whitehead_iter family")
    if f in ("unlink", "hopf", "borromean") and spec.twists:
        raise FamilyError(f"family {f} takes no twists")
    if f == "unlink":
        d = unlink(spec.k if spec.k else 2)
    elif f == "hopf":
        if spec.k:
            raise FamilyError("hopf takes no stage index")
        d = hopf(1 if spec.clasp_sign is None else spec.clasp_sign)
    elif f == "borromean":
        if spec.k or spec.clasp_sign is not None:
            raise FamilyError("borromean takes no parameters")
        d = borromean()
    elif f == "milnor":
        if spec.clasp_sign is not None:
            raise FamilyError("milnor takes no clasp sign")
        d = milnor(spec.k, spec.twists or None, spec.clasp_twists)
    else:
        cs = spec.clasp_sign
        d = whitehead_iter(spec.k, spec.twists or None,
                           -1 if cs is None else cs, spec.doubled or None)
    return check(d).with_provenance({"family": spec.to_dict()})


def unlink(m: int) -> LinkDiagram:
    if m < 1:
        raise FamilyError("an unlink has at least one component")
    return LinkDiagram.unlink(m)


def hopf(sign: int = 1) -> LinkDiagram:
    """Two-crossing Hopf link with linking number ``sign``."""
    if sign not in (1, -1):
        raise FamilyError(f"hopf sign must be +1 or -1, got {sign!r}")
    return braid_closure([sign, sign], 2)


def borromean() -> LinkDiagram:
    """Six-crossing Borromean rings, closure of ``(s_1 s_2^-1)^3``."""
    return braid_closure([1, -2] * 3, 3)


def trefoil(sign: int = 1) -> LinkDiagram:
    """Three-crossing trefoil; ``sign=+1`` is the positive (right-handed) one."""
    return braid_closure([sign] * 3, 2)


def figure_eight() -> LinkDiagram:
    return braid_closure([1, -2, 1, -2], 3)


def _drawing_twists(half_twists: Sequence[int]) -> list:
    # bights with odd index are drawn in a reflected frame, and the drawing
    # is mirrored afterwards; convert right-handed half-twists accordingly
    return [-t if j % 2 == 0 else t for j, t in enumerate(half_twists)]


def milnor(k: int, twists: Sequence[int] | None = None, clasp_twists: int = 0) -> LinkDiagram:
    """Milnor's link ``M_k`` (or its twisted version) as ``(chain, loop)``.

    ``twists[j]`` half-twists go along the ``j``-th disk (counting from the
    loop); ``clasp_twists`` full twists are added in the rightmost clasp.
    """
    if k < 1:
        raise FamilyError("milnor requires k >= 1")
    twists = list(twists) if twists is not None else [0] * k
    if len(twists) != k:
        raise FamilyError(f"milnor k={k} needs {k} twist entries, got {len(twists)}")
    twists[-1] += 2 * clasp_twists
    drawing = milnor_chain_drawing(k, _drawing_twists(twists))
    return mirror(diagram_from_drawing(drawing, labels=("chain", "loop")))


def whitehead_iter(k: int, twists: Sequence[int] | None = None, clasp=-1,
                   doubled: Sequence[int] | None = None) -> LinkDiagram:
    """``W_k``: ``k``-fold iterated Whitehead double of the positive Hopf link.

    Stage ``s`` doubles component ``doubled[s]`` (1-based; default
    alternating 1, 2, 1, ...) with ``twists[s]`` extra half-twists and
    clasp sign ``clasp[s]`` (default left-handed).
    """
    if k < 0:
        raise FamilyError("whitehead_iter requires k >= 0")
    twists = list(twists) if twists is not None else [0] * k
    clasps = [clasp] * k if isinstance(clasp, int) else list(clasp)
    doubled = list(doubled) if doubled is not None else [1 + s % 2 for s in range(k)]
    for name, v in (("twists", twists), ("clasp_sign", clasps), ("doubled", doubled)):
        if len(v) != k:
            raise FamilyError(f"whitehead_iter k={k} needs {k} {name} entries, got {len(v)}")
    d = hopf(1)
    for s in range(k):
        if doubled[s] not in (1, 2):
            raise FamilyError(f"stage {s + 1}: component {doubled[s]} is not 1 or 2")
        d = whitehead_double(d, doubled[s] - 1, clasps[s], twists[s])
    return d.with_provenance(None)


def clasp_twist_family(k: int, t_range: Sequence[int], twists: Sequence[int] | None = None) -> list:
    """Twisted versions of ``M_k`` differing by ``t`` full twists in the rightmost clasp."""
    if k < 1:
        raise FamilyError("clasp_twist_family requires k >= 1")
    return [generate(FamilySpec("milnor", k, tuple(twists or ()), clasp_twists=t))
            for t in t_range]


def parallel_for_sequence(d: LinkDiagram, I: Sequence[int]) -> tuple:
    """The parallel link ``D_I`` and the sequence ``J`` of distinct indices.

    Component ``j`` is replaced by as many zero-framed parallel copies as
    it occurs in ``I`` (at least one); the ``t``-th occurrence of ``j`` in
    ``I`` becomes the ``t``-th copy.
    """
    counts = [max(1, list(I).count(j)) for j in range(1, d.m + 1)]
    dd = d
    for j in reversed(range(d.m)):
        dd = cable(dd, j, counts[j])
    offset = [sum(counts[:j]) for j in range(d.m)]
    seen = [0] * d.m
    J = []
    for i in I:
        J.append(offset[i - 1] + seen[i - 1] + 1)
        seen[i - 1] += 1
    return dd, tuple(J)


def corpus(max_crossings: int | None = None) -> dict:
    """Named diagrams used throughout the tests, smallest first."""
    items = {
        "unknot": unlink(1),
        "unknot-kink": braid_closure([1], 2),
        "unlink-2": unlink(2),
        "unlink-3": unlink(3),
        "hopf+": hopf(1),
        "hopf-": hopf(-1),
        "trefoil": trefoil(),
        "figure-eight": figure_eight(),
        "borromean": borromean(),
        "W1": whitehead_iter(1),
        "W2": whitehead_iter(2),
        "M1": milnor(1),
        "M2": milnor(2),
        "M3": milnor(3),
        "M1-twisted": milnor(1, [1]),
        "M1-twisted-neg": milnor(1, [-1]),
        "M2-twisted": milnor(2, [1, 0]),
        "M1-clasp1": milnor(1, clasp_twists=1),
    }
    if max_crossings is not None:
        items = {n: d for n, d in items.items() if len(d) <= max_crossings}
    return items
