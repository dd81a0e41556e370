"""Milnor's mu-bar invariants, the Sato-Levine invariant and Cochran's beta^i.

Index sequences are 1-based component numbers, so ``(1, 2)`` is the
linking number of the first two components.  ``mu(i_1 ... i_k)`` is the
coefficient of ``X_{i_1} ... X_{i_{k-1}}`` in the Magnus expansion of the
zero-framed longitude of component ``i_k`` (see :mod:`linkinv.words` for
the orientation conventions).
"""

from __future__ import annotations

import itertools
import time
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from .diagram import LinkDiagram, gcd_all, linking_number
from .words import arc_images, expand, longitude, wirtinger


class MilnorError(ValueError):
    pass


@dataclass(frozen=True)
class MuValue:
    I: tuple
    mu: int
    delta: int
    residue: int

    @classmethod
    def make(cls, I, mu: int, delta: int) -> "MuValue":
        return cls(tuple(I), mu, delta, mu % delta if delta else mu)

    @property
    def vanishes(self) -> bool:
        return self.delta == 0 and self.mu == 0


def _check_indices(d: LinkDiagram, I: Sequence[int]) -> tuple:
    I = tuple(int(i) for i in I)
    if len(I) < 2:
        raise MilnorError(f"index sequence {I} is shorter than 2")
    bad = [i for i in I if not 1 <= i <= d.m]
    if bad:
        raise MilnorError(f"index {bad[0]} out of range 1..{d.m}")
    return I


class LongitudeExpansions:
    """Magnus expansions of all longitudes of a diagram at one truncation.

    ``caps`` (1-based component -> max multiplicity) restricts the monomials
    that are tracked; it must dominate every sequence that will be asked.
    """

    def __init__(self, d: LinkDiagram, D: int, depth: int | None = None,
                 caps: dict | None = None, base_edges=None):
        self.d = d
        self.D = D
        self.caps = {i - 1: n for i, n in caps.items()} if caps else None
        p = wirtinger(d, base_edges=base_edges, allow_disconnected=True)
        images = arc_images(p, depth if depth is not None else D + 1, D, self.caps)
        self.series = [expand(longitude(p, i), images, D, self.caps) for i in range(d.m)]

    def mu(self, J: Sequence[int]) -> int:
        """Non-bar coefficient ``mu(J)`` for 1-based ``J``."""
        if len(J) - 1 > self.D:
            raise MilnorError(f"sequence {tuple(J)} needs degree {len(J) - 1} > {self.D}")
        return self.series[J[-1] - 1][tuple(j - 1 for j in J[:-1])]


def indeterminacy_sequences(I: Sequence[int]) -> set:
    """All cyclic permutations of proper subsequences of ``I`` of length >= 2."""
    n = len(I)
    out = set()
    for r in range(2, n):
        for pos in itertools.combinations(range(n), r):
            J = tuple(I[p] for p in pos)
            for s in range(r):
                out.add(J[s:] + J[:s])
    return out


def _mu_value(exp: LongitudeExpansions, I: tuple) -> MuValue:
    delta = gcd_all(exp.mu(J) for J in indeterminacy_sequences(I))
    return MuValue.make(I, exp.mu(I), delta)


def mu_bar(d: LinkDiagram, I: Sequence[int], depth: int | None = None,
           route: str = "native", base_edges=None) -> MuValue:
    """Milnor invariant of ``d`` for the index sequence ``I``.

    ``route="native"`` reads repeated indices straight off the Magnus
    expansion; ``route="cable"`` passes to the parallel link ``D_I`` in
    which all indices are distinct.  ``depth`` is the number of
    substitution rounds (default ``len(I)``).

    >>> from linkinv.families import generate, FamilySpec
    >>> mu_bar(generate(FamilySpec("hopf")), (1, 2))
    MuValue(I=(1, 2), mu=1, delta=0, residue=1)
    """
    I = _check_indices(d, I)
    depth = len(I) if depth is None else depth
    if depth < len(I):
        raise MilnorError(f"substitution depth {depth} is below |I| = {len(I)}")
    if route == "cable":
        from .families import parallel_for_sequence
        dd, J = parallel_for_sequence(d, I)
        v = mu_bar(dd, J, depth=depth, route="native")
        return MuValue.make(I, v.mu, v.delta)
    if route != "native":
        raise MilnorError(f"unknown route {route!r}")
    exp = LongitudeExpansions(d, len(I) - 1, depth, dict(Counter(I)), base_edges)
    return _mu_value(exp, I)


class MuTable(list):
    """List of :class:`MuValue` rows; ``complete`` is False when the budget ran out."""

    complete: bool = True
    max_len: int = 0

    def rows(self) -> str:
        return serialize_mu_values(self, complete=self.complete)


def canonical_rotation(I: Sequence[int]) -> tuple:
    I = tuple(I)
    return min(I[s:] + I[:s] for s in range(len(I)))


def mu_table(d: LinkDiagram, max_len: int, budget_seconds: float | None = None,
             dedupe: bool = True, allow_long: bool = False) -> MuTable:
    """All mu-bar values of length ``2..max_len``.

    One Magnus computation at degree ``max_len - 1`` serves every
    sequence.  With ``dedupe`` only the lexicographically least rotation of
    each cyclic orbit is listed (mu-bar is cyclically symmetric modulo its
    indeterminacy).  Rows are sorted by length, then lexicographically.
    """
    if max_len < 2:
        raise MilnorError("max_len must be at least 2")
    if max_len > 9 and not allow_long:
        raise MilnorError(f"max_len {max_len} exceeds the cost guard 9 (pass allow_long=True)")
    start = time.monotonic()
    table = MuTable()
    table.max_len = max_len
    exp = LongitudeExpansions(d, max_len - 1, max_len)
    for n in range(2, max_len + 1):
        for I in itertools.product(range(1, d.m + 1), repeat=n):
            if dedupe and canonical_rotation(I) != I:
                continue
            if budget_seconds is not None and time.monotonic() - start > budget_seconds:
                table.complete = False
                return table
            table.append(_mu_value(exp, I))
    return table


def all_vanish(values: Iterable[MuValue]) -> MuValue | None:
    """First value that is not an honest zero, or None."""
    for v in values:
        if not v.vanishes:
            return v
    return None


def sato_levine(d: LinkDiagram) -> int:
    """``mu-bar(1122)`` of a 2-component link with vanishing linking number."""
    if d.m != 2:
        raise MilnorError(f"Sato-Levine needs 2 components, got {d.m}")
    lk = linking_number(d, 0, 1)
    if lk:
        raise MilnorError(f"Sato-Levine needs lk = 0, got {lk}")
    v = mu_bar(d, (1, 1, 2, 2))
    if v.delta:
        raise MilnorError(f"mu-bar(1122) is only defined modulo {v.delta}")
    return v.mu


# beta^i = BETA_SIGN * mu-bar(1^{2i} 2 2); pinned by beta^k(M_k) = +1
BETA_SIGN = 1


def cochran_beta(d: LinkDiagram, i: int) -> int:
    """Cochran's ``beta^i`` in the regime where it equals ``+-mu-bar(1^{2i}22)``.

    Every mu-bar of length below ``2i + 2`` must vanish with zero
    indeterminacy; otherwise the first offending value is reported.
    """
    if i < 1:
        raise MilnorError("beta^i needs i >= 1")
    if d.m != 2:
        raise MilnorError(f"beta^i needs 2 components, got {d.m}")
    n = 2 * i + 2
    exp = LongitudeExpansions(d, n - 1, n)
    for length in range(2, n):
        for J in itertools.product((1, 2), repeat=length):
            v = _mu_value(exp, J)
            if not v.vanishes:
                raise MilnorError(
                    f"lower invariant does not vanish: mu-bar{v.I} = {v.mu} (delta {v.delta})")
    v = _mu_value(exp, (1,) * (2 * i) + (2, 2))
    if v.delta:
        raise MilnorError(f"mu-bar{v.I} has indeterminacy {v.delta}")
    return BETA_SIGN * v.mu


# ---------------------------------------------------------------- serialization

def serialize_mu_values(values: Iterable[MuValue], complete: bool = True) -> str:
    """Tab-separated rows ``I mu delta residue``; ``I`` is comma-joined."""
    lines = ["I\tmu\tdelta\tresidue"]
    for v in values:
        lines.append(f"{','.join(map(str, v.I))}\t{v.mu}\t{v.delta}\t{v.residue}")
    if not complete:
        lines.append("# budget exceeded: table is partial")
    return "\n".join(lines) + "\n"


def parse_mu_values(text: str) -> list:
    out = []
    for line in text.splitlines():
        if not line or line.startswith("#") or line.startswith("I\t"):
            continue
        I, mu, delta, residue = line.split("\t")
        out.append(MuValue(tuple(int(x) for x in I.split(",")), int(mu), int(delta), int(residue)))
    return out
