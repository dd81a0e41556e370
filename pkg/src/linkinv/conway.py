"""Conway polynomial by two routes, plus the coefficient congruence check.

Seifert route: the diagram is made braided by Vogel moves (Reidemeister II
moves inside faces where two Seifert circles run coherently), the closed
braid word is read off the nested Seifert circles, and the Seifert matrix
of the canonical braid surface is written down crossing by crossing.
Then ``nabla(z) = det(s V - s^-1 V^T)`` with ``z = s - 1/s``; the
determinant is a polynomial in ``u = s^2``, computed by exact integer
determinants at ``u = 0..N`` and interpolation.

Skein route: switch the first crossing that is met first from below
(walking each component from its first edge) until the diagram is
descending, recursing on the smoothing each time.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .diagram import DiagramError, LinkDiagram, gcd_all, is_projection_connected
from .moves import MoveSpec, apply_move, connect_projection, face_index, faces, seifert_circles

__all__ = [
    "ConwayPolynomial", "SeifertMatrix", "BudgetExceeded", "seifert_matrix",
    "conway_from_seifert", "conway_skein", "conway", "vogel", "braid_word",
    "braid_seifert_matrix", "CongruenceReport", "congruence_check",
]


class BudgetExceeded(RuntimeError):
    def __init__(self, message, nodes=0):
        super().__init__(message)
        self.nodes = nodes


# ---------------------------------------------------------------- polynomials

def _trim(v):
    v = list(v)
    while v and v[-1] == 0:
        v.pop()
    return tuple(v)


def _add(a, b, scale=1, shift=0):
    """``a + scale * z^shift * b`` on coefficient tuples."""
    out = list(a) + [0] * max(0, len(b) + shift - len(a))
    for j, c in enumerate(b):
        out[j + shift] += scale * c
    return _trim(out)


@dataclass(frozen=True)
class ConwayPolynomial:
    """``nabla(z) = z^(m-1) (c_0 + c_1 z^2 + ... + c_n z^2n)``.

    ``raw[j]`` is the coefficient of ``z^j`` (trailing zeros trimmed).
    """

    m: int
    raw: tuple

    def __post_init__(self):
        raw = _trim(self.raw)
        object.__setattr__(self, "raw", raw)
        for j, c in enumerate(raw):
            if c and (j < self.m - 1 or (j - self.m + 1) % 2):
                raise ValueError(f"coefficient of z^{j} is {c}; not of the form "
                                 f"z^{self.m - 1} times a polynomial in z^2")

    def c(self, k: int) -> int:
        j = self.m - 1 + 2 * k
        return self.raw[j] if 0 <= j < len(self.raw) else 0

    @property
    def coeffs(self) -> tuple:
        n = max(0, (len(self.raw) - self.m + 2) // 2)
        return tuple(self.c(k) for k in range(n))

    def mirrored(self) -> "ConwayPolynomial":
        """The polynomial of the mirror image, ``nabla(-z)``."""
        return ConwayPolynomial(self.m, tuple(c * (-1) ** j for j, c in enumerate(self.raw)))

    def to_text(self) -> str:
        return f"{self.m}; " + (" ".join(map(str, self.coeffs)) or "0")

    @classmethod
    def from_text(cls, text: str) -> "ConwayPolynomial":
        head, _, tail = text.partition(";")
        m = int(head)
        raw = [0] * (m - 1)
        for c in tail.split():
            raw += [int(c), 0]
        return cls(m, tuple(raw))

    def to_dict(self) -> dict:
        return {"m": self.m, "coeffs": list(self.coeffs), "raw": list(self.raw),
                "text": self.to_text(), "polynomial": str(self)}

    def __str__(self):
        terms = []
        for j, c in enumerate(self.raw):
            if c:
                mono = "" if j == 0 else ("z" if j == 1 else f"z^{j}")
                coef = str(c) if not mono or abs(c) != 1 else ("-" if c < 0 else "")
                terms.append(coef + mono)
        return " + ".join(terms).replace("+ -", "- ") or "0"


# ---------------------------------------------------------------- skein oracle

def _first_bad(d: LinkDiagram):
    head = {}
    for k, x in enumerate(d.crossings):
        head[x.under_in] = k
        head[x.over_in] = k
    seen = set()
    for cyc in d.components:
        for e in cyc:
            k = head.get(e)
            if k is None or k in seen:
                continue
            seen.add(k)
            if d.crossings[k].under_in == e:
                return k
    return None


def conway_skein(d: LinkDiagram, max_crossings: int = 16,
                 max_nodes: int = 2 ** 20) -> ConwayPolynomial:
    """Conway polynomial by skein descent to descending diagrams.

    Raises :class:`BudgetExceeded` if ``d`` has more than ``max_crossings``
    crossings or the recursion visits more than ``max_nodes`` diagrams.
    """
    if len(d) > max_crossings:
        raise BudgetExceeded(f"{len(d)} crossings exceed the skein budget of {max_crossings}")
    memo: dict = {}
    nodes = 0

    def rec(d):
        nonlocal nodes
        key = (d.crossings_key(), d.m)
        if key in memo:
            return memo[key]
        nodes += 1
        if nodes > max_nodes:
            raise BudgetExceeded(f"skein recursion exceeded {max_nodes} nodes", nodes)
        if d.m > 1 and not is_projection_connected(d):
            out = ()
        else:
            k = _first_bad(d)
            if k is None:
                out = (1,) if d.m == 1 else ()
            else:
                sign = d.crossings[k].sign
                a = rec(apply_move(d, MoveSpec("switch", (k,))))
                b = rec(apply_move(d, MoveSpec("smooth", (k,))))
                out = _add(a, b, scale=sign, shift=1)
        memo[key] = out
        return out

    return ConwayPolynomial(d.m, rec(d))


# ---------------------------------------------------------------- braiding

def _circle_of(d: LinkDiagram) -> dict:
    return {e: n for n, c in enumerate(seifert_circles(d)) for e in c}


def _defect(d: LinkDiagram):
    circ = _circle_of(d)
    for face in faces(d):
        for a, (e, ea) in enumerate(face):
            for f, fa in face[a + 1:]:
                if ea == fa and circ[e] != circ[f]:
                    side = "R" if ea else "L"
                    return (e, side, f, side, True)
    return None


def vogel(d: LinkDiagram, max_moves: int | None = None) -> LinkDiagram:
    """Braided diagram of the same link, by Vogel moves.

    Requires a connected projection.  The number of Seifert circles does
    not change.
    """
    if not is_projection_connected(d):
        raise DiagramError("vogel needs a connected projection (use connect_projection)")
    limit = max_moves if max_moves is not None else 4 * len(d) + 16
    for _ in range(limit):
        site = _defect(d)
        if site is None:
            return d
        d = apply_move(d, MoveSpec("R2+", site))
    raise DiagramError(f"vogel did not terminate in {limit} moves")


def braid_word(d: LinkDiagram) -> tuple:
    """``(word, strands)`` of a braided diagram (see :func:`vogel`).

    Generator ``i`` joins the ``i``-th and ``(i+1)``-th Seifert circle
    counted from a face bounded by one circle; its sign is the crossing
    sign.
    """
    circles = seifert_circles(d)
    if not d.crossings:
        if d.m != 1:
            raise DiagramError("braid_word needs a connected projection")
        return (), 1
    circ = {e: n for n, c in enumerate(circles) for e in c}
    fs = faces(d)
    idx = face_index(d)

    def joins(x):
        return circ[x.under_in], circ[x.over_in]

    start = None
    for n, face in enumerate(fs):
        if len({circ[e] for e, _ in face}) == 1 and len({a for _, a in face}) == 1:
            start = n
            break
    if start is None:
        raise DiagramError("diagram is not braided")
    level = {circ[fs[start][0][0]]: 0}
    frontier = [circ[fs[start][0][0]]]
    adj: dict = {}
    for x in d.crossings:
        a, b = joins(x)
        adj.setdefault(a, set()).add(b)
        adj.setdefault(b, set()).add(a)
    while frontier:
        c = frontier.pop()
        for o in adj.get(c, ()):
            if o not in level:
                level[o] = level[c] + 1
                frontier.append(o)
    n = len(circles)
    if len(level) != n or sorted(level.values()) != list(range(n)):
        raise DiagramError("diagram is not braided")
    for x in d.crossings:
        a, b = joins(x)
        if abs(level[a] - level[b]) != 1:
            raise DiagramError("diagram is not braided")
    by_level = sorted(level, key=level.get)

    # a path from the start face out through every circle once
    cut = {}
    face = start
    for c in by_level:
        sides = [(e, a) for e, a in fs[face] if circ[e] == c]
        if not sides:
            raise DiagramError("diagram is not braided")
        e, a = min(sides)
        cut[c] = e
        face = idx[(e, "L" if a else "R")]

    head = {}
    for k, x in enumerate(d.crossings):
        head[x.under_in] = k
        head[x.over_in] = k
    after: dict = {k: set() for k in range(len(d.crossings))}
    before = {k: 0 for k in after}
    for c, cyc in enumerate(circles):
        j = cyc.index(cut[c])
        seq = [head[e] for e in cyc[j:] + cyc[:j]]
        for p, q in zip(seq, seq[1:]):
            if q not in after[p]:
                after[p].add(q)
                before[q] += 1
    ready = sorted(k for k in before if before[k] == 0)
    word = []
    while ready:
        k = ready.pop(0)
        a, b = joins(d.crossings[k])
        word.append((min(level[a], level[b]) + 1) * d.crossings[k].sign)
        for q in sorted(after[k]):
            before[q] -= 1
            if before[q] == 0:
                ready.append(q)
        ready.sort()
    if len(word) != len(d.crossings):
        raise DiagramError("diagram is not braided")
    return tuple(word), n


def _sgn(v):
    return (v > 0) - (v < 0)


def braid_seifert_matrix(word) -> list:
    """Seifert matrix of the canonical surface of a closed braid.

    One basis loop per pair of consecutive occurrences of a generator; the
    sign convention makes the positive Hopf link ``[1, 1]`` give ``(1)``.
    """
    L = len(word)
    nxt = [None] * L
    for i in range(L):
        for j in range(i + 1, L):
            if abs(word[j]) == abs(word[i]):
                nxt[i] = j
                break
    basis = [i for i in range(L) if nxt[i] is not None]
    N = len(basis)
    A = [[0] * N for _ in range(N)]
    for a, k in enumerate(basis):
        hk = nxt[k]
        for b in range(a, N):
            l = basis[b]
            if l == k:
                A[a][a] = (_sgn(word[k]) + _sgn(word[hk])) // 2
            elif l == hk:
                if word[l] > 0:
                    A[a][b] = -1
                else:
                    A[b][a] = 1
            elif k < l < hk < nxt[l]:
                diff = abs(word[k]) - abs(word[l])
                if diff == 1:
                    A[b][a] = 1
                elif diff == -1:
                    A[a][b] = -1
    return A


@dataclass(frozen=True)
class SeifertMatrix:
    """Seifert matrix ``V`` of a link with ``m`` components.

    ``braid`` and ``strands`` record the closed braid whose canonical
    surface ``V`` describes.
    """

    V: tuple
    m: int
    braid: tuple = field(default=(), compare=False)
    strands: int = field(default=1, compare=False)

    @property
    def size(self) -> int:
        return len(self.V)

    def intersection_form(self) -> list:
        n = self.size
        return [[self.V[i][j] - self.V[j][i] for j in range(n)] for i in range(n)]


def seifert_matrix(d: LinkDiagram) -> SeifertMatrix:
    """Seifert matrix from the braided form of ``d``.

    ``d`` must have a connected projection.
    """
    if not is_projection_connected(d):
        raise DiagramError("seifert_matrix needs a connected projection (use connect_projection)")
    word, strands = braid_word(vogel(d))
    A = braid_seifert_matrix(word)
    return SeifertMatrix(tuple(tuple(r) for r in A), d.m, word, strands)


# ---------------------------------------------------------------- determinant

def _det(M) -> int:
    """Bareiss fraction-free determinant of an integer matrix."""
    M = [list(r) for r in M]
    n = len(M)
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[-1][-1] if n else 1


def _interpolate(values) -> list:
    """Coefficients of the polynomial taking ``values[u]`` at ``u = 0, 1, ...``."""
    n = len(values)
    coef = [Fraction(0)] * n
    for i, y in enumerate(values):
        basis = [Fraction(1)]
        denom = 1
        for j in range(n):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for t in range(len(basis) - 1):
                basis[t] -= j * basis[t + 1]
            denom *= i - j
        for t, b in enumerate(basis):
            coef[t] += y * b / denom
    if any(c.denominator != 1 for c in coef):
        raise ArithmeticError("interpolation produced a non-integer coefficient")
    return [int(c) for c in coef]


def conway_from_seifert(S: SeifertMatrix) -> ConwayPolynomial:
    """``nabla(z) = det(s V - s^-1 V^T)`` rewritten in ``z = s - 1/s``."""
    V = S.V
    N = len(V)
    vals = [_det([[u * V[i][j] - V[j][i] for j in range(N)] for i in range(N)])
            for u in range(N + 1)]
    q = _interpolate(vals)
    # s^-N q(s^2): exponent 2j - N
    lau = {2 * j - N: c for j, c in enumerate(q) if c}
    raw: dict = {}
    while lau:
        top = max(lau)
        if top < 0:
            raise ArithmeticError(f"z-rewrite left residue {lau}")
        a = lau[top]
        raw[top] = a
        for i in range(top + 1):
            e = top - 2 * i
            lau[e] = lau.get(e, 0) - a * comb(top, i) * (-1) ** i
            if lau[e] == 0:
                del lau[e]
    vec = [0] * (max(raw) + 1 if raw else 0)
    for j, c in raw.items():
        vec[j] = c
    return ConwayPolynomial(S.m, tuple(vec))


def conway(d: LinkDiagram, method: str = "seifert", **budget) -> ConwayPolynomial:
    """Conway polynomial of ``d`` by ``method`` ("seifert" or "skein").

    The Seifert route first joins split pieces of the projection.
    """
    if method == "skein":
        return conway_skein(d, **budget)
    if method != "seifert":
        raise ValueError(f"unknown method {method!r}")
    return conway_from_seifert(seifert_matrix(connect_projection(d)))


# ---------------------------------------------------------------- congruence

@dataclass(frozen=True)
class CongruenceReport:
    k: int
    m: int
    coeffs: tuple          # (c_0..c_k of d1, c_0..c_k of d2)
    gcds: tuple            # gcd(c_0..c_{k-1}) of d1 and of d2
    gcd_agree: bool
    congruent: bool

    @property
    def passed(self) -> bool:
        return self.gcd_agree and self.congruent

    def to_dict(self) -> dict:
        return {"k": self.k, "m": self.m, "coeffs": [list(c) for c in self.coeffs],
                "gcds": list(self.gcds), "gcd_agree": self.gcd_agree,
                "congruent": self.congruent, "passed": self.passed}


def congruence_check(d1: LinkDiagram, d2: LinkDiagram, k: int,
                     method: str = "seifert") -> CongruenceReport:
    """Whether ``c_k`` agrees modulo ``gcd(c_0, ..., c_{k-1})`` (exactly when it is 0)."""
    if d1.m != d2.m:
        raise DiagramError(f"component counts differ: {d1.m} and {d2.m}")
    p1, p2 = conway(d1, method), conway(d2, method)
    c1 = tuple(p1.c(j) for j in range(k + 1))
    c2 = tuple(p2.c(j) for j in range(k + 1))
    g1, g2 = gcd_all(c1[:k]), gcd_all(c2[:k])
    diff = c1[k] - c2[k]
    congruent = diff == 0 if g1 == 0 else diff % g1 == 0
    return CongruenceReport(k, d1.m, (c1, c2), (g1, g2), g1 == g2, congruent)
