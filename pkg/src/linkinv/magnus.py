"""Truncated power series in noncommuting variables with integer coefficients.

A series is a sparse map from monomials (tuples of variable ids) to
nonzero Python ints, truncated at total degree ``degree``.  An optional
``caps`` map bounds the number of occurrences of individual variables;
monomials exceeding a cap span a two-sided ideal, so the truncation is
still a ring quotient.  Milnor coefficients only ever need monomials in
which each index occurs a bounded number of times, and the caps keep the
many-variable computations (cabled links) small.
"""

from __future__ import annotations

from collections import Counter
from typing import Iterable, Mapping


class MagnusSeries:
    __slots__ = ("degree", "caps", "coeffs")

    def __init__(self, coeffs: Mapping[tuple, int] | None = None, degree: int = 4,
                 caps: Mapping | None = None):
        if degree < 0:
            raise ValueError("degree must be nonnegative")
        self.degree = degree
        self.caps = dict(caps) if caps else None
        self.coeffs = {}
        if coeffs:
            for mono, c in coeffs.items():
                mono = tuple(mono)
                if c and self._keeps(mono):
                    self.coeffs[mono] = c

    # ---- construction ---------------------------------------------------

    @classmethod
    def one(cls, degree: int, caps=None) -> "MagnusSeries":
        return cls({(): 1}, degree, caps)

    @classmethod
    def variable(cls, var, degree: int, caps=None) -> "MagnusSeries":
        """The image ``1 + X_var`` of a free generator."""
        return cls({(): 1, (var,): 1}, degree, caps)

    def _new(self, coeffs):
        out = MagnusSeries.__new__(MagnusSeries)
        out.degree = self.degree
        out.caps = self.caps
        out.coeffs = coeffs
        return out

    def _keeps(self, mono) -> bool:
        if len(mono) > self.degree:
            return False
        if self.caps:
            for v, n in Counter(mono).items():
                if v in self.caps and n > self.caps[v]:
                    return False
        return True

    # ---- arithmetic -------------------------------------------------------

    def __mul__(self, other: "MagnusSeries") -> "MagnusSeries":
        D = min(self.degree, other.degree)
        caps = self.caps
        out: dict = {}
        items = sorted(other.coeffs.items(), key=lambda kv: len(kv[0]))
        for ma, ca in self.coeffs.items():
            room = D - len(ma)
            if room < 0:
                continue
            for mb, cb in items:
                if len(mb) > room:
                    break
                mono = ma + mb
                if caps and not self._within_caps(mono):
                    continue
                out[mono] = out.get(mono, 0) + ca * cb
        return self._with_degree({k: v for k, v in out.items() if v}, D)

    def _within_caps(self, mono) -> bool:
        caps = self.caps
        counts: dict = {}
        for v in mono:
            if v in caps:
                n = counts.get(v, 0) + 1
                if n > caps[v]:
                    return False
                counts[v] = n
        return True

    def _with_degree(self, coeffs, D):
        out = self._new(coeffs)
        out.degree = D
        return out

    def __add__(self, other: "MagnusSeries") -> "MagnusSeries":
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return self._with_degree({k: v for k, v in out.items() if v},
                                 min(self.degree, other.degree))

    def __neg__(self) -> "MagnusSeries":
        return self._new({k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other: "MagnusSeries") -> "MagnusSeries":
        return self + (-other)

    def inverse(self) -> "MagnusSeries":
        """Geometric-series inverse; the constant term must be +-1."""
        c0 = self.coeffs.get((), 0)
        if c0 not in (1, -1):
            raise ValueError("only series with constant term +-1 are invertible")
        # s = c0 (1 + n)  =>  s^-1 = c0 (1 - n + n^2 - ...)
        n = self._new({k: v * c0 for k, v in self.coeffs.items() if k})
        term = MagnusSeries.one(self.degree, self.caps)
        total = MagnusSeries.one(self.degree, self.caps)
        for j in range(1, self.degree + 1):
            term = term * n
            if not term.coeffs:
                break
            total = total + term if j % 2 == 0 else total - term
        return total._new({k: v * c0 for k, v in total.coeffs.items()})

    def __pow__(self, e: int) -> "MagnusSeries":
        base = self if e >= 0 else self.inverse()
        result = MagnusSeries.one(self.degree, self.caps)
        e = abs(e)
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # ---- inspection -------------------------------------------------------

    def __getitem__(self, mono) -> int:
        return self.coeffs.get(tuple(mono), 0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MagnusSeries):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def is_one(self) -> bool:
        return self.coeffs == {(): 1}

    def truncate(self, degree: int) -> "MagnusSeries":
        return self._with_degree({k: v for k, v in self.coeffs.items() if len(k) <= degree},
                                 min(degree, self.degree))

    def min_degree_of_deviation(self) -> int | None:
        """Smallest degree d >= 1 with a nonzero coefficient in ``self - 1``."""
        degs = [len(k) for k, v in self.coeffs.items() if k]
        if self.coeffs.get((), 0) != 1:
            return 0
        return min(degs) if degs else None

    def dump(self) -> str:
        """Sorted ``monomial: coefficient`` lines (stable golden format)."""
        lines = []
        for mono in sorted(self.coeffs, key=lambda k: (len(k), k)):
            name = "1" if not mono else "*".join(f"X{v}" for v in mono)
            lines.append(f"{name}: {self.coeffs[mono]}")
        return "\n".join(lines)

    def __repr__(self):
        return f"MagnusSeries(degree={self.degree}, terms={len(self.coeffs)})"


def product(series: Iterable[MagnusSeries], degree: int, caps=None) -> MagnusSeries:
    out = MagnusSeries.one(degree, caps)
    for s in series:
        out = out * s
    return out
