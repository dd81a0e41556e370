"""Named verifications of the quantitative statements about M_k and W_k.

Every claim returns a :class:`ClaimResult` whose evidence is enough to
recompute its status.  Claims:

``beta-milnor``        beta^k(M_k) = 1 and beta^k(unlink) = 0
``mu-2k3``             mu-bar of length <= 2k+3 agree across clasp twists of M_k
``conway-congruence``  c_j agrees mod gcd(c_0..c_{j-1}) across the same family, j <= k
``sharpness``          M_{k+1} has mu-bar(1^{2k+2}22) = +-1, all shorter ones vanish
``boundary-vanish``    mu-bar of W_k vanish through length 6; Sato-Levine(W_1) = +-1
``cabling``            native and parallel-link mu-bar(1^{2j}22) agree on 2-component links
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Sequence

from .conway import BudgetExceeded, congruence_check, conway
from .diagram import LinkDiagram, linking_number
from .families import clasp_twist_family, corpus, milnor, parallel_for_sequence, unlink, whitehead_iter
from .milnor import all_vanish, cochran_beta, mu_bar, mu_table, sato_levine

CLAIMS = ("beta-milnor", "mu-2k3", "conway-congruence", "sharpness", "boundary-vanish", "cabling")


class ClaimError(ValueError):
    pass


@dataclass
class ClaimResult:
    claim: str
    params: dict
    status: str                      # "pass", "fail" or "skipped"
    evidence: dict = field(default_factory=dict)
    runtime: float = 0.0

    def to_dict(self, timing: bool = False) -> dict:
        out = {"claim": self.claim, "params": self.params, "status": self.status,
               "evidence": self.evidence}
        if timing:
            out["runtime_seconds"] = round(self.runtime, 3)
        return out


def _mu_row(v) -> dict:
    return {"I": list(v.I), "mu": v.mu, "delta": v.delta, "residue": v.residue}


def _guard(ds: Sequence[LinkDiagram], budget):
    if budget is None:
        return
    for d in ds:
        if len(d) > budget:
            raise BudgetExceeded(f"a diagram with {len(d)} crossings exceeds the budget of {budget}")


def _beta_milnor(k=None, budget=None, **_):
    ks = [k] if k is not None else [1, 2, 3]
    rows = []
    ok = True
    for kk in ks:
        d = milnor(kk)
        _guard([d], budget)
        I = (1,) * (2 * kk) + (2, 2)
        v = mu_bar(d, I)
        b = cochran_beta(d, kk)
        b0 = cochran_beta(unlink(2), kk)
        rows.append({"k": kk, "crossings": len(d), "mu": _mu_row(v), "beta": b, "beta_unlink": b0})
        ok &= b == 1 and v.delta == 0 and b0 == 0
    return ok, {"values": rows}


def _family(k, twists, budget):
    if k is None or k < 1:
        raise ClaimError("this claim needs --k >= 1")
    fam = clasp_twist_family(k, list(twists))
    _guard(fam, budget)
    return fam


def _mu_2k3(k=1, twists=(0, 1, 2), budget=None, **_):
    fam = _family(k, twists, budget)
    n = 2 * k + 3
    tables = [mu_table(d, n) for d in fam]
    mismatches = []
    for t, tb in zip(twists, tables):
        for a, b in zip(tables[0], tb):
            if (a.I, a.delta, a.residue) != (b.I, b.delta, b.residue):
                mismatches.append({"twist": t, "first": _mu_row(a), "other": _mu_row(b)})
    nonzero = [_mu_row(v) for v in tables[0] if v.residue or v.delta]
    return not mismatches, {
        "max_len": n, "twists": list(twists), "crossings": [len(d) for d in fam],
        "sequences": len(tables[0]), "nonzero_in_first": nonzero, "mismatches": mismatches[:20]}


def _conway_congruence(k=1, twists=(0, 1, 2), budget=None, **_):
    fam = _family(k, twists, budget)
    polys = [conway(d) for d in fam]
    checks = []
    ok = True
    for j in range(k + 1):
        for t, d in zip(twists[1:], fam[1:]):
            r = congruence_check(fam[0], d, j)
            checks.append({"j": j, "twist": t, **r.to_dict()})
            ok &= r.passed
    return ok, {"twists": list(twists), "crossings": [len(d) for d in fam],
                "conway": [p.to_text() for p in polys], "checks": checks}


def _sharpness(k=0, budget=None, **_):
    if k is None or k < 0:
        raise ClaimError("sharpness needs --k >= 0")
    d = milnor(k + 1)
    _guard([d], budget)
    tb = mu_table(d, 2 * k + 3)
    v = mu_bar(d, (1,) * (2 * k + 2) + (2, 2))
    bad = all_vanish(tb)
    return (bad is None and abs(v.mu) == 1 and v.delta == 0), {
        "link": f"M_{k + 1}", "crossings": len(d), "max_len_vanishing": 2 * k + 3,
        "first_nonvanishing_below": _mu_row(bad) if bad else None, "top": _mu_row(v)}


def _boundary_vanish(k=2, max_len=6, budget=None, **_):
    k = 2 if k is None else k
    d = whitehead_iter(k)
    w1 = whitehead_iter(1)
    _guard([d, w1], budget)
    tb = mu_table(d, max_len)
    bad = [_mu_row(v) for v in tb if v.residue]
    sl = sato_levine(w1)
    return (not bad and abs(sl) == 1), {
        "link": f"W_{k}", "crossings": len(d), "lk": linking_number(d, 0, 1),
        "max_len": max_len, "sequences": len(tb), "nonzero": bad[:20], "sato_levine_W1": sl}


def _cabling(k=None, link=None, budget=None, **_):
    ks = [k] if k is not None else [1, 2]
    links = {n: d for n, d in corpus().items() if d.m == 2}
    if link is not None:
        if link not in links:
            raise ClaimError(f"unknown 2-component corpus link {link!r} "
                             f"(known: {', '.join(links)})")
        links = {link: links[link]}
    rows = []
    ok = True
    for name, d in links.items():
        for kk in ks:
            I = (1,) * (2 * kk) + (2, 2)
            _guard([d, parallel_for_sequence(d, I)[0]], budget)
            a, b = mu_bar(d, I), mu_bar(d, I, route="cable")
            same = (a.mu, a.delta) == (b.mu, b.delta)
            ok &= same
            rows.append({"link": name, "I": list(I), "native": _mu_row(a),
                         "cable": _mu_row(b), "equal": same})
    return ok, {"values": rows}


_RUNNERS = {
    "beta-milnor": _beta_milnor,
    "mu-2k3": _mu_2k3,
    "conway-congruence": _conway_congruence,
    "sharpness": _sharpness,
    "boundary-vanish": _boundary_vanish,
    "cabling": _cabling,
}


def run_claim(claim: str, **params) -> ClaimResult:
    """Run one claim.  ``params`` may hold ``k``, ``twists``, ``link`` and
    ``budget`` (maximum crossings of any diagram involved)."""
    if claim not in _RUNNERS:
        raise ClaimError(f"unknown claim {claim!r} (known: {', '.join(CLAIMS)})")
    params = {p: v for p, v in params.items() if v is not None}
    shown = {p: (list(v) if isinstance(v, (tuple, range)) else v) for p, v in params.items()}
    start = time.monotonic()
    try:
        ok, evidence = _RUNNERS[claim](**params)
        status = "pass" if ok else "fail"
    except BudgetExceeded as exc:
        status, evidence = "skipped", {"reason": str(exc)}
    return ClaimResult(claim, shown, status, evidence, time.monotonic() - start)
