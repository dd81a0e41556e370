"""Command line: ``linkinv families | invariants | verify``.

Exit codes: 0 success or claim passed, 1 claim failed, 2 input error,
3 usage error, 4 budget exceeded (partial report or skipped claim).
"""

from __future__ import annotations

import json
import sys

import click

from .claims import CLAIMS, ClaimError, run_claim
from .conway import BudgetExceeded, conway_from_seifert, conway_skein, seifert_matrix
from .diagram import DiagramError, linking_matrix
from .families import FamilyError, FamilySpec, FAMILIES, generate
from .formats import ParseError, parse, parse_gauss, serialize, to_gauss
from .milnor import MilnorError, mu_table
from .moves import connect_projection

REPORT_VERSION = 1
EXIT_FAIL, EXIT_INPUT, EXIT_USAGE, EXIT_BUDGET = 1, 2, 3, 4


class InputError(Exception):
    pass


def _int_list(text):
    if text is None or text == "":
        return None
    try:
        return tuple(int(t) for t in text.replace(" ", "").split(",") if t)
    except ValueError:
        raise click.BadParameter(f"expected comma-separated integers, got {text!r}")


def _int_range(text):
    """``a..b`` (inclusive) or a comma list."""
    if text is None:
        return None
    if ".." in text:
        a, _, b = text.partition("..")
        try:
            lo, hi = int(a), int(b)
        except ValueError:
            raise click.BadParameter(f"expected a range like 0..2, got {text!r}")
        if hi < lo:
            raise click.BadParameter(f"empty range {text!r}")
        return tuple(range(lo, hi + 1))
    return _int_list(text)


def _emit(obj, out):
    text = json.dumps(obj, indent=2) + "\n"
    click.echo(text, nl=False, file=out)


def _read(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}")


def load_diagram(text: str, fmt: str):
    if fmt == "auto":
        fmt = "pd" if text.lstrip().startswith("{") else "gauss"
    return parse(text) if fmt == "pd" else parse_gauss(text)


@click.group()
def cli():
    """Exact invariants of link diagrams and checks of the M_k / W_k claims."""


# ---------------------------------------------------------------- families

@cli.command()
@click.argument("family", type=click.Choice(FAMILIES))
@click.option("--k", "k", type=int, default=0, help="Stage index (component count for unlink).")
@click.option("--twists", default=None, help="Half-twists per stage, comma separated.")
@click.option("--clasp-sign", default=None, help="Hopf sign, or W_k clasp sign(s).")
@click.option("--clasp-twists", type=int, default=0, help="Full twists in the rightmost clasp of M_k.")
@click.option("--doubled", default=None, help="Component doubled at each stage of W_k.")
@click.option("--format", "fmt", type=click.Choice(["pd", "gauss"]), default="pd")
@click.option("-o", "--output", type=click.File("w"), default="-")
def families(family, k, twists, clasp_sign, clasp_twists, doubled, fmt, output):
    """Write a diagram of a family member."""
    cs = _int_list(clasp_sign)
    if cs is not None and len(cs) == 1:
        cs = cs[0]
    spec = FamilySpec(family, k, _int_list(twists) or (), cs, clasp_twists,
                      _int_list(doubled) or ())
    d = generate(spec)
    if fmt == "pd":
        click.echo(serialize(d), nl=False, file=output)
    else:
        header = "# family: " + json.dumps(spec.to_dict(), sort_keys=True) + "\n"
        click.echo(header + to_gauss(d), nl=False, file=output)
    return 0


# ---------------------------------------------------------------- invariants

@cli.command()
@click.argument("path")
@click.option("--format", "fmt", type=click.Choice(["auto", "pd", "gauss"]), default="auto")
@click.option("--mu-maxlen", type=int, default=None, help="Longest mu-bar sequence (default 4).")
@click.option("--conway", "want_conway", is_flag=True, help="Conway polynomial by both routes.")
@click.option("--linking", "want_linking", is_flag=True, help="Linking matrix.")
@click.option("--budget-crossings", type=int, default=16, envvar="LINKINV_BUDGET_CROSSINGS",
              show_default=True, help="Largest diagram for the skein route.")
@click.option("--budget-seconds", type=float, default=None, envvar="LINKINV_BUDGET_SECONDS",
              help="Time budget for the mu-bar table.")
@click.option("--pretty", is_flag=True, help="Human-readable output.")
@click.option("-o", "--output", type=click.File("w"), default="-")
def invariants(path, fmt, mu_maxlen, want_conway, want_linking, budget_crossings,
               budget_seconds, pretty, output):
    """Linking matrix, Conway polynomial and mu-bar table of a diagram file.

    Without --linking, --conway or --mu-maxlen everything is computed.
    """
    d = load_diagram(_read(path), fmt)
    everything = not (want_conway or want_linking or mu_maxlen is not None)
    report = {"format_version": REPORT_VERSION,
              "diagram": {"m": d.m, "crossings": len(d),
                          "labels": list(d.labels) if d.labels else None}}
    complete = True
    if want_linking or everything:
        report["linking_matrix"] = linking_matrix(d)
    if want_conway or everything:
        seif = conway_from_seifert(seifert_matrix(connect_projection(d)))
        entry = {"seifert": seif.to_dict()}
        try:
            sk = conway_skein(d, max_crossings=budget_crossings)
            entry["skein"] = sk.to_dict()
            entry["agree"] = sk == seif
        except BudgetExceeded as exc:
            entry["skein"] = {"skipped": str(exc)}
            complete = False
        report["conway"] = entry
    if mu_maxlen is not None or everything:
        n = 4 if mu_maxlen is None else mu_maxlen
        tb = mu_table(d, n, budget_seconds=budget_seconds)
        report["mu"] = {"max_len": n, "complete": tb.complete,
                        "values": [{"I": list(v.I), "mu": v.mu, "delta": v.delta,
                                    "residue": v.residue} for v in tb]}
        complete &= tb.complete
    report["complete"] = complete
    if pretty:
        click.echo(_pretty_invariants(report), file=output)
    else:
        _emit(report, output)
    if "conway" in report and report["conway"].get("agree") is False:
        click.echo("error: the two Conway routes disagree", err=True)
        return EXIT_FAIL
    return 0 if complete else EXIT_BUDGET


def _pretty_invariants(r) -> str:
    lines = [f"components: {r['diagram']['m']}   crossings: {r['diagram']['crossings']}"]
    if "linking_matrix" in r:
        lines.append("linking matrix (diagonal: self-writhe):")
        lines += ["  " + " ".join(f"{v:3d}" for v in row) for row in r["linking_matrix"]]
    if "conway" in r:
        c = r["conway"]
        lines.append(f"conway (seifert): {c['seifert']['polynomial']}")
        sk = c["skein"]
        lines.append("conway (skein):   " + (sk["polynomial"] if "polynomial" in sk else "skipped, " + sk["skipped"]))
    if "mu" in r:
        lines.append(f"mu-bar up to length {r['mu']['max_len']}"
                     + ("" if r["mu"]["complete"] else " (partial)") + ":")
        lines.append(f"  {'I':<12} {'mu':>6} {'delta':>6} {'residue':>8}")
        for v in r["mu"]["values"]:
            lines.append(f"  {''.join(map(str, v['I'])):<12} {v['mu']:>6} {v['delta']:>6} {v['residue']:>8}")
    return "\n".join(lines)


# ---------------------------------------------------------------- verify

@cli.command()
@click.argument("claim", type=click.Choice(CLAIMS))
@click.option("--k", "k", type=int, default=None, help="Stage index.")
@click.option("--twists", default=None, help="Clasp full-twist range, e.g. 0..2.")
@click.option("--link", default=None, help="Corpus link (cabling claim only).")
@click.option("--budget-crossings", type=int, default=None, envvar="LINKINV_VERIFY_BUDGET",
              help="Skip the claim if a diagram involved has more crossings.")
@click.option("--timing", is_flag=True, help="Include the runtime (makes output run-dependent).")
@click.option("--pretty", is_flag=True, help="Human-readable output.")
@click.option("-o", "--output", type=click.File("w"), default="-")
def verify(claim, k, twists, link, budget_crossings, timing, pretty, output):
    """Run a named claim and report pass/fail with its evidence."""
    params = {"k": k, "twists": _int_range(twists), "link": link, "budget": budget_crossings}
    res = run_claim(claim, **params)
    if pretty:
        click.echo(f"{res.claim}: {res.status.upper()}", file=output)
        click.echo(json.dumps(res.evidence, indent=2), file=output)
    else:
        _emit({"format_version": REPORT_VERSION, **res.to_dict(timing)}, output)
    return {"pass": 0, "fail": EXIT_FAIL, "skipped": EXIT_BUDGET}[res.status]


# ---------------------------------------------------------------- entry point

def main(argv=None) -> int:
    try:
        code = cli.main(args=argv, prog_name="linkinv", standalone_mode=False)
    except click.UsageError as exc:
        click.echo(f"usage error: {exc.format_message()}", err=True)
        return EXIT_USAGE
    except (ClaimError, FamilyError) as exc:
        click.echo(f"usage error: {exc}", err=True)
        return EXIT_USAGE
    except (InputError, ParseError, DiagramError, MilnorError) as exc:
        click.echo(f"input error: {exc}", err=True)
        return EXIT_INPUT
    except click.exceptions.Abort:
        return EXIT_USAGE
    return code if isinstance(code, int) else 0


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
