"""Command-line surface tying the modules together.

Exit status contract: 0 on success (or chain_ok), 1 when a check verifies
false (a sunflower found, a failed chain), 2 on usage or resource errors.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass

from . import bounds as bounds_mod
from . import certify as certify_mod
from . import groebner, setfam
from .errors import CapExceededError, SunflowerLabError
from .polyalg import block_order, deglex_order, lex_order


@dataclass(frozen=True)
class Command:
    subcommand: str
    options: dict


def build_parser():
    parser = argparse.ArgumentParser(
        prog="sunflower-lab",
        description="Exact toolkit for sunflower-free families: searches, "
        "Groebner bases, slice-rank certificates, and bound tables.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("check", help="look for a t-petal sunflower in a family file")
    p.add_argument("--family", required=True, metavar="PATH")
    p.add_argument("--t", type=int, default=3)

    p = sub.add_parser("search", help="exact maximum sunflower-free family size")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--t", type=int, default=3)
    p.add_argument("--k", type=int, default=None, help="restrict to k-uniform families")
    p.add_argument("--cap-sets", type=int, default=None, help="override the search size cap")
    p.add_argument("--canonical", action="store_true", help="fix the first member by symmetry (uniform only)")
    p.add_argument("--out", metavar="PATH", help="also write the maximizer family file")

    for name, help_text in (
        ("gb", "Groebner basis of the weight-k slice ideal (or its l-fold product)"),
        ("sm", "standard monomials of the slice ideal (or its l-fold product)"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--k", type=int, required=True)
        p.add_argument("--l", type=int, default=1, help="number of product blocks")
        p.add_argument("--order", choices=("deglex", "lex"), default="deglex")
        p.add_argument("--ranking", choices=("paper", "reversed"), default="paper")
        p.add_argument("--cap-pairs", type=int, default=groebner.DEFAULT_PAIR_CAP)
        p.add_argument("--out", metavar="PATH")

    p = sub.add_parser("ballot", help="enumerate ballot monomials")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--j", type=int, required=True)

    p = sub.add_parser("bounds", help="bound comparison table")
    p.add_argument("--n-from", type=int, required=True)
    p.add_argument("--n-to", type=int, required=True)
    p.add_argument("--csv", action="store_true")

    p = sub.add_parser("certify", help="run the full pipeline on a family file")
    p.add_argument("--family", required=True, metavar="PATH")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--ranking", choices=("paper", "reversed"), default="paper")
    p.add_argument("--full", action="store_true", help="inline family, H, and decomposition")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--cap-n", type=int, default=certify_mod.DEFAULT_N_CAP)
    p.add_argument("--cap-pairs", type=int, default=groebner.DEFAULT_PAIR_CAP)
    p.add_argument("--cap-triples", type=int, default=certify_mod.DEFAULT_TRIPLE_CAP)
    p.add_argument("--out", metavar="PATH")

    p = sub.add_parser("cor6", help="stratified certification of a mixed family")
    p.add_argument("--family", required=True, metavar="PATH")
    p.add_argument("--cap-n", type=int, default=certify_mod.DEFAULT_N_CAP)
    p.add_argument("--cap-pairs", type=int, default=groebner.DEFAULT_PAIR_CAP)
    p.add_argument("--cap-triples", type=int, default=certify_mod.DEFAULT_TRIPLE_CAP)

    return parser


def parse(argv):
    """Parse argv into a validated Command (argparse exits 2 on usage errors)."""
    ns = build_parser().parse_args(argv)
    options = vars(ns).copy()
    sub = options.pop("subcommand")
    return Command(subcommand=sub, options=options)


def _emit(text, path=None):
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _run_check(opt):
    family = setfam.load_family(opt["family"])
    wit = setfam.find_sunflower(family, opt["t"])
    if wit is None:
        print(f"no sunflower with {opt['t']} petals ({len(family)} members)")
        return 0
    petals = ", ".join(
        "{" + ",".join(map(str, family.members[i])) + "}" for i in wit.petals
    )
    kernel = "{" + ",".join(map(str, wit.kernel)) + "}"
    print(f"sunflower with {opt['t']} petals: members {petals}, kernel {kernel}")
    return 1


def _run_search(opt):
    size, witness = setfam.max_sunflower_free(
        opt["n"], opt["t"], opt["k"], cap=opt["cap_sets"], canonical=opt["canonical"]
    )
    kind = f"{opt['k']}-uniform " if opt["k"] is not None else ""
    print(f"max {kind}sunflower-free size on [{opt['n']}] with t={opt['t']}: {size}")
    text = setfam.write_family(witness)
    if opt["out"]:
        _emit(text, opt["out"])
        print(f"witness written to {opt['out']}")
    else:
        sys.stdout.write(text)
    return 0


def _slice_order(opt):
    n, ell = opt["n"], opt["l"]
    if ell == 1:
        make = deglex_order if opt["order"] == "deglex" else lex_order
        return make(n, opt["ranking"])
    return block_order(opt["order"], n, ell, opt["ranking"])


def _run_gb(opt):
    order = _slice_order(opt)
    if opt["l"] == 1:
        basis = groebner.slice_basis(opt["n"], opt["k"], order, pair_cap=opt["cap_pairs"])
    else:
        basis = groebner.product_block_gb(opt["n"], opt["k"], opt["l"], order, pair_cap=opt["cap_pairs"])
    _emit(groebner.dump_basis(basis, opt["n"], opt["k"], opt["l"]), opt["out"])
    return 0


def _run_sm(opt):
    order = _slice_order(opt)
    if opt["l"] == 1:
        basis = groebner.slice_basis(opt["n"], opt["k"], order, pair_cap=opt["cap_pairs"])
    else:
        basis = groebner.product_block_gb(opt["n"], opt["k"], opt["l"], order, pair_cap=opt["cap_pairs"])
    sm = groebner.standard_monomials(basis)
    _emit(groebner.dump_sm(sm, opt["n"], opt["k"], opt["l"]), opt["out"])
    return 0


def _run_ballot(opt):
    n, j = opt["n"], opt["j"]
    ballots = groebner.ballot_monomials(n, j)
    for s in ballots.sets:
        print("*".join(f"x{e}" for e in s) if s else "1")
    print(f"count {len(ballots.sets)} = C({n},{j}) = {math.comb(n, j)}")
    return 0


def _run_bounds(opt):
    rows = bounds_mod.bounds_table(range(opt["n_from"], opt["n_to"] + 1))
    sys.stdout.write(bounds_mod.format_table(rows, csv=opt["csv"]))
    return 0


def _run_certify(opt):
    family = setfam.load_family(opt["family"])
    cert = certify_mod.certify_family(
        family,
        opt["k"],
        ranking=opt["ranking"],
        n_cap=opt["cap_n"],
        pair_cap=opt["cap_pairs"],
        triple_cap=opt["cap_triples"],
        jobs=opt["jobs"],
    )
    sections = None
    if opt["full"]:
        ctx = certify_mod.slice_context(family.n, opt["k"], opt["ranking"], opt["cap_pairs"])
        sections = certify_mod.certificate_full_sections(cert, family, ctx)
    _emit(certify_mod.write_certificate(cert, sections), opt["out"])
    if opt["out"]:
        print(f"certificate written to {opt['out']} (chain_ok={str(cert.chain_ok).lower()})")
    return 0 if cert.chain_ok else 1


def _run_cor6(opt):
    family = setfam.load_family(opt["family"])
    report = certify_mod.verify_corollary6(
        family,
        n_cap=opt["cap_n"],
        pair_cap=opt["cap_pairs"],
        triple_cap=opt["cap_triples"],
    )
    print(f"n={report.n} sunflower_free={str(report.sunflower_free).lower()}")
    for rec in report.strata:
        print(
            f"stratum s={rec.s}: size={rec.size} mode={rec.mode} "
            f"bound={rec.bound} ok={str(rec.chain_ok).lower()}"
        )
    print(f"total {report.total} <= stratified bound {report.bound_total}: "
          f"{str(report.total <= report.bound_total).lower()}")
    print(f"result: {'ok' if report.ok else 'FAILED'}")
    return 0 if report.ok else 1


_RUNNERS = {
    "check": _run_check,
    "search": _run_search,
    "gb": _run_gb,
    "sm": _run_sm,
    "ballot": _run_ballot,
    "bounds": _run_bounds,
    "certify": _run_certify,
    "cor6": _run_cor6,
}


def execute(command):
    """Run a parsed Command; returns the process exit status."""
    try:
        return _RUNNERS[command.subcommand](command.options)
    except CapExceededError as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return 2
    except (SunflowerLabError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main(argv=None):
    return execute(parse(sys.argv[1:] if argv is None else argv))


if __name__ == "__main__":
    sys.exit(main())
