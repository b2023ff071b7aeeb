"""Command-line interface. Exit codes: 0 ok, 1 usage or precondition error, 2 certification failure."""

import argparse
import json
import logging
import sys

from . import construction, kaplan, landscape, oracle
from .errors import CertificationFailed, CyclotomicError

EXIT_OK, EXIT_ERROR, EXIT_UNCERTIFIED = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _dump(obj, out):
    out.write(json.dumps(obj, indent=2) + "\n")


def _write_cert(cert, args, out):
    text = cert.to_json()
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    out.write(text)
    return EXIT_OK if cert.verified else EXIT_UNCERTIFIED


def cmd_coeffs(args, out):
    coeffs = oracle.phi_coeffs(args.n)
    if args.upto is not None:
        coeffs = coeffs[: args.upto + 1]
    if args.format == "csv":
        out.write(oracle.to_csv(coeffs))
    else:
        _dump({"n": args.n, "coefficients": [int(c) for c in coeffs]}, out)
    return EXIT_OK


def cmd_kaplan(args, out):
    ctx = kaplan.make_context(args.p, args.q, args.r)
    out.write(f"{kaplan.a_pqr(ctx, args.k)}\n")
    return EXIT_OK


def cmd_scan_set(args, out):
    ctx = kaplan.make_context(args.p, args.q, args.r)
    cs = kaplan.coefficient_set(ctx, args.budget, args.parallel, early_exit=args.early_exit)
    _dump({"p": args.p, "q": args.q, "r": args.r, **cs.to_dict()}, out)
    return EXIT_OK


def cmd_construct(args, out):
    cert = construction.construct(
        args.l, args.p, args.q_index, args.r_index, args.verify, args.budget, args.parallel, strict=False
    )
    return _write_cert(cert, args, out)


def cmd_flip(args, out):
    cert = construction.load_certificate(args.cert)
    flipped = construction.delta_minus_variant(cert, args.verify, args.budget, args.parallel, strict=False)
    return _write_cert(flipped, args, out)


def cmd_tables(args, out):
    cert = construction.load_certificate(args.cert)
    report = construction.verify_tables(cert.params, cert.k_plus, cert.k_minus, strict=False)
    _dump(report.to_dict(), out)
    return EXIT_OK if report.passed else EXIT_UNCERTIFIED


def cmd_bsets(args, out):
    profiles = [landscape.beta_profile(p) for p in args.p]
    if args.format == "csv":
        out.write(landscape.profiles_csv(profiles))
    elif len(profiles) == 1:
        _dump(profiles[0].to_dict(), out)
    else:
        _dump([prof.to_dict() for prof in profiles], out)
    return EXIT_OK


def cmd_claims(args, out):
    _dump({"p": args.p, "claims": landscape.m_p_claims(args.p)}, out)
    return EXIT_OK


def cmd_scan_mr(args, out):
    _dump(landscape.exceedance_report(args.max), out)
    return EXIT_OK


def cmd_cobeli(args, out):
    _dump(landscape.cobeli_check(args.p).to_dict(), out)
    return EXIT_OK


def _scan_opts(sp):
    sp.add_argument("--budget", type=int, default=kaplan.DEFAULT_BUDGET, help="max coefficients per scan")
    sp.add_argument("--parallel", type=int, default=1, metavar="W", help="worker threads for scans")


def build_parser():
    parser = _Parser(prog="ternary-cyclo", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("coeffs", help="dense coefficients of Phi_N")
    sp.add_argument("n", type=int)
    sp.add_argument("--upto", type=int)
    sp.add_argument("--format", choices=("json", "csv"), default="json")
    sp.set_defaults(func=cmd_coeffs)

    sp = sub.add_parser("kaplan", help="one coefficient a_pqr(k)")
    for name in ("p", "q", "r", "k"):
        sp.add_argument(name, type=int)
    sp.set_defaults(func=cmd_kaplan)

    sp = sub.add_parser("scan-set", help="coefficient set of Phi_pqr")
    for name in ("p", "q", "r"):
        sp.add_argument(name, type=int)
    _scan_opts(sp)
    sp.add_argument("--early-exit", type=int, nargs=2, metavar=("LO", "HI"))
    sp.set_defaults(func=cmd_scan_set)

    sp = sub.add_parser("construct", help="build and certify a Beiter counterexample")
    sp.add_argument("--l", type=int, required=True)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--q-index", type=int, default=1)
    sp.add_argument("--r-index", type=int, default=1)
    sp.add_argument("--verify", choices=construction.VERIFY_MODES)
    sp.add_argument("--out")
    _scan_opts(sp)
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("flip", help="negated-set partner of a certificate")
    sp.add_argument("--cert", required=True)
    sp.add_argument("--verify", choices=construction.VERIFY_MODES, default="full")
    sp.add_argument("--out")
    _scan_opts(sp)
    sp.set_defaults(func=cmd_flip)

    sp = sub.add_parser("tables", help="structural report for a certificate")
    sp.add_argument("--cert", required=True)
    sp.set_defaults(func=cmd_tables)

    sp = sub.add_parser("bsets", help="B-sets and lower bounds for primes P")
    sp.add_argument("p", type=int, nargs="+")
    sp.add_argument("--format", choices=("json", "csv"), default="json")
    sp.set_defaults(func=cmd_bsets)

    sp = sub.add_parser("claims", help="m_p(a) claims for prime P")
    sp.add_argument("p", type=int)
    sp.set_defaults(func=cmd_claims)

    sp = sub.add_parser("scan-mr", help="primes with M_R(p) > M_GM(p)")
    sp.add_argument("--max", type=int, required=True)
    sp.set_defaults(func=cmd_scan_mr)

    sp = sub.add_parser("cobeli", help="check the B-set cardinality estimate")
    sp.add_argument("p", type=int)
    sp.set_defaults(func=cmd_cobeli)
    return parser


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        return args.func(args, out)
    except CertificationFailed as exc:
        print(f"certification failed: {exc}", file=sys.stderr)
        return EXIT_UNCERTIFIED
    except (CyclotomicError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
