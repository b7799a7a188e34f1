"""Command-line interface: ``charsum <command> [flags]``.

Data goes to stdout (or ``--output``), diagnostics to stderr.  Exit codes:
0 success, 1 verification failure, 2 usage or validation error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Sequence

from . import errors
from .census import build_census, rank_and_signature, charpoly_check
from .fq import build_field
from .jacobi import LinearForm, jacobi_form, jacobi_plain
from .lseries import (
    LPolynomial,
    euler_product_truncated,
    lseries_jacobi,
    lseries_oracle_artin,
    lseries_oracle_paper,
    validate_cover,
)
from .parallel import resolve_threads
from .verify import DEFAULT_SEED, SUITES, first_failure, run
from .zeta import genus, verify_counts

log = logging.getLogger("charsum")

METHODS = ("oracle-paper", "oracle-artin", "jacobi", "euler")

# which flag to blame for a validation error
_FLAG_OF = {
    errors.NotPrime: "--p",
    errors.ReducibleModulus: "--modulus",
    errors.NDoesNotDivideQMinus1: "--n",
    errors.BranchPointsNotDistinct: "--branch",
    errors.ExponentOutOfRange: "--exps",
    errors.UnramifiedAtInfinity: "--exps",
    errors.NotTotallyRamified: "--exps",
    errors.DegenerateCharacter: "--j",
    errors.PreconditionFailed: "--p",
}


class UsageError(Exception):
    def __init__(self, flag: str, message: str):
        super().__init__(message)
        self.flag = flag


def _int_list(flag: str, text: str | None) -> list[int]:
    if text is None:
        raise UsageError(flag, f"{flag} is required")
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(flag, f"{flag} expects comma-separated integers, got {text!r}") from None


def _elements(F, flag: str, text: str | None) -> list[int]:
    """Comma-separated element codes; ``c0:c1:...`` gives an element by coefficients."""
    if text is None:
        raise UsageError(flag, f"{flag} is required")
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        try:
            if ":" in tok:
                coeffs = [int(c) for c in tok.split(":")]
                if len(coeffs) > F.h or any(not 0 <= c < F.p for c in coeffs):
                    raise UsageError(flag, f"{tok!r} is not a coefficient vector of F_{F.q}")
                out.append(F.coeffs_to_code(coeffs))
            else:
                out.append(int(tok))
        except ValueError:
            raise UsageError(flag, f"{flag} expects element codes, got {tok!r}") from None
    return out


def _field(args):
    modulus = None
    if getattr(args, "modulus", None):
        modulus = _int_list("--modulus", args.modulus)
    return build_field(args.p, args.h, modulus=modulus)


def _cover(args, F):
    return validate_cover(F, args.n, _elements(F, "--branch", args.branch), _int_list("--exps", args.exps), j=args.j)


# ---------------------------------------------------------------------------
# commands


def cmd_field(args) -> tuple[int, str]:
    F = _field(args)
    out = {"field": F.to_dict(), "q": F.q, "m": F.m, "neg_one": F.code_to_coeffs(F.neg_one)}
    if args.table:
        out["elements"] = [
            {"code": c, "coeffs": F.code_to_coeffs(c), "dlog": None if c == 0 else F.dlog_code(c)} for c in range(F.q)
        ]
    return 0, _json(out)


def cmd_jacobi(args) -> tuple[int, str]:
    F = _field(args)
    exps = _int_list("--exps", args.exps)
    if args.form:
        coeffs = _elements(F, "--form", args.form)
        if len(coeffs) != len(exps):
            raise UsageError("--form", "--form needs one coefficient per exponent")
        value = jacobi_form(LinearForm.from_codes(F, coeffs, F.neg_one), exps)
    else:
        value = jacobi_plain(F, exps)
    out = {"q": F.q, "exps": [e % F.m for e in exps], "value": value.to_dict(), "norm": (value * value.conj()).to_dict()}
    if args.form:
        out["form"] = [F.code_to_coeffs(c) for c in coeffs]
    try:
        out["mod_p"] = value.reduce_to_field(F).coeffs
    except errors.DenominatorNotInvertible:
        out["mod_p"] = None
    return 0, _json(out)


def cmd_lseries(args) -> tuple[int, str]:
    F = _field(args)
    cover = _cover(args, F)
    threads = args.threads
    if args.method == "oracle-paper":
        L = lseries_oracle_paper(cover, args.j, threads=threads)
    elif args.method == "oracle-artin":
        L = lseries_oracle_artin(cover, args.j, threads=threads)
    elif args.method == "jacobi":
        L = lseries_jacobi(cover, args.j, threads=threads)
    else:
        series = euler_product_truncated(cover, args.j, cover.d - 1)
        L = LPolynomial(series, "paper", F.q, cover.n, args.j)
    return 0, _json({"cover": cover.to_dict(), "method": args.method, **L.to_dict()})


def cmd_zeta(args) -> tuple[int, str]:
    F = _field(args)
    args.j = None
    cover = _cover(args, F)
    rep = verify_counts(cover, K=args.depth, threads=args.threads)
    return (0 if rep.match else 1), _json({"genus": genus(cover), **rep.to_dict()})


def cmd_census(args) -> tuple[int, str]:
    F = _field(args)
    table = build_census(F, args.threads)
    if args.format == "csv":
        return 0, table.to_csv()
    cp = charpoly_check(F, args.threads)
    sig = rank_and_signature(F, args.threads)
    out = {"table": table.to_dict(), "matrix": {**cp.to_dict(), **sig.to_dict()}}
    return 0, _json(out)


def cmd_verify(args) -> tuple[int, str]:
    fields = None
    if args.p is not None:
        fields = [_field(args)]
    report = run(args.suite, fields, seed=args.seed, threads=args.threads)
    bad = first_failure(report)
    if bad is not None:
        print(json.dumps({"verification_failure": bad}, sort_keys=True), file=sys.stderr)
    return (0 if report["ok"] else 1), _json(report)


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="charsum", description="Jacobi-sum L-series of cyclic covers over finite fields")
    parser.add_argument("--log-level", default="WARNING", help="stderr logging level")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, need_p=True):
        p.add_argument("--p", type=int, required=need_p, help="characteristic")
        p.add_argument("--h", type=int, default=1, help="extension degree, q = p^h")
        p.add_argument("--modulus", help="monic defining polynomial c_0,...,c_h (default: smallest irreducible)")
        p.add_argument("--threads", type=int, default=None, help="worker threads (fallback: CHARSUM_THREADS)")
        p.add_argument("--output", help="write the result to this file instead of stdout")

    def cover(p):
        p.add_argument("--n", type=int, required=True, help="cover degree")
        p.add_argument("--branch", required=True, help="branch points as element codes, e.g. 0,1,2")
        p.add_argument("--exps", required=True, help="branch exponents n_i, e.g. 1,1,1")

    p = sub.add_parser("field", help="field tables")
    common(p)
    p.add_argument("--table", action="store_true", help="include the code/coefficient/dlog table")
    p.set_defaults(func=cmd_field)

    p = sub.add_parser("jacobi", help="a Jacobi sum")
    common(p)
    p.add_argument("--exps", required=True, help="character exponents a_1..a_d")
    p.add_argument("--form", help="coefficients b_1..b_d of the form sum b_l z_l - 1 (default all 1)")
    p.set_defaults(func=cmd_jacobi)

    p = sub.add_parser("lseries", help="L-polynomial of a cover")
    common(p)
    cover(p)
    p.add_argument("--j", type=int, default=1, help="character power")
    p.add_argument("--method", choices=METHODS, default="jacobi")
    p.set_defaults(func=cmd_lseries)

    p = sub.add_parser("zeta", help="point counts against the zeta numerator")
    common(p)
    cover(p)
    p.add_argument("--depth", type=int, default=2, help="count over F_{q^k}, k = 1..depth")
    p.set_defaults(func=cmd_zeta)

    p = sub.add_parser("census", help="Legendre family census")
    common(p)
    p.add_argument("--format", choices=("csv", "json"), default="json")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("verify", help="run the property suites")
    common(p, need_p=False)
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.set_defaults(func=cmd_verify)
    return parser


def _error(kind: str, message: str, flag: str | None = None) -> None:
    payload = {"error": kind, "message": message}
    if flag:
        payload["flag"] = flag
    print(json.dumps(payload, sort_keys=True), file=sys.stderr)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=args.log_level.upper(), stream=sys.stderr, format="%(levelname)s %(message)s")
    if getattr(args, "threads", None) is not None and args.threads < 1:
        _error("UsageError", "--threads must be >= 1", "--threads")
        return 2
    args.threads = resolve_threads(getattr(args, "threads", None))
    try:
        code, text = args.func(args)
    except UsageError as exc:
        _error("UsageError", str(exc), exc.flag)
        return 2
    except errors.CharsumError as exc:
        _error(type(exc).__name__, str(exc), _FLAG_OF.get(type(exc)))
        return 2
    except ValueError as exc:
        _error("ValueError", str(exc))
        return 2
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
        log.info("wrote %s", args.output)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
