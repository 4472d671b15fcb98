"""Command-line front end: ``nottingham {ramify,criterion,lift,closed-form,verify}``.

Exit codes: 0 success, 1 verification counterexample, 2 invalid input,
3 insufficient precision, 4 resource cap hit.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass

from .criterion import DEFAULT_TERM_CAP, closed_form_b3, closed_form_polynomial, coefficient_vector
from .crtlift import lift_Pb
from .errors import BadPrime, NottinghamError
from .field import check_odd_prime
from .ramify import DEEP_CHECK_CAP, ramification_report, required_precision
from .series import TruncatedZero, TruncSeries
from .verify import SUITES

EXIT_OK, EXIT_COUNTEREXAMPLE, EXIT_INVALID = 0, 1, 2


@dataclass
class RunConfig:
    command: str
    p: int | None = None
    primes: list[int] | None = None
    b: int | None = None
    coeffs: list[int] | None = None
    n_max: int = 1
    trunc: int | None = None
    json: bool = False
    pad_zero: bool = False
    deep_check: bool = False
    cap_terms: int = DEFAULT_TERM_CAP
    suite: str | None = None
    samples: int | None = None
    seed: int = 0
    workers: int = 1

    def validate(self):
        if self.p is not None:
            check_odd_prime(self.p)
        for q in self.primes or []:
            check_odd_prime(q)
        if self.b is not None and self.b < 1:
            raise BadPrime(f"b must be positive, got {self.b}")
        if self.coeffs is not None:
            bad = [c for c in self.coeffs if not 0 <= c < self.p]
            if bad:
                raise BadPrime(f"coefficients must be residues in [0, {self.p}): {bad}")
        if self.n_max < 0:
            raise BadPrime("n_max must be nonnegative")


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _workers() -> int:
    env = os.environ.get("RAMIFY_THREADS")
    if not env:
        return 1
    try:
        return max(1, int(env))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nottingham", description="Ramification of power series over F_p.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, prime=True, b=True):
        if prime:
            sp.add_argument("-p", "--prime", dest="p", type=int, required=True)
        if b:
            sp.add_argument("-b", type=int, required=True)
        sp.add_argument("--json", action="store_true", help="machine-readable output")

    sp = sub.add_parser("ramify", help="ramification numbers of X + sum a_i X^(i+b)")
    common(sp)
    sp.add_argument("-a", "--coeffs", type=_int_list, required=True, help="a_1,a_2,...")
    sp.add_argument("-n", "--nmax", dest="n_max", type=int, default=1)
    sp.add_argument("-N", "--trunc", type=int, help="truncation order (default: enough for i_nmax)")
    sp.add_argument("--pad-zero", action="store_true",
                    help="treat the coefficients as an exact polynomial (zeros beyond)")
    sp.add_argument("--deep-check", action="store_true", help="also compute i_2 directly")

    sp = sub.add_parser("criterion", help="criterion polynomial P_b mod p")
    common(sp)
    sp.add_argument("--cap-terms", type=int, default=DEFAULT_TERM_CAP)

    sp = sub.add_parser("lift", help="integer P_b from several primes")
    common(sp, prime=False)
    sp.add_argument("--primes", type=_int_list, required=True)

    sp = sub.add_parser("closed-form", help="the b = 3 constants alpha..delta at m = p")
    common(sp, b=False)

    sp = sub.add_parser("verify", help="oracle-agreement sweeps")
    sp.add_argument("--suite", choices=sorted(SUITES), required=True)
    sp.add_argument("-p", "--prime", dest="p", type=int)
    sp.add_argument("-b", type=int)
    sp.add_argument("-N", "--trunc", type=int)
    sp.add_argument("--samples", type=int)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--json", action="store_true")
    return parser


def _emit(cfg: RunConfig, payload: dict, text: str):
    if cfg.json:
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print(text)


def cmd_ramify(cfg: RunConfig):
    b, p, a = cfg.b, cfg.p, cfg.coeffs
    known = b + len(a)
    depth = max(cfg.n_max, 2 if cfg.deep_check else 1)
    N = cfg.trunc if cfg.trunc is not None else max(required_precision(b, p, depth), known)
    if cfg.pad_zero:
        known = N
    f = TruncSeries.from_normal_form(a, b, p, N)
    report = ramification_report(f, b, cfg.n_max, known_order=min(known, N),
                                 deep_check=cfg.deep_check, cap=DEEP_CHECK_CAP)
    shown = [f">={lb}" if s is TruncatedZero else str(s)
             for s, lb in zip(report.sequence, report.lower_bounds)]
    lines = [f"p = {p}, b = {b}, f = {f.truncate(min(known, N))}",
             f"sequence: [{', '.join(shown)}]",
             f"b-ramified: {str(report.is_b_ramified).lower()}"]
    if b % p == 0:
        lines.append("note: p divides b, so i_n = p^n i(f) and b-ramification is impossible")
    if report.deep_check is not None:
        lines.append(f"deep check (i_2): {'pass' if report.deep_check else 'FAIL'}")
    if report.criterion_value is not None:
        lines.append(f"criterion 2a1^4 - a2^3 + 2a1a2a3 - a1^2a4 = {report.criterion_value.value}")
    _emit(cfg, report.to_json(), "\n".join(lines))
    return report


def cmd_criterion(cfg: RunConfig):
    res = coefficient_vector(cfg.b, cfg.p, workers=cfg.workers, cap_terms=cfg.cap_terms)
    lines = [f"P_{cfg.b} mod {cfg.p}: {res.polynomial}",
             f"normalized A_{{{cfg.b + 1},{cfg.p}}}: {res.normalized}",
             "leading entries zero: " + ", ".join(str(z).lower() for z in res.leading_zero_check)]
    if not res.leading_zeros:
        lines.append(f"warning: some A_{{n,{cfg.p}}} with n <= {cfg.b} are nonzero "
                     f"(p <= b + 1 = {cfg.b + 1}); the criterion needs larger p")
    _emit(cfg, res.to_json(), "\n".join(lines))
    return res


def cmd_lift(cfg: RunConfig):
    rep = lift_Pb(cfg.b, cfg.primes, workers=cfg.workers)
    lines = [f"probable P_{cfg.b} (mod {rep.modulus}): {rep.lifted}",
             f"support agreement: {str(rep.support_agreement).lower()}"]
    if rep.unstable:
        lines.append(f"warning: lift unstable for {len(rep.unstable)} monomial(s); add primes")
    _emit(cfg, rep.to_json(), "\n".join(lines))
    return rep


def cmd_closed_form(cfg: RunConfig):
    consts = closed_form_b3(cfg.p)
    names = ("alpha", "beta", "gamma", "delta")
    payload = {"p": cfg.p, **{n: c.symmetric() for n, c in zip(names, consts)},
               "polynomial": closed_form_polynomial(cfg.p).to_json()}
    text = ", ".join(f"{n}(p) = {c.symmetric()}" for n, c in zip(names, consts))
    _emit(cfg, payload, f"p = {cfg.p}: {text}\nD_p = {closed_form_polynomial(cfg.p)}")
    return payload


def cmd_verify(cfg: RunConfig):
    kwargs = {"workers": cfg.workers, "seed": cfg.seed}
    if cfg.p is not None:
        kwargs["p"] = cfg.p
    if cfg.b is not None:
        kwargs["b"] = cfg.b
    if cfg.samples is not None:
        kwargs["samples"] = cfg.samples
    if cfg.trunc is not None:
        kwargs["trunc"] = cfg.trunc
    res = SUITES[cfg.suite](**kwargs)
    text = f"{cfg.suite}: {'pass' if res.passed else 'FAIL'} ({res.checked} checked)"
    if not res.passed:
        text += f"\nfirst counterexample: {res.counterexample!r}"
    _emit(cfg, res.to_json(), text)
    return res


COMMANDS = {
    "ramify": cmd_ramify,
    "criterion": cmd_criterion,
    "lift": cmd_lift,
    "closed-form": cmd_closed_form,
    "verify": cmd_verify,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.ERROR,
                        format="%(levelname)s %(name)s: %(message)s")
    fields = {k: v for k, v in vars(args).items() if k in RunConfig.__dataclass_fields__}
    cfg = RunConfig(workers=_workers(), **fields)
    try:
        cfg.validate()
        result = COMMANDS[cfg.command](cfg)
    except NottinghamError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    if cfg.command == "verify" and not result.passed:
        return EXIT_COUNTEREXAMPLE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
