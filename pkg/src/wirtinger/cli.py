"""Command-line interface: alpha, scan, profile, verify.

Machine-readable output rules: JSON objects are serialized with sorted keys
and shortest round-trip floats, so parsing and re-serializing an emitted
object is byte-identical; CSV is plain RFC-4180 (comma, ``.`` decimal, LF,
header row first) with ``#``-prefixed comment lines.  Exit codes: 0 success,
2 usage/parameter error, 3 numerical failure.
"""

import argparse
import csv
import json
import math
import sys
from dataclasses import dataclass

from . import oracle as oracle_mod
from . import profile as profile_mod
from . import solver as solver_mod
from .core import K_of_m, Params, alpha_closed_form, f_prime_at_1
from .errors import ConvergenceError, ParamsError
from .quadrature import QuadConfig


@dataclass(frozen=True)
class ScanRecord:
    """One successful row of a breakpoint scan."""

    p: float
    q: float
    r: float
    alpha: float
    alpha_qq: float
    gap: float
    m_star: float
    regime: str
    quad_error: float

    def as_dict(self) -> dict:
        return {
            "p": self.p, "q": self.q, "r": self.r,
            "alpha": self.alpha, "alpha_qq": self.alpha_qq, "gap": self.gap,
            "m_star": self.m_star, "regime": self.regime,
            "quad_error": self.quad_error,
        }


def _cfg(args) -> QuadConfig | None:
    if getattr(args, "tol", None) is None:
        return None
    tol = float(args.tol)
    if not tol > 0.0:
        raise ParamsError(f"--tol must be positive, got {tol}")
    return QuadConfig(abs_tol=tol / 10.0, rel_tol=tol)


def _emit_json(payload) -> None:
    print(json.dumps(payload, sort_keys=True))


def _human(value) -> str:
    if isinstance(value, float):
        return format(value, ".10g")
    return str(value)


def cmd_alpha(args) -> int:
    prm = Params(args.p, args.q, args.r)
    if (args.a is None) != (args.b is None):
        raise ParamsError("--a and --b must be given together")
    res = solver_mod.best_constant(prm, _cfg(args))
    payload = {
        "p": prm.p, "q": prm.q, "r": prm.r,
        "alpha": res.alpha, "m_star": res.m_star, "regime": res.regime,
        "alpha_qq": res.alpha_qq, "gap": res.alpha_qq - res.alpha,
        "quad_error": res.quad_error,
    }
    if args.a is not None:
        payload["a"] = args.a
        payload["b"] = args.b
        payload["alpha_rescaled"] = solver_mod.rescale(res.alpha, prm, args.a, args.b)
    if args.json:
        _emit_json(payload)
    else:
        for key in ("alpha", "m_star", "regime", "alpha_qq", "gap",
                    "quad_error", "alpha_rescaled"):
            if key in payload:
                print(f"{key:15s} {_human(payload[key])}")
    return 0


_SCAN_COLUMNS = ("p", "q", "r", "alpha", "alpha_qq", "gap", "m_star",
                 "regime", "quad_error", "error")


def cmd_scan(args) -> int:
    sc = solver_mod.breakpoint_scan(
        args.p, args.r, args.q_from, args.q_to, args.n, _cfg(args),
        parallel=args.parallel,
    )
    records = []
    failures = 0
    for row in sc.rows:
        if row.result is None:
            failures += 1
            records.append((row.q, None, row.error))
        else:
            res = row.result
            records.append((row.q, ScanRecord(
                p=float(args.p), q=row.q, r=float(args.r),
                alpha=res.alpha, alpha_qq=res.alpha_qq,
                gap=res.alpha_qq - res.alpha, m_star=res.m_star,
                regime=res.regime, quad_error=res.quad_error,
            ), None))

    if args.out == "json":
        payload = {
            "rows": [
                rec.as_dict() if rec is not None else {"q": q, "error": err}
                for q, rec, err in records
            ],
            "q_star": sc.q_star,
            "spacing": sc.spacing,
            "gap_monotone": sc.gap_monotone,
        }
        _emit_json(payload)
    else:
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(_SCAN_COLUMNS)
        for q, rec, err in records:
            if rec is None:
                writer.writerow([repr(float(args.p)), repr(q),
                                 repr(float(args.r)), "", "", "", "", "", "", err])
            else:
                writer.writerow([
                    repr(rec.p), repr(rec.q), repr(rec.r), repr(rec.alpha),
                    repr(rec.alpha_qq), repr(rec.gap), repr(rec.m_star),
                    rec.regime, repr(rec.quad_error), "",
                ])
        if sc.q_star is None:
            print("# q_star: no gap above threshold detected")
        else:
            print(f"# q_star = {sc.q_star!r} in ({sc.q_star - sc.spacing!r}, "
                  f"{sc.q_star!r}], spacing = {sc.spacing!r}")
    if failures > 0.1 * len(records):
        print(f"error: {failures}/{len(records)} scan rows failed", file=sys.stderr)
        return 3
    return 0


def cmd_profile(args) -> int:
    prm = Params(args.p, args.q, args.r)
    cfg = _cfg(args)
    if args.n < 65:
        raise ParamsError(
            f"--n must be >= 65 (32 samples per half-period), got {args.n}"
        )
    if args.m is not None:
        m = args.m
    else:
        m = solver_mod.best_constant(prm, cfg).m_star
    n_half = (args.n - 1) // 2
    prof = profile_mod.build_profile(m, prm, n_half, cfg)
    rep = profile_mod.verify_profile(prof, cfg)

    sink = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        writer = csv.writer(sink, lineterminator="\n")
        writer.writerow(["x", "u", "du"])
        for x, u, du in zip(prof.nodes, prof.u_values, prof.du_values):
            writer.writerow([repr(float(x)), repr(float(u)), repr(float(du))])
        sink.write(f"# m = {prof.m!r}\n")
        sink.write(f"# gamma = {prof.gamma!r}\n")
        for name, value in rep.as_dict().items():
            sink.write(f"# {name} = {value!r}\n")
    finally:
        if args.out:
            sink.close()
    return 0


def _verify_checks(suite: str, cfg: QuadConfig | None):
    """Cross-pipeline checks; yields (name, observed, expected, tolerance)."""
    checks = []

    def add(name, observed, expected, tol):
        checks.append({
            "name": name, "observed": observed, "expected": expected,
            "tolerance": tol, "passed": abs(observed - expected) <= tol,
        })

    triples = [(2.0, 3.0, 3.0), (2.0, 8.0, 8.0), (3.0, 5.0, 5.0)]
    if suite == "full":
        triples += [(1.5, 2.0, 2.0), (5.0, 12.0, 12.0)]
    for p, q, r in triples:
        prm = Params(p, q, r)
        ref = alpha_closed_form(p, q)
        add(f"closed_form_vs_K1_p{p}_q{q}", K_of_m(1.0, prm, cfg), ref, 1e-8 * ref)

    for p, q, r in [(2.0, 4.0, 2.0), (2.0, 8.0, 2.0)]:
        prm = Params(p, q, r)
        from .core import F_of_m
        h = 1e-4
        fd = (F_of_m(1.0, prm, cfg) - F_of_m(1.0 - h, prm, cfg)) / h
        an = f_prime_at_1(prm)
        add(f"f_prime_at_1_fd_p{p}_q{q}", an, fd, 2e-3 * abs(fd))

    from .core import k_prime_of_m
    prm = Params(2.0, 8.0, 2.0)
    h = 1e-5
    fd = (K_of_m(0.5 + h, prm, cfg) - K_of_m(0.5 - h, prm, cfg)) / (2.0 * h)
    add("k_prime_identity_282_m05", k_prime_of_m(0.5, prm, cfg), fd, 1e-4 * abs(fd))

    if suite == "full":
        res = solver_mod.best_constant(Params(2.0, 2.0, 2.0), cfg)
        add("pi_check_222", res.alpha, math.pi, 1e-10)

    n_oracle = 800 if suite == "full" else 200
    res222 = solver_mod.best_constant(Params(2.0, 2.0, 2.0), cfg)
    est = oracle_mod.minimize_direct(Params(2.0, 2.0, 2.0), n_grid=n_oracle, seed=0)
    add("oracle_agreement_222", est.alpha_estimate, res222.alpha,
        2e-2 * res222.alpha)
    if suite == "full":
        prm8 = Params(2.0, 8.0, 2.0)
        res8 = solver_mod.best_constant(prm8, cfg)
        est8 = oracle_mod.minimize_direct(prm8, n_grid=800, seed=0)
        add("oracle_agreement_282", est8.alpha_estimate, res8.alpha,
            1e-2 * res8.alpha)

    n_prof = 512 if suite == "full" else 256
    prof = profile_mod.build_profile(1.0, Params(2.0, 2.0, 2.0), n_prof, cfg)
    rep = profile_mod.verify_profile(prof, cfg)
    worst = max(rep.as_dict().values())
    add("profile_residuals_222", worst, 0.0, 1e-6 if suite == "full" else 1e-5)
    if suite == "full":
        prm8 = Params(2.0, 8.0, 2.0)
        res8 = solver_mod.best_constant(prm8, cfg)
        prof8 = profile_mod.build_profile(res8.m_star, prm8, 512, cfg)
        rep8 = profile_mod.verify_profile(prof8, cfg)
        add("profile_residuals_282", max(rep8.as_dict().values()), 0.0, 1e-6)

    return checks


def cmd_verify(args) -> int:
    checks = _verify_checks(args.suite, _cfg(args))
    ok = all(c["passed"] for c in checks)
    if args.json:
        _emit_json({"suite": args.suite, "passed": ok, "checks": checks})
    else:
        for c in checks:
            status = "PASS" if c["passed"] else "FAIL"
            print(f"{status} {c['name']}: observed={_human(c['observed'])} "
                  f"expected={_human(c['expected'])} tol={_human(c['tolerance'])}")
        print(f"{'OK' if ok else 'FAILED'} ({sum(c['passed'] for c in checks)}"
              f"/{len(checks)} checks)")
    return 0 if ok else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wirtinger",
        description="Sharp constants of the Wirtinger-type inequality "
                    "||u'||_p >= alpha ||u||_q under int |u|^{r-2}u = 0.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    pa = sub.add_parser("alpha", help="best constant for one (p,q,r)")
    pa.add_argument("--p", type=float, required=True)
    pa.add_argument("--q", type=float, required=True, help="'inf' accepted (needs --r 2)")
    pa.add_argument("--r", type=float, required=True)
    pa.add_argument("--a", type=float, default=None)
    pa.add_argument("--b", type=float, default=None)
    pa.add_argument("--tol", type=float, default=None,
                    help="quadrature rel_tol (abs_tol = rel_tol/10)")
    pa.add_argument("--json", action="store_true")
    pa.set_defaults(func=cmd_alpha)

    ps = sub.add_parser("scan", help="breakpoint scan over a q-range")
    ps.add_argument("--p", type=float, required=True)
    ps.add_argument("--r", type=float, required=True)
    ps.add_argument("--q-from", type=float, required=True, dest="q_from")
    ps.add_argument("--q-to", type=float, required=True, dest="q_to")
    ps.add_argument("--n", type=int, required=True)
    ps.add_argument("--out", choices=("csv", "json"), default="csv")
    ps.add_argument("--parallel", action="store_true")
    ps.add_argument("--tol", type=float, default=None)
    ps.set_defaults(func=cmd_scan)

    pp = sub.add_parser("profile", help="extremal profile as CSV")
    pp.add_argument("--p", type=float, required=True)
    pp.add_argument("--q", type=float, required=True)
    pp.add_argument("--r", type=float, required=True)
    pp.add_argument("--m", type=float, default=None,
                    help="profile minimum is -m (default: solver's m_star)")
    pp.add_argument("--n", type=int, required=True,
                    help="number of output rows (odd; >= 65)")
    pp.add_argument("--out", type=str, default=None, help="output CSV path")
    pp.add_argument("--tol", type=float, default=None)
    pp.set_defaults(func=cmd_profile)

    pv = sub.add_parser("verify", help="cross-pipeline self checks")
    pv.add_argument("--suite", choices=("quick", "full"), default="quick")
    pv.add_argument("--json", action="store_true")
    pv.add_argument("--tol", type=float, default=None)
    pv.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParamsError as e:
        print(f"parameter error: {e}", file=sys.stderr)
        return 2
    except ValueError as e:
        print(f"parameter error: {e}", file=sys.stderr)
        return 2
    except OverflowError as e:
        print(f"numerical failure: {e}", file=sys.stderr)
        return 3
    except ConvergenceError as e:
        print(f"numerical failure: {e}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
