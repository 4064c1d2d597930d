"""``k3mahler`` command-line interface."""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from .config import RunConfig, load_config, with_overrides
from .report import PIPELINES


def _jsonable(x):
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else str(x)
    return x


def _emit(args, payload, text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True, default=_jsonable))
    else:
        print(text)


def _config(args) -> RunConfig:
    cfg = load_config(args.config)
    return with_overrides(cfg, cutoff=args.cutoff, tol=args.tol, seed=args.seed, threads=args.threads)


# -- subcommands ----------------------------------------------------------------

def cmd_verify(args) -> int:
    cfg = _config(args)
    rep = PIPELINES[args.what](cfg)
    if args.json:
        print(rep.dumps())
    else:
        print(rep.text())
    return 0 if rep.passed else 1


def cmd_mahler(args) -> int:
    from .laurent import resolve
    from .mahler import mahler_jensen_grid, mahler_monte_carlo

    cfg = _config(args)
    P = resolve(args.poly)
    if args.method == "jensen":
        est = mahler_jensen_grid(P, args.grid, cfg.threads)
    else:
        est = mahler_monte_carlo(P, args.samples, cfg.seed, threads=cfg.threads)
    _emit(args, est.to_json(),
          f"m(P) ~ {est.value:.12f} +- {est.error_bound:.3e}  [{est.method}, {est.resolution}]")
    return 0


def cmd_qexp(args) -> int:
    from .qseries import FORMS

    s = FORMS[args.form](args.order)
    shift = Fraction(s.prefactor24, 24)
    pairs = [(j + shift, c) for j, c in enumerate(s.coeffs)]
    if args.json:
        print(json.dumps({"prefactor24": s.prefactor24,
                          "coefficients": [[_jsonable(Fraction(e)), _jsonable(c)] for e, c in pairs]}))
    else:
        print("\n".join(f"{e}: {c}" for e, c in pairs))
    return 0


def cmd_lseries(args) -> int:
    from . import lfunctions as lf
    from .quadforms import BinaryQuadraticForm

    cfg = _config(args)
    vals = [float(x) for x in args.args.split(",")] if args.args else []
    what = args.what.lstrip("-")
    if what == "L":
        d, s = int(vals[0]), vals[1] if len(vals) > 1 else 2.0
        r = lf.dirichlet_L(d, s, min(cfg.tol, lf.DEFAULT_TOL))
        out = {"value": r.value, "tail_bound": r.tail_bound, "terms_used": r.terms_used}
    elif what == "zeta":
        r = lf.zeta(vals[0] if vals else 2.0)
        out = {"value": r.value, "tail_bound": r.tail_bound, "terms_used": r.terms_used}
    elif what == "epstein":
        a, b, c = (int(v) for v in vals[:3])
        s = vals[3] if len(vals) > 3 else 2.0
        r = lf.epstein_Q(BinaryQuadraticForm(a, b, c), s, cfg.tol, threads=cfg.threads)
        out = {"value": r.value, "tail_bound": r.tail_bound, "cutoff": r.terms_used}
    elif what == "d3":
        r = lf.d3(min(cfg.tol, lf.DEFAULT_TOL))
        out = {"value": r.value, "tail_bound": r.tail_bound, "eight_fifths": 1.6 * r.value}
    elif what == "lemma34":
        items = [int(vals[0])] if vals else [1, 2, 3, 4]
        s = vals[1] if len(vals) > 1 else 2.0
        out = {}
        for i in items:
            c = lf.lemma34_sides(i, s, cfg.tol, cfg.threads)
            out[str(i)] = {"lhs": c.lhs, "rhs": c.rhs, "residual": c.residual, "tolerance": cfg.tol}
    elif what == "zr":
        c = lf.zucker_robertson_sides(vals[0] if vals else 2.0, cfg.tol, cfg.threads)
        out = {"lhs": c.lhs, "rhs": c.rhs, "residual": c.residual, "tolerance": cfg.tol}
    elif what == "split":
        r = lf.verify_even_odd_split(vals[0] if vals else 2.0)
        out = {k: getattr(r, k) for k in ("even_odd", "even_part", "odd_is_L60", "lambert")}
    else:
        raise SystemExit(f"unknown --what {args.what}")
    _emit(args, out, "\n".join(f"{k}: {v}" for k, v in out.items()))
    return 0


def cmd_kronecker(args) -> int:
    from .kronecker_sums import TAU0, KroneckerSumSpec, m_lattice, split_prop31

    cfg = _config(args)
    if args.tau:
        re_, im_ = (float(x) for x in args.tau.split(","))
        tau = complex(re_, im_)
    else:
        tau = TAU0
    if args.split:
        if tau != TAU0:
            raise SystemExit("--split is only defined at the q3 preset")
        sp = split_prop31(cfg.cutoff, cfg.threads)
        out = {"R": sp.R, "modular_part": sp.modular_part, "dirichlet_part": sp.dirichlet_part,
               "total": sp.total, "modular_tail_bound": sp.modular_tail_bound,
               "dirichlet_tail_bound": sp.dirichlet_tail_bound}
    else:
        v = m_lattice(KroneckerSumSpec(tau, R=cfg.cutoff), cfg.threads)
        out = {"tau": [tau.real, tau.imag], "R": v.R, "value": v.value, "tail_bound": v.tail_bound,
               "tail_estimate": v.tail_estimate, "extrapolated": v.extrapolated}
    _emit(args, out, "\n".join(f"{k}: {v}" for k, v in out.items()))
    return 0


def cmd_ap(args) -> int:
    from .quadforms import _is_prime, ap_closed_form, coeff_A1
    from .qseries import fplus_qexp

    b = fplus_qexp(args.max + 1).absolute()
    out = {}
    for p in range(2, args.max + 1):
        if not _is_prime(p) or p in (3, 5):
            continue
        out[p] = {"closed_form": ap_closed_form(p), "qexp": b[p], "A1": coeff_A1(p)}
    _emit(args, out, "\n".join(f"{p}: closed={r['closed_form']} qexp={r['qexp']} A1={r['A1']}"
                               for p, r in out.items()))
    return 0


def cmd_livne(args) -> int:
    from .livne import TestSetConfig, format_table, parity_checks, trace_table, verify_effective_test_set

    if args.table:
        rows = trace_table()
        _emit(args, [{"p": r.p, "A1": r.A1, "A2": r.A2, "equal": r.equal} for r in rows], format_table(rows))
        return 0 if all(r.equal for r in rows) else 1
    if args.coverage:
        reps = [verify_effective_test_set(TestSetConfig(S=S)).to_json() for S in ((3, 5), (2, 3, 5))]
        text = []
        for r in reps:
            text.append(f"S={r['S']}: {r['attained_nonzero']}/{r['nonzero_vectors']} nonzero vectors attained, "
                        f"missing={r['missing']}, effective={r['effective']}")
            text.extend(f"  {v}: {ps}" for v, ps in r["attained"].items())
        _emit(args, reps, "\n".join(text))
        return 0 if reps[0]["effective"] else 1
    rep = parity_checks(args.parity)
    _emit(args, {"max_p": rep.max_p, "checked": list(rep.checked), "failures": list(rep.failures),
                 "pass": bool(rep)},
          f"parity up to {rep.max_p}: {'PASS' if rep else 'FAIL'} {list(rep.failures)}")
    return 0 if rep else 1


# -- parser ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("global options")
    g.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")
    g.add_argument("--tol", type=float, default=argparse.SUPPRESS, help="Epstein/L-series tolerance")
    g.add_argument("--cutoff", type=int, default=argparse.SUPPRESS, help="lattice shell cutoff R")
    g.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    g.add_argument("--threads", type=int, default=argparse.SUPPRESS)
    g.add_argument("--config", default=argparse.SUPPRESS, help="key=value config file")

    p = argparse.ArgumentParser(prog="k3mahler", parents=[common], description=__doc__)
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", parents=[common], help="run a verification pipeline")
    v.add_argument("what", choices=sorted(PIPELINES))
    v.set_defaults(func=cmd_verify)

    m = sub.add_parser("mahler", parents=[common], help="Mahler measure of a Laurent polynomial")
    m.add_argument("--poly", required=True, help="P0, Q-3, Qk:<k>, a file, or a literal like 'X+1/2*Y^-1'")
    m.add_argument("--method", choices=("jensen", "mc"), default="jensen")
    m.add_argument("--grid", type=int, default=256)
    m.add_argument("--samples", type=int, default=1_000_000)
    m.set_defaults(func=cmd_mahler)

    q = sub.add_parser("qexp", parents=[common], help="print a q-expansion")
    q.add_argument("--form", choices=("eta", "g", "theta1", "fplus", "f1", "f2", "t"), required=True)
    q.add_argument("--order", type=int, default=32)
    q.set_defaults(func=cmd_qexp)

    ls = sub.add_parser("lseries", parents=[common], help="L-values, zeta, Epstein sums, identities")
    ls.add_argument("--what", required=True,
                    choices=("L", "zeta", "-zeta", "epstein", "d3", "lemma34", "zr", "split"))
    ls.add_argument("--args", default="", help="comma separated; use --args=-15,2 when the first value is negative")
    ls.set_defaults(func=cmd_lseries)

    k = sub.add_parser("kronecker", parents=[common], help="Eisenstein-Kronecker lattice sums")
    grp = k.add_mutually_exclusive_group()
    grp.add_argument("--tau-preset", choices=("q3",), default="q3")
    grp.add_argument("--tau", help="re,im")
    k.add_argument("--split", action="store_true", help="modular / Dirichlet split at tau0")
    k.set_defaults(func=cmd_kronecker)

    a = sub.add_parser("ap", parents=[common], help="A_p from closed form, f+ and f1+f2")
    a.add_argument("--max", type=int, default=100)
    a.set_defaults(func=cmd_ap)

    lv = sub.add_parser("livne", parents=[common], help="test-set coverage, trace table, parity")
    mode = lv.add_mutually_exclusive_group(required=True)
    mode.add_argument("--table", action="store_true")
    mode.add_argument("--coverage", action="store_true")
    mode.add_argument("--parity", type=int, metavar="MAXP")
    lv.set_defaults(func=cmd_livne)
    return p


_GLOBAL_DEFAULTS = {"json": False, "tol": None, "cutoff": None, "seed": None, "threads": None, "config": None}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    for k, v in _GLOBAL_DEFAULTS.items():
        if not hasattr(args, k):
            setattr(args, k, v)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
