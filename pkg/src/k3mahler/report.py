"""Verification pipelines and their machine-readable reports."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from importlib import resources
from typing import Callable

from . import __version__
from .config import RunConfig
from .kronecker_sums import TAU0, KroneckerSumSpec, k_of_t, m_lattice, split_prop31, t_of_tau
from .laurent import build_P0, build_Qk
from .lfunctions import d3, lemma34_sides, verify_even_odd_split, zucker_robertson_sides
from .livne import DEFAULT_T, TestSetConfig, parity_checks, trace_table, verify_effective_test_set
from .mahler import mahler_jensen_grid, mahler_monte_carlo
from .quadforms import _is_prime, ap_closed_form
from .qseries import fplus_qexp

SCHEMA_VERSION = "1.0"

# expected A_p on the test set; both trace rows must equal it
TRACE_TABLE = (0, 0, 0, -14, -22, 34, 0, 2, 0, 0, -86, -118, 0, 0, 154)


@dataclass
class Entry:
    name: str
    lhs: float | None
    rhs: float | None
    residual: float | None
    tolerance: float
    passed: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {"name": self.name, "lhs": self.lhs, "rhs": self.rhs, "residual": self.residual,
                "tolerance": self.tolerance, "pass": self.passed, "detail": self.detail}


@dataclass
class VerificationReport:
    title: str
    entries: list[Entry] = field(default_factory=list)
    provenance: dict = field(default_factory=dict)
    extras: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return bool(self.entries) and all(e.passed for e in self.entries)

    def check(self, name: str, fn: Callable[[], tuple], tolerance: float, detail: str = "") -> Entry:
        """Run ``fn() -> (lhs, rhs)`` and record ``|lhs - rhs| < tolerance``.

        Any exception becomes a failed entry carrying the error text.
        """
        try:
            lhs, rhs = fn()
            residual = abs(lhs - rhs)
            ok = bool(residual < tolerance) and math.isfinite(residual)
            e = Entry(name, float(lhs), float(rhs), float(residual), tolerance, ok, detail)
        except Exception as exc:  # a failed sub-check must not abort the report
            e = Entry(name, None, None, None, tolerance, False,
                      f"{type(exc).__name__}: {exc}".strip())
        self.entries.append(e)
        return e

    def to_json(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "title": self.title,
            "pass": self.passed,
            "entries": [e.to_json() for e in self.entries],
            "provenance": self.provenance,
            "extras": self.extras,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)

    def text(self) -> str:
        lines = [self.title]
        for e in self.entries:
            mark = "PASS" if e.passed else "FAIL"
            if e.residual is None:
                lines.append(f"  [{mark}] {e.name}: {e.detail}")
            else:
                lines.append(f"  [{mark}] {e.name}: residual {e.residual:.3e} (tol {e.tolerance:.1e})"
                             + (f"  {e.detail}" if e.detail else ""))
        lines.append(f"overall: {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines)


def report_schema() -> dict:
    return json.loads(resources.files("k3mahler").joinpath("report_schema.json").read_text())


def _provenance(cfg: RunConfig, **extra) -> dict:
    return {"version": __version__, "schema_version": SCHEMA_VERSION, "config": cfg.to_json(), **extra}


# -- pipelines ----------------------------------------------------------------

def add_lemma34(rep: VerificationReport, cfg: RunConfig, s: float = 2.0, tol: float = 1e-8) -> None:
    for item in (1, 2, 3, 4):
        def fn(item=item):
            c = lemma34_sides(item, s, cfg.tol, cfg.threads)
            return c.lhs, c.rhs
        rep.check(f"lemma34.item{item} (s={s:g})", fn, tol)
    rep.check(f"zucker_robertson (s={s:g})",
              lambda: (lambda c: (c.lhs, c.rhs))(zucker_robertson_sides(s, cfg.tol, cfg.threads)), tol)


def add_trace_table(rep: VerificationReport) -> None:
    def fn():
        rows = trace_table(TestSetConfig())
        got1 = tuple(r.A1 for r in rows)
        got2 = tuple(r.A2 for r in rows)
        bad = sum(a != b for a, b in zip(got1, TRACE_TABLE)) + sum(a != b for a, b in zip(got2, TRACE_TABLE))
        return float(bad), 0.0
    rep.check("trace_table (A1 and A2 vs reference table, mismatches)", fn, 0.5,
              detail="primes " + ",".join(map(str, DEFAULT_T)))


def verify_theorem1(cfg: RunConfig = RunConfig()) -> VerificationReport:
    rep = VerificationReport("m(Q_-3) = (8/5) d_3", provenance=_provenance(cfg, tau0=[TAU0.real, TAU0.imag]))
    d = d3(min(1e-12, cfg.tol))
    target = 1.6 * d.value
    rep.extras["d3"] = d.value
    rep.extras["target_8_5_d3"] = target

    add_lemma34(rep, cfg)
    add_trace_table(rep)

    split_box = {}

    def split():
        if "s" not in split_box:
            split_box["s"] = split_prop31(cfg.cutoff, cfg.threads)
        return split_box["s"]

    rep.check(f"modular_part = 0 (R={cfg.cutoff})", lambda: (split().modular_part, 0.0), 1e-6)
    rep.check(f"dirichlet_part = (8/5) d3 (R={cfg.cutoff})", lambda: (split().dirichlet_part, target), 1e-5)
    rep.check(f"lattice m(Q_-3) = (8/5) d3 (R={cfg.cutoff})",
              lambda: (m_lattice(KroneckerSumSpec.q3(cfg.cutoff), cfg.threads).value, target), 1e-4)
    rep.check(f"jensen grid m(Q_-3) = (8/5) d3 ({cfg.grid}^2)",
              lambda: (mahler_jensen_grid(build_Qk(-3), cfg.grid, cfg.threads).value, target), 1e-3)
    rep.check("k(t(tau0)) = -3 (eta products N=60)", lambda: (k_of_t(t_of_tau(TAU0, 60)).real, -3.0), 1e-8)
    return rep


def verify_p0(cfg: RunConfig = RunConfig()) -> VerificationReport:
    rep = VerificationReport("m(X+1/X+Y+1/Y+Z+1/Z) = d_3", provenance=_provenance(cfg))
    target = d3(min(1e-12, cfg.tol)).value
    rep.extras["d3"] = target
    P = build_P0()
    rep.check(f"jensen grid m(P0) = d3 ({cfg.p0_grid}^2)",
              lambda: (mahler_jensen_grid(P, cfg.p0_grid, cfg.threads).value, target), 1e-4)
    mc = mahler_monte_carlo(P, cfg.p0_samples, cfg.seed, threads=cfg.threads)
    rep.extras["monte_carlo"] = mc.to_json()
    rep.entries.append(Entry(f"monte carlo m(P0) = d3 ({cfg.p0_samples} samples)", mc.value, target,
                             abs(mc.value - target), 3 * mc.error_bound,
                             abs(mc.value - target) < 3 * mc.error_bound, "tolerance = 3 standard errors"))
    return rep


def verify_lemma34(cfg: RunConfig = RunConfig()) -> VerificationReport:
    rep = VerificationReport("quadratic-form L-series identities", provenance=_provenance(cfg))
    add_lemma34(rep, cfg)
    split = verify_even_odd_split(2.0)
    for name in ("even_odd", "even_part", "odd_is_L60", "lambert"):
        rep.check(f"split.{name} (s=2)", lambda name=name: (getattr(split, name), 0.0), 1e-8)
    return rep


def verify_table(cfg: RunConfig = RunConfig()) -> VerificationReport:
    rep = VerificationReport("trace comparison on the test set", provenance=_provenance(cfg))
    add_trace_table(rep)

    def closed_vs_qexp():
        b = fplus_qexp(max(cfg.qorder, 101)).absolute()
        primes = [p for p in range(2, 100) if _is_prime(p) and p not in (3, 5)]
        return float(sum(ap_closed_form(p) != b[p] for p in primes)), 0.0
    rep.check("closed-form A_p vs f+ coefficients, p < 100 (mismatches)", closed_vs_qexp, 0.5)
    return rep


def verify_testset(cfg: RunConfig = RunConfig()) -> VerificationReport:
    rep = VerificationReport("effective test set", provenance=_provenance(cfg))
    cov = verify_effective_test_set(TestSetConfig())
    rep.extras["coverage_S_3_5"] = cov.to_json()
    rep.extras["coverage_S_2_3_5"] = verify_effective_test_set(TestSetConfig(S=(2, 3, 5))).to_json()
    rep.check("nonzero vectors missed by f(T), S={3,5}", lambda: (float(len(cov.missing)), 0.0), 0.5)
    par = parity_checks(100)
    rep.check("parity failures up to 100", lambda: (float(len(par.failures)), 0.0), 0.5)
    return rep


PIPELINES = {
    "theorem1": verify_theorem1,
    "p0": verify_p0,
    "lemma34": verify_lemma34,
    "table": verify_table,
    "testset": verify_testset,
}
