"""Command-line front end.

Exit codes: 0 when every check at a good prime passes, 2 on a mismatch or
failed identity, 3 on invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import sympy

from . import cones, formulas, geometry, oracle
from .polynomial import is_squarefree_over_Q, pfaffian
from .presentations import GroupPresentation, PresentationError, builtin, from_json, validate
from .ratfun import expand_series

EXIT_OK = 0
EXIT_MISMATCH = 2
EXIT_INVALID = 3

COMMANDS = ("pfaffian", "invariants", "zeta-closed", "zeta-oracle", "compare", "funceq", "verify-internal")


class InputError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    builtin: str | None = None
    input: Path | None = None
    params: dict = field(default_factory=dict)
    primes: list = field(default_factory=list)
    order: int = 4
    r: int | None = None
    format: str = "text"
    budget: int | None = None
    strict: bool = False

    def __post_init__(self):
        bad = [p for p in self.primes if not sympy.isprime(p)]
        if bad:
            raise InputError(f"not prime: {bad}")
        if self.order < 0:
            raise InputError("order must be >= 0")

    def presentation(self) -> GroupPresentation:
        if self.builtin and self.input:
            raise InputError("give either --builtin or --input, not both")
        if self.builtin:
            return builtin(self.builtin, self.params)
        if self.input:
            try:
                pres = from_json(Path(self.input))
            except (OSError, json.JSONDecodeError, KeyError, TypeError) as exc:
                raise InputError(f"cannot read {self.input}: {exc}") from exc
            validate(pres)
            return pres
        raise InputError("a presentation is required (--builtin NAME or --input FILE)")


def parse_primes(text: str) -> list[int]:
    text = text.strip()
    if ".." in text:
        lo, hi = text.split("..", 1)
        return [p for p in range(int(lo), int(hi) + 1) if sympy.isprime(p)]
    return [int(x) for x in text.split(",") if x.strip()]


def parse_params(items: Sequence[str]) -> dict:
    out = {}
    for item in items:
        if "=" not in item:
            raise InputError(f"--param expects K=V, got {item!r}")
        k, v = item.split("=", 1)
        out[k.strip()] = int(v)
    return out


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--builtin", help="dusautoy-E, G1C or G2C")
    common.add_argument("--input", type=Path, help="presentation JSON file")
    common.add_argument("--param", action="append", default=[], help="builtin parameter K=V")
    common.add_argument("--primes", default="", help="comma list or range A..B")
    common.add_argument("--order", type=int, default=4, help="truncation order K")
    common.add_argument("--r", type=int, default=None)
    common.add_argument("--format", choices=("text", "json", "latex"), default="text")
    common.add_argument("--budget", type=int, default=None, help="oracle lattice budget")
    common.add_argument("--strict", action="store_true", help="bad primes fail the run")
    parser = _Parser(prog="pfaffzeta", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def config_from_args(argv: Sequence[str] | None = None) -> RunConfig:
    args = build_parser().parse_args(argv)
    return RunConfig(
        command=args.command,
        builtin=args.builtin,
        input=args.input,
        params=parse_params(args.param),
        primes=parse_primes(args.primes) if args.primes else [],
        order=args.order,
        r=args.r,
        format=args.format,
        budget=args.budget,
        strict=args.strict,
    )


def _emit(cfg: RunConfig, text: str, data) -> None:
    if cfg.format == "json":
        print(json.dumps(data, indent=2, default=str))
    else:
        print(text)


# commands


def cmd_pfaffian(cfg: RunConfig) -> int:
    pres = cfg.presentation()
    f = pfaffian(pres)
    if f.is_zero():
        print("error: Pfaffian is zero", file=sys.stderr)
        return EXIT_INVALID
    names = [f"y{i + 1}" for i in range(pres.dprime)]
    sqf = is_squarefree_over_Q(f)
    if cfg.format == "json":
        _emit(cfg, "", {"presentation": pres.to_json(), "pfaffian": f.to_json(), "squarefree_over_Q": sqf})
    elif cfg.format == "latex":
        print(f.latex(names))
    else:
        print(f"Pf = {f.format(names)}")
        print(f"square-free over Q: {'yes' if sqf else 'no'}")
    return EXIT_OK


def _invariants_records(cfg: RunConfig, pres: GroupPresentation) -> list[dict]:
    out = []
    for p in cfg.primes:
        try:
            rec = geometry.invariants(pres, p).to_json()
        except geometry.BadPrimeError as exc:
            rec = {"p": p, "bad": True, "bad_reasons": [str(exc)]}
        out.append(rec)
    return out


def cmd_invariants(cfg: RunConfig) -> int:
    pres = cfg.presentation()
    if not cfg.primes:
        raise InputError("--primes is required")
    recs = _invariants_records(cfg, pres)
    if cfg.format == "json":
        _emit(cfg, "", recs)
        return EXIT_OK
    header = f"{'p':>5} {'smooth':>7} {'c_total':>8} {'n1':>3} {'n2':>3} {'bad':>5}  reasons"
    lines = [header]
    for rec in recs:
        lines.append(
            f"{rec['p']:>5} {rec.get('smooth_point_count', '-'):>7} {rec.get('c_total', '-'):>8} "
            f"{rec.get('n1', '-'):>3} {rec.get('n2', '-'):>3} {str(rec['bad']):>5}  {'; '.join(rec['bad_reasons'])}"
        )
    print("\n".join(lines))
    return EXIT_OK


def _render(cfg: RunConfig, F) -> str:
    return F.latex() if cfg.format == "latex" else F.format()


def cmd_zeta_closed(cfg: RunConfig) -> int:
    pres = cfg.presentation() if (cfg.builtin or cfg.input) else None
    r = cfg.r if cfg.r is not None else (pres.r if pres else 3)
    z = formulas.assemble_zeta(r)
    data = {"r": r}
    lines = []
    for label, F in (
        ("W1", formulas.W(1, r)),
        ("W2", formulas.W(2, r)),
        ("W3", formulas.W(3, r)),
        ("W4", formulas.W(4, r)),
        ("coeff_n1", z.coeff_n1),
        ("coeff_n2", z.coeff_n2),
        ("prefactor", z.prefactor),
    ):
        lines.append(f"{label} = {_render(cfg, F)}")
        data[label] = F.format()
    if pres is not None and cfg.primes:
        data["series"] = {}
        for p in cfg.primes:
            inv = geometry.invariants(pres, p)
            s = z.series(p, cfg.order, inv.c_total, inv.n1, inv.n2)
            tag = " (bad prime)" if inv.bad else ""
            lines.append(f"p={p}{tag}: {s.coeffs}")
            data["series"][p] = {"bad": inv.bad, "coeffs": [str(c) for c in s.coeffs]}
    _emit(cfg, "\n".join(lines), data)
    return EXIT_OK


def cmd_zeta_oracle(cfg: RunConfig) -> int:
    pres = cfg.presentation()
    if not cfg.primes:
        raise InputError("--primes is required")
    data = {}
    lines = []
    for p in cfg.primes:
        s = oracle.oracle_zeta(pres, p, cfg.order, budget=cfg.budget)
        data[p] = [str(c) for c in s.coeffs]
        lines.append(f"p={p}: {s.coeffs}")
    _emit(cfg, "\n".join(lines), data)
    return EXIT_OK


def cmd_compare(cfg: RunConfig) -> int:
    pres = cfg.presentation()
    if pres.dprime != 3:
        raise InputError("compare needs d' = 3")
    if not cfg.primes:
        raise InputError("--primes is required")
    z = formulas.assemble_zeta(pres.r)
    failed = False
    lines = []
    report = []
    for p in cfg.primes:
        try:
            inv = geometry.invariants(pres, p)
        except geometry.BadPrimeError as exc:
            lines.append(f"p={p}: bad prime ({exc}), not compared")
            report.append({"p": p, "bad": True, "reasons": [str(exc)]})
            failed = failed or cfg.strict
            continue
        closed = z.series(p, cfg.order, inv.c_total, inv.n1, inv.n2)
        brute = oracle.oracle_zeta(pres, p, cfg.order, budget=cfg.budget)
        rows = []
        ok = True
        for n, (a, b) in enumerate(zip(brute.coeffs, closed.coeffs)):
            same = a == b
            ok = ok and same
            rows.append({"n": n, "oracle": str(a), "closed": str(b), "match": same})
        status = "match" if ok else "MISMATCH"
        if inv.bad:
            status += " (bad prime, excluded from the verdict)"
            if cfg.strict:
                failed = True
        elif not ok:
            failed = True
        lines.append(f"p={p} c={inv.c_total} n1={inv.n1} n2={inv.n2}: {status}")
        width = max(len(r["oracle"]) for r in rows)
        for r in rows:
            mark = "ok" if r["match"] else "DIFF"
            lines.append(f"  t^{r['n']}: {r['oracle']:>{width}}  {r['closed']:>{width}}  {mark}")
        if inv.bad:
            lines.append(f"  reasons: {'; '.join(inv.bad_reasons)}")
        report.append({"p": p, "bad": inv.bad, "reasons": inv.bad_reasons, "coefficients": rows, "match": ok})
    verdict = "FAIL" if failed else "PASS"
    lines.append(verdict)
    _emit(cfg, "\n".join(lines), {"verdict": verdict, "primes": report})
    return EXIT_MISMATCH if failed else EXIT_OK


def cmd_funceq(cfg: RunConfig) -> int:
    r = cfg.r if cfg.r is not None else 3
    rep = formulas.check_functional_equation(r)
    ex, ey = formulas.zeta_exponents(r)
    lines = [rep.summary()]
    if rep:
        lines.append(f"PASS: zeta functional equation, exponent C({2 * r + 3},2)={ex} on X, {ey} on Y")
    else:
        lines.append("FAIL: " + ", ".join(c.name for c in rep.failures))
    data = {"r": r, "passed": bool(rep), "checks": [{"name": c.name, "passed": c.passed} for c in rep.checks]}
    _emit(cfg, "\n".join(lines), data)
    return EXIT_OK if rep else EXIT_MISMATCH


def internal_checks(rs: Sequence[int]) -> list[tuple[str, int, bool]]:
    """Every symbolic identity of the closed forms and the cone re-derivation."""
    out = []
    for r in rs:
        A = formulas.A_correction
        CF = formulas.correction_factor(r)
        out.append(("igusa_sum(2r,3) = W1", r, formulas.igusa_sum(2 * r, 3) == formulas.W(1, r)))
        out.append(("W2 = (A2 - A1) CF", r, formulas.W(2, r) == (A(2, r) - A(1, r)) * CF))
        out.append(("W3 = (A4 - 2A2 + A1) CF", r, formulas.W(3, r) == formulas.node_coefficient(2, r)))
        out.append(("W4 = -(A3 - 2A2 + A1) CF", r, formulas.W(4, r) == -formulas.node_coefficient(1, r)))
        out.append(("assemble_A(4) = A4", r, cones.assemble_A(4, r) == A(4, r)))
        out.append(("assemble_A(2) = A3", r, cones.assemble_A(2, r) == A(3, r)))
        out.append(("functional equations", r, bool(formulas.check_functional_equation(r))))
    for deficit in (2, 4):
        out.append((f"cone partition, deficit {deficit}", 0, not cones.partition_violations(deficit, 12)))
        for cone, _ in cones.cone_table(deficit):
            from .ratfun import series_total_degree

            ok = cones.brute_cone_series(cone, 12) == series_total_degree(cone.closed_form, 12)
            out.append((f"closed form {cone.label}, deficit {deficit}", 0, ok))
    for p, K in ((3, 10), (5, 8)):
        for deficit, k in ((4, 4), (2, 3)):
            ok = cones.enumerate_A(deficit, 3, p, K) == expand_series(formulas.A_correction(k, 3), p, K)
            out.append((f"enumerate_A({deficit}) = A{k} series, p={p} K={K}", 3, ok))
    return out


def cmd_verify_internal(cfg: RunConfig) -> int:
    rs = [cfg.r] if cfg.r is not None else [2, 3, 4, 5]
    checks = internal_checks(rs)
    lines = [f"{'PASS' if ok else 'FAIL'}  {name}" + (f"  [r={r}]" if r else "") for name, r, ok in checks]
    failed = [c for c in checks if not c[2]]
    lines.append("PASS" if not failed else f"FAIL ({len(failed)} identities)")
    _emit(cfg, "\n".join(lines), [{"name": n, "r": r, "passed": ok} for n, r, ok in checks])
    return EXIT_MISMATCH if failed else EXIT_OK


HANDLERS = {
    "pfaffian": cmd_pfaffian,
    "invariants": cmd_invariants,
    "zeta-closed": cmd_zeta_closed,
    "zeta-oracle": cmd_zeta_oracle,
    "compare": cmd_compare,
    "funceq": cmd_funceq,
    "verify-internal": cmd_verify_internal,
}


def main(argv: Sequence[str] | None = None) -> int:
    try:
        cfg = config_from_args(argv)
        return HANDLERS[cfg.command](cfg)
    except (InputError, PresentationError, geometry.BadPrimeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except oracle.OracleBudgetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
