"""Command-line front end: ``hgw <command> ...``.

Exit codes: 0 all requested checks verified, 2 some check failed, 3 some
check inconclusive and none failed, 1 usage, parse or hypothesis errors.

Settings are resolved as defaults < session file < HGW_* environment
variables < command-line flags.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time
from typing import List, Optional

from ..exact import FieldMismatch
from ..ncalg.ideal import CapacityError, Reducer
from ..report import FAILED, INCONCLUSIVE, VERIFIED, CheckResult, VerificationReport
from .config import ENV_VARS, ConfigError, SessionConfig
from .dsl import DSLError, Session, parse_ast, parse_matrix, parse_session, print_session
from .schema import REPORT_SCHEMA, validate_report

EXIT_OK, EXIT_USAGE, EXIT_FAILED, EXIT_INCONCLUSIVE = 0, 1, 2, 3
BUILTIN_SYSTEMS = ("prop24", "Oqp", "bef", "hef", "hmn", "grouplike")
OQP_NAMES = ("prop24", "Oqp")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on usage errors; 2 is reserved for failed checks here."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def exit_code(verdict: str) -> int:
    """The exit code depends on the overall verdict alone."""
    return {VERIFIED: EXIT_OK, FAILED: EXIT_FAILED, INCONCLUSIVE: EXIT_INCONCLUSIVE}[verdict]


# ---------------------------------------------------------------------------
# argument parsing

def _common(p: argparse.ArgumentParser):
    g = p.add_argument_group("session settings")
    g.add_argument("--session", help="session file in the stanza language")
    g.add_argument("--degree-cap", type=int)
    g.add_argument("--alpha-cap", type=int)
    g.add_argument("--cyclotomic-order", type=int)
    g.add_argument("--report", choices=("text", "json"))
    g.add_argument("--parallel", type=int, metavar="N")
    g.add_argument("--capacity-monomials", type=int, metavar="K")
    g.add_argument("--seed", type=int)
    g.add_argument("--timing", action="store_true", default=None,
                   help="include wall-clock seconds (off by default so reports are reproducible)")


def _ast_args(p: argparse.ArgumentParser):
    p.add_argument("--m", type=int, default=2, help="root-of-unity order / block size")
    p.add_argument("--n", type=int, default=2, help="number of blocks")
    p.add_argument("--p", default="e12=1", help="AST matrix p: e12=1,... | exponent list | trivial")
    p.add_argument("--q", default=None, help="AST matrix q (defaults to p)")


def build_parser() -> argparse.ArgumentParser:
    top = _Parser(prog="hgw", description="Exact verification of Hopf-Galois systems.")
    sub = top.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("check-system", help="verify a system (built-in family or session name)")
    p.add_argument("name", help=f"one of {', '.join(BUILTIN_SYSTEMS)} or a system in --session")
    _ast_args(p)
    p.add_argument("--E", help="matrix literal, e.g. '[1, 0; 0, 1]'")
    p.add_argument("--F", help="matrix literal")
    p.add_argument("--G", help="symmetrizer for E (cosovereign family)")
    p.add_argument("--K", help="symmetrizer for F (cosovereign family)")
    p.add_argument("--assume-nonzero", action="store_true")
    p.add_argument("--order", type=int, default=None, help="cyclic group order (grouplike)")
    p.add_argument("--no-galois", action="store_true", help="skip the Galois inverse identities")
    p.add_argument("--arg-degree", type=int, default=None,
                   help="degree bound of Galois arguments (default: degree cap - 1)")
    _common(p)

    p = sub.add_parser("check-morphism", help="well-definedness of a morphism declared in --session")
    p.add_argument("name")
    _common(p)

    p = sub.add_parser("rmatrix", help="the R-matrix R(p)")
    _ast_args(p)
    p.add_argument("--check-symmetry", action="store_true")
    p.add_argument("--check-trivial", action="store_true",
                   help="compare R(1) with m^2 delta_ik delta_jl")
    _common(p)

    p = sub.add_parser("cocycle", help="cocycle identities and the closed form on generators")
    _ast_args(p)
    _common(p)

    p = sub.add_parser("deform", help="exhaustive checks of the finite-dimensional deformation quadruple")
    _ast_args(p)
    _common(p)

    p = sub.add_parser("represent", help="relations of O_{p,1} in the deformed function algebra")
    _ast_args(p)
    _common(p)

    p = sub.add_parser("catalog", help="build a catalog presentation: catalog BEF E=[..] F=[..]")
    p.add_argument("family", help="BEF, HEF or Hmn")
    p.add_argument("params", nargs="*", help="key=value parameters")
    _common(p)

    p = sub.add_parser("print-session", help="parse a session file and print it back")
    p.add_argument("file")
    _common(p)

    sub.add_parser("schema", help="print the JSON schema of reports")
    return top


def _flag_settings(args) -> dict:
    keys = ("degree_cap", "alpha_cap", "cyclotomic_order", "report", "parallel",
            "capacity_monomials", "seed", "timing")
    return {k: getattr(args, k, None) for k in keys if getattr(args, k, None) is not None}


def _env_settings(environ) -> dict:
    return {field: environ[var] for var, field in ENV_VARS.items() if var in environ}


def resolve(args, environ=None) -> Session:
    """Session with settings resolved in order defaults < file < environment < flags."""
    environ = os.environ if environ is None else environ
    overrides = {**_env_settings(environ), **_flag_settings(args)}
    path = getattr(args, "session", None) or getattr(args, "file", None)
    if path:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
        return parse_session(text, overrides)
    return Session(SessionConfig().updated(**overrides))


# ---------------------------------------------------------------------------
# commands

def _reducer(cfg: SessionConfig) -> Reducer:
    return Reducer(cfg.degree_cap, cfg.capacity_monomials)


def _asts(args, cfg):
    p = parse_ast(args.p, args.m, args.n)
    q = parse_ast(args.q, args.m, args.n) if args.q else p
    return q, p


def _fd_result(name: str, ok: bool, witness=None, count: int = 0, detail: str = "") -> CheckResult:
    return CheckResult(name, VERIFIED if ok else FAILED, None, witness=witness, count=count,
                       detail=detail)


def _auto_order(session: Session, args, order: int):
    """Cyclotomic families live over Q(xi_m); use it unless an order was chosen explicitly."""
    if args.cyclotomic_order is None and session.config.cyclotomic_order == 1:
        session.config = session.config.updated(cyclotomic_order=order)


def builtin_system(name: str, args, session: Session):
    cfg = session.config
    fld = cfg.field
    if name in OQP_NAMES:
        from ..findim.smn import build_smn_system
        q, p = _asts(args, cfg)
        return build_smn_system(q, p), {"m": args.m, "n": args.n, "p": p.label(), "q": q.label()}
    if name == "bef":
        from ..catalog import FieldMatrix, build_bef_system
        E = parse_matrix(args.E, fld) if args.E else FieldMatrix.identity(2, fld)
        F = parse_matrix(args.F, fld) if args.F else E
        return build_bef_system(E, F), {"E": E.label(), "F": F.label()}
    if name == "hef":
        from ..catalog import F_q, build_hef_system
        E = parse_matrix(args.E, fld) if args.E else F_q(2)
        F = parse_matrix(args.F, fld) if args.F else E
        sym = None
        if args.G or args.K:
            if not (args.G and args.K):
                raise UsageError("--G and --K must be given together")
            sym = (parse_matrix(args.G, fld), parse_matrix(args.K, fld))
        return (build_hef_system(E, F, sym, assume_nonzero=args.assume_nonzero),
                {"E": E.label(), "F": F.label()})
    if name == "hmn":
        from ..catalog import build_hmn_system
        return (build_hmn_system(args.m, args.n, cfg.alpha_cap),
                {"m": args.m, "n": args.n, "alpha_cap": cfg.alpha_cap})
    if name == "grouplike":
        from ..group_algebras import group_algebra_system
        return group_algebra_system(args.order), {"order": args.order}
    raise UsageError(f"unknown system {name!r}")


def cmd_check_system(args, session: Session):
    from ..system import verify_system
    if args.name in session.systems:
        sys_, params = session.systems[args.name], {}
    elif args.name in BUILTIN_SYSTEMS:
        if args.name in OQP_NAMES and args.m > 2:
            _auto_order(session, args, args.m)
        sys_, params = builtin_system(args.name, args, session)
    else:
        known = sorted(session.systems) + list(BUILTIN_SYSTEMS)
        raise UsageError(f"unknown system {args.name!r}; known: {', '.join(known)}")
    cfg = session.config
    rep = verify_system(sys_, _reducer(cfg), galois=not args.no_galois, arg_degree=args.arg_degree,
                        workers=cfg.parallel)
    return rep, params


def cmd_check_morphism(args, session: Session):
    from ..system import well_defined_check
    if args.name not in session.morphisms:
        raise UsageError(f"unknown morphism {args.name!r}; declare it in a --session file")
    rep = VerificationReport(f"morphism {args.name}")
    rep.add(well_defined_check(args.name, session.morphisms[args.name], _reducer(session.config)))
    return rep, {}


def cmd_rmatrix(args, session: Session):
    from ..exact import format_scalar
    from ..findim.rmatrix import ASTMatrix, rmatrix
    _, p = _asts(args, session.config)
    R = rmatrix(p)
    N = R.size
    rep = VerificationReport(f"R-matrix p={p.label()} (size {N})")
    nonzero = sum(1 for i in range(1, N + 1) for j in range(1, N + 1) for l in range(1, N + 1)
                  for k in range(1, N + 1) if R(i, j, l, k) != 0)
    rep.header.append(f"{nonzero} nonzero entries out of {N ** 4}")
    output = []
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            for l in range(1, N + 1):
                for k in range(1, N + 1):
                    v = R(i, j, l, k)
                    if v != 0:
                        output.append(f"R[{i}{j}][{l}{k}] = {format_scalar(v)}")
    if args.check_symmetry:
        bad = R.check_symmetry()
        rep.add(_fd_result("R_ij^lk = R_kl^ji", bad is None,
                           None if bad is None else "R[{}{}][{}{}]".format(*bad), N ** 4))
    if args.check_trivial:
        R1 = rmatrix(ASTMatrix.trivial(p.m, p.n))
        m2 = p.m * p.m
        bad = None
        for i in range(1, N + 1):
            for j in range(1, N + 1):
                for l in range(1, N + 1):
                    for k in range(1, N + 1):
                        want = m2 if (i == k and j == l) else 0
                        if R1(i, j, l, k) != want and bad is None:
                            bad = f"R[{i}{j}][{l}{k}]"
        rep.add(_fd_result("R(1) = m^2 delta_ik delta_jl", bad is None, bad, N ** 4))
    return rep, {"m": p.m, "n": p.n, "p": p.label()}, output


def cmd_cocycle(args, session: Session):
    from ..findim.smn import cocycle_closed_form_check, deformation_data
    _, p = _asts(args, session.config)
    rep = VerificationReport(f"cocycle data p={p.label()}")
    d = deformation_data(p)
    for c in d.checks:
        rep.add(_fd_result(c.name, c.ok, c.witness, c.count))
    c = cocycle_closed_form_check(p)
    rep.add(_fd_result(c.name, c.ok, c.witness, c.count))
    return rep, {"m": p.m, "n": p.n, "p": p.label()}


def cmd_deform(args, session: Session):
    from ..findim.smn import deformation_cross_check
    _, p = _asts(args, session.config)
    return deformation_cross_check(p), {"m": p.m, "n": p.n, "p": p.label()}


def cmd_represent(args, session: Session):
    from ..findim.smn import deformed_relations_check
    _, p = _asts(args, session.config)
    r = deformed_relations_check(p)
    rep = VerificationReport(f"O_(p,1) in the deformed function algebra p={p.label()}")
    rep.add(_fd_result(f"relations of {r.presentation} hold in {r.target}", r.verified, r.witness,
                       r.relations_checked, r.relation or ""))
    rep.add(_fd_result("nonzero: unit of the target is nonzero", r.nonzero, count=1))
    return rep, {"m": p.m, "n": p.n, "p": p.label()}


def _kv(params: List[str]) -> dict:
    out = {}
    for item in params:
        if "=" not in item:
            raise UsageError(f"catalog parameter {item!r} is not key=value")
        k, v = item.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def cmd_catalog(args, session: Session):
    from ..catalog import (FAMILIES, bilinear_quadratic, catalog_entry, trace_invariant,
                           trace_quadratic)
    from ..exact import format_scalar
    from ..system import check_bialgebra
    raw = _kv(args.params)
    fam = args.family
    fld = session.config.field
    if fam.upper() in ("BEF", "HEF"):
        params = {k: parse_matrix(v, fld) for k, v in raw.items() if k in ("E", "F")}
        if "E" not in params:
            raise UsageError(f"{fam} needs E=[...]")
    elif fam.lower() == "hmn":
        params = {k: int(v) for k, v in raw.items()}
        params.setdefault("alpha_cap", session.config.alpha_cap)
    else:
        raise UsageError(f"unknown family {fam!r}; expected one of {', '.join(FAMILIES)}")
    entry = catalog_entry(fam, **params)
    P = entry.presentation
    rep = VerificationReport(f"catalog {entry.family} {P.name}")
    output = [f"[presentation.{entry.family}]", f"generators = {', '.join(P.generators)}"]
    output += [f"relation = {r}" for r in P.relations]
    if entry.family in ("BEF", "HEF"):
        E, F = entry.parameters["E"], entry.parameters["F"]
        if entry.family == "BEF":
            rep.header.append(f"trace invariants: {format_scalar(trace_invariant(E))}, "
                              f"{format_scalar(trace_invariant(F))}")
            qd = bilinear_quadratic(E)
        else:
            rep.header.append(f"traces: {format_scalar(E.trace())}, {format_scalar(F.trace())}")
            qd = trace_quadratic(F)
        roots = ", ".join(format_scalar(r) for r in qd.roots) or "none found"
        rep.header.append(f"quadratic coefficients {[format_scalar(c) for c in qd.coefficients]}; "
                          f"roots: {roots} ({qd.searched})")
    square = (entry.family == "Hmn" and entry.parameters["m"] == entry.parameters["n"]) or \
             (entry.family != "Hmn" and entry.parameters["E"] == entry.parameters["F"])
    if square:
        from ..catalog import bef_hopf, hef_hopf, hmn_hopf
        H = {"BEF": lambda: bef_hopf(entry.parameters["E"]),
             "HEF": lambda: hef_hopf(entry.parameters["E"]),
             "Hmn": lambda: hmn_hopf(entry.parameters["m"], entry.parameters["alpha_cap"])}[entry.family]()
        rep.extend(check_bialgebra(H, _reducer(session.config)))
    else:
        from ..system import well_defined_check
        E = entry.parameters.get("E")
        if entry.family == "Hmn":
            f = entry.builders["delta"](entry.parameters["m"])
        else:
            f = entry.builders["delta"](E)
        rep.add(well_defined_check("coaction", f, _reducer(session.config)))
    shown = {k: (v.label() if hasattr(v, "label") else v) for k, v in entry.parameters.items()}
    return rep, shown, output


COMMANDS = {"check-system": cmd_check_system, "check-morphism": cmd_check_morphism,
            "rmatrix": cmd_rmatrix, "cocycle": cmd_cocycle, "deform": cmd_deform,
            "represent": cmd_represent, "catalog": cmd_catalog}


# ---------------------------------------------------------------------------
# reports

def report_document(rep: VerificationReport, cfg: SessionConfig, command: str, target: str | None,
                    params: dict | None = None, output: List[str] | None = None) -> dict:
    doc = rep.to_dict(timing=cfg.timing)
    session = {"command": command, **cfg.to_dict()}
    if target:
        session["target"] = target
    if params:
        session["parameters"] = {k: str(v) for k, v in params.items()}
    out = {"session": session, **doc}
    if output:
        out["output"] = list(output)
    validate_report(out)
    return out


def render(doc: dict, rep: VerificationReport, cfg: SessionConfig) -> str:
    if cfg.report == "json":
        return json.dumps(doc, indent=2)
    text = rep.to_text(timing=cfg.timing)
    if doc.get("output"):
        text = "\n".join(doc["output"]) + "\n" + text
    return text


def run(argv: Optional[List[str]] = None, environ=None, stdout=None) -> int:
    """Parse arguments, run one command, print its report, return the exit code."""
    stdout = stdout or sys.stdout
    args = build_parser().parse_args(argv)
    if args.command == "schema":
        print(json.dumps(REPORT_SCHEMA, indent=2), file=stdout)
        return EXIT_OK
    try:
        session = resolve(args, environ)
        if args.command == "print-session":
            stdout.write(print_session(session))
            return EXIT_OK
        cfg = session.config
        random.seed(cfg.seed)
        t0 = time.perf_counter()
        try:
            res = COMMANDS[args.command](args, session)
        except CapacityError as exc:
            rep = VerificationReport(f"{args.command} {getattr(args, 'name', '')}".strip())
            rep.add(CheckResult("capacity", INCONCLUSIVE, cfg.degree_cap, detail=str(exc)))
            res = (rep, {})
        rep, params = res[0], res[1]
        output = res[2] if len(res) > 2 else None
        if cfg.timing:
            rep.header.append(f"total seconds {time.perf_counter() - t0:.2f}")
        cfg = session.config
        target = getattr(args, "name", None) or getattr(args, "family", None)
        doc = report_document(rep, cfg, args.command, target, params, output)
        print(render(doc, rep, cfg), file=stdout)
        return exit_code(doc["verdict"])
    except (DSLError, ConfigError, UsageError, FieldMismatch, OSError) as exc:
        print(f"hgw: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        # hypothesis violations from the catalog (trace mismatch, singular matrix, ...)
        print(f"hgw: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main(argv: Optional[List[str]] = None) -> int:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
