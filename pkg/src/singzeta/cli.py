"""Command-line interface.

Exit status is 0 on success, 1 when a mathematical verdict fails (for
example ``--expect-equal`` and the inputs differ) and 2 on usage or input
errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import __version__
from .degeneracy import classify
from .expr import ParseError, parse
from .family import (
    FamilyError,
    GenericityError,
    ZetaNotComputable,
    assemble_zeta,
    check_assumptions,
    compare_pair,
    infer_mu_tot,
)
from .newton import newton_boundary, newton_number
from .resolution import LauferError, build_dual_graph, graphs_isomorphic, load_catalog, sigma_star
from .serialize import dumps, graph_from_json, load_member, member_from_json
from .zeta import milnor_from_zeta, varchenko_zeta


class UsageError(Exception):
    pass


class VerdictFailure(Exception):
    pass


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("SINGZETA_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"SINGZETA_SEED must be an integer, got {env!r}") from None


def _opts(args) -> dict:
    return {"mode": args.mode, "seed": _seed(args), "prime_bits": args.prime_bits}


def _emit(args, data: dict, text: str) -> None:
    sys.stdout.write(dumps(data) if args.json else text.rstrip("\n") + "\n")


def _germ(args):
    try:
        return parse(args.expr, nvars=args.nvars)
    except ParseError as exc:
        raise UsageError(f"cannot parse expression: {exc}") from None


def _face_json(face, verdict) -> dict:
    return {
        "dim": face.dim,
        "vertices": [list(v) for v in face.vertices],
        "normal": list(face.normal.entries) if face.normal else None,
        "level": face.normal.level if face.normal else None,
        "verdict": verdict.label(),
    }


def _germ_zeta(g, args):
    report = classify(g, **_opts(args))
    if report.classification != "nondegenerate":
        raise VerdictFailure("the germ is Newton degenerate; the Varchenko formula does not apply")
    return varchenko_zeta(newton_boundary(g), args.nvars)


# -- commands -------------------------------------------------------------------


def cmd_analyze(args) -> int:
    g = _germ(args)
    b = newton_boundary(g)
    report = classify(g, **_opts(args))
    data = {
        "polynomial": str(g),
        "convenient": b.convenient,
        "faces": [_face_json(f, v) for f, v in report.verdicts],
        "classification": report.classification,
        "newton_number": newton_number(b) if b.convenient else None,
        "zeta": None,
        "mu_from_zeta": None,
    }
    if report.classification == "nondegenerate":
        z = varchenko_zeta(b, args.nvars)
        data["zeta"] = z.to_json()
        data["mu_from_zeta"] = milnor_from_zeta(z, args.nvars)
    lines = [f"germ: {g}", f"convenient: {'yes' if b.convenient else 'no'}", "faces:"]
    for item in data["faces"]:
        verts = " ".join("(" + ",".join(map(str, v)) + ")" for v in item["vertices"])
        level = "-" if item["level"] is None else item["level"]
        lines.append(f"  dim {item['dim']}  level {level:>3}  {item['verdict']:<22} {verts}")
    lines.append(f"classification: {report.classification}")
    if data["newton_number"] is not None:
        lines.append(f"newton number: {data['newton_number']}")
    if data["zeta"] is not None:
        lines.append(f"zeta: {varchenko_zeta(b, args.nvars)}")
        lines.append(f"mu from zeta: {data['mu_from_zeta']}")
    _emit(args, data, "\n".join(lines))
    return 0


def cmd_zeta(args) -> int:
    z = _germ_zeta(_germ(args), args)
    _emit(args, {"zeta": z.to_json()}, str(z))
    return 0


def cmd_milnor(args) -> int:
    g = _germ(args)
    b = newton_boundary(g)
    z = _germ_zeta(g, args)
    mu = milnor_from_zeta(z, args.nvars)
    nu = newton_number(b) if b.convenient else None
    data = {"newton_number": nu, "mu_from_zeta": mu}
    text = f"newton number: {'n/a (not convenient)' if nu is None else nu}\nmu from zeta: {mu}"
    _emit(args, data, text)
    if nu is not None and nu != mu:
        raise VerdictFailure("newton number and zeta-derived Milnor number disagree")
    return 0


def cmd_family_check(args) -> int:
    m = load_member(args.member)
    rep = check_assumptions(m, **_opts(args))
    data = rep.to_json()
    lines = [f"{k}: {data[k]}" for k in ("FF", "sing_disjoint", "in_W_Gamma")]
    lines += [f"  - {msg}" for msg in rep.failures]
    _emit(args, data, "\n".join(lines))
    return 0 if not rep.failures else 1


def cmd_family_zeta(args) -> int:
    m = load_member(args.member)
    z = assemble_zeta(m)
    data = {"d": m.d, "zeta": z.to_json(), "mu": milnor_from_zeta(z, 3), "mu_tot": infer_mu_tot(z, m.d)}
    text = f"zeta: {z}\nmu: {data['mu']}\nmu_tot(C): {data['mu_tot']}"
    _emit(args, data, text)
    return 0


def cmd_family_compare(args) -> int:
    m0, m1 = load_member(args.first), load_member(args.second)
    cmp = compare_pair(m0, m1, seed=_seed(args), retries=args.retries)
    data = cmp.to_json()
    text = "\n".join(
        [
            f"zeta: {data['zeta'][0]}  |  {data['zeta'][1]}  ({'equal' if cmp.zeta_equal else 'different'})",
            f"mu: {cmp.mu[0]} vs {cmp.mu[1]}",
            f"mu2: {cmp.mu2[0]} vs {cmp.mu2[1]}",
            f"same zeta-function: {data['condition1']}",
        ]
    )
    _emit(args, data, text)
    if args.expect_equal and not cmp.condition1:
        return 1
    return 0


def _graph_input(path, args):
    data = json.loads(Path(path).read_text())
    if "nodes" in data:
        return graph_from_json(data)
    catalog = load_catalog(args.catalog) if args.catalog else None
    return build_dual_graph(member_from_json(data), phi=args.phi, catalog=catalog)


def cmd_resgraph_build(args) -> int:
    g = _graph_input(args.member, args)
    if args.format == "dot":
        sys.stdout.write(g.to_dot())
    else:
        sys.stdout.write(dumps(g.to_json()))
    return 0


def cmd_resgraph_compare(args) -> int:
    a, b = _graph_input(args.first, args), _graph_input(args.second, args)
    iso = graphs_isomorphic(a, b, use_multiplicity=args.multiplicities, use_arrows=args.arrows)
    _emit(args, {"isomorphic": iso}, "isomorphic" if iso else "not isomorphic")
    if args.expect_equal and not iso:
        return 1
    return 0


def cmd_sigma_star(args) -> int:
    fan = sigma_star()
    dets = fan.determinants()
    if args.check:
        ok = fan.is_regular() and len(fan.maximal_cones) == 7
        if ok:
            print(f"{len(fan.maximal_cones)} cones, all unimodular")
            return 0
        print(f"{len(fan.maximal_cones)} cones, determinants {dets}")
        return 1
    data = {"cones": [list(c) for c in fan.maximal_cones], "determinants": dets}
    text = "\n".join(f"Cone({', '.join(c)})  det {d}" for c, d in zip(fan.maximal_cones, dets))
    _emit(args, data, text)
    return 0


# -- argument parsing -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="random seed (default: $SINGZETA_SEED or 0)")
    common.add_argument("--mode", choices=("exact", "randomized"), default="exact")
    common.add_argument("--prime-bits", type=int, default=None, help="prime size for --mode randomized")
    common.add_argument("--retries", type=int, default=16, help="genericity draws before giving up")
    common.add_argument("--json", action="store_true", help="machine-readable output")

    parser = argparse.ArgumentParser(prog="singzeta", description="Newton boundaries, zeta-functions and resolution graphs.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, func, help_ in (
        ("analyze", cmd_analyze, "Newton boundary and non-degeneracy report"),
        ("zeta", cmd_zeta, "zeta-function of a non-degenerate germ"),
        ("milnor", cmd_milnor, "Newton number and zeta-derived Milnor number"),
    ):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("expr")
        p.add_argument("--nvars", type=int, choices=(2, 3), default=3)
        p.set_defaults(func=func)

    fam = sub.add_parser("family", help="members g = z1^2 f + h").add_subparsers(dest="action", required=True)
    p = fam.add_parser("check", parents=[common], help="check the standing assumptions")
    p.add_argument("member")
    p.set_defaults(func=cmd_family_check)
    p = fam.add_parser("zeta", parents=[common], help="zeta-function of a member")
    p.add_argument("member")
    p.set_defaults(func=cmd_family_zeta)
    p = fam.add_parser("compare", parents=[common], help="compare zeta, mu and mu2 of two members")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--expect-equal", action="store_true")
    p.set_defaults(func=cmd_family_compare)

    res = sub.add_parser("resgraph", help="dual resolution graphs").add_subparsers(dest="action", required=True)
    for name, func in (("build", cmd_resgraph_build), ("compare", cmd_resgraph_compare)):
        p = res.add_parser(name, parents=[common])
        if name == "build":
            p.add_argument("member", help="member JSON (or graph JSON)")
            p.add_argument("--format", choices=("json", "dot"), default="json")
        else:
            p.add_argument("first")
            p.add_argument("second")
            p.add_argument("--expect-equal", action="store_true")
            p.add_argument("--multiplicities", action="store_true", help="compare multiplicities too")
            p.add_argument("--arrows", action="store_true", help="compare arrows too")
        p.add_argument("--phi", type=int, choices=(1, 2, 3), default=2, help="coordinate used for Laufer")
        p.add_argument("--catalog", default=None, help="local patch catalog JSON")
        p.set_defaults(func=func)

    p = sub.add_parser("sigma-star", parents=[common], help="the regular fan")
    p.add_argument("--check", action="store_true")
    p.set_defaults(func=cmd_sigma_star)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except VerdictFailure as exc:
        print(f"singzeta: {exc}", file=sys.stderr)
        return 1
    except (ZetaNotComputable, GenericityError, LauferError) as exc:
        print(f"singzeta: {exc}", file=sys.stderr)
        return 1
    except json.JSONDecodeError as exc:
        print(f"singzeta: invalid JSON at line {exc.lineno}, column {exc.colno}", file=sys.stderr)
        return 2
    except (UsageError, FamilyError, ParseError, ValueError) as exc:
        print(f"singzeta: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"singzeta: file not found: {exc.filename}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
