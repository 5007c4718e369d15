"""Command-line interface.

Exit codes: 0 = YES / exists, 1 = NO / not-exists, 2 = UNDECIDED,
64 = parse error, 65 = validation error, 69 = budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import analysis as an
from . import classify as cl
from . import colimits as co
from . import dynamics as dy
from . import limits as li
from . import oracle as orc
from .errors import SdcatError
from .files import load_bmap, load_shift, save_bmap, save_shift
from .limits import CategoryTag


def _emit(report: dict, as_json: bool) -> None:
    if as_json:
        print(json.dumps(report, indent=2, default=str))
        return
    for key, val in report.items():
        print(f"{key}: {val}")


def _cmd_analyze(args) -> int:
    x = load_shift(args.shift)
    sft = an.is_sft(x)
    ps = an.periods(x)
    report = {
        "command": "analyze",
        "file": args.shift,
        "alphabet": list(x.alphabet),
        "states": x.n_live(),
        "empty": x.is_empty(),
        "transitive": an.is_transitive(x),
        "mixing": an.is_mixing(x),
        "sft": sft.answer,
        "window": (sft.certificate or {}).get("window") if sft.yes else None,
        "finite": an.is_finite(x),
        "countable": an.is_countable(x),
        "periods_upto": ps.upto(12),
        "period_residues": {
            "threshold": ps.threshold,
            "modulus": ps.modulus,
            "residues": ps.residues(),
        },
        "monoid_size": an.au.syntactic_monoid_of_dfa(x.dfa).size,
    }
    _emit(report, args.json)
    return 0


CHECKS = (
    "epic",
    "monic",
    "split-epic",
    "split-monic",
    "regular-epic",
    "regular-monic",
    "preinjective",
    "injective",
    "peric",
    "exists-morphism",
)


def _cmd_check(args) -> int:
    cat = CategoryTag.parse(args.category)
    if args.property == "exists-morphism":
        if args.second is None:
            raise SdcatError("exists-morphism takes two .shift files")
        z = load_shift(args.map)
        y = load_shift(args.second)
        verdict = cl.exists_morphism(z, y)
    else:
        f = load_bmap(args.map)
        if args.property == "epic":
            verdict = cl.is_epic(f, cat)
        elif args.property == "monic":
            verdict = cl.is_monic(f, cat)
        elif args.property == "split-epic":
            verdict = cl.is_split_epic(f, cat, p_cap=args.p_cap, radius_cap=args.radius_cap)
        elif args.property == "split-monic":
            verdict = cl.is_split_monic(f, cat, radius_cap=args.radius_cap)
        elif args.property == "regular-epic":
            endo = load_bmap(args.witness_endo) if args.witness_endo else None
            verdict = cl.is_regular_epic(f, cat, witness_endo=endo)
        elif args.property == "regular-monic":
            verdict = cl.is_regular_monic(f, cat)
        elif args.property == "preinjective":
            li.check_morphism(cat, f)
            verdict = an.is_preinjective(f)
        elif args.property == "injective":
            li.check_morphism(cat, f)
            fam = an.injectivity_family(f)
            from . import verdicts as v

            verdict = v.yes() if fam.injective else v.no()
        elif args.property == "peric":
            li.check_morphism(cat, f)
            verdict = an.is_peric(f)
        else:
            raise SdcatError(f"unknown property {args.property}")
    report = {"command": f"check {args.property}", "category": str(cat)}
    report.update(verdict.brief())
    if args.cert_out and verdict.certificate is not None and hasattr(verdict.certificate, "rule_dict"):
        save_bmap(verdict.certificate, args.cert_out)
        report["certificate_file"] = args.cert_out
    _emit(report, args.json)
    return verdict.exit_code()


def _cmd_build(args) -> int:
    cat = CategoryTag.parse(args.category)
    op = args.operation
    t0 = time.time()
    if op == "product":
        x, y = load_shift(args.inputs[0]), load_shift(args.inputs[1])
        res = li.product(x, y)
    elif op == "coproduct":
        x, y = load_shift(args.inputs[0]), load_shift(args.inputs[1])
        res = li.coproduct(x, y, cat)
    elif op == "pullback":
        f, g = load_bmap(args.inputs[0]), load_bmap(args.inputs[1])
        res = li.pullback(f, g)
    elif op == "equalizer":
        f, g = load_bmap(args.inputs[0]), load_bmap(args.inputs[1])
        res = li.equalizer(f, g, cat)
    elif op == "kernel-pair":
        f = load_bmap(args.inputs[0])
        res = li.kernel_pair(f)
    elif op == "image":
        f = load_bmap(args.inputs[0])
        res = li.image_factorization(f, cat)
    elif op == "union":
        i1, i2 = load_bmap(args.inputs[0]), load_bmap(args.inputs[1])
        inc = li.subobject_union(i1, i2)
        res = li.exists(inc.source, inc)
    elif op == "terminal":
        res = li.terminal(cat)
    elif op == "initial":
        res = li.initial(cat)
    else:
        raise SdcatError(f"unknown build operation {op}")
    report = {
        "command": f"build {op}",
        "category": str(cat),
        "status": res.status,
        "seconds": round(time.time() - t0, 3),
    }
    if res.reason:
        report["reason"] = res.reason
    if res.exists and args.out:
        save_shift(res.object, args.out)
        report["object_file"] = args.out
        for i, leg in enumerate(res.legs, start=1):
            leg_path = args.out.rsplit(".", 1)[0] + f".leg{i}.bmap"
            save_bmap(leg, leg_path)
            report.setdefault("legs", []).append(leg_path)
    _emit(report, args.json)
    return res.exit_code()


def _cmd_coeq_id(args) -> int:
    cat = CategoryTag.parse(args.category)
    f = load_bmap(args.map)
    res = co.coequalizer_id(
        f, cat, window_cap=args.window_cap, level_cap=args.level_cap
    )
    report = {
        "command": "coeq-id",
        "category": str(cat),
        "status": res.status,
        "reason": res.reason,
    }
    if res.exists and args.out:
        save_bmap(res.legs[0], args.out)
        report["map_file"] = args.out
    _emit(report, args.json)
    return res.exit_code()


def _cmd_dynamics(args) -> int:
    f = load_bmap(args.map)
    rev = dy.is_reversible(f)
    ep = dy.eventual_periodicity(f, cap=args.cap)
    report = {
        "command": "dynamics",
        "reversible": rev.answer,
        "eventual_periodicity": (
            {"k": ep.preperiod, "p": ep.period}
            if ep.status == "found"
            else {"status": ep.status, "cap": ep.cap}
        ),
    }
    if ep.status == "found":
        report["visibly_eventually_periodic"] = dy.is_visibly_eventually_periodic(f, ep).answer
    levels = {}
    for n in range(1, args.levels + 1):
        levels[n] = dy.chain_transitive_level(f, n)
    report["chain_transitive_levels"] = levels
    rep = dy.spreading_nilpotent(f)
    report["spreading_state"] = rep.spreading_state
    report["nilpotent_at"] = rep.nilpotent_at
    _emit(report, args.json)
    return 0


def _cmd_oracle(args) -> int:
    if args.oracle_op != "census":
        raise SdcatError(f"unknown oracle operation {args.oracle_op}")
    if args.alphabet != 2 or args.radius != 1:
        raise SdcatError("the census covers radius 1 on the binary alphabet")
    checks = tuple(args.check.split(","))
    rows = []
    print("rule_bits," + ",".join(checks))
    for bits, _, row in orc.census_radius1_binary(checks=checks):
        print(f"{bits}," + ",".join(str(int(row[c])) for c in checks))
        rows.append(row)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sdcat",
        description="Subshifts, block maps, and the twelve symbolic categories.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="shift-level report")
    p.add_argument("shift")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("check", help="morphism property verdicts")
    p.add_argument("property", choices=CHECKS)
    p.add_argument("map", help=".bmap file (or .shift for exists-morphism)")
    p.add_argument("second", nargs="?", help="second .shift for exists-morphism")
    p.add_argument("--category", required=True)
    p.add_argument("--p-cap", type=int, default=cl.DEFAULT_P_CAP)
    p.add_argument("--radius-cap", type=int, default=cl.DEFAULT_RADIUS_CAP)
    p.add_argument("--witness-endo", help="endomorphism .bmap for regular-epic certification")
    p.add_argument("--cert-out", help="write a certificate .bmap here")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("build", help="limits and colimits")
    p.add_argument(
        "operation",
        choices=[
            "product", "coproduct", "pullback", "equalizer", "kernel-pair",
            "image", "union", "terminal", "initial",
        ],
    )
    p.add_argument("inputs", nargs="*")
    p.add_argument("--category", required=True)
    p.add_argument("-o", "--out")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_build)

    p = sub.add_parser("coeq-id", help="coequalizer of (identity, f)")
    p.add_argument("map")
    p.add_argument("--category", required=True)
    p.add_argument("--window-cap", type=int, default=4)
    p.add_argument("--level-cap", type=int, default=6)
    p.add_argument("-o", "--out")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_coeq_id)

    p = sub.add_parser("dynamics", help="endomorphism dynamics report")
    p.add_argument("map")
    p.add_argument("--cap", type=int, default=6)
    p.add_argument("--levels", type=int, default=3)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_dynamics)

    p = sub.add_parser("oracle", help="brute-force census")
    p.add_argument("oracle_op", choices=["census"])
    p.add_argument("--radius", type=int, default=1)
    p.add_argument("--alphabet", type=int, default=2)
    p.add_argument("--check", default="epic,injective")
    p.set_defaults(func=_cmd_oracle)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 64 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except SdcatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 64


if __name__ == "__main__":
    sys.exit(main())
