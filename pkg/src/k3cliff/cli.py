"""Command-line interface: one binary exposing every module plus `verify`.

Exit codes: 0 on success (and all verify cases passing), 1 when a verify
case fails, 2 on malformed input or out-of-domain parameters.  Flags beat
the optional JSON config file, which beats built-in defaults; environment
variables are never consulted.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from .bn import BundleNumerics, gamma, lm_numerics, mercat_compare, rho
from .bn import minimal_degree as bn_minimal_degree
from .clifford import (
    FamilyError,
    SearchBounds,
    custom_family,
    min_clifford,
    prop33_family,
    thm41_family,
)
from .koszul import GradedRingData, KoszulError, koszul_dim, syzygy_rank_bound, zeta_tensor
from .lattice import DivisorClass, LatticeError, PicardLattice, int_jsonable
from .mukai import ExtendedLattice, MukaiVector, fm_dual, nl_member
from .verify import THEOREMS, VerifyPlan, emit, run_verify


class InputError(Exception):
    """Bad files, flags, or out-of-domain parameters (exit code 2)."""


def _parse_range(text: str) -> tuple[int, int]:
    try:
        lo, hi = text.split(":")
        return int(lo), int(hi)
    except ValueError:
        raise InputError(f"expected a range like 3:10, got {text!r}") from None


def _load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from None


def _common_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--json", action="store_true", default=None,
                        help="emit a machine-readable JSON report")
    parser.add_argument("--bound", type=int, default=None,
                        help="coordinate bound for class searches (default 50)")
    parser.add_argument("--quiet", action="store_true", default=None,
                        help="suppress passing rows in human output")
    parser.add_argument("--config", default=None,
                        help="JSON file with defaults for --json/--bound/--quiet")


class Settings:
    """Flags > config file > defaults."""

    def __init__(self, args):
        cfg = {}
        if getattr(args, "config", None):
            cfg = _load_json(args.config)
            if not isinstance(cfg, dict):
                raise InputError(f"{args.config}: config must be a JSON object")
        self.json = _pick(args.json, cfg.get("json"), False)
        self.bound = _pick(args.bound, cfg.get("bound"), 50)
        self.quiet = _pick(args.quiet, cfg.get("quiet"), False)
        if self.bound < 1:
            raise InputError("--bound must be >= 1")


def _pick(flag, cfg, default):
    if flag is not None:
        return flag
    if cfg is not None:
        return cfg
    return default


def _emit_json(payload) -> None:
    print(json.dumps(payload, indent=2))


def _load_lattice(path: str) -> PicardLattice:
    return PicardLattice.from_dict(_load_json(path))


def _family_from_args(args) -> object:
    if getattr(args, "surface", None):
        if args.family:
            raise InputError("pass either --family or --surface, not both")
        lattice = _load_lattice(args.surface)
        if args.curve is None:
            raise InputError("--surface needs --curve")
        curve = DivisorClass.parse(args.curve)
        aux = DivisorClass.parse(args.aux) if args.aux else None
        return custom_family(lattice, curve, aux, g=args.g)
    if args.family == "prop33":
        if args.p is None or args.a is None:
            raise InputError("--family prop33 needs --p and --a")
        return prop33_family(args.p, args.a)
    if args.family == "thm41":
        if args.a is None or args.b is None:
            raise InputError("--family thm41 needs --a and --b")
        return thm41_family(args.a, args.b)
    raise InputError("pick --family prop33|thm41 or --surface FILE")


def _bounds_from_args(args) -> SearchBounds:
    kwargs = {}
    if getattr(args, "n_max", None) is not None:
        kwargs["n_max"] = args.n_max
    if getattr(args, "m_cap", None) is not None:
        kwargs["m_cap"] = args.m_cap
    return SearchBounds(**kwargs)


def _family_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--family", choices=["prop33", "thm41"],
                        help="built-in rank-2 lattice family")
    parser.add_argument("--p", type=int, help="(p, a) family: hyperplane parameter")
    parser.add_argument("--a", type=int, help="family parameter a")
    parser.add_argument("--b", type=int, help="(a, b) family: degree offset")
    parser.add_argument("--surface", help="JSON lattice file for a custom surface")
    parser.add_argument("--curve", help="curve class coordinates, e.g. \"0,1\"")
    parser.add_argument("--aux", help="auxiliary class coordinates (default: other basis vector)")
    parser.add_argument("--g", type=int, help="expected genus (validated against the lattice)")
    parser.add_argument("--n-max", type=int, dest="n_max", help="search bound on n (default 50)")
    parser.add_argument("--m-cap", type=int, dest="m_cap", help="cap on |m| (default 10(g-1))")


def _report_human(report) -> str:
    fam = report.family
    lines = [
        f"family {fam.kind} {dict(fam.params)}  genus {fam.genus}  degree {fam.degree}",
        f"box: n in [-{report.bounds.n_max}, {report.bounds.n_max}], "
        f"|m| <= {report.bounds.resolve_m_cap(fam.genus)}",
        f"feasible divisors: {len(report.candidates)}",
    ]
    for cand in report.candidates:
        marker = " <- min" if report.min_cliff is not None and cand.cliff == report.min_cliff else ""
        lines.append(
            f"  D = {fam.divisor(cand.m, cand.n).describe(fam.lattice.basis):<14}"
            f" D.C = {cand.dot_curve:<6} D^2 = {cand.self_int:<6} Cliff = {cand.cliff}{marker}"
        )
    lines.append(
        f"min over search: {report.min_cliff}; generic bound {report.generic_bound}; "
        f"Clifford index {report.clifford_index}; gonality {report.gonality}"
    )
    if report.expected is not None:
        lines.append(f"expected {report.expected}: {'PASS' if report.verdict else 'FAIL'}")
    for note in report.notes:
        lines.append(f"note: {note}")
    return "\n".join(lines)


# -- subcommand handlers -------------------------------------------------------


def _cmd_cliff(args) -> int:
    settings = Settings(args)
    report = min_clifford(_family_from_args(args), _bounds_from_args(args))
    if settings.json:
        _emit_json(report.to_dict())
    else:
        print(_report_human(report))
    return 0


def _cmd_gonality(args) -> int:
    settings = Settings(args)
    report = min_clifford(_family_from_args(args), _bounds_from_args(args))
    if settings.json:
        _emit_json({"clifford_index": report.clifford_index, "gonality": report.gonality})
    else:
        print(report.gonality)
    return 0


def _cmd_mukai_pair(args) -> int:
    settings = Settings(args)
    ns = _load_lattice(args.lattice)
    ext = ExtendedLattice(ns)
    x = MukaiVector.parse(args.x, ns.rank)
    y = MukaiVector.parse(args.y, ns.rank)
    value = ext.pair(x, y)
    if settings.json:
        _emit_json({"pairing": int_jsonable(value)})
    else:
        print(value)
    return 0


def _cmd_fm_dual(args) -> int:
    settings = Settings(args)
    ns = _load_lattice(args.lattice)
    ell = DivisorClass.parse(args.ell)
    result = fm_dual(ns, ell, args.r, args.s, search_bound=settings.bound)
    _emit_json(result.to_dict())
    return 0


def _cmd_nl_check(args) -> int:
    settings = Settings(args)
    lattice = _load_lattice(args.lattice)
    ell = DivisorClass.parse(args.ell)
    found = nl_member(lattice, ell, args.square, args.dot, settings.bound)
    if settings.json:
        _emit_json(
            {
                "present": found is not None,
                "class": None if found is None else list(found.coords),
                "bound": settings.bound,
            }
        )
    else:
        if found is None:
            print(f"absent within bound {settings.bound}")
        else:
            print(f"present: {found.describe(lattice.basis)}")
    return 0


def _cmd_koszul(args) -> int:
    settings = Settings(args)
    ring = GradedRingData.from_dict(_load_json(args.ring))
    dim = koszul_dim(args.p, args.q, ring)
    if settings.json:
        _emit_json({"p": args.p, "q": args.q, "dim": dim})
    else:
        print(dim)
    return 0


def _cmd_zeta(args) -> int:
    settings = Settings(args)
    data = _load_json(args.coefficients)
    rows = data["rows"] if isinstance(data, dict) else data
    tensor = zeta_tensor(rows)
    payload = tensor.to_dict()
    payload["nonzero"] = not tensor.is_zero()
    if args.rank_bound:
        payload["rank_bound"] = syzygy_rank_bound(tensor)
    if settings.json:
        _emit_json(payload)
    else:
        print(f"p = {tensor.p}, spanning dimension {tensor.w_dim}, "
              f"{'nonzero' if payload['nonzero'] else 'zero'} tensor")
        if args.rank_bound:
            print(f"rank bound {payload['rank_bound']}")
    return 0


def _cmd_bn(args) -> int:
    settings = Settings(args)
    if args.bn_op == "rho":
        value = rho(args.g, args.r, args.d)
        if settings.json:
            _emit_json({"rho": int_jsonable(value)})
        else:
            print(value)
    elif args.bn_op == "gamma":
        res = gamma(BundleNumerics(n=args.n, d=args.d, h0=args.h0, g=args.g))
        if settings.json:
            _emit_json(res.to_dict())
        else:
            print(f"gamma = {res.value}  (contributes: {res.contributes})")
    elif args.bn_op == "lm":
        res = lm_numerics(args.g, args.r)
        if settings.json:
            _emit_json(res.to_dict())
        else:
            print(
                f"d = {res.d}, h0 = {res.h0_bundle}, gamma = {res.gamma_bundle}, "
                f"delta = {res.delta}, generic Clifford {res.generic_clifford}, "
                f"{'violation' if res.mercat_violated else 'no violation'}"
            )
    elif args.bn_op == "mercat":
        gammas = [Fraction(part) for part in args.gammas.split(",")]
        verdict = mercat_compare(gammas, args.cliff)
        if settings.json:
            _emit_json(verdict.to_dict())
        else:
            state = "holds" if verdict.holds else f"violated (gap {verdict.gap})"
            print(f"min gamma = {verdict.min_gamma} vs Clifford {verdict.clifford}: {state}")
    elif args.bn_op == "minimal-degree":
        value = bn_minimal_degree(args.g, args.r)
        if settings.json:
            _emit_json({"d": int_jsonable(value)})
        else:
            print(value)
    else:
        raise InputError(f"unknown bn operation {args.bn_op!r}")
    return 0


def _cmd_verify(args) -> int:
    settings = Settings(args)
    plan_kwargs = {"theorem": args.theorem, "bounds": _bounds_from_args(args)}
    if args.p_range:
        plan_kwargs["p_range"] = _parse_range(args.p_range)
    if args.a_range:
        plan_kwargs["a_range"] = _parse_range(args.a_range)
    if args.a_span is not None:
        if args.a_span < 1:
            raise InputError("--a-span must be >= 1")
        plan_kwargs["a_span"] = args.a_span
    if args.b_range:
        plan_kwargs["b_range"] = _parse_range(args.b_range)
    report = run_verify(VerifyPlan(**plan_kwargs))
    print(emit(report, "json" if settings.json else "human", settings.quiet))
    return 0 if report.passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="k3cliff",
        description="Exact lattice, Clifford-index, dual-lattice and Koszul computations "
        "for curves on K3 surfaces.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_cliff = sub.add_parser("cliff", help="minimise the Clifford index over divisor classes")
    _family_flags(p_cliff)
    _common_flags(p_cliff)
    p_cliff.set_defaults(handler=_cmd_cliff)

    p_gon = sub.add_parser("gonality", help="Clifford index + 2 for a family")
    _family_flags(p_gon)
    _common_flags(p_gon)
    p_gon.set_defaults(handler=_cmd_gonality)

    p_mp = sub.add_parser("mukai-pair", help="extended-lattice pairing of two triples")
    p_mp.add_argument("--lattice", required=True, help="JSON lattice file (the NS part)")
    p_mp.add_argument("--x", required=True, help="components r,c...,s")
    p_mp.add_argument("--y", required=True, help="components r,c...,s")
    _common_flags(p_mp)
    p_mp.set_defaults(handler=_cmd_mukai_pair)

    p_fm = sub.add_parser("fm-dual", help="dual lattice v-perp/Zv of an isotropic triple")
    p_fm.add_argument("--lattice", required=True)
    p_fm.add_argument("--ell", required=True, help="polarization class, e.g. \"1,0\"")
    p_fm.add_argument("--r", type=int, required=True)
    p_fm.add_argument("--s", type=int, required=True)
    _common_flags(p_fm)
    p_fm.set_defaults(handler=_cmd_fm_dual)

    p_nl = sub.add_parser("nl-check", help="search for a class with given square and degree")
    p_nl.add_argument("--lattice", required=True)
    p_nl.add_argument("--ell", required=True)
    p_nl.add_argument("--square", type=int, required=True)
    p_nl.add_argument("--dot", type=int, required=True)
    _common_flags(p_nl)
    p_nl.set_defaults(handler=_cmd_nl_check)

    p_k = sub.add_parser("koszul", help="cohomology dimension of the wedge complex")
    p_k.add_argument("--ring", required=True, help="JSON graded multiplication data")
    p_k.add_argument("--p", type=int, required=True)
    p_k.add_argument("--q", type=int, required=True)
    _common_flags(p_k)
    p_k.set_defaults(handler=_cmd_koszul)

    p_z = sub.add_parser("zeta", help="syzygy tensor of a rank-2 determinant family")
    p_z.add_argument("--lambda", dest="coefficients", required=True,
                     help="JSON pair-coefficient matrix")
    p_z.add_argument("--rank-bound", action="store_true", help="also compute the rank bound")
    _common_flags(p_z)
    p_z.set_defaults(handler=_cmd_zeta)

    p_bn = sub.add_parser("bn", help="Brill-Noether and Clifford numerics")
    bn_sub = p_bn.add_subparsers(dest="bn_op", required=True)
    b_rho = bn_sub.add_parser("rho", help="Brill-Noether number")
    b_rho.add_argument("--g", type=int, required=True)
    b_rho.add_argument("--r", type=int, required=True)
    b_rho.add_argument("--d", type=int, required=True)
    _common_flags(b_rho)
    b_rho.set_defaults(handler=_cmd_bn)
    b_gam = bn_sub.add_parser("gamma", help="bundle Clifford invariant")
    b_gam.add_argument("--n", type=int, required=True)
    b_gam.add_argument("--d", type=int, required=True)
    b_gam.add_argument("--h0", type=int, required=True)
    b_gam.add_argument("--g", type=int, required=True)
    _common_flags(b_gam)
    b_gam.set_defaults(handler=_cmd_bn)
    b_lm = bn_sub.add_parser("lm", help="canonical-determinant bundle numerology")
    b_lm.add_argument("--g", type=int, required=True)
    b_lm.add_argument("--r", type=int, required=True)
    _common_flags(b_lm)
    b_lm.set_defaults(handler=_cmd_bn)
    b_md = bn_sub.add_parser("minimal-degree", help="least degree with nonnegative rho")
    b_md.add_argument("--g", type=int, required=True)
    b_md.add_argument("--r", type=int, required=True)
    _common_flags(b_md)
    b_md.set_defaults(handler=_cmd_bn)
    b_mc = bn_sub.add_parser("mercat", help="compare bundle invariants to a Clifford index")
    b_mc.add_argument("--gammas", required=True, help="comma list of rationals, e.g. 9/2,5")
    b_mc.add_argument("--cliff", type=int, required=True)
    _common_flags(b_mc)
    b_mc.set_defaults(handler=_cmd_bn)

    p_v = sub.add_parser("verify", help="re-run a verification plan")
    p_v.add_argument("--theorem", required=True, choices=list(THEOREMS))
    p_v.add_argument("--p-range", dest="p_range")
    p_v.add_argument("--a-range", dest="a_range")
    p_v.add_argument("--a-span", dest="a_span", type=int)
    p_v.add_argument("--b-range", dest="b_range")
    p_v.add_argument("--n-max", type=int, dest="n_max")
    p_v.add_argument("--m-cap", type=int, dest="m_cap")
    _common_flags(p_v)
    p_v.set_defaults(handler=_cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (LatticeError, KoszulError, FamilyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
