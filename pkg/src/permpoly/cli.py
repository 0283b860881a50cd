"""Command-line front end.

Verbs: verify, invert, family, cpp, identities, export-sbox, selftest.
Reports are single JSON documents on stdout, byte-identical for identical
invocations.  Exit codes: 0 success; 1 well-formed input that is not a
permutation (or family conditions fail); 2 malformed input; 3 internal
cross-check failure (a closed form disagreed with the oracle).
"""

import argparse
import json
import sys

from . import selftest
from .errors import InternalError, NotAPermutation, PermPolyError
from .families import (CyclotomicParams, LinearizedFamilyParams, TraceFamilyParams,
                       TwistParams, cpp_check, cyclotomic_check, cyclotomic_inverse,
                       linearized_build, linearized_check, linearized_inverse,
                       trace_build, trace_check, trace_inverse, twist_inverse)
from .fields import FieldSpec, field_spec, tower
from .linearized import context
from .oracle import brute_inverse, is_permutation
from .polyring import Poly, interpolate
from .sbox import export_sbox

_TWIST_CONDITIONS = ("maps_total", "h_total", "h_nonzero", "commutes",
                     "g_bijective", "f1_bijective", "f_bijective")


def _emit(report: dict) -> None:
    print(json.dumps(report))


def _parse_poly(spec: FieldSpec, text: str) -> Poly:
    return Poly.from_text(spec.field, text)


def _load_params(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict) or "kind" not in data:
        raise ValueError("parameter file must be a JSON object with a 'kind' key")
    return data


def _require_tower(spec: FieldSpec) -> None:
    if spec.top is None:
        raise ValueError("this family needs a tower field spec (p^k:...|e:...)")


def _build_cyclotomic(data: dict):
    spec = field_spec(data["field"])
    f = spec.field
    return CyclotomicParams(f, int(data["r"]), int(data["ell"]),
                            Poly(f, [int(c) for c in data["h_coeffs"]]))


def _build_linearized(data: dict) -> LinearizedFamilyParams:
    spec = field_spec(data["field"])
    _require_tower(spec)
    ctx = context(spec.top)
    g = Poly(spec.base, [int(c) for c in data["g_coeffs"]])
    u = [int(c) for c in data["u_ranks"]]
    m = [int(c) for c in data.get("m_list", [1] * (ctx.degree - 1))]
    return LinearizedFamilyParams(ctx, g, u, m)


def _build_trace(data: dict) -> TraceFamilyParams:
    spec = field_spec(data["field"])
    _require_tower(spec)
    if "n" in data and int(data["n"]) != spec.top.degree:
        raise ValueError(f"n = {data['n']} does not match the tower degree {spec.top.degree}")
    return TraceFamilyParams(spec.top, Poly(spec.base, [int(c) for c in data["g_coeffs"]]))


def _build_twist(data: dict) -> TwistParams:
    spec = field_spec(data["field"])
    f = spec.field
    q = f.size

    def carrier_map(key: str) -> dict[int, int]:
        vals = [int(v) for v in data[key]]
        if len(vals) != q - 1:
            raise ValueError(f"{key} must list {q - 1} values (ranks 1..{q - 1})")
        return {x: v for x, v in zip(range(1, q), vals)}

    def pair_map(key: str) -> dict[int, int]:
        return {int(s): int(v) for s, v in data[key]}

    return TwistParams(f, f1=carrier_map("f1"), lam=carrier_map("lam"),
                       lam_bar=carrier_map("lam_bar"),
                       g=pair_map("g"), h=pair_map("h"))


def _cmd_verify(args) -> int:
    spec = field_spec(args.field)
    poly = _parse_poly(spec, args.poly)
    ok = is_permutation(poly.tabulate())
    _emit({"is_pp": ok})
    return 0 if ok else 1


def _cmd_invert(args) -> int:
    method = args.method
    if method in ("cyclotomic", "linearized", "trace"):
        if not args.params:
            raise ValueError(f"--method {method} requires --params")
        data = _load_params(args.params)
        if data["kind"] != method:
            raise ValueError(f"parameter file is kind {data['kind']!r}, not {method!r}")
        builder = {"cyclotomic": _build_cyclotomic, "linearized": _build_linearized,
                   "trace": _build_trace}[method]
        params = builder(data)
        check = {"cyclotomic": cyclotomic_check, "linearized": linearized_check,
                 "trace": trace_check}[method]
        if not check(params).is_pp:
            _emit({"is_pp": False})
            return 1
        invert = {"cyclotomic": cyclotomic_inverse, "linearized": linearized_inverse,
                  "trace": trace_inverse}[method]
        _emit({"inverse_coeffs": invert(params).to_text()})
        return 0

    spec = field_spec(args.field)
    poly = _parse_poly(spec, args.poly)
    table = poly.tabulate()
    if not is_permutation(table):
        _emit({"is_pp": False})
        return 1
    if method == "brute":
        _emit({"inverse_coeffs": interpolate(brute_inverse(table)).to_text()})
        return 0
    # auto: use a matching family parameter file when provided, else brute
    if args.params:
        data = _load_params(args.params)
        kind = data["kind"]
        if kind == "cyclotomic":
            params = _build_cyclotomic(data)
            if cyclotomic_check(params).is_pp and params.poly.tabulate() == table:
                _emit({"inverse_coeffs": cyclotomic_inverse(params).to_text(),
                       "method": "cyclotomic"})
                return 0
        elif kind == "linearized":
            params = _build_linearized(data)
            if (linearized_check(params).is_pp
                    and linearized_build(params).tabulate() == table):
                _emit({"inverse_coeffs": linearized_inverse(params).to_text(),
                       "method": "linearized"})
                return 0
        elif kind == "trace":
            params = _build_trace(data)
            if trace_check(params).is_pp and trace_build(params).tabulate() == table:
                _emit({"inverse_coeffs": trace_inverse(params).to_text(),
                       "method": "trace"})
                return 0
    _emit({"inverse_coeffs": interpolate(brute_inverse(table)).to_text(),
           "method": "brute"})
    return 0


def _family_common(kind, report, is_pp_oracle, inverse_text):
    if report.is_pp != is_pp_oracle:
        raise InternalError(
            f"{kind} conditions said is_pp={report.is_pp} but the oracle said {is_pp_oracle}")
    out = {"kind": kind}
    out.update(report.to_dict())
    out["inverse_coeffs"] = inverse_text
    out["oracle_verified"] = True
    return out


def _cmd_family(args) -> int:
    data = _load_params(args.params)
    kind = data["kind"]
    if kind == "cyclotomic":
        params = _build_cyclotomic(data)
        report = cyclotomic_check(params)
        oracle_pp = is_permutation(params.poly.tabulate())
        inv = cyclotomic_inverse(params).to_text() if report.is_pp else None
    elif kind == "linearized":
        params = _build_linearized(data)
        report = linearized_check(params)
        oracle_pp = is_permutation(linearized_build(params).tabulate())
        inv = linearized_inverse(params).to_text() if report.is_pp else None
    elif kind == "trace":
        params = _build_trace(data)
        report = trace_check(params)
        oracle_pp = is_permutation(trace_build(params).tabulate())
        inv = trace_inverse(params).to_text() if report.is_pp else None
    elif kind == "twist":
        return _cmd_family_twist(data)
    else:
        raise ValueError(f"unknown family kind {kind!r}")
    out = _family_common(kind, report, oracle_pp, inv)
    _emit(out)
    return 0 if report.is_pp else 1


def _cmd_family_twist(data: dict) -> int:
    params = _build_twist(data)
    try:
        inverse = twist_inverse(params)
    except PermPolyError as exc:
        cond = getattr(exc, "condition", "f_bijective")
        out = {"kind": "twist",
               "conditions": [{"name": cond, "holds": False}],
               "is_pp": False, "inverse_table": None, "oracle_verified": True}
        _emit(out)
        return 1
    q = params.field.size
    out = {"kind": "twist",
           "conditions": [{"name": n, "holds": True} for n in _TWIST_CONDITIONS],
           "is_pp": True,
           "inverse_table": [inverse[a] for a in range(1, q)],
           "oracle_verified": True}
    _emit(out)
    return 0


def _cmd_cpp(args) -> int:
    data = _load_params(args.params)
    if data["kind"] != "linearized":
        raise ValueError("cpp expects a linearized parameter file")
    params = _build_linearized(data)
    u0 = int(data.get("u0_rank", 0))
    report = cpp_check(params, u0=u0)
    base = params.ctx.base
    g2 = params.g + Poly.from_terms(base, {1: u0}) if u0 else params.g
    folded = LinearizedFamilyParams(params.ctx, g2, params.u, params.m)
    f = linearized_build(folded)
    fx = f + Poly.x(params.ctx.field)
    oracle_cpp = is_permutation(f.tabulate()) and is_permutation(fx.tabulate())
    if report.is_pp != oracle_cpp:
        raise InternalError(
            f"cpp conditions said {report.is_pp} but the oracle said {oracle_cpp}")
    out = {"kind": "cpp"}
    out.update(report.to_dict())
    out["is_cpp"] = out.pop("is_pp")
    out["oracle_verified"] = True
    _emit(out)
    return 0 if report.is_pp else 1


def _cmd_identities(args) -> int:
    base_spec = field_spec(args.q)
    if base_spec.top is not None:
        raise ValueError("--q must name the base field (no tower part)")
    base = base_spec.field
    d = args.d
    top = tower(base, d)
    ctx = context(top)
    m_max = args.m_max if args.m_max else 2 * d
    g_samples = [Poly.x(base), Poly(base, (1, 1)), Poly.from_terms(base, {2: 1})]
    eigen = {i: ctx.eigen_check(i) for i in range(d)}
    annihilate = {j: all(ctx.annihilates_check(j, g) for g in g_samples)
                  for j in range(1, d)}
    results = []
    all_hold = True
    for i in range(d):
        for j in range(d):
            for m in range(1, m_max + 1):
                entry = {
                    "i": i, "j": j, "m": m,
                    "eigen": eigen[i],
                    "compose_power": ctx.compose_power_check(i, j, m),
                    "annihilate": annihilate[j] if j >= 1 else None,
                }
                results.append(entry)
                all_hold = all_hold and entry["eigen"] and entry["compose_power"] \
                    and entry["annihilate"] is not False
    _emit({"field": str(base_spec), "tower": top.spec_text, "d": d, "m_max": m_max,
           "g_samples": [g.to_text() for g in g_samples],
           "reconstruction": ctx.reconstruction_check(),
           "results": results, "all_hold": all_hold})
    return 0 if all_hold else 3


def _cmd_export_sbox(args) -> int:
    spec = field_spec(args.field)
    poly = _parse_poly(spec, args.poly)
    try:
        report = export_sbox(spec, poly, args.out)
    except NotAPermutation:
        _emit({"is_pp": False})
        return 1
    _emit(report)
    return 0


def _cmd_selftest(args) -> int:
    results = selftest.run()
    _emit({"checks": [{"name": n, "ok": ok} for n, ok in results],
           "all_ok": all(ok for _, ok in results)})
    return 0 if all(ok for _, ok in results) else 3


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="permpoly",
        description="permutation polynomials over finite fields: verify, invert, export")
    sub = parser.add_subparsers(dest="verb", required=True)

    def add(name, handler, **flags):
        p = sub.add_parser(name)
        for flag, opts in flags.items():
            p.add_argument(flag, **opts)
        p.set_defaults(handler=handler)
        return p

    add("verify", _cmd_verify,
        **{"--field": dict(required=True), "--poly": dict(required=True)})
    add("invert", _cmd_invert,
        **{"--field": dict(), "--poly": dict(), "--params": dict(),
           "--method": dict(default="brute",
                            choices=["brute", "cyclotomic", "linearized", "trace", "auto"])})
    add("family", _cmd_family, **{"--params": dict(required=True)})
    add("cpp", _cmd_cpp, **{"--params": dict(required=True)})
    add("identities", _cmd_identities,
        **{"--q": dict(required=True), "--d": dict(required=True, type=int),
           "--m-max": dict(type=int, default=0)})
    add("export-sbox", _cmd_export_sbox,
        **{"--field": dict(required=True), "--poly": dict(required=True),
           "--out": dict(required=True)})
    add("selftest", _cmd_selftest)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except InternalError as exc:
        _emit({"error": "internal_cross_check_failed", "detail": str(exc)})
        return 3
    except NotAPermutation:
        _emit({"is_pp": False})
        return 1
    except (PermPolyError, ValueError, KeyError, OSError, TypeError) as exc:
        _emit({"error": str(exc) or type(exc).__name__})
        return 2


run = main


if __name__ == "__main__":
    sys.exit(main())
