"""``mgdiv`` command line: evaluate classes, pair curves, browse the registry, run the suites."""

from __future__ import annotations

import argparse
import json
import sys

from . import registry, verify
from .certify import check_fixed_component, check_uniruled_pair, check_uniruled_single, decompose_slope7
from .classes import DivisorClass
from .curves import CATALOG, catalog, pair
from .errors import MgdivError
from .expr import parse_bindings, parse_call, parse_class
from .spaces import SpaceId

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _space(args) -> SpaceId | None:
    if args.g is None:
        if args.n is not None or args.sym:
            raise UsageError("--n and --sym need --g")
        return None
    try:
        if args.sym:
            return SpaceId.symmetric(args.g, args.n if args.n is not None else args.g)
        if args.n:
            return SpaceId.pointed(args.g, args.n)
        return SpaceId.base(args.g)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def _class_out(cls: DivisorClass, fmt: str) -> str:
    if fmt == "json":
        return _dump(cls.to_json())
    out = f"{cls.space}: {cls}"
    if cls.is_partial:
        out += "  (partial; asserted on " + ", ".join(e.token(cls.space) for e in sorted(cls.mask, key=_key)) + ")"
    return out


def _key(e):
    from .spaces import sort_key

    return sort_key(e)


def _curve(text: str):
    name, cargs = parse_call(text)
    if name not in CATALOG:
        raise UsageError(f"unknown curve {name!r}; known: {', '.join(sorted(CATALOG))}")
    return catalog(name, *cargs)


def _bindings(args) -> dict:
    return parse_bindings(args.param)


# -- subcommands -------------------------------------------------------------------


def cmd_verify(args) -> int:
    try:
        report = verify.run_suite(args.suite)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    sys.stdout.write(report.render(args.format))
    return report.exit_code()


def cmd_eval(args) -> int:
    cls = parse_class(args.expr, _space(args), _bindings(args))
    print(_class_out(cls, args.format))
    return EXIT_OK


def cmd_pair(args) -> int:
    curve = _curve(args.curve)
    cls = parse_class(args.expr, curve.space, _bindings(args))
    v = pair(curve, cls)
    if args.format == "json":
        print(_dump({"curve": curve.name, "class": cls.to_json(), "value": v.to_json()}))
    else:
        print(v)
    return EXIT_OK


def cmd_decompose(args) -> int:
    cls = parse_class(args.cls, SpaceId.base(args.genus), _bindings(args))
    w = decompose_slope7(args.genus, cls)
    if args.format == "json":
        print(_dump(w.to_json()))
    else:
        space = SpaceId.symmetric(args.genus, args.genus)
        print(f"K = {w.surplus}*Lt + {w.alpha}*Dt + {w.beta}*phi*(D) + boundary")
        print(f"slope(D) = {w.slope}")
        for e, v in sorted(w.gamma.items(), key=lambda kv: _key(kv[0])):
            print(f"  gamma {e.token(space)} = {v}")
        print("verdict: " + ("pass" if w.passed else "fail"))
        for f in w.failures:
            print(f"  {f}")
    return EXIT_OK if w.passed else EXIT_FAIL


def cmd_registry(args) -> int:
    if args.action == "list":
        rows = registry.listing()
        if args.format == "json":
            print(_dump(rows))
        else:
            for r in rows:
                arg = "[g]" if r["arguments"] else ""
                print(f"{r['name'] + arg:<20} {r['description']}")
            print(f"{'c_g[g]':<20} constant for g = 1 mod 3")
            print(f"{'fano[g]':<20} Mukai-Fano data for g = 6..9")
        return EXIT_OK
    if not args.name:
        raise UsageError("registry show needs a name")
    name, cargs = parse_call(args.name)
    if name == "c_g":
        (g,) = cargs or [args.g]
        v = registry.c_g_constant(g)
        print(_dump({"name": f"c_g[{g}]", "value": str(v)}) if args.format == "json" else v)
        return EXIT_OK
    if name == "fano":
        (g,) = cargs or [args.g]
        d = registry.mukai_fano_data(g)
        print(_dump(d.to_json()) if args.format == "json" else f"g={d.g} n_g={d.n_g} N_g={d.N_g} {d.description}")
        return EXIT_OK
    if not registry.is_class_name(name):
        raise UsageError(f"unknown class {name!r}")
    entry = registry.lookup(name, cargs, _space(args))
    if args.format == "json":
        print(_dump(entry.to_json()))
    else:
        print(f"{entry.name} ({entry.location}): {entry.description}")
        print(_class_out(entry.cls, "text"))
    return EXIT_OK


def cmd_curve(args) -> int:
    if args.action == "list":
        for name in sorted(CATALOG):
            print(name)
        return EXIT_OK
    if not args.name:
        raise UsageError("curve show needs a name")
    c = _curve(args.name)
    if args.format == "json":
        print(_dump(c.to_json()))
    else:
        print(f"{c.name} on {c.space}")
        for row in c.to_json()["pairing"]:
            print(f"  {row['gen']} = {row['value']}")
        if c.unknown:
            print("  unknown: " + ", ".join(c.to_json()["unknown"]))
        if c.covers:
            print(f"  covers {c.covers}")
        if c.through_general_point:
            print("  passes through a general point")
    return EXIT_OK


def cmd_certify(args) -> int:
    curves = [_curve(t) for t in args.curve]
    if not curves:
        raise UsageError("certify needs --curve")
    space = curves[0].space
    bind = _bindings(args)
    classes = [parse_class(t, space, bind) for t in args.cls]
    K = parse_class(args.K, space, bind)
    if args.variant == "fixed-component":
        if len(curves) != 1 or len(classes) != 1:
            raise UsageError("fixed-component takes one --curve and one --class")
        others = [parse_class(t, space, bind) for t in args.other]
        cert = check_fixed_component(curves[0], classes[0], K, others, args.multiplicity)
    elif args.variant == "uniruled-single":
        if len(curves) != 1 or len(classes) != 1:
            raise UsageError("uniruled-single takes one --curve and one --class")
        cert = check_uniruled_single(curves[0], classes[0], K)
    else:
        if len(curves) != 2 or len(classes) != 2:
            raise UsageError("uniruled-pair takes two --curve and two --class options")
        cert = check_uniruled_pair(curves[0], curves[1], classes[0], classes[1], K)
    if args.json or args.format == "json":
        print(_dump(cert.to_json()))
    else:
        for label, v in cert.trace:
            print(f"{label} = {v}")
        print("verdict: " + ("pass" if cert.verdict else "fail"))
    return EXIT_OK if cert.verdict else EXIT_FAIL


# -- parser ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--g", type=int, help="genus of the ambient space")
    common.add_argument("--n", type=int, help="number of marked points")
    common.add_argument("--sym", action="store_true", help="use the symmetric quotient")
    common.add_argument("--format", choices=("text", "json", "tsv"), default="text")
    common.add_argument("--param", action="append", default=[], metavar="NAME=VALUE",
                        help="bind a parameter, e.g. b5=6")

    p = argparse.ArgumentParser(prog="mgdiv", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("verify", parents=[common], help="run a verification suite")
    s.add_argument("--suite", default="all", choices=("all",) + verify.SUITES)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("eval", parents=[common], help="parse and print a class")
    s.add_argument("expr")
    s.set_defaults(func=cmd_eval)

    s = sub.add_parser("pair", parents=[common], help="pair a catalog curve with a class")
    s.add_argument("curve", help="e.g. 'r_T[{1,2}]' or 'lefschetz_k3[10]'")
    s.add_argument("expr")
    s.set_defaults(func=cmd_pair)

    s = sub.add_parser("decompose", parents=[common], help="slope-7 decomposition of K on the symmetric product")
    s.add_argument("genus", type=int)
    s.add_argument("cls", metavar="class", help="class name or expression on the unpointed space")
    s.set_defaults(func=cmd_decompose)

    s = sub.add_parser("registry", parents=[common], help="browse named classes")
    s.add_argument("action", choices=("list", "show"))
    s.add_argument("name", nargs="?")
    s.set_defaults(func=cmd_registry)

    s = sub.add_parser("curve", parents=[common], help="browse test curves")
    s.add_argument("action", choices=("list", "show"))
    s.add_argument("name", nargs="?")
    s.set_defaults(func=cmd_curve)

    s = sub.add_parser("certify", parents=[common], help="build a certificate from catalog curves")
    s.add_argument("variant", choices=("fixed-component", "uniruled-single", "uniruled-pair"))
    s.add_argument("--curve", action="append", default=[])
    s.add_argument("--class", dest="cls", action="append", default=[])
    s.add_argument("--other", action="append", default=[], help="remaining classes (fixed-component)")
    s.add_argument("--K", default="K", help="canonical class expression (default: K of the curve's space)")
    s.add_argument("--multiplicity", type=int, default=1)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_certify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"mgdiv: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (MgdivError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"mgdiv: {msg}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
