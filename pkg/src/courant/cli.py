"""Command line front end.

Subcommands load JSON instances, run the exact check suites with seeded
randomness, and emit canonical JSON reports.  Exit codes are the contract:
0 all checks pass, 1 at least one check failed, 2 unreadable or malformed
input.  Reports are byte-identical for identical (instance, seed, trials,
max-degree); wall time goes to stderr only.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import gallery, serialize
from .foliated import Chart, TForm
from .qforms import QForm
from .report import Report
from .standard import axiom_suite, bracket, validate_stdca
from .transform import (
    QAutPair,
    aut_compose,
    aut_invert,
    check_aut,
    check_infaut,
    dissection_change,
    dissection_change_apply,
    infaut_bracket,
    linearize,
)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_BAD_INPUT = 2


class InputError(Exception):
    pass


def _load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _load_instance(path: str):
    data = _load_json(path)
    try:
        return serialize.stdca_from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed instance {path}: {exc}") from exc


def _emit(report: Report, args) -> int:
    text = report.dumps()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    print(report.summary(), file=sys.stderr)
    return EXIT_OK if report.ok else EXIT_CHECK_FAILED


def _write_json(path: str, payload):
    with open(path, "w") as fh:
        json.dump(payload, fh, sort_keys=True, separators=(",", ":"))
        fh.write("\n")


def cmd_validate(args) -> int:
    alg = _load_instance(args.instance)
    report = validate_stdca(alg)
    ax = axiom_suite(alg, trials=args.trials, seed=args.seed, max_degree=args.max_degree)
    report.extend(ax, prefix="axiom:")
    report.meta.update(seed=args.seed, trials=args.trials, max_degree=args.max_degree)
    return _emit(report, args)


def _parse_delta(alg, data):
    try:
        tau_data = data.get("tau")
        if tau_data is None:
            tau = QAutPair.identity(alg.qlie)
        else:
            tau = QAutPair(
                alg.qlie,
                [[serialize.rat_from_str(x) for x in row] for row in tau_data["T"]],
                [[serialize.rat_from_str(x) for x in row] for row in tau_data["Tinv"]],
            )
        afield = (
            serialize.qform_from_json(alg.chart, alg.qlie, 1, data["A"])
            if data.get("A") is not None
            else QForm.zero(alg.chart, alg.qlie, 1)
        )
        bfield = (
            serialize.tform_from_json(alg.chart, 2, data["B"])
            if data.get("B") is not None
            else TForm.zero(alg.chart, 2)
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed transformation data: {exc}") from exc
    return tau, afield, bfield


def cmd_transform(args) -> int:
    alg = _load_instance(args.instance)
    tau, afield, bfield = _parse_delta(alg, _load_json(args.delta))
    moved = dissection_change(tau, afield, bfield, alg)

    report = validate_stdca(moved)
    report.meta.update(
        what="transform", seed=args.seed, trials=args.trials, max_degree=args.max_degree
    )
    if args.strict_aut:
        # the change of dissection must fix the instance data outright
        report.add(
            "strict_automorphism",
            moved == alg,
            None
            if moved == alg
            else {"detail": "transformed data differs from the original instance"},
        )
    from .sampler import Sampler

    smp = Sampler(args.seed)
    witness = None
    for trial in range(args.trials):
        s = smp.gsec(alg.chart, alg.qlie, args.max_degree)
        t = smp.gsec(alg.chart, alg.qlie, args.max_degree)
        lhs = dissection_change_apply(tau, afield, bfield, bracket(alg, s, t))
        rhs = bracket(
            moved,
            dissection_change_apply(tau, afield, bfield, s),
            dissection_change_apply(tau, afield, bfield, t),
        )
        if lhs != rhs:
            witness = {
                "trial": trial,
                "s": serialize.gsec_to_json(s),
                "t": serialize.gsec_to_json(t),
            }
            break
    report.add("intertwines_bracket", witness is None, witness)

    if args.out_instance:
        _write_json(args.out_instance, serialize.stdca_to_json(moved))
    return _emit(report, args)


def cmd_group(args) -> int:
    alg = _load_instance(args.instance)

    def load_aut(path):
        try:
            return serialize.aut_from_json(alg.chart, alg.qlie, _load_json(path))
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed automorphism {path}: {exc}") from exc

    if args.op == "check":
        f = load_aut(args.aut)
        report = check_aut(f, alg, trials=args.trials, seed=args.seed)
    elif args.op == "compose":
        f, g = load_aut(args.aut), load_aut(args.aut2)
        out = aut_compose(f, g)
        report = Report(meta={"what": "group_compose"})
        report.add("composed", True)
        if args.out_aut:
            _write_json(args.out_aut, serialize.aut_to_json(out))
    elif args.op == "invert":
        f = load_aut(args.aut)
        out = aut_invert(f)
        report = Report(meta={"what": "group_invert"})
        report.add("inverse_cancels", aut_compose(f, out).is_identity())
        if args.out_aut:
            _write_json(args.out_aut, serialize.aut_to_json(out))
    else:  # pragma: no cover - argparse restricts choices
        raise InputError(f"unknown group op {args.op}")
    report.meta.update(seed=args.seed, trials=args.trials)
    return _emit(report, args)


def cmd_inf(args) -> int:
    alg = _load_instance(args.instance)

    def load_inf(path):
        try:
            return serialize.infaut_from_json(alg.chart, alg.qlie, _load_json(path))
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed infinitesimal automorphism {path}: {exc}") from exc

    if args.op == "check":
        d = load_inf(args.inf)
        report = check_infaut(d, alg, trials=args.trials, seed=args.seed)
    elif args.op == "bracket":
        d1, d2 = load_inf(args.inf), load_inf(args.inf2)
        out = infaut_bracket(d1, d2)
        report = Report(meta={"what": "inf_bracket"})
        report.add("antisymmetry", infaut_bracket(d1, d1).is_zero())
        if args.out_inf:
            _write_json(args.out_inf, serialize.infaut_to_json(out))
    elif args.op == "linearize":
        try:
            afield, bfield = serialize.gauge_from_json(
                alg.chart, alg.qlie, _load_json(args.gauge)
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed gauge pair {args.gauge}: {exc}") from exc
        out = linearize(afield, bfield, alg)
        report = Report(meta={"what": "inf_linearize"})
        report.add(
            "linearization_is_gauge_pair",
            out.xfield.is_zero()
            and all(e.is_zero() for row in out.theta for e in row)
            and out.afield == afield
            and out.bfield == bfield,
        )
        if args.out_inf:
            _write_json(args.out_inf, serialize.infaut_to_json(out))
    else:  # pragma: no cover
        raise InputError(f"unknown inf op {args.op}")
    report.meta.update(seed=args.seed, trials=args.trials)
    return _emit(report, args)


def cmd_gallery(args) -> int:
    if args.family in ("dn", "bn"):
        chart = Chart(args.n, args.n)
        twist = None
        if args.twist:
            twist = serialize.tform_from_json(chart, 3, _load_json(args.twist))
        maker = gallery.make_dn if args.family == "dn" else gallery.make_bn
        try:
            alg = maker(args.n, twist)
        except gallery.ValidationError as exc:
            print(exc.report.dumps())
            return EXIT_CHECK_FAILED
        _write_json(args.out, serialize.stdca_to_json(alg))
    elif args.family == "heterotic_like":
        if args.preset == "abelian4d":
            alg = gallery.heterotic_abelian_4d()
        elif args.preset == "so3flat":
            alg = gallery.so3_flat()
        elif args.params:
            try:
                alg = _load_instance(args.params)
                rep = validate_stdca(alg)
                if not rep.ok:
                    print(rep.dumps())
                    return EXIT_CHECK_FAILED
            except InputError:
                raise
        else:
            raise InputError("heterotic_like needs --preset or --params")
        _write_json(args.out, serialize.stdca_to_json(alg))
    elif args.family == "point_manin":
        if args.preset == "nonabelian2d":
            brk, cobrk = gallery.nonabelian2_constants(), None
        elif args.bialgebra:
            data = _load_json(args.bialgebra)
            try:
                brk = [
                    [[serialize.rat_from_str(x) for x in row] for row in plane]
                    for plane in data["c"]
                ]
                cobrk = (
                    [
                        [[serialize.rat_from_str(x) for x in row] for row in plane]
                        for plane in data["cobracket"]
                    ]
                    if data.get("cobracket") is not None
                    else None
                )
            except (KeyError, TypeError, ValueError) as exc:
                raise InputError(f"malformed bialgebra data: {exc}") from exc
        else:
            raise InputError("point_manin needs --preset or --bialgebra")
        try:
            q = gallery.make_point_manin(brk, cobrk)
        except gallery.ValidationError as exc:
            print(exc.report.dumps())
            return EXIT_CHECK_FAILED
        _write_json(args.out, serialize.qlie_to_json(q))
    else:  # pragma: no cover
        raise InputError(f"unknown family {args.family}")
    return EXIT_OK


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--seed", type=int, default=0, help="seed for all randomness")
    p.add_argument("--trials", type=int, default=50, help="random trials per check")
    p.add_argument("--max-degree", type=int, default=2, dest="max_degree")
    p.add_argument("--format", choices=["json"], default="json")
    p.add_argument("--out", help="write the report JSON here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="courant",
        description="exact identity checking for standard Courant algebroid data",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="structural relations plus the axiom suite")
    p.add_argument("instance")
    _add_common(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("transform", help="apply a change of dissection and revalidate")
    p.add_argument("instance")
    p.add_argument("--delta", required=True, help="JSON with optional tau, A, B")
    p.add_argument("--out-instance", dest="out_instance", help="write the moved instance here")
    p.add_argument(
        "--strict-aut",
        action="store_true",
        dest="strict_aut",
        help="also require the transformation to fix the instance data",
    )
    _add_common(p)
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("group", help="automorphism group operations")
    p.add_argument("op", choices=["check", "compose", "invert"])
    p.add_argument("--instance", required=True)
    p.add_argument("--aut", required=True)
    p.add_argument("--aut2")
    p.add_argument("--out-aut", dest="out_aut")
    _add_common(p)
    p.set_defaults(func=cmd_group)

    p = sub.add_parser("inf", help="infinitesimal automorphism operations")
    p.add_argument("op", choices=["check", "bracket", "linearize"])
    p.add_argument("--instance", required=True)
    p.add_argument("--inf")
    p.add_argument("--inf2")
    p.add_argument("--gauge", help="gauge pair JSON for linearize")
    p.add_argument("--out-inf", dest="out_inf")
    _add_common(p)
    p.set_defaults(func=cmd_inf)

    p = sub.add_parser("gallery", help="write an example-family instance file")
    p.add_argument("family", choices=["dn", "bn", "heterotic_like", "point_manin"])
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--twist", help="3-form JSON for dn/bn")
    p.add_argument("--preset")
    p.add_argument("--params", help="full instance JSON for heterotic_like")
    p.add_argument("--bialgebra", help="bialgebra constants JSON for point_manin")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gallery)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.monotonic()
    try:
        if getattr(args, "trials", 1) < 1:
            raise InputError("--trials must be at least 1")
        if getattr(args, "max_degree", 0) < 0:
            raise InputError("--max-degree must be nonnegative")
        code = args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except gallery.ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    print(f"elapsed: {time.monotonic() - start:.3f}s", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
