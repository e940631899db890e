"""Command-line front end.

Exit codes: 0 on success, 1 when ``verify`` finds failures, 2 on usage or
literal-syntax errors.  With ``--json`` every command emits a JSON document
carrying the same data as the plain rendering; numbers are exact ``a/b``
strings throughout.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import FlagOrbitsError, InvolutionUndefinedAtLevel
from .flagpoint import act, involute, normal_form, rotate_point
from .orbits import (
    Level,
    classify,
    classify_fine_i4,
    dimension,
    distinguished_point,
    enumerate_labels,
    involution_label,
    sample_point,
)
from .parsing import parse_coeff, parse_label, parse_matrix, parse_point
from .verify import CHECK_NAMES, DEFAULT_SEED, run_all


def _level(text: str) -> Level:
    try:
        return Level[text]
    except KeyError:
        raise argparse.ArgumentTypeError(
            f"unknown level {text!r}; choose from {', '.join(l.name for l in Level)}"
        )


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON output")
    common.add_argument(
        "--prec",
        type=int,
        default=None,
        metavar="P",
        help="truncation order applied to matrix literals without an @P "
        "annotation (default: exact)",
    )
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, metavar="S")

    parser = argparse.ArgumentParser(
        prog="flagorbits",
        description="Coset normal forms and subgroup orbits in the affine "
        "flag variety of SL2.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("normal-form", parents=[common], help="normal form of a matrix")
    p.add_argument("matrix")

    p = sub.add_parser("classify", parents=[common], help="orbit label of a point")
    p.add_argument("point")
    p.add_argument("--level", type=_level, default=Level.I4Rot)

    p = sub.add_parser("act", parents=[common], help="translate a point by a matrix")
    p.add_argument("matrix")
    p.add_argument("point")

    p = sub.add_parser("rotate", parents=[common], help="loop rotation of a point")
    p.add_argument("gamma")
    p.add_argument("point")

    p = sub.add_parser("involute", parents=[common], help="antidiagonal involution")
    p.add_argument("point")

    p = sub.add_parser("sample", parents=[common], help="random point of an orbit")
    p.add_argument("label")
    p.add_argument("--level", type=_level, default=Level.I4Rot)

    p = sub.add_parser("orbit-info", parents=[common], help="facts about an orbit")
    p.add_argument("label")
    p.add_argument("--level", type=_level, default=Level.I4Rot)

    p = sub.add_parser("labels", parents=[common], help="list orbit labels")
    p.add_argument("--level", type=_level, default=Level.I4Rot)
    p.add_argument("--n-min", type=int, default=-3)
    p.add_argument("--n-max", type=int, default=3)

    p = sub.add_parser("verify", parents=[common], help="run the property checks")
    p.add_argument("--check", choices=CHECK_NAMES, default=None)

    return parser


def _emit(args, data: dict, plain: str) -> None:
    if args.json:
        print(json.dumps(data, indent=2))
    else:
        print(plain)


def _cmd_normal_form(args) -> int:
    x = normal_form(parse_matrix(args.matrix, args.prec))
    _emit(args, {"point": str(x)}, str(x))
    return 0


def _cmd_classify(args) -> int:
    x = parse_point(args.point)
    levels = [level for level in Level if level <= args.level]
    labels = {level.name: str(classify(x, level)) for level in levels}
    data = {"point": str(x), "labels": labels}
    if args.level is Level.I4Rot:
        fine = classify_fine_i4(x)
        if fine.beta is not None:
            data["beta"] = str(fine.beta)
    _emit(args, data, labels[args.level.name])
    return 0


def _cmd_act(args) -> int:
    x = act(parse_matrix(args.matrix, args.prec), parse_point(args.point))
    _emit(args, {"point": str(x)}, str(x))
    return 0


def _cmd_rotate(args) -> int:
    x = rotate_point(parse_coeff(args.gamma), parse_point(args.point))
    _emit(args, {"point": str(x)}, str(x))
    return 0


def _cmd_involute(args) -> int:
    x = involute(parse_point(args.point))
    _emit(args, {"point": str(x)}, str(x))
    return 0


def _cmd_sample(args) -> int:
    label = parse_label(args.label)
    x = sample_point(label, args.level, args.seed)
    data = {"point": str(x), "label": str(label), "level": args.level.name}
    _emit(args, data, str(x))
    return 0


def _orbit_info(label, level) -> dict:
    torus, affine = dimension(label, level)
    info = {
        "label": str(label),
        "level": level.name,
        "distinguished": str(distinguished_point(label, level)),
        "dimension": [torus, affine],
        "point_orbit": (torus, affine) == (0, 0),
    }
    try:
        info["involution"] = str(involution_label(label, level))
    except InvolutionUndefinedAtLevel:
        info["involution"] = None
    return info


def _cmd_orbit_info(args) -> int:
    info = _orbit_info(parse_label(args.label), args.level)
    lines = [
        f"label: {info['label']}",
        f"level: {info['level']}",
        f"distinguished: {info['distinguished']}",
        f"dimension: ({info['dimension'][0]}, {info['dimension'][1]})",
        f"point_orbit: {str(info['point_orbit']).lower()}",
    ]
    if info["involution"] is not None:
        lines.append(f"involution: {info['involution']}")
    _emit(args, info, "\n".join(lines))
    return 0


def _cmd_labels(args) -> int:
    rows = [
        _orbit_info(label, args.level)
        for label, _ in enumerate_labels(args.level, args.n_min, args.n_max)
    ]
    if args.json:
        print(json.dumps({"level": args.level.name, "labels": rows}, indent=2))
    else:
        width = max((len(r["label"]) for r in rows), default=5)
        for r in rows:
            marker = "*" if r["point_orbit"] else " "
            print(
                f"{r['label']:<{width}} {marker} dim ({r['dimension'][0]}, "
                f"{r['dimension'][1]})  distinguished {r['distinguished']}"
            )
    return 0


def _cmd_verify(args) -> int:
    reports = run_all(args.seed, only=args.check)
    if args.json:
        print(
            json.dumps(
                {
                    "passed": all(r.passed for r in reports),
                    "reports": [r.to_dict() for r in reports],
                },
                indent=2,
            )
        )
    else:
        for r in reports:
            print(r.summary())
    return 0 if all(r.passed for r in reports) else 1


_DISPATCH = {
    "normal-form": _cmd_normal_form,
    "classify": _cmd_classify,
    "act": _cmd_act,
    "rotate": _cmd_rotate,
    "involute": _cmd_involute,
    "sample": _cmd_sample,
    "orbit-info": _cmd_orbit_info,
    "labels": _cmd_labels,
    "verify": _cmd_verify,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _DISPATCH[args.command](args)
    except FlagOrbitsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
