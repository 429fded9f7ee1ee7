"""Command-line front end: ``zeno-cz {tau,report,sweep,break-even,fig3,...}``.

Exit codes: 0 success, 2 invalid arguments, 3 domain error, 4 I/O failure.
"""

from __future__ import annotations

import argparse
import logging
import math
import sys

from .cascade import DEFAULT_N, tau_closed_form, tau_ideal, tau_matrix_oracle
from .errors import BracketError, DomainError, InvalidSpecError, ZenoError
from .fusion import break_even_point
from .sweep import SCENARIOS, SweepSpec, evaluate_point, load_presets, preset_spec, run_sweep

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DOMAIN = 3
EXIT_IO = 4

_REPORT_FIELDS = {
    "free_standing": ("tau", "f_heralded", "f_unheralded", "p_success"),
    "distilled_cz": ("tau", "f_heralded", "p_success"),
    "fusion_offline": ("tau", "p_success"),
}


def _g12(x: float) -> str:
    return f"{x:.12g}"


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--kappa", type=float, help="two-photon to one-photon absorption ratio")
    p.add_argument("--lambda", dest="lam", type=float, help="total absorber strength (chi L)")
    p.add_argument("--n", type=int, default=DEFAULT_N, help="number of beam splitter units")
    p.add_argument("--k", type=int, default=0, help="phase branch")
    p.add_argument("--sign", choices=("plus", "minus"), default="plus")
    p.add_argument("--out", default=None, help="output path (default stdout)")
    p.add_argument("--tol", type=float, default=1e-6)
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="zeno-cz", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tau", parents=[common], help="closed-form and matrix-power tau")
    p.add_argument("--gamma2", type=float, help="per-unit two-photon transmission (overrides --lambda)")

    p = sub.add_parser("report", parents=[common], help="figures of merit at one point")
    p.add_argument("--scenario", choices=tuple(_REPORT_FIELDS), default="free_standing")

    p = sub.add_parser("sweep", parents=[common], help="CSV sweep over lambda or kappa")
    p.add_argument("--scenario", choices=SCENARIOS, required=True)
    p.add_argument("--axis", choices=("lambda", "kappa"), required=True)
    p.add_argument("--lo", type=float, required=True)
    p.add_argument("--hi", type=float, required=True)
    p.add_argument("--points", type=int, required=True)
    p.add_argument("--scale", choices=("linear", "log10"), default="linear")

    sub.add_parser("break-even", parents=[common], help="kappa where Zeno fusion matches linear optics")

    for name, preset in load_presets()["presets"].items():
        sub.add_parser(name, parents=[common], help=preset.get("description"))
    return parser


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _cmd_tau(args) -> str:
    if args.gamma2 is not None:
        gamma2 = args.gamma2
    elif args.lam is not None:
        gamma2 = 0.0 if math.isinf(args.lam) else math.exp(-args.lam / args.n)
    else:
        raise InvalidSpecError("tau needs --lambda or --gamma2")
    lines = [
        f"n = {args.n}",
        f"gamma2 = {_g12(gamma2)}",
        f"tau_closed = {_g12(tau_closed_form(args.n, gamma2))}",
        f"tau_oracle = {_g12(tau_matrix_oracle(args.n, gamma2))}",
        f"tau_ideal = {_g12(tau_ideal(args.n))}",
    ]
    return "\n".join(lines) + "\n"


def _cmd_report(args) -> str:
    if args.kappa is None:
        raise InvalidSpecError("report needs --kappa")
    result = evaluate_point(args.scenario, args.kappa, args.lam, args.n, args.k, args.sign, args.tol)
    label = "lambda" if args.lam is not None else "lambda_opt"
    lines = [f"scenario = {args.scenario}", f"kappa = {_g12(args.kappa)}", f"{label} = {_g12(result['lambda'])}"]
    lines += [f"{key} = {_g12(result[key])}" for key in _REPORT_FIELDS[args.scenario]]
    return "\n".join(lines) + "\n"


def _fixed(args) -> dict:
    fixed = {}
    if args.kappa is not None:
        fixed["kappa"] = args.kappa
    if args.lam is not None:
        fixed["lambda"] = args.lam
    if args.k:
        fixed["k"] = args.k
    if args.sign != "plus":
        fixed["sign"] = args.sign
    return fixed


def _cmd_sweep(args) -> None:
    fixed = _fixed(args)
    fixed.pop(args.axis, None)
    spec = SweepSpec(
        scenario=args.scenario, axis=args.axis, lo=args.lo, hi=args.hi,
        points=args.points, scale=args.scale, fixed=fixed, n=args.n,
        output_path=args.out,
    )
    text = run_sweep(spec)
    if args.out is None:
        sys.stdout.write(text)


def _cmd_preset(args) -> None:
    spec = preset_spec(args.command, n=args.n, output_path=args.out)
    text = run_sweep(spec)
    if args.out is None:
        sys.stdout.write(text)


def _cmd_break_even(args) -> str:
    point = break_even_point(args.n, args.tol)
    return (
        f"kappa_star = {_g12(point.kappa)}\n"
        f"lambda_star = {_g12(point.lambda_opt)}\n"
        f"p_success = {_g12(point.p_success)}\n"
    )


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        if args.command == "tau":
            _emit(_cmd_tau(args), args.out)
        elif args.command == "report":
            _emit(_cmd_report(args), args.out)
        elif args.command == "sweep":
            _cmd_sweep(args)
        elif args.command == "break-even":
            _emit(_cmd_break_even(args), args.out)
        else:
            _cmd_preset(args)
    except (DomainError, BracketError) as exc:
        print(f"zeno-cz: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"zeno-cz: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ZenoError, ValueError) as exc:
        print(f"zeno-cz: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
