"""Command-line entry point.

Subcommands: domain, poles, eval, kin, coulomb.  Every command prints a
JSON payload on stdout (pipe-friendly) and a one-line summary on stderr.
Exit codes: 0 success/inside, 2 invalid input, 3 outside domain or
divergent, 4 boundary, 5 resource limit.  The KOBA_THREADS environment
variable caps worker threads; Monte Carlo runs require an explicit
--seed so there is no hidden entropy.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from . import coulomb, domain, kinematics, padic_eval, real_eval
from .core import SVector, svector
from .results import DivergenceError, EvalSettings, ResourceLimitError

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_OUTSIDE = 3
EXIT_BOUNDARY = 4
EXIT_RESOURCE = 5

_STATUS_EXIT = {"estimate": EXIT_OK, "diverged_by_domain": EXIT_OUTSIDE, "boundary": EXIT_BOUNDARY}


@dataclass
class CommandResult:
    code: int
    payload: dict | list | None
    summary: str = ""


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# input parsing helpers

def _load_json_arg(text: str):
    text = text.strip()
    if text.startswith("{") or text.startswith("["):
        return json.loads(text)
    with open(text, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _as_complex(v) -> complex:
    if isinstance(v, dict):
        return complex(float(v.get("re", 0.0)), float(v.get("im", 0.0)))
    if isinstance(v, (list, tuple)):
        return complex(float(v[0]), float(v[1] if len(v) > 1 else 0.0))
    return complex(float(v))


def load_svector(N: int, text: str) -> SVector:
    """Parse --s input: the generic {"N":..,"s":[..]} schema, or shorthand
    named keys like {"s12": -0.6, "s32": -0.6} (single-digit labels)."""
    try:
        data = _load_json_arg(text)
    except (OSError, json.JSONDecodeError) as err:
        raise UsageError(f"cannot read s-vector: {err}") from err
    if not isinstance(data, dict):
        raise UsageError("s-vector JSON must be an object")
    if "s" in data and "N" in data:
        if int(data["N"]) != N:
            raise UsageError(f"s-vector has N={data['N']}, command says N={N}")
        try:
            return SVector.from_json_dict(data)
        except (KeyError, ValueError) as err:
            raise UsageError(f"bad s-vector: {err}") from err
    entries = {}
    for key, v in data.items():
        if not (len(key) == 3 and key[0] == "s" and key[1:].isdigit()):
            raise UsageError(f"unrecognized s-vector key {key!r} (use sIJ with one-digit labels "
                             "or the generic schema)")
        entries[(int(key[1]), int(key[2]))] = _as_complex(v)
    try:
        return svector(N, entries)
    except ValueError as err:
        raise UsageError(f"bad s-vector: {err}") from err


def _parse_floats(text: str) -> list[float]:
    try:
        return [float(tok) for tok in text.split(",") if tok.strip()]
    except ValueError as err:
        raise UsageError(f"bad number list {text!r}") from err


def _parse_grid(text: str) -> list[float]:
    parts = text.split(":")
    if len(parts) != 3:
        raise UsageError("grid must be start:stop:step")
    try:
        start, stop, step = (float(p) for p in parts)
    except ValueError as err:
        raise UsageError(f"bad grid {text!r}") from err
    if step <= 0 or stop < start:
        raise UsageError("grid needs step > 0 and stop >= start")
    out = []
    k = 0
    while True:
        v = start + k * step
        if v > stop + 1e-12:
            break
        out.append(round(v, 12))
        k += 1
    return out


# ---------------------------------------------------------------------------
# subcommand handlers

def _cmd_domain_show(args) -> CommandResult:
    system = domain.enumerate_inequalities(args.N)
    if args.latex:
        payload = {"N": args.N, "count": len(system),
                   "latex": [f.latex() for f in system.forms]}
    else:
        payload = system.to_json_dict()
    return CommandResult(EXIT_OK, payload, f"{len(system)} inequalities for N={args.N}")


def _cmd_domain_check(args) -> CommandResult:
    s = load_svector(args.N, args.s)
    report = domain.check_membership(domain.enumerate_inequalities(args.N), s, args.tol)
    code = {"inside": EXIT_OK, "outside": EXIT_OUTSIDE, "boundary": EXIT_BOUNDARY}[report.status]
    return CommandResult(code, report.to_json_dict(), f"status: {report.status}")


def _cmd_poles_list(args) -> CommandResult:
    fams = domain.pole_families(args.N, args.field)
    payload = {"N": args.N, "field": args.field, "count": len(fams),
               "families": [f.to_json_dict() for f in fams]}
    return CommandResult(EXIT_OK, payload, f"{len(fams)} pole families for N={args.N} over {args.field}")


def _cmd_poles_check(args) -> CommandResult:
    s = load_svector(args.N, args.s)
    hits = domain.is_on_pole(args.N, s, args.field, args.t_max, args.tol)
    payload = {"N": args.N, "field": args.field, "t_max": args.t_max,
               "hits": [h.to_json_dict() for h in hits]}
    code = EXIT_OUTSIDE if hits else EXIT_OK
    return CommandResult(code, payload, f"{len(hits)} candidate pole hyperplanes hit")


def _eval_settings(args, need_seed: bool) -> EvalSettings:
    if need_seed and args.seed is None:
        raise UsageError("--seed is required for mc mode (no hidden entropy)")
    return EvalSettings(samples_per_sector=args.samples, groups=args.groups,
                        seed=args.seed if args.seed is not None else 0,
                        mode=args.mode, chi_epsilon=args.chi_epsilon)


def _cmd_eval(args) -> CommandResult:
    s = load_svector(args.N, args.s)
    payload: dict = {"N": args.N, "field": args.field}

    if args.field == "Qp":
        if args.p is None:
            raise UsageError("field Qp requires --p")
        params = padic_eval.PadicParams(args.p, s, max_depth=args.depth)
        result = padic_eval.eval_padic_tree(params)
        payload.update(result.to_json_dict())
        payload["p"] = args.p
        if args.symbolic:
            if args.N != 4:
                raise UsageError("--symbolic is only available for N=4")
            payload["symbolic"] = padic_eval.n4_padic_rational(args.p).to_json_dict()
        code = _STATUS_EXIT[result.status]
        return CommandResult(code, payload, f"status: {result.status}")

    if args.mode in ("quadrature", "closed"):
        if args.N != 4:
            raise UsageError(f"mode {args.mode} is only available for N=4")
        if args.mode == "quadrature" and args.field != "R":
            raise UsageError("quadrature mode is only available over R")
        a, b = s[(1, 2)], s[(3, 2)]
        try:
            if args.mode == "quadrature":
                value = real_eval.eval_quadrature_n4(a, b)
            elif args.field == "R":
                value = real_eval.eval_n4_closed_real(a, b)
            else:
                value = real_eval.eval_n4_closed_complex(a, b)
            payload.update({"status": "estimate", "mode": args.mode,
                            "value": {"re": value.real, "im": value.imag}, "stderr": 0.0})
            code = EXIT_OK
        except DivergenceError as err:
            payload.update({"status": err.status, "mode": args.mode})
            code = _STATUS_EXIT[err.status]
    else:
        settings = _eval_settings(args, need_seed=True)
        result = real_eval.eval_mc(args.N, args.field, s, settings)
        payload.update(result.to_json_dict())
        payload["mode"] = "mc"
        payload["conventions"] = {"haar": real_eval.HAAR_CONVENTION[args.field]}
        code = _STATUS_EXIT[result.status]

    if args.probe:
        cutoffs = _parse_floats(args.probe)
        probe = real_eval.growth_probe(args.N, args.field, s, cutoffs,
                                       samples_per_region=args.samples,
                                       groups=args.groups,
                                       seed=args.seed if args.seed is not None else 0)
        payload["probe"] = probe.to_json_dict()
    return CommandResult(code, payload, f"status: {payload['status']}")


def _cmd_kin(args) -> CommandResult:
    if args.action == "prop3":
        cfg = kinematics.build_prop3(args.N, args.l)
        payload = cfg.to_json_dict()
        payload["s"] = kinematics.momentum_to_s(cfg).to_json_dict()["s"]
        return CommandResult(EXIT_OK, payload, f"prop3 configuration N={args.N}, l={args.l}")
    if args.action == "equi":
        cfg = kinematics.build_equidistributed(args.N)
        payload = cfg.to_json_dict()
        payload["s"] = kinematics.momentum_to_s(cfg).to_json_dict()["s"]
        return CommandResult(EXIT_OK, payload, f"equidistributed configuration N={args.N}")
    if args.action == "check":
        try:
            data = _load_json_arg(args.file)
            cfg = kinematics.MomentumConfig.from_json_dict(data)
        except (OSError, json.JSONDecodeError, KeyError, ValueError) as err:
            raise UsageError(f"cannot read config: {err}") from err
        if len(cfg.vectors) != cfg.N:
            raise UsageError("kin check needs all N momentum vectors")
        report = kinematics.check_kinematics(cfg, args.tol)
        classification = kinematics.scattering_feasible(cfg, args.tol)
        payload = {"kinematics": report.to_json_dict(), "classification": classification}
        code = EXIT_OK if classification == "feasible" else EXIT_OUTSIDE
        return CommandResult(code, payload, f"classification: {classification}")
    if args.action == "sample-u":
        params = kinematics.UBoxParams(args.N, args.l, args.B, args.C)
        configs = kinematics.sample_u(params, args.seed, args.count)
        payload = {"N": args.N, "l": args.l, "B": args.B, "C": args.C,
                   "count": len(configs),
                   "configs": [c.to_json_dict()["vectors"] for c in configs]}
        return CommandResult(EXIT_OK, payload, f"{len(configs)} U-box samples")
    raise UsageError(f"unknown kin action {args.action!r}")


def _cmd_coulomb(args) -> CommandResult:
    charges = tuple(_parse_floats(args.e))
    if args.action == "window":
        grid = _parse_grid(args.grid)
        windows = coulomb.beta_window(args.N, charges, grid)
        payload = {"N": args.N, "e": list(charges),
                   "windows": [{"lo": lo, "hi": hi} for lo, hi in windows]}
        return CommandResult(EXIT_OK, payload, f"{len(windows)} convergence window(s)")
    if args.action == "eval":
        gas = coulomb.GasSpec(args.N, charges, args.beta)
        settings = None
        if args.mode == "mc":
            if args.seed is None:
                raise UsageError("--seed is required for mc mode (no hidden entropy)")
            settings = EvalSettings(samples_per_sector=args.samples, groups=args.groups,
                                    seed=args.seed, mode="mc", chi_epsilon=args.chi_epsilon)
        result = coulomb.partition_function(gas, args.field, settings, p=args.p)
        payload = {"N": args.N, "e": list(charges), "beta": args.beta,
                   "field": args.field}
        payload.update(result.to_json_dict())
        code = _STATUS_EXIT[result.status]
        return CommandResult(code, payload, f"status: {result.status}")
    raise UsageError(f"unknown coulomb action {args.action!r}")


# ---------------------------------------------------------------------------
# parser

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="koba", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_domain = sub.add_parser("domain", help="convergence domain")
    dsub = p_domain.add_subparsers(dest="action", required=True)
    d_show = dsub.add_parser("show", help="print the inequality system")
    d_show.add_argument("--N", type=int, required=True)
    d_show.add_argument("--json", action="store_true", help="JSON output (the default)")
    d_show.add_argument("--latex", action="store_true")
    d_check = dsub.add_parser("check", help="test membership of an s-vector")
    d_check.add_argument("--N", type=int, required=True)
    d_check.add_argument("--s", required=True, help="JSON file or inline JSON")
    d_check.add_argument("--tol", type=float, default=1e-12)

    p_poles = sub.add_parser("poles", help="candidate pole families")
    psub = p_poles.add_subparsers(dest="action", required=True)
    p_list = psub.add_parser("list", help="list pole families")
    p_list.add_argument("--N", type=int, required=True)
    p_list.add_argument("--field", choices=domain.FIELDS, default="R")
    p_check = psub.add_parser("check", help="scan hyperplanes through an s-vector")
    p_check.add_argument("--N", type=int, required=True)
    p_check.add_argument("--s", required=True)
    p_check.add_argument("--field", choices=domain.FIELDS, default="R")
    p_check.add_argument("--t-max", dest="t_max", type=int, default=10)
    p_check.add_argument("--tol", type=float, default=1e-9)

    p_eval = sub.add_parser("eval", help="evaluate the N-point integral")
    p_eval.add_argument("--N", type=int, required=True)
    p_eval.add_argument("--field", choices=domain.FIELDS, required=True)
    p_eval.add_argument("--s", required=True, help="JSON file or inline JSON")
    p_eval.add_argument("--samples", type=int, default=1_000_000)
    p_eval.add_argument("--groups", type=int, default=32)
    p_eval.add_argument("--seed", type=int, default=None)
    p_eval.add_argument("--mode", choices=("mc", "quadrature", "closed"), default="mc")
    p_eval.add_argument("--chi-epsilon", dest="chi_epsilon", type=float, default=0.1)
    p_eval.add_argument("--probe", default=None, help="comma-separated growth-probe cutoffs")
    p_eval.add_argument("--p", type=int, default=None, help="prime for field Qp")
    p_eval.add_argument("--depth", type=int, default=64, help="digit-tree recursion cap")
    p_eval.add_argument("--symbolic", action="store_true",
                        help="include the N=4 rational form (Qp only)")

    p_kin = sub.add_parser("kin", help="kinematic constructors and checks")
    ksub = p_kin.add_subparsers(dest="action", required=True)
    k_prop3 = ksub.add_parser("prop3")
    k_prop3.add_argument("--N", type=int, required=True)
    k_prop3.add_argument("--l", type=int, required=True)
    k_equi = ksub.add_parser("equi")
    k_equi.add_argument("--N", type=int, required=True)
    k_check = ksub.add_parser("check")
    k_check.add_argument("--file", required=True)
    k_check.add_argument("--tol", type=float, default=1e-12)
    k_sample = ksub.add_parser("sample-u")
    k_sample.add_argument("--N", type=int, required=True)
    k_sample.add_argument("--l", type=int, required=True)
    k_sample.add_argument("--B", type=float, required=True)
    k_sample.add_argument("--C", type=float, required=True)
    k_sample.add_argument("--count", type=int, required=True)
    k_sample.add_argument("--seed", type=int, required=True)

    p_cg = sub.add_parser("coulomb", help="log-Coulomb gas partition function")
    csub = p_cg.add_subparsers(dest="action", required=True)
    c_window = csub.add_parser("window")
    c_window.add_argument("--N", type=int, required=True)
    c_window.add_argument("--e", required=True, help="comma-separated charges")
    c_window.add_argument("--grid", required=True, help="start:stop:step")
    c_eval = csub.add_parser("eval")
    c_eval.add_argument("--N", type=int, required=True)
    c_eval.add_argument("--e", required=True)
    c_eval.add_argument("--beta", type=float, required=True)
    c_eval.add_argument("--field", choices=domain.FIELDS, required=True)
    c_eval.add_argument("--p", type=int, default=None)
    c_eval.add_argument("--mode", choices=("closed", "mc"), default="closed")
    c_eval.add_argument("--samples", type=int, default=1_000_000)
    c_eval.add_argument("--groups", type=int, default=32)
    c_eval.add_argument("--seed", type=int, default=None)
    c_eval.add_argument("--chi-epsilon", dest="chi_epsilon", type=float, default=0.1)
    return parser


_HANDLERS = {
    ("domain", "show"): _cmd_domain_show,
    ("domain", "check"): _cmd_domain_check,
    ("poles", "list"): _cmd_poles_list,
    ("poles", "check"): _cmd_poles_check,
}


def _normalize_argv(argv: list[str]) -> list[str]:
    # allow `domain --N 6` and `poles --N 4` without an explicit sub-action
    if argv and argv[0] in ("domain", "poles"):
        if len(argv) == 1 or argv[1].startswith("-"):
            return [argv[0], "show" if argv[0] == "domain" else "list"] + argv[1:]
    return argv


def dispatch(argv: list[str]) -> CommandResult:
    """Route a CLI invocation; never raises, always returns a CommandResult."""
    argv = _normalize_argv(list(argv))
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        code = EXIT_OK if err.code == 0 else EXIT_INVALID
        return CommandResult(code, None, "usage error" if code else "")
    try:
        if args.command in ("domain", "poles"):
            return _HANDLERS[args.command, args.action](args)
        if args.command == "eval":
            return _cmd_eval(args)
        if args.command == "kin":
            return _cmd_kin(args)
        if args.command == "coulomb":
            return _cmd_coulomb(args)
        return CommandResult(EXIT_INVALID, None, f"unknown command {args.command!r}")
    except UsageError as err:
        return CommandResult(EXIT_INVALID, {"error": str(err)}, str(err))
    except ResourceLimitError as err:
        return CommandResult(EXIT_RESOURCE, {"error": str(err)}, str(err))
    except DivergenceError as err:
        return CommandResult(_STATUS_EXIT[err.status], {"status": err.status}, str(err))
    except (ValueError, KeyError) as err:
        return CommandResult(EXIT_INVALID, {"error": str(err)}, str(err))


def main(argv: list[str] | None = None) -> int:
    result = dispatch(sys.argv[1:] if argv is None else argv)
    if result.payload is not None:
        json.dump(result.payload, sys.stdout, indent=2, sort_keys=True)
        sys.stdout.write("\n")
    if result.summary:
        print(result.summary, file=sys.stderr)
    return result.code


if __name__ == "__main__":
    sys.exit(main())
