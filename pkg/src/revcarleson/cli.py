"""Command-line front end.

Every report is one JSON object (or a CSV table) carrying the full run
configuration.  Exit codes: 0 success, 1 parameter/ingestion errors and
usage errors, 2 evaluation errors (including a failed ``verify`` run).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from . import acceptance, ball, carleson, spaces
from .corpus import NAMES, corpus_document
from .disc import Arc, check_level
from .errors import EvaluationError, ParameterError, RevCarlesonError
from .funcs import Blaschke, Lacunary, make_function, parse_complex
from .measures import load_measure
from .quad import QuadConfig

REPORT_VERSION = 1


@dataclass(frozen=True)
class RunConfig:
    quad: QuadConfig
    level_max: int = 12
    J: int = 10
    deterministic: bool = False
    format: str = "json"

    def __post_init__(self):
        check_level(self.level_max)
        if not 1 <= self.J <= 20:
            raise ParameterError(f"lambda grid depth J must lie in [1, 20], got {self.J}")
        if self.format not in ("json", "csv"):
            raise ParameterError(f"format must be json or csv, got {self.format}")

    def as_dict(self) -> dict:
        out = asdict(self)
        out["quad"] = self.quad.as_dict()
        return out


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise ParameterError(f"{self.prog}: {message}")


def _floats(text: str):
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise ParameterError(f"expected a comma-separated list of numbers, got {text!r}") from None


def _ints(text: str):
    vals = _floats(text)
    if any(not v.is_integer() for v in vals):
        raise ParameterError(f"expected integers, got {text!r}")
    return [int(v) for v in vals]


def _number(text: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise ParameterError(f"expected a number, got {text!r}") from None


def _measure(spec: str):
    """A measure file, ``corpus:NAME`` or a corpus name such as ``lebesgue.json``."""
    name = spec.split(":", 1)[1] if spec.startswith("corpus:") else None
    path = Path(spec)
    if name is None and not path.exists() and path.stem in NAMES:
        name = path.stem
    if name is not None:
        return load_measure(corpus_document(name)), f"corpus:{name}"
    return load_measure(path), str(path)


def _arc(text: str) -> Arc:
    vals = _floats(text)
    if len(vals) != 2:
        raise ParameterError("an arc is given as START,LENGTH (turns)")
    return Arc(*vals)


def _ball_vec(text: str):
    parts = text.split(",")
    if len(parts) != 2:
        raise ParameterError("a point of C^2 is given as Z1,Z2 (complex numbers like 0.9+0i)")
    return np.array([parse_complex(p) for p in parts])


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=["json", "csv"], default="json")
    common.add_argument("--output", help="write the report to this file instead of stdout")
    common.add_argument("--deterministic", action="store_true", help="serial, fixed-order reductions")
    common.add_argument("--N-circle", type=int, default=QuadConfig.N_circle)
    common.add_argument("--L-radial", type=int, default=QuadConfig.L_radial)
    common.add_argument("--K-panel", type=int, default=QuadConfig.K_panel)
    common.add_argument("--N-mc", type=int, default=QuadConfig.N_mc)
    common.add_argument("--seed", type=int, default=QuadConfig.seed)
    common.add_argument("--level", type=int, default=12, help="dyadic level_max")
    common.add_argument("--J", type=int, default=10, help="lambda grid depth")

    parser = _Parser(prog="revcarleson", description="Reverse Carleson measure toolkit")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("norm", parents=[common], help="evaluate a (quasi)norm")
    p.add_argument("--space", required=True, choices=spaces.KINDS)
    p.add_argument("--function", required=True)
    p.add_argument("--p", type=float, default=2.0)
    p.add_argument("--q", type=float, default=2.0, help="use inf for the sup variant")
    p.add_argument("--s", type=float, default=0.0)
    p.add_argument("--m", type=int)
    p.add_argument("--seminorm", action="store_true")

    p = sub.add_parser("qvar", parents=[common], help="partial q-variation integral")
    p.add_argument("--function", required=True)
    p.add_argument("--q", type=float, required=True)
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--r-max", type=float, required=True)

    p = sub.add_parser("equiv", parents=[common], help="geometric/kernel/direct constants and verdict")
    p.add_argument("--measure", required=True)
    p.add_argument("--p", type=float, default=2.0)
    p.add_argument("--l", type=int)
    p.add_argument("--tau", type=float, default=carleson.DEFAULT_TAU)

    p = sub.add_parser("phih", parents=[common], help="window function Phi_h")
    p.add_argument("--z", required=True, help="complex point, e.g. 0.5+0.2i")
    p.add_argument("--arc", required=True, help="START,LENGTH in turns")
    p.add_argument("--h", type=float, required=True)
    p.add_argument("--q", type=float, default=2.0)

    p = sub.add_parser("balayage", parents=[common], help="decay of int |z^N f|^q over interior atoms")
    p.add_argument("--measure", required=True)
    p.add_argument("--function", default="poly:1")
    p.add_argument("--q", type=float, default=1.0)
    p.add_argument("--N", required=True, help="comma-separated list")

    p = sub.add_parser("beta-test", parents=[common], help="(p,q) boundary-density criterion")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--measure")
    src.add_argument("--power", type=float, help="use the |t - 1/2|^a family")
    p.add_argument("--n-grid", type=int, default=1 << 16)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--q", type=float, required=True)

    p = sub.add_parser("qlessp", parents=[common], help="q < p mass certificate")
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--q", type=float, required=True)
    p.add_argument("--eps", required=True)
    p.add_argument("--mass", type=float, default=1.0)

    p = sub.add_parser("certificate", parents=[common], help="nonexistence certificates")
    p.add_argument("kind", choices=["bloch", "triebel-s", "triebel-q", "besov-blaschke"])
    p.add_argument("--measure", default="corpus:lebesgue")
    p.add_argument("--n", help="comma-separated parameter list")
    p.add_argument("--s", type=float, default=0.5)
    p.add_argument("--q", type=float, help="default 1.5 for triebel-q, 2 for besov-blaschke")
    p.add_argument("--p", type=float, default=4.0)
    p.add_argument("--t", type=float, default=0.137)
    p.add_argument("--phases", type=int, default=64)

    p = sub.add_parser("verify", parents=[common], help="run the acceptance suite")
    p.add_argument("--criteria", help="comma-separated criterion numbers (default: all)")

    p = sub.add_parser("ball", parents=[common], help="unit ball of C^2")
    p.add_argument("action", choices=["mass", "kernel-norm", "kernel-test"])
    p.add_argument("--measure", help="ball measure JSON (default: uniform sigma)")
    p.add_argument("--center", default="1,0")
    p.add_argument("--delta", type=float, default=0.1)
    p.add_argument("--window", action="store_true")
    p.add_argument("--w", default="0.9+0i,0")
    p.add_argument("--p", type=float, default=2.0)
    p.add_argument("--l", type=int, default=1)
    return parser


def _config(args) -> RunConfig:
    quad = QuadConfig(args.N_circle, args.L_radial, args.K_panel, args.N_mc, args.seed)
    return RunConfig(quad, args.level, args.J, args.deterministic, args.format)


def _norm(args, cfg):
    f = make_function(args.function)
    q = math.inf if math.isinf(args.q) else args.q
    if args.space == "hardy":
        res = spaces.hardy_norm(f, args.p, cfg.quad)
    elif args.space == "bloch":
        res = spaces.bloch_norm(f, cfg.quad)
    elif args.space == "bmoa":
        res = spaces.bmoa_norm(f, cfg.quad, min(cfg.level_max, int(math.log2(cfg.quad.N_circle)) - 4))
    else:
        spec = spaces.SpaceSpec(args.space, args.s, args.p, q, args.m)
        fn = spaces.triebel_norm if args.space == "triebel" else spaces.besov_norm
        res = fn(f, spec, cfg.quad, seminorm=args.seminorm)
    return {"function": args.function, "space": args.space, **res.as_dict()}


def _qvar(args, cfg):
    f = make_function(args.function)
    value = spaces.q_variation(f, args.q, args.t, args.r_max, cfg.quad)
    return {"function": args.function, "q": args.q, "t": args.t, "r_max": args.r_max, "value": value}


def _equiv(args, cfg):
    mu, label = _measure(args.measure)
    rep = carleson.equivalence_report(mu, args.p, args.l, cfg.level_max, cfg.J, cfg.quad, args.tau)
    return {"measure": label, "report": rep.as_dict()}


def _phih(args, cfg):
    z = parse_complex(args.z)
    value = carleson.phi_h(z, _arc(args.arc), args.h, args.q, cfg.quad)
    return {"z": [z.real, z.imag], "arc": _floats(args.arc), "h": args.h, "q": args.q, "value": value}


def _balayage(args, cfg):
    mu, label = _measure(args.measure)
    f = make_function(args.function)
    ns = _ints(args.N)
    res = carleson.balayage_decay(mu, f, args.q, ns)
    return {"measure": label, "function": args.function, "q": args.q, "N": ns,
            "values": res.values.tolist(), "envelope": res.envelope.tolist()}


def _beta(args, cfg):
    if args.power is not None:
        if not args.p < args.q:
            raise ParameterError("beta-test needs p < q; use qlessp for q < p")
        beta = carleson.power_density(args.power, args.n_grid, args.p / (args.q - args.p))
        label = f"power:a={args.power},n_grid={args.n_grid}"
    else:
        mu, label = _measure(args.measure)
        if mu.density is None:
            raise ParameterError("the measure has no boundary density")
        beta = mu.density
    res = carleson.beta_rcm_test(beta, args.p, args.q)
    return {"density": label, "p": args.p, "q": args.q, "decision": res.decision,
            "integral": _finite_or_str(res.integral), "holder_constant": _finite_or_str(res.holder_constant)}


def _finite_or_str(x):
    return x if math.isfinite(x) else "inf"


def _qlessp(args, cfg):
    return {"certificate": carleson.q_less_p_certificate(args.p, args.q, _floats(args.eps), args.mass).as_dict()}


def _certificate(args, cfg):
    kind = args.kind
    if kind == "bloch":
        mu, label = _measure(args.measure)
        ns = _ints(args.n or "64,256,1024")
        cert = carleson.bloch_certificate(mu, ns, args.phases, cfg.quad)
        cert.details["measure"] = label
    elif kind == "triebel-s":
        ns = _ints(args.n or "10,100,1000,10000,100000,1000000")
        cert = carleson.triebel_s_certificate(ns, args.s, cfg.quad)
    elif kind == "triebel-q":
        ns = _ints(args.n or "6,8,10,12,14")
        cert = lacunary_certificate(1.5 if args.q is None else args.q, args.t, ns, cfg.quad)
    else:
        ns = _ints(args.n or "4,8,16")
        cert = blaschke_certificate(ns, args.p, 2.0 if args.q is None else args.q, cfg.quad)
    return {"certificate": cert.as_dict()}


LACUNARY_EXTRA = acceptance.LACUNARY_EXTRA


def lacunary_certificate(q: float, t: float, ns, cfg: QuadConfig) -> carleson.Certificate:
    """Partial ``q``-variation integrals of the lacunary series against ``H_N``."""
    values, harmonic = [], []
    g = Lacunary(q, max(ns) + LACUNARY_EXTRA)
    for n in ns:
        values.append(spaces.q_variation(g, q, t, 1.0 - 2.0 ** -n, cfg))
        harmonic.append(sum(1.0 / k for k in range(1, n + 1)))
    return carleson.Certificate("triebel-q", "N", list(ns), values, harmonic,
                                details={"q": q, "t": t, "truncation": g.N})


def blaschke_certificate(ns, p: float, q: float, cfg: QuadConfig) -> carleson.Certificate:
    """Besov quasinorms of the Blaschke products against ``(log n)^(1/q - 1/p)``."""
    spec = spaces.SpaceSpec("besov", 0.0, p, q)
    values = [spaces.besov_norm(Blaschke(n), spec, cfg).value for n in ns]
    growth = [math.log(n) ** (1.0 / q - 1.0 / p) for n in ns]
    return carleson.Certificate("besov-blaschke", "n", list(ns), values, growth, details={"p": p, "q": q})


def _verify(args, cfg):
    numbers = _ints(args.criteria) if args.criteria else None
    known = {c[0] for c in acceptance.CRITERIA}
    if numbers is not None and not set(numbers) <= known:
        raise ParameterError(f"criteria must be drawn from {sorted(known)}, got {numbers}")
    results = acceptance.run_all(cfg.quad, numbers)
    for r in results:
        print(r.line(), file=sys.stderr)
    rows = [asdict(r) for r in results]
    if cfg.deterministic:
        # wall-clock times are the only non-reproducible part of the report
        for row in rows:
            row.pop("seconds")
    return {"criteria": rows, "all_passed": all(r.passed for r in results)}


def _ball(args, cfg):
    mu = ball.load_ball_measure(args.measure) if args.measure else ball.BallMeasure(uniform_sphere_mass=1.0)
    if args.action == "mass":
        c = _ball_vec(args.center)
        Q = ball.NonIsotropicBall(ball.BallPoint(*c), args.delta)
        res = ball.ball_region_mass(mu, Q, args.window, None, cfg.quad)
        return {"center": [[x.real, x.imag] for x in c], "delta": args.delta, "window": args.window, **res._asdict()}
    if args.action == "kernel-norm":
        w = _ball_vec(args.w)
        return {"w": [[x.real, x.imag] for x in w], "p": args.p, "l": args.l,
                **ball.ball_kernel_norm(w, args.l, args.p, cfg.quad)._asdict()}
    res = ball.ball_kernel_test_constant(mu, args.p, args.l, None, cfg.quad)
    return {"p": args.p, "l": args.l, "constant": res.constant, "stderr": res.stderr,
            "argmin": [[x.real, x.imag] for x in res.argmin], "values": res.values, "stderrs": res.stderrs}


HANDLERS = {
    "norm": _norm, "qvar": _qvar, "equiv": _equiv, "phih": _phih, "balayage": _balayage,
    "beta-test": _beta, "qlessp": _qlessp, "certificate": _certificate, "verify": _verify, "ball": _ball,
}


def _jsonable(x):
    if isinstance(x, (np.floating, np.integer, np.bool_)):
        return x.item()
    if isinstance(x, np.ndarray):
        return x.tolist()
    if isinstance(x, complex):
        return [x.real, x.imag]
    raise TypeError(f"cannot serialise {type(x).__name__}")


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, default=_jsonable, allow_nan=False, indent=1)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    result = report["result"]
    cert = result.get("certificate")
    if cert is not None:
        writer.writerow(["parameter", "value", "bound"])
        for row in zip(cert["parameter"], cert["left_side"], cert["right_side"]):
            writer.writerow([repr(float(x)) for x in row])
        return buf.getvalue()
    writer.writerow(["quantity", "value"])
    for key, value in _flatten(result):
        writer.writerow([key, value])
    return buf.getvalue()


def _flatten(obj, prefix=""):
    if isinstance(obj, dict):
        for k, v in obj.items():
            yield from _flatten(v, f"{prefix}{k}.")
    elif isinstance(obj, (list, tuple)) and obj and all(isinstance(v, (dict, list)) for v in obj):
        for i, v in enumerate(obj):
            yield from _flatten(v, f"{prefix}{i}.")
    else:
        value = json.dumps(obj, default=_jsonable) if isinstance(obj, (list, tuple)) else obj
        yield prefix[:-1], value


def parse_report(text: str) -> dict:
    """Re-parse a JSON report and re-validate the typed parts it contains."""
    report = json.loads(text)
    for key in ("command", "config", "result", "version"):
        if key not in report:
            raise ParameterError(f"report is missing {key!r}")
    QuadConfig(**report["config"]["quad"])
    result = report["result"]
    if "report" in result:
        carleson.ConditionReport(**result["report"])
    if "certificate" in result:
        carleson.Certificate(**result["certificate"])
    if "value" in result and "lower_bound_certified" in result:
        spaces.NormResult(result["value"], result["lower_bound_certified"], result["diagnostics"])
    return report


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            parser.print_usage(sys.stderr)
            raise ParameterError("missing subcommand")
        cfg = _config(args)
        # non-finite values are caught by the library and reported as evaluation errors
        with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
            result = HANDLERS[args.command](args, cfg)
        report = {"version": REPORT_VERSION, "command": args.command, "argv": list(argv or sys.argv[1:]),
                  "config": cfg.as_dict(), "result": result}
        text = render(report, cfg.format)
    except EvaluationError as exc:
        print(f"evaluation error: {exc}", file=sys.stderr)
        return 2
    except (RevCarlesonError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.output:
        Path(args.output).write_text(text + ("" if text.endswith("\n") else "\n"))
    else:
        print(text, end="" if text.endswith("\n") else "\n")
    if args.command == "verify" and not result["all_passed"]:
        return 2
    return 0


def main() -> None:
    sys.exit(run())
