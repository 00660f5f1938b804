"""Command-line surface: one binary, four subcommands.

  krzyz ct        Caratheodory-Toeplitz minor test on a coefficient vector
  krzyz fejer     spectral factorization of a nonnegative trig polynomial
  krzyz extremal  optimality-condition report for an atom set (+ CSV profile)
  krzyz bound     multi-start search for max |f_n| against the 2/e conjecture

Inputs arrive as inline JSON or as a path to a JSON file; each subcommand
also accepts --job pointing at a JSON document holding the same parameters
(explicit flags win, unknown keys are rejected).  Complex numbers are always
[re, im] pairs and floats are written with 17 significant digits.

Exit codes: 0 success, 2 bad input, 3 adverse classification (Outside /
not nonnegative).  KRZYZ_THREADS caps the parallelism of bound searches.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import jsonio
from .caratheodory import toeplitz_minors
from .errors import KrzyzError, NotNonnegativeError
from .extremal import (
    KERNEL_GRID,
    build_candidate,
    real_part_profile,
    rotate_to_positive,
    verify_conditions,
)
from .errors import CannotNormalizeError
from .optimize import TWO_OVER_E, SearchConfig, search
from .series import AtomSet, CoeffVec
from .trigpoly import TrigPoly, factor_residual, fejer_riesz

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_ADVERSE = 3


class CliInputError(Exception):
    pass


def _parse_json_arg(text: str, what: str):
    """Inline JSON or a path to a JSON file."""
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        pass
    path = Path(text)
    if path.is_file():
        try:
            return json.loads(path.read_text())
        except json.JSONDecodeError as exc:
            raise CliInputError(f"{what}: file {text} holds invalid JSON: {exc}")
    raise CliInputError(f"{what}: neither valid inline JSON nor an existing file: {text!r}")


def _require_keys(obj, allowed: dict, what: str) -> dict:
    if not isinstance(obj, dict):
        raise CliInputError(f"{what}: expected a JSON object")
    unknown = set(obj) - set(allowed)
    if unknown:
        raise CliInputError(f"{what}: unknown fields {sorted(unknown)}")
    for key, value in obj.items():
        if not isinstance(value, allowed[key]):
            raise CliInputError(f"{what}: field {key!r} has the wrong type")
    return obj


def _load_job(path: str | None, allowed: dict, what: str) -> dict:
    if path is None:
        return {}
    try:
        obj = json.loads(Path(path).read_text())
    except OSError as exc:
        raise CliInputError(f"{what}: cannot read job file: {exc}")
    except json.JSONDecodeError as exc:
        raise CliInputError(f"{what}: job file holds invalid JSON: {exc}")
    return _require_keys(obj, allowed, what)


def _complex_list(raw, what: str) -> np.ndarray:
    if not isinstance(raw, list) or not raw:
        raise CliInputError(f"{what}: expected a non-empty list of [re, im] pairs")
    out = np.empty(len(raw), dtype=complex)
    for i, item in enumerate(raw):
        if (
            not isinstance(item, list)
            or len(item) != 2
            or not all(isinstance(v, (int, float)) for v in item)
        ):
            raise CliInputError(f"{what}: entry {i} is not a [re, im] pair")
        out[i] = complex(item[0], item[1])
    return out


def _atom_set(raw, what: str) -> AtomSet:
    if not isinstance(raw, list) or not raw:
        raise CliInputError(f"{what}: expected a non-empty list of [alpha, phi] pairs")
    for i, item in enumerate(raw):
        if (
            not isinstance(item, list)
            or len(item) != 2
            or not all(isinstance(v, (int, float)) for v in item)
        ):
            raise CliInputError(f"{what}: entry {i} is not an [alpha, phi] pair")
    return AtomSet.from_pairs(raw)


def cmd_ct(args) -> int:
    job = _load_job(args.job, {"coeffs": (dict, list), "tol": (int, float)}, "ct job")
    payload = _parse_json_arg(args.coeffs, "--coeffs") if args.coeffs else job.get("coeffs")
    if payload is None:
        raise CliInputError("ct: provide --coeffs or a job file with a 'coeffs' field")
    if isinstance(payload, dict):
        payload = _require_keys(payload, {"h": list}, "--coeffs")
        raw = payload.get("h")
    else:
        raw = payload
    tol = args.tol if args.tol is not None else job.get("tol", 1e-10)

    h = CoeffVec(_complex_list(raw, "--coeffs h"))
    report = toeplitz_minors(h, tol=float(tol))
    print(
        jsonio.dumps(
            {
                "minors": list(report.minors),
                "classification": report.classification,
                "tol": report.tol,
            }
        )
    )
    return EXIT_ADVERSE if report.kind == "Outside" else EXIT_OK


def cmd_fejer(args) -> int:
    job = _load_job(args.job, {"trig": dict}, "fejer job")
    payload = _parse_json_arg(args.trig, "--trig") if args.trig else job.get("trig")
    if payload is None:
        raise CliInputError("fejer: provide --trig or a job file with a 'trig' field")
    payload = _require_keys(payload, {"a0": (int, float), "terms": list}, "--trig")
    if "a0" not in payload:
        raise CliInputError("--trig: missing field 'a0'")
    terms = payload.get("terms", [])
    for i, item in enumerate(terms):
        if (
            not isinstance(item, list)
            or len(item) != 2
            or not all(isinstance(v, (int, float)) for v in item)
        ):
            raise CliInputError(f"--trig: terms entry {i} is not an [a_k, b_k] pair")

    t = TrigPoly.from_terms(float(payload["a0"]), terms)
    try:
        factor = fejer_riesz(t)
    except NotNonnegativeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ADVERSE
    print(
        jsonio.dumps(
            {
                "p": [jsonio.complex_pair(z) for z in factor.p],
                "max_residual": factor_residual(t, factor),
            }
        )
    )
    return EXIT_OK


def cmd_extremal(args) -> int:
    job = _load_job(
        args.job,
        {"atoms": (dict, list), "n": int, "tol": (int, float), "emit_profile": str},
        "extremal job",
    )
    payload = _parse_json_arg(args.atoms, "--atoms") if args.atoms else job.get("atoms")
    if payload is None:
        raise CliInputError("extremal: provide --atoms or a job file with an 'atoms' field")
    if isinstance(payload, dict):
        payload = _require_keys(payload, {"atoms": list}, "--atoms")
        raw = payload.get("atoms")
    else:
        raw = payload
    n = args.n if args.n is not None else job.get("n")
    if n is None:
        raise CliInputError("extremal: provide --n or a job file with an 'n' field")
    if int(n) < 1:
        raise CliInputError("extremal: need n >= 1")
    tol = args.tol if args.tol is not None else job.get("tol", 1e-8)
    profile_path = args.emit_profile or job.get("emit_profile")

    atoms = _atom_set(raw, "--atoms")
    cand = build_candidate(atoms, int(n))
    if cand.f.coeffs[-1] != 0:
        try:
            cand = rotate_to_positive(cand)
        except CannotNormalizeError:
            pass
    report = verify_conditions(cand, tol=float(tol))
    if profile_path:
        phi, re_h = real_part_profile(cand, KERNEL_GRID)
        lines = ["phi,reH"]
        lines += [
            f"{jsonio.format_float(x)},{jsonio.format_float(v)}"
            for x, v in zip(phi, re_h)
        ]
        Path(profile_path).write_text("\n".join(lines) + "\n")
    print(jsonio.dumps(report.to_dict()))
    return EXIT_OK


def _search_result_dict(result, cfg: SearchConfig) -> dict:
    return {
        "n": result.n,
        "best_value": result.best_value,
        "gap_to_conjecture": result.gap_to_conjecture,
        "best_atoms": [[a, p] for a, p in result.best_atoms.pairs],
        "condition_report": result.condition_report.to_dict(),
        "per_restart": [
            {
                "restart": rec.restart,
                "seed": rec.seed,
                "start": [[a, p] for a, p in rec.start],
                "final_value": rec.final_value,
                "iterations": rec.iterations,
            }
            for rec in result.per_restart
        ],
        "config": {
            "n": cfg.n,
            "m_max": cfg.m_max,
            "restarts": cfg.restarts,
            "seed": cfg.seed,
            "max_iters": cfg.max_iters,
            "ftol": cfg.ftol,
            "alpha_min": cfg.alpha_min,
            "alpha_max": cfg.alpha_max,
            "min_phi_gap": cfg.min_phi_gap,
        },
    }


def cmd_bound(args) -> int:
    job = _load_job(
        args.job,
        {
            "n": int,
            "restarts": int,
            "seed": int,
            "out": str,
            "trace": str,
            "m_max": int,
            "ftol": (int, float),
            "max_iters": int,
        },
        "bound job",
    )
    n = args.n if args.n is not None else job.get("n")
    if n is None:
        raise CliInputError("bound: provide --n or a job file with an 'n' field")
    restarts = args.restarts if args.restarts is not None else job.get("restarts", 50)
    seed = args.seed if args.seed is not None else job.get("seed", 0)
    out_path = args.out or job.get("out")
    trace_path = args.trace or job.get("trace")
    try:
        cfg = SearchConfig(
            n=int(n),
            restarts=int(restarts),
            seed=int(seed),
            m_max=args.m_max if args.m_max is not None else job.get("m_max"),
            ftol=float(args.ftol) if args.ftol is not None else float(job.get("ftol", 1e-12)),
            max_iters=(
                args.max_iters if args.max_iters is not None else job.get("max_iters", 200)
            ),
        )
    except KrzyzError as exc:
        raise CliInputError(f"bound: {exc}")

    result = search(cfg, collect_trace=trace_path is not None)

    if out_path:
        Path(out_path).write_text(jsonio.dumps(_search_result_dict(result, cfg)) + "\n")
    if trace_path:
        lines = ["restart,iter,value"]
        lines += [
            f"{r},{i},{jsonio.format_float(v)}" for r, i, v in result.trace
        ]
        Path(trace_path).write_text("\n".join(lines) + "\n")
    print(
        f"n={result.n} best={jsonio.format_float(result.best_value)} "
        f"gap={jsonio.format_float(result.gap_to_conjecture)}"
    )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="krzyz",
        description="Coefficient-body tests, spectral factorization and "
        "extremal search for bounded nonvanishing functions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_ct = sub.add_parser("ct", help="Caratheodory-Toeplitz minor test")
    p_ct.add_argument("--coeffs", help='{"h": [[re, im], ...]} inline or a file path')
    p_ct.add_argument("--tol", type=float, default=None, help="zero/positive tolerance")
    p_ct.add_argument("--job", help="JSON job file with the same parameters")

    p_f = sub.add_parser("fejer", help="spectral factorization of a trig polynomial")
    p_f.add_argument("--trig", help='{"a0": r, "terms": [[a_k, b_k], ...]} inline or a path')
    p_f.add_argument("--job", help="JSON job file with the same parameters")

    p_e = sub.add_parser("extremal", help="optimality-condition report for an atom set")
    p_e.add_argument("--atoms", help='{"atoms": [[alpha, phi], ...]} inline or a path')
    p_e.add_argument("--n", type=int, default=None, help="target coefficient index")
    p_e.add_argument("--tol", type=float, default=None, help="condition tolerance")
    p_e.add_argument("--emit-profile", help="write phi, Re H samples to this CSV path")
    p_e.add_argument("--job", help="JSON job file with the same parameters")

    p_b = sub.add_parser("bound", help="multi-start search for max |f_n|")
    p_b.add_argument("--n", type=int, default=None, help="target coefficient index")
    p_b.add_argument("--restarts", type=int, default=None)
    p_b.add_argument("--seed", type=int, default=None)
    p_b.add_argument("--out", help="write the search result JSON here")
    p_b.add_argument("--trace", help="write restart,iter,value rows to this CSV path")
    p_b.add_argument("--m-max", type=int, default=None, help="max atoms per candidate")
    p_b.add_argument("--ftol", type=float, default=None)
    p_b.add_argument("--max-iters", type=int, default=None)
    p_b.add_argument("--job", help="JSON job file with the same parameters")

    return parser


_HANDLERS = {"ct": cmd_ct, "fejer": cmd_fejer, "extremal": cmd_extremal, "bound": cmd_bound}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except (CliInputError, KrzyzError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
