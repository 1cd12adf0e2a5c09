"""Command-line front end: ``stieltjes-pade <subcommand> ...``.

Exit codes: 0 success, 1 numerical failure (e.g. a Padé approximant that does
not exist), 2 invalid input or configuration, 3 reconstruction that did not
converge or failed its certificate (best-effort JSON is still written).
"""
from __future__ import annotations

import argparse
import csv
import json
import sys

import numpy as np

from . import benchmarks
from .errors import DomainError, NonExistenceError, StieltjesError
from .inverse import ReconstructionConfig, reconstruct
from .io import fmt, load_measure, poles_to_json, read_dataset, result_to_json
from .materials import MODEL_KINDS, CompositeModel, effective_F, spectral_measure_of
from .measure import moments
from .pade import pade_for_G, solve_standard_pade, verify_accuracy_through_order
from .spectral import pade_table_diff, sn_equivalent, to_nonstandard, to_pole_residue
from .stieltjes import eval_F

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_NOT_CONVERGED = 0, 1, 2, 3


class InputError(Exception):
    """Bad command-line input; reported with exit code 2."""


def _source(args):
    """(measure, model or None) from ``--model``/``--p`` or ``--measure``."""
    if (args.model is None) == (args.measure is None):
        raise InputError("give exactly one of --model or --measure")
    if args.measure is not None:
        return load_measure(args.measure), None
    model = CompositeModel(args.model, args.p)
    return spectral_measure_of(model), model


def _parse_complex_list(text):
    try:
        return np.array([complex(v.replace(" ", "")) for v in text.split(",") if v.strip()])
    except ValueError as exc:
        raise InputError(f"bad --s list: {exc}") from None


def _emit(text, path):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="") as fh:
            fh.write(text)


def _dump_json(obj, path):
    _emit(json.dumps(obj, indent=2) + "\n", path)


# subcommands ---------------------------------------------------------------

def cmd_forward(args):
    measure, model = _source(args)
    if args.s is not None and args.sweep is not None:
        raise InputError("give either --s or --sweep, not both")
    if args.s is not None:
        s = _parse_complex_list(args.s)
    else:
        w = benchmarks.benchmark_omegas(args.sweep or 12)
        s = w ** 2 + 1j * w
    if len(s) == 0:
        raise InputError("empty s grid")
    F = effective_F(model, s) if model is not None else eval_F(measure, s)
    F = np.atleast_1d(np.asarray(F, dtype=complex))
    if args.noise:
        rng = np.random.default_rng(args.seed)
        eta = (rng.standard_normal(len(s)) + 1j * rng.standard_normal(len(s))) / np.sqrt(2.0)
        F = F * (1.0 + args.noise * eta)
    lines = ["re_s,im_s,re_F,im_F"]
    lines += [",".join(fmt(v) for v in (sk.real, sk.imag, Fk.real, Fk.imag)) for sk, Fk in zip(s, F)]
    _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def cmd_moments(args):
    measure, _ = _source(args)
    mu = moments(measure, args.count)
    if args.json:
        _dump_json({"moments": [float(m) for m in mu]}, args.output)
    else:
        _emit("".join(f"{k} {fmt(m)}\n" for k, m in enumerate(mu)), args.output)
    return EXIT_OK


def cmd_pade(args):
    measure, _ = _source(args)
    M = args.M
    L = M - 1 if args.L is None else args.L
    mu = moments(measure, max(L + M + 1, args.count or 0))
    if args.target == "G":
        approx = pade_for_G(mu, L, M)
    else:
        approx = solve_standard_pade(mu, L, M)
    report = verify_accuracy_through_order(approx, mu)
    out = {"L": L, "M": M, "target": approx.target,
           "numerator": [float(a) for a in approx.numerator],
           "denominator": [float(b) for b in approx.denominator],
           "accuracy": {"passed": report.passed, "max_deviation": report.max_deviation,
                        "tolerance": report.tolerance}}
    print(f"[{L}/{M}]_{approx.target}  accuracy-through-order: "
          f"{'pass' if report.passed else 'FAIL'} (max deviation {report.max_deviation:.3e})",
          file=sys.stderr)
    if args.target == "f" and L == M - 1:
        try:
            s_form, _ = to_nonstandard(to_pole_residue(approx))
        except StieltjesError as exc:
            out["pole_residue_error"] = f"{type(exc).__name__}: {exc}"
        else:
            out["s_form"] = poles_to_json(s_form)
            out["s_form"]["certificate"] = {"passed": s_form.certificate.passed,
                                            "failures": list(s_form.certificate.failures)}
            print(_pole_table(s_form), file=sys.stderr)
    _dump_json(out, args.output)
    return EXIT_OK if report.passed else EXIT_FAIL


def _pole_table(form):
    rows = ["      s_n                      A_n"]
    rows += [f"  {p:<24.17g} {r:.17g}" for p, r in form.pairs]
    return "\n".join(rows)


def cmd_reconstruct(args):
    data = read_dataset(args.data, noise_level=args.noise_level)
    config = ReconstructionConfig(args.M, args.max_iterations, args.tolerance,
                                  args.multistart, args.seed, args.moment_count)
    config.check_against(len(data))
    result = reconstruct(data, config)
    print(_pole_table(result.form))
    print("moments:")
    for k, m in enumerate(result.moments):
        print(f"  mu_{k} = {fmt(m)}")
    print(f"residual (rms) = {result.residual:.3e}, relative = {result.relative_residual:.3e}")
    print(f"converged: {result.converged}, certificate: "
          f"{'pass' if result.certificate.passed else 'FAIL ' + '; '.join(result.certificate.failures)}")
    for note in result.diagnostics:
        print(f"note: {note}")
    if args.output:
        _dump_json(result_to_json(result), args.output)
    ok = result.converged and result.certificate.passed
    return EXIT_OK if ok else EXIT_NOT_CONVERGED


def cmd_equivalence(args):
    a, b = load_measure(args.a), load_measure(args.b)
    count = args.N + 1
    mu_a, mu_b = moments(a, count).values, moments(b, count).values
    agree_all = True
    print("N  moment-match  pade-table-match")
    for N in range(1, args.N + 1):
        by_moments = sn_equivalent(mu_a, mu_b, N)
        diffs = pade_table_diff(mu_a, mu_b, N)
        notes = [f"[{L}/{M}]: {d}" for (L, M), d in diffs.items() if isinstance(d, Exception)]
        by_table = not notes and all(d <= 1e-9 for d in diffs.values())
        agree_all &= by_moments == by_table
        line = f"{N:<2} {str(by_moments):<13} {str(by_table)}"
        if by_moments != by_table:
            line += "  DISAGREE"
        print(line)
        for note in notes:
            print(f"     note {note}")
    return EXIT_OK if agree_all else EXIT_FAIL


def cmd_benchmark(args):
    if args.suite not in benchmarks.SUITES:
        raise InputError(f"unknown suite {args.suite!r}; choose from {sorted(benchmarks.SUITES)}")
    rows = benchmarks.run_suite(args.suite, args.seed)
    for row in rows:
        print(f"{'PASS' if row.passed else 'FAIL'}  {row.seconds:7.3f} s  {row.name}: {row.detail}")
    if args.suite == "noise":
        med = benchmarks.noise_table(base_seed=args.seed)
        print("moment  median relative error")
        for k, e in enumerate(med):
            print(f"mu_{k}    {e:.3e}")
    return EXIT_OK if all(r.passed for r in rows) else EXIT_FAIL


# parser --------------------------------------------------------------------

def _add_source(p):
    p.add_argument("--model", choices=MODEL_KINDS, help="closed-form composite model")
    p.add_argument("--p", type=float, default=0.5, help="volume fraction of phase 2")
    p.add_argument("--measure", help="measure JSON file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="stieltjes-pade", description=__doc__.splitlines()[0])
    parser.add_argument("--seed", type=int, default=0, help="seed for all randomness")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("forward", help="evaluate F(s) on a grid, write CSV")
    _add_source(p)
    p.add_argument("--s", help="comma-separated complex s values, e.g. '2,3,1+1j'")
    p.add_argument("--sweep", type=int, help="N-point lossy Drude sweep s = w^2 + i w")
    p.add_argument("--noise", type=float, default=0.0, help="multiplicative noise level")
    p.add_argument("-o", "--output", help="CSV path (default stdout)")
    p.set_defaults(func=cmd_forward)

    p = sub.add_parser("moments", help="print moments mu_0..mu_{count-1}")
    _add_source(p)
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--json", action="store_true")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_moments)

    p = sub.add_parser("pade", help="build an [L/M] Padé approximant from moments")
    _add_source(p)
    p.add_argument("--M", type=int, required=True)
    p.add_argument("--L", type=int, help="numerator degree (default M-1)")
    p.add_argument("--target", choices=("f", "G"), default="f")
    p.add_argument("--count", type=int, help="moments to compute (default L+M+1)")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_pade)

    p = sub.add_parser("reconstruct", help="fit an M-pole form to frequency data")
    p.add_argument("data", help="dataset CSV")
    p.add_argument("--M", type=int, required=True)
    p.add_argument("--max-iterations", type=int, default=500)
    p.add_argument("--tolerance", type=float, default=1e-10)
    p.add_argument("--multistart", type=int, default=8)
    p.add_argument("--moment-count", type=int, default=10)
    p.add_argument("--noise-level", type=float, default=0.0)
    p.add_argument("-o", "--output", help="result JSON path")
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("equivalence", help="compare two measures for N = 1..N")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--N", type=int, default=6)
    p.set_defaults(func=cmd_equivalence)

    p = sub.add_parser("benchmark", help="run a benchmark suite")
    p.add_argument("suite", help=f"one of {sorted(benchmarks.SUITES)}")
    p.set_defaults(func=cmd_benchmark)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for name in ("count", "M", "N", "sweep"):
        v = getattr(args, name, None)
        if v is not None and v < (0 if name == "count" else 1):
            print(f"error: --{name} must be positive", file=sys.stderr)
            return EXIT_INPUT
    try:
        return args.func(args)
    except (InputError, DomainError, ValueError, OSError, json.JSONDecodeError,
            csv.Error) as exc:
        # SchemaError, ConfigurationError and DegenerateContrastError are ValueErrors
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NonExistenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except StieltjesError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
