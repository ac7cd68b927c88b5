"""Command-line front end for instance analysis, extraction, and check suites.

Subcommands: analyze (canonical form, regularity, critical indices, noise
curve of one threshold function), junta (extraction report and verdict),
sweep (bulk extraction over random families), gaussian (closed-form lower
bound versus Monte Carlo), and checks (the identity and inequality suites).

Output contract: tabular results are CSV with a header row, 17-significant-
digit reals, and a trailing comment line ``# seed=<s> version=<v>``.  The CSV
goes to --out when given, else to stdout.  Human-readable reports (analyze,
junta) print before the CSV and are silenced by --quiet.  Identical run
configuration yields byte-identical CSV.

Exit status: 0 when everything passed or was vacuous, 1 when a verification
check failed, 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from dataclasses import dataclass

import numpy as np

from . import __version__, _bits
from . import junta as junta_mod
from .errors import HsfError, InvalidInputError
from .fncore import random_function, wht
from .junta import TheoremConfig, extract_junta, theorem_verify
from .ltf import (
    canonicalize,
    critical_index,
    load_ltf_file,
    random_ltf,
    regularity_profile,
    truth_table,
)
from .noise import (
    boolean_pair_quadrant_mc,
    constant_bound_check,
    degree_weights,
    gaussian_ns_bound,
    gaussian_ns_mc,
    ns_exact,
    regular_cdf_gap,
    tail_ratio_check,
)
from .restriction import (
    bias_profile,
    ns_aggregation_check,
    restriction_energy_identity,
)

_ANALYZE_TAUS = "0.05,0.1,0.25,0.5,0.75,1"
_ANALYZE_EPSILONS = "0.01,0.05,0.1,0.25,0.5"
_GAUSSIAN_THETAS = "0,0.5,1,2"
_GAUSSIAN_EPSILONS = "0.05,0.25,0.5"
_SWEEP_EPSILONS = "0.05,0.1,0.25"
_SWEEP_DELTAS = "0.05,0.1,0.2"

_JUNTA_HEADER = (
    "case,junta_size,L,ell,ns,premise_bound,premise_holds,distance,guarantee,verdict"
)
_SWEEP_HEADER = (
    "family,rate,instance,n,theta,epsilon,delta,case,junta_size,L,ell,ns,"
    "premise_bound,premise_holds,distance,guarantee,verdict"
)
_GAUSSIAN_HEADER = "theta,rho,bound,mc_value,mc_radius,holds"
_CHECKS_HEADER = "check,instance_seed,lhs,rhs,gap,holds"
_ANALYZE_HEADER = "section,key,value"


@dataclass(frozen=True)
class RunConfig:
    """Everything that determines a command's CSV bytes."""

    command: str
    seed: int
    max_n: int
    params: tuple[tuple[str, str], ...]


def run_config_of(args: argparse.Namespace) -> RunConfig:
    skip = {"func", "command", "seed", "max_n", "out", "quiet"}
    params = tuple(
        sorted((k, str(v)) for k, v in vars(args).items() if k not in skip)
    )
    return RunConfig(command=args.command, seed=args.seed, max_n=args.max_n, params=params)


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return f"{float(value):.17g}"
    text = str(value)
    if any(ch in text for ch in ',"\r\n'):
        text = '"' + text.replace('"', '""') + '"'
    return text


def _emit_csv(args: argparse.Namespace, header: str, rows) -> None:
    lines = [header]
    lines.extend(",".join(_fmt(v) for v in row) for row in rows)
    lines.append(f"# seed={args.seed} version={__version__}")
    payload = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="ascii", newline="") as fh:
            fh.write(payload)
    elif not args.quiet:
        sys.stdout.write(payload)


def _say(args: argparse.Namespace, text: str = "") -> None:
    if not args.quiet:
        print(text)


def _floats(raw: str, flag: str) -> list[float]:
    try:
        values = [float(tok) for tok in raw.split(",") if tok.strip() != ""]
    except ValueError:
        raise InvalidInputError(f"{flag} expects comma-separated reals, got {raw!r}") from None
    if not values:
        raise InvalidInputError(f"{flag} must name at least one value")
    return values


def _families(raw: str) -> list[tuple[str, float | None]]:
    out: list[tuple[str, float | None]] = []
    for token in raw.split(","):
        token = token.strip()
        if not token:
            continue
        name, sep, rate_text = token.partition(":")
        if name in ("geometric", "geometric-decay"):
            if not sep:
                raise InvalidInputError(
                    f"family {token!r} needs a rate, e.g. geometric:0.5"
                )
            try:
                rate = float(rate_text)
            except ValueError:
                raise InvalidInputError(f"bad rate in family {token!r}") from None
            out.append((name, rate))
        elif sep:
            raise InvalidInputError(f"family {name!r} takes no parameter")
        else:
            out.append((name, None))
    if not out:
        raise InvalidInputError("--families must name at least one family")
    return out


def _verdict_counts_as_failure(verdict) -> bool:
    return not verdict.passed


def cmd_analyze(args: argparse.Namespace) -> int:
    lt = load_ltf_file(args.ltf)
    prof = regularity_profile(lt)
    table = truth_table(lt, cap=args.max_n)
    spectrum = wht(table)
    taus = _floats(args.taus, "--taus")
    epsilons = _floats(args.epsilons, "--epsilons")
    weight_by_degree = degree_weights(spectrum)

    rows: list[tuple] = [
        ("meta", "n_inputs", lt.n_inputs),
        ("meta", "n_active", lt.n_active),
        ("meta", "dropped", ";".join(str(c) for c in lt.dropped)),
        ("meta", "theta", lt.theta),
        ("meta", "tau_star", prof.tau_star),
    ]
    rows.extend(("weight", p + 1, float(lt.weights[p])) for p in range(lt.n_active))
    rows.extend(
        ("origin", p + 1, int(lt.original_index[p])) for p in range(lt.n_active)
    )
    rows.extend(("sigma", k + 1, float(prof.tail_norms[k])) for k in range(lt.n_active))
    indices = [(tau, critical_index(lt, tau)) for tau in taus]
    rows.extend(("critical_index", tau, ell) for tau, ell in indices)
    ns_rows = [(eps, ns_exact(spectrum, eps)) for eps in epsilons]
    rows.extend(("ns", eps, value) for eps, value in ns_rows)
    rows.extend(
        ("degree_weight", d, float(weight_by_degree[d]))
        for d in range(table.arity + 1)
    )

    head_tau, head_ell = next(
        ((tau, ell) for tau, ell in indices if ell != math.inf and ell <= args.max_n),
        (None, None),
    )
    if head_ell is not None:
        mask = junta_mod._head_mask(lt, int(head_ell))
        biases = bias_profile(table, mask, head_cap=max(16, int(head_ell))).biases
        rows.extend(
            [
                ("bias", "tau", head_tau),
                ("bias", "ell", int(head_ell)),
                ("bias", "mean", float(np.mean(biases))),
                ("bias", "min_abs", float(np.min(np.abs(biases)))),
                ("bias", "max_abs", float(np.max(np.abs(biases)))),
                ("bias", "frac_unbiased_0.1", float(np.mean(np.abs(biases) <= 0.9))),
            ]
        )

    _say(args, f"input: {args.ltf}")
    _say(
        args,
        f"n_inputs: {lt.n_inputs}  active: {lt.n_active}  "
        f"dropped: {list(lt.dropped) or 'none'}",
    )
    _say(args, f"theta (canonical): {lt.theta:.6g}  tau_star: {prof.tau_star:.6g}")
    _say(args, "weights (sorted, unit norm): "
         + " ".join(f"{w:.6g}" for w in lt.weights))
    _say(args, "tail norms sigma_k: "
         + " ".join(f"{s:.6g}" for s in prof.tail_norms))
    _say(args, "critical indices: "
         + "  ".join(f"tau={tau:g}: {ell}" for tau, ell in indices))
    _say(args, "noise sensitivity: "
         + "  ".join(f"eps={eps:g}: {value:.6g}" for eps, value in ns_rows))
    _say(args, "degree weights: "
         + " ".join(f"{w:.4g}" for w in weight_by_degree))
    if head_ell is not None:
        _say(args, f"critical head at tau={head_tau:g}: ell={head_ell}")
    else:
        _say(args, "critical head: none finite on the tau grid")
    _say(args)
    _emit_csv(args, _ANALYZE_HEADER, rows)
    return 0


def _junta_row(report, verdict) -> tuple:
    d = report.diagnostics
    return (
        report.case,
        report.junta_size,
        d.budget,
        d.critical_idx,
        d.ns_value,
        d.premise_bound,
        d.premise_holds,
        report.distance,
        d.guarantee_bound,
        verdict.label,
    )


def cmd_junta(args: argparse.Namespace) -> int:
    lt = load_ltf_file(args.ltf)
    config = TheoremConfig(c_ns=args.c_ns, c_l=args.c_l, arity_cap=args.max_n)
    report = extract_junta(lt, args.epsilon, args.delta, config)
    verdict = theorem_verify(report)
    d = report.diagnostics
    coords = _bits.bit_positions(report.junta_set)
    _say(args, f"input: {args.ltf}")
    _say(args, f"case: {report.case}")
    _say(args, f"junta coordinates (0-based): {coords or 'none (constant)'}")
    _say(args, f"junta size: {report.junta_size}  budget L: {d.budget}  "
         f"critical index at tau=eps: {d.critical_idx}")
    _say(args, f"distance: {report.distance:.6g}  guarantee: {d.guarantee_bound:.6g}")
    _say(args, f"noise sensitivity: {d.ns_value:.6g}  premise bound: "
         f"{d.premise_bound:.6g}  premise holds: {d.premise_holds}")
    if not math.isnan(d.frac_unbiased):
        _say(args, f"frac unbiased at delta: {d.frac_unbiased:.6g}")
    if not math.isnan(d.residual_sq):
        _say(args, f"projection residual^2: {d.residual_sq:.6g}")
    _say(args, f"within declared validity ranges: {d.within_validity}")
    _say(args, f"verdict: {verdict.label}")
    _say(args)
    _emit_csv(args, _JUNTA_HEADER, [_junta_row(report, verdict)])
    return 0 if verdict.passed else 1


def cmd_sweep(args: argparse.Namespace) -> int:
    families = _families(args.families)
    epsilons = _floats(args.epsilons, "--epsilons")
    deltas = _floats(args.deltas, "--deltas")
    if args.count < 0:
        raise InvalidInputError(f"--count must be nonnegative, got {args.count}")
    config = TheoremConfig(c_ns=args.c_ns, c_l=args.c_l, arity_cap=args.max_n)
    rows: list[tuple] = []
    failed = False
    instance = 0
    for family, rate in families:
        for _ in range(args.count):
            lt = random_ltf(
                args.n, family, rate=rate, theta_law=args.theta_law,
                seed=[args.seed, instance],
            )
            table = truth_table(lt, cap=args.max_n)
            spectrum = wht(table)
            for eps in epsilons:
                for delta in deltas:
                    report = junta_mod._extract_from_table(
                        lt, table, spectrum, eps, delta, config
                    )
                    verdict = theorem_verify(report)
                    failed = failed or _verdict_counts_as_failure(verdict)
                    rows.append(
                        (family, rate, instance, args.n, lt.theta, eps, delta)
                        + _junta_row(report, verdict)
                    )
            instance += 1
    _emit_csv(args, _SWEEP_HEADER, rows)
    return 1 if failed else 0


def cmd_gaussian(args: argparse.Namespace) -> int:
    thetas = _floats(args.theta, "--theta")
    epsilons = _floats(args.epsilon, "--epsilon")
    rows: list[tuple] = []
    failed = False
    k = 0
    for theta in thetas:
        for eps in epsilons:
            rho = 1.0 - 2.0 * eps
            bound = gaussian_ns_bound(theta, eps)
            est = gaussian_ns_mc(theta, rho, args.samples, seed=[args.seed, k])
            holds = est.value >= bound - 4.0 * est.radius
            failed = failed or not holds
            rows.append((theta, rho, bound, est.value, est.radius, holds))
            k += 1
    _emit_csv(args, _GAUSSIAN_HEADER, rows)
    return 1 if failed else 0


def cmd_checks(args: argparse.Namespace) -> int:
    rows: list[tuple] = []
    k = 0

    def add(check: str, seed_idx: int, lhs: float, rhs: float, gap: float, holds: bool):
        rows.append((check, seed_idx, lhs, rhs, gap, holds))

    # Noise sensitivity against the distance-from-constant lower bound.
    for i in range(12):
        f = random_function(4 + (i % 7), seed=[args.seed, k])
        spectrum = wht(f)
        for eps in (0.05, 0.25):
            cb = constant_bound_check(spectrum, eps)
            add("constant-lower-bound", k, cb.ns_value, cb.bound,
                cb.ns_value - cb.bound, cb.holds)
        k += 1

    # Restriction energy identity, worst tail subset per instance.
    for i in range(8):
        f = random_function(8, seed=[args.seed, k])
        rng = np.random.default_rng([args.seed, k, 1])
        head = 0
        for c in rng.choice(8, size=3, replace=False):
            head |= 1 << int(c)
        complement = ((1 << 8) - 1) ^ head
        worst = None
        for subset in _bits.submasks(complement):
            res = restriction_energy_identity(f, head, int(subset))
            if worst is None or res.gap > worst.gap:
                worst = res
        add("restriction-energy", k, worst.lhs, worst.rhs, worst.gap,
            worst.gap <= 1e-9)
        k += 1

    # Noise sensitivity can only shrink on average under restriction.
    for i in range(8):
        f = random_function(8, seed=[args.seed, k])
        rng = np.random.default_rng([args.seed, k, 1])
        head = 0
        for c in rng.choice(8, size=3, replace=False):
            head |= 1 << int(c)
        eps = (0.05, 0.1, 0.25)[i % 3]
        agg = ns_aggregation_check(f, head, eps)
        add("ns-aggregation", k, agg.ns_value, agg.restricted_mean,
            agg.ns_value - agg.restricted_mean, agg.holds)
        k += 1

    # CDF of the linear form against the normal CDF, per the 2 tau* bound.
    for weights, theta in (
        (np.ones(16), 0.0),
        (0.999 ** np.arange(1, 17, dtype=np.float64), 0.0),
    ):
        lt = canonicalize(weights, theta)
        tau_star = regularity_profile(lt).tau_star
        gap = regular_cdf_gap(lt, cap=args.max_n)
        add("cdf-gap", k, gap, 2.0 * tau_star, gap - 2.0 * tau_star,
            gap <= 2.0 * tau_star)
        k += 1

    # Joint quadrant probability of a correlated Boolean pair vs Gaussian.
    maj16 = canonicalize(np.ones(16), 0.0)
    tau_star = regularity_profile(maj16).tau_star
    for eps in (0.1, 0.25):
        q = boolean_pair_quadrant_mc(
            maj16, (0.0, math.inf), (0.0, math.inf), eps, args.samples,
            seed=[args.seed, k],
        )
        allowance = 2.0 * tau_star + q.boolean.radius
        add("quadrant-gap", k, q.boolean.value, q.gaussian, q.gap,
            q.gap <= allowance)
        k += 1

    # Tail-shape ratio stays inside fixed positive constants.
    band = tail_ratio_check(np.arange(0.0, 10.0001, 0.01))
    add("tail-ratio", k, band.minimum, band.maximum,
        band.maximum - band.minimum,
        0.35 <= band.minimum and band.maximum <= 1.0)
    k += 1

    # Monte Carlo Gaussian disagreement against the closed-form lower bound.
    for theta in (0.0, 1.0):
        for eps in (0.05, 0.5):
            rho = 1.0 - 2.0 * eps
            bound = gaussian_ns_bound(theta, eps)
            est = gaussian_ns_mc(theta, rho, args.samples, seed=[args.seed, k])
            add("gaussian-lower-bound", k, est.value, bound,
                est.value - bound, est.value >= bound - 4.0 * est.radius)
            k += 1

    _emit_csv(args, _CHECKS_HEADER, rows)
    return 0 if all(row[5] for row in rows) else 1


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None,
                        help="base seed (fallback: HSF_SEED env, then 0)")
    common.add_argument("--max-n", type=int, default=20, dest="max_n",
                        help="arity cap for exact operations (up to 24)")
    common.add_argument("--out", default=None, help="write the CSV here")
    common.add_argument("--quiet", action="store_true",
                        help="suppress stdout reports")

    parser = argparse.ArgumentParser(
        prog="hsf",
        description="Fourier, noise-sensitivity, and junta analysis of halfspaces",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common],
                       help="canonical form, regularity, and noise profile")
    p.add_argument("--ltf", required=True, help="threshold function file")
    p.add_argument("--taus", default=_ANALYZE_TAUS)
    p.add_argument("--epsilons", default=_ANALYZE_EPSILONS)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("junta", parents=[common],
                       help="extract a junta approximator and verify it")
    p.add_argument("--ltf", required=True)
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--c-ns", type=float, default=1.0, dest="c_ns")
    p.add_argument("--c-l", type=float, default=1.0, dest="c_l")
    p.set_defaults(func=cmd_junta)

    p = sub.add_parser("sweep", parents=[common],
                       help="bulk extraction over random instance families")
    p.add_argument("--families", required=True,
                   help="comma list: equal, gaussian, geometric:<rate>")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--epsilons", default=_SWEEP_EPSILONS)
    p.add_argument("--deltas", default=_SWEEP_DELTAS)
    p.add_argument("--theta-law", default="gaussian:1", dest="theta_law")
    p.add_argument("--c-ns", type=float, default=1.0, dest="c_ns")
    p.add_argument("--c-l", type=float, default=1.0, dest="c_l")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("gaussian", parents=[common],
                       help="Gaussian noise-sensitivity bound vs Monte Carlo")
    p.add_argument("--theta", default=_GAUSSIAN_THETAS)
    p.add_argument("--epsilon", default=_GAUSSIAN_EPSILONS)
    p.add_argument("--samples", type=int, default=1_000_000)
    p.set_defaults(func=cmd_gaussian)

    p = sub.add_parser("checks", parents=[common],
                       help="run the identity and inequality suites")
    p.add_argument("--samples", type=int, default=200_000)
    p.set_defaults(func=cmd_checks)

    return parser


def _resolve_seed(args: argparse.Namespace) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("HSF_SEED")
    if env is not None and env != "":
        try:
            return int(env)
        except ValueError:
            raise InvalidInputError(f"HSF_SEED must be an integer, got {env!r}") from None
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    try:
        args.seed = _resolve_seed(args)
        if not 1 <= args.max_n <= 24:
            raise InvalidInputError(f"--max-n must be in [1, 24], got {args.max_n}")
        return args.func(args)
    except HsfError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
