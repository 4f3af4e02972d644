"""Command-line interface: ``fixsum <verb> ...``.

Exit codes: 0 success, 1 verification mismatch, 2 unknown family or
command, 3 invalid arguments.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence

from . import __version__
from .asymptotics import estimate_parameters, measured_mu
from .errors import FixsumError, UnknownFamily, UnsupportedFamily
from .families import family_D, family_G, get_family, list_families
from .kernel import KernelParams, c_k, kernel_K, predicted_scaled
from .profile import brute_force_profile, exact_profile, scaled_profile
from .sampler import SampleConfig, empirical_distribution

EXIT_OK, EXIT_MISMATCH, EXIT_UNKNOWN, EXIT_INVALID = 0, 1, 2, 3

# exact probabilities in `sample` output are computed up to this n
SAMPLE_EXACT_LIMIT = 300


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        about_command = message.startswith("argument command") or message.endswith("required: command")
        raise CliError(message, EXIT_UNKNOWN if about_command else EXIT_INVALID)


class Output:
    def __init__(self, fmt: str, out: Optional[str], precision: int):
        self.fmt = fmt
        self.out = out
        self.precision = precision

    def _real(self, x: float) -> str:
        return format(x, f".{self.precision}g")

    def _cell(self, value: Any) -> str:
        if value is None:
            return ""
        if isinstance(value, bool):
            return "true" if value else "false"
        if isinstance(value, int):
            return str(value)
        if isinstance(value, float):
            return self._real(value)
        return str(value)

    def _json_value(self, value: Any) -> Any:
        if isinstance(value, float):
            return float(self._real(value)) if math.isfinite(value) else None
        return value

    def emit(self, columns: Sequence[str], rows: List[Sequence[Any]], metadata: Dict[str, Any],
             summary: Optional[Dict[str, Any]] = None) -> None:
        if self.fmt == "json":
            doc = {
                "metadata": {k: self._json_value(v) for k, v in metadata.items()},
                "columns": list(columns),
                "rows": [{c: self._json_value(v) for c, v in zip(columns, row)} for row in rows],
            }
            if summary is not None:
                doc["summary"] = {k: self._json_value(v) for k, v in summary.items()}
            text = json.dumps(doc, indent=2) + "\n"
        else:
            buf = io.StringIO()
            writer = csv.writer(buf, lineterminator="\n")
            writer.writerow(columns)
            for row in rows:
                writer.writerow([self._cell(v) for v in row])
            text = buf.getvalue()
        if self.out:
            with open(self.out, "w", newline="") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)


def _family(name: str):
    try:
        return get_family(name)
    except UnknownFamily as exc:
        raise CliError(str(exc), EXIT_UNKNOWN) from None


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise CliError(message, EXIT_INVALID)


def _meta(command: str, **extra) -> Dict[str, Any]:
    meta = {"command": command, "version": __version__}
    meta.update(extra)
    return meta


def cmd_profile(args, out: Output) -> int:
    fam = _family(args.family)
    _require(args.n >= 0, "n must be nonnegative")
    _require(args.r_max is None or args.r_max >= 0, "r_max must be nonnegative")
    prof = exact_profile(fam, args.n, args.r_max)
    rows = [(r, v) for r, v in enumerate(prof.dense())]
    out.emit(["r", "f_n_r"], rows, _meta("profile", family=fam.id, n=args.n, r_max=prof.r_max))
    return EXIT_OK


def kernel_grid(alpha_min: float, alpha_max: float, step: float) -> List[float]:
    count = math.floor((alpha_max - alpha_min) / step + 1e-9) + 1
    return [round(alpha_min + i * step, 12) for i in range(count)]


def cmd_kernel(args, out: Output) -> int:
    _require(args.mu > 0 and math.isfinite(args.mu), "mu must be positive")
    _require(args.step > 0, "step must be positive")
    _require(0 < args.alpha_min <= args.alpha_max, "need 0 < alpha_min <= alpha_max")
    params = KernelParams(args.mu)
    rows = []
    for alpha in kernel_grid(args.alpha_min, args.alpha_max, args.step):
        rows.append([alpha] + [c_k(k, alpha) for k in range(2, 7)]
                    + [kernel_K(params, alpha), predicted_scaled(params, alpha)])
    columns = ["alpha"] + [f"c_{k}" for k in range(2, 7)] + ["K_mu", "predicted"]
    out.emit(columns, rows, _meta("kernel", mu=args.mu))
    return EXIT_OK


def cmd_poisson(args, out: Output) -> int:
    fam = _family(args.family)
    _require(args.n >= 3, "n must be at least 3")
    _require(args.k_max >= 0, "k_max must be nonnegative")
    diag = estimate_parameters(fam, args.n, args.k_max)
    estimates = {"rho_hat": diag.rho_hat, "C_hat": diag.C_hat,
                 "lambda_hat": diag.lambda_hat, "mu_hat": diag.mu_hat}
    rows = [[row.k, row.observed, row.poisson, *estimates.values()] for row in diag.pmf_rows]
    out.emit(["k", "observed", "poisson", *estimates], rows,
             _meta("poisson", family=fam.id, n=args.n, k_max=args.k_max), summary=estimates)
    return EXIT_OK


def cmd_compare(args, out: Output) -> int:
    fam = _family(args.family)
    _require(args.n >= 2, "n must be at least 2")
    _require(0 < args.alpha_min < args.alpha_max, "need 0 < alpha_min < alpha_max")
    if args.mu == "auto":
        mu = measured_mu(fam, args.n)
    else:
        try:
            mu = float(args.mu)
        except ValueError:
            raise CliError(f"mu must be a number or 'auto', got {args.mu!r}", EXIT_INVALID) from None
    _require(0 < mu < math.inf, "mu must be positive and finite")
    sp = scaled_profile(fam, args.n, args.alpha_min, args.alpha_max, mu)
    rows = [["row", row.r, row.alpha, row.scaled, row.predicted, abs(row.scaled - row.predicted)]
            for row in sp.rows]
    deviation = sp.deviation()
    rows.append(["summary", None, None, None, None, deviation])
    out.emit(["kind", "r", "alpha", "scaled", "predicted", "abs_diff"], rows,
             _meta("compare", family=fam.id, n=args.n, mu=mu),
             summary={"gap_deviation": deviation})
    return EXIT_OK


def cmd_oracle(args, out: Output) -> int:
    fam = _family(args.family)
    _require(0 <= args.n <= fam.supports_bruteforce_up_to,
             f"{fam.id}: n must be in [0, {fam.supports_bruteforce_up_to}]")
    exact = exact_profile(fam, args.n)
    brute = brute_force_profile(fam, args.n)
    rows = [(r, e, b, e - b) for r, (e, b) in enumerate(zip(exact.dense(), brute.dense()))]
    mismatches = sum(1 for row in rows if row[3])
    out.emit(["r", "exact", "brute_force", "diff"], rows,
             _meta("oracle", family=fam.id, n=args.n, mismatches=mismatches))
    return EXIT_MISMATCH if mismatches else EXIT_OK


def cmd_sample(args, out: Output) -> int:
    fam = _family(args.family)
    _require(args.n >= 0, "n must be nonnegative")
    _require(args.trials >= 1, "trials must be positive")
    _require(0 <= args.seed < 2**64, "seed must be a 64-bit unsigned integer")
    if not fam.supports_sampling:
        raise CliError(f"{fam.id} does not support sampling", EXIT_UNKNOWN)
    config = SampleConfig(fam.id, args.n, args.trials, args.seed, args.conditioned)
    hist = empirical_distribution(config)
    exact = None
    if args.n <= SAMPLE_EXACT_LIMIT:
        prof = exact_profile(fam, args.n)
        total = family_G(fam, args.n)
        if args.conditioned:
            total -= family_D(fam, args.n)
        exact = (prof, total)
    support = sorted(set(hist.counts) | (
        {r for r, v in exact[0].values.items() if v and (r or not args.conditioned)} if exact else set()))
    rows = []
    for r in support:
        exact_prob = float(Fraction(exact[0][r], exact[1])) if exact and exact[1] else None
        rows.append([r, hist.counts.get(r, 0), hist.probability(r), exact_prob,
                     hist.stderr.get(r, 0.0), args.seed, args.trials, hist.rejections])
    out.emit(["r", "count", "empirical_prob", "exact_prob", "stderr", "seed", "trials", "rejections"],
             rows,
             _meta("sample", family=fam.id, n=args.n, seed=args.seed, trials=args.trials,
                   conditioned=args.conditioned, rejections=hist.rejections))
    return EXIT_OK


def cmd_families(args, out: Output) -> int:
    columns = ["id", "exact_C_decomposable", "nominal_C", "supports_sampling",
               "supports_bruteforce_up_to", "description"]
    rows = [[f.id, f.exact_C_decomposable, f.nominal_C, f.supports_sampling,
             f.supports_bruteforce_up_to, f.description] for f in list_families()]
    out.emit(columns, rows, _meta("families"))
    return EXIT_OK


def _output_flags(parser: argparse.ArgumentParser, suppress: bool) -> None:
    default = (lambda value: argparse.SUPPRESS) if suppress else (lambda value: value)
    parser.add_argument("--format", choices=("csv", "json"), default=default("csv"))
    parser.add_argument("--out", metavar="PATH", default=default(None),
                        help="write to PATH instead of standard output")
    parser.add_argument("--precision", type=int, default=default(10),
                        help="significant digits for real columns (default 10)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fixsum", description="Fixed-point label sums of labeled structures.")
    parser.add_argument("--version", action="version", version=f"fixsum {__version__}")
    _output_flags(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def verb(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        _output_flags(p, suppress=True)
        p.set_defaults(func=func)
        return p

    p = verb("profile", cmd_profile, "exact f(n, r) for every r")
    p.add_argument("family")
    p.add_argument("n", type=int)
    p.add_argument("--r-max", type=int, default=None)

    p = verb("kernel", cmd_kernel, "c_2..c_6, K_mu and the predicted profile on an alpha grid")
    p.add_argument("mu", type=float)
    p.add_argument("alpha_min", type=float)
    p.add_argument("alpha_max", type=float)
    p.add_argument("step", type=float)

    p = verb("poisson", cmd_poisson, "parameter estimates and fixed-point pmf")
    p.add_argument("family")
    p.add_argument("n", type=int)
    p.add_argument("k_max", type=int)

    p = verb("compare", cmd_compare, "scaled profile against the predicted limit")
    p.add_argument("family")
    p.add_argument("n", type=int)
    p.add_argument("mu", help="kernel parameter, or 'auto' for n g(2,n)/g(1,n)")
    p.add_argument("alpha_min", type=float)
    p.add_argument("alpha_max", type=float)

    p = verb("oracle", cmd_oracle, "exact profile against brute-force enumeration")
    p.add_argument("family")
    p.add_argument("n", type=int)

    p = verb("sample", cmd_sample, "Monte-Carlo histogram of the fixed-point sum")
    p.add_argument("family")
    p.add_argument("n", type=int)
    p.add_argument("trials", type=int)
    p.add_argument("seed", type=int)
    p.add_argument("--conditioned", action="store_true",
                   help="keep only structures with at least one fixed point")

    verb("families", cmd_families, "list registered families")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        _require(args.precision >= 1, "precision must be positive")
        return args.func(args, Output(args.format, args.out, args.precision))
    except CliError as exc:
        print(f"fixsum: {exc}", file=sys.stderr)
        return exc.code
    except (UnknownFamily, UnsupportedFamily) as exc:
        print(f"fixsum: {exc}", file=sys.stderr)
        return EXIT_UNKNOWN
    except (FixsumError, ValueError) as exc:
        print(f"fixsum: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
