"""Command-line surface: every computation in the package, emitted as CSV or JSON.

Each subcommand builds its complete payload in memory before printing, so
output is never partial.  CSV payloads carry the parameter echo as leading
"# key=value" comment lines; JSON payloads carry it in a "params" object.
Exact rationals are emitted both as "num/den" strings and as decimals with
12 significant digits.
"""

import argparse
import csv
import io
import json
import os
import sys
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import counting, distributions, oracle, sampling
from .gf import Field, is_prime, make_field

SEED_ENV_VAR = "RANKWEIGHT_SEED"


def default_seed() -> int:
    raw = os.environ.get(SEED_ENV_VAR)
    return int(raw) if raw else sampling.DEFAULT_SEED


def fraction_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def decimal_str(x, digits: int = 12) -> str:
    """Render a rational or Decimal with 12 significant digits."""
    with localcontext() as ctx:
        ctx.prec = digits
        if isinstance(x, Fraction):
            d = Decimal(x.numerator) / Decimal(x.denominator)
        else:
            d = +Decimal(x)
    return format(d, "f")


class _Parser(argparse.ArgumentParser):
    # One-line diagnostics on stderr, exit status 2, no usage dump.
    def error(self, message):
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(2)


def _field_from_args(args) -> Field:
    if args.p is not None:
        return make_field(args.p, args.e, args.modulus)
    if args.q is None:
        raise ValueError("a field is required: pass --q (prime) or --p/--e")
    if not is_prime(args.q):
        raise ValueError(
            f"q={args.q} is not prime; pass --p and --e (and optionally --modulus) instead"
        )
    return make_field(args.q)


def _parse_modulus(text: str) -> Tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("modulus must be comma-separated integers, lowest degree first")


def _parse_sizes(text: str) -> Tuple[int, ...]:
    try:
        sizes = tuple(int(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("sizes must be comma-separated integers")
    if not sizes:
        raise argparse.ArgumentTypeError("at least one size is required")
    return sizes


def _render_csv(params: Dict, header: Sequence[str], rows: Sequence[Sequence],
                comments: Sequence[str] = ()) -> str:
    buf = io.StringIO()
    for key, value in params.items():
        buf.write(f"# {key}={value}\n")
    for line in comments:
        buf.write(f"# {line}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _render_json(payload: Dict) -> str:
    return json.dumps(payload, indent=2) + "\n"


# -- subcommand handlers ------------------------------------------------------


def _cmd_count(args) -> str:
    count = counting.count_rank_matrices(args.m, args.n, args.k, args.q)
    gb = counting.gaussian_binomial(args.m, args.k, args.q)
    tuples = counting.count_independent_tuples(args.n, args.k, args.q)
    params = {"m": args.m, "n": args.n, "k": args.k, "q": args.q}
    if args.format == "json":
        return _render_json({
            "params": params,
            "count": count,
            "gaussian_binomial": gb,
            "independent_tuples": tuples,
            "total_matrices": args.q ** (args.m * args.n),
        })
    rows = [
        ("rank_matrices", count),
        ("gaussian_binomial", gb),
        ("independent_tuples", tuples),
        ("total_matrices", args.q ** (args.m * args.n)),
    ]
    return _render_csv(params, ("quantity", "value"), rows)


def _cmd_avg_weight(args) -> str:
    params = {"m": args.m, "n": args.n, "k": args.k, "q": args.q}
    avg = distributions.average_weight(args.m, args.n, args.k, args.q)
    quantities: List[Tuple[str, Fraction]] = [("average_weight", avg)]
    if args.k >= 1:
        prob = distributions.entry_nonzero_prob(args.m, args.n, args.k, args.q)
        pr_c, pr_r = distributions.cr_component_probs(args.m, args.n, args.k, args.q)
        quantities += [
            ("entry_nonzero_prob", prob),
            ("pr_c11_nonzero", pr_c),
            ("pr_r11_nonzero", pr_r),
        ]
    if args.format == "json":
        return _render_json({
            "params": params,
            **{
                name: {"fraction": fraction_str(v), "decimal": decimal_str(v)}
                for name, v in quantities
            },
        })
    rows = [(name, fraction_str(v), decimal_str(v)) for name, v in quantities]
    return _render_csv(params, ("quantity", "fraction", "decimal"), rows)


def _moment_fields(moments: distributions.MomentSummary) -> List[Tuple[str, str, str]]:
    return [
        ("mean", fraction_str(moments.mean), decimal_str(moments.mean)),
        ("variance", fraction_str(moments.variance), decimal_str(moments.variance)),
        ("sd", "", decimal_str(moments.sd)),
        ("raw_mean", fraction_str(moments.raw_mean), decimal_str(moments.raw_mean)),
        ("raw_second_moment", fraction_str(moments.raw_second_moment),
         decimal_str(moments.raw_second_moment)),
        ("raw_variance", fraction_str(moments.raw_variance), decimal_str(moments.raw_variance)),
        ("raw_sd", "", decimal_str(moments.raw_sd)),
    ]


def _cmd_rank1_pmf(args) -> str:
    params = {"m": args.m, "n": args.n, "q": args.q}
    pmf = distributions.rank1_weight_pmf(args.m, args.n, args.q)
    moments = distributions.rank1_moments(args.m, args.n, args.q)
    mu = float(moments.mean)
    sd = float(moments.sd)
    header = ["weight", "pmf_num_den", "pmf_decimal"]
    if args.cumulative:
        header.append("cdf")
    if args.normal_overlay:
        header.append("normal_cdf")
    rows = []
    cum = Fraction(0)
    for w in sorted(pmf):
        cum += pmf[w]
        row: List = [w, fraction_str(pmf[w]), decimal_str(pmf[w])]
        if args.cumulative:
            row.append(decimal_str(cum))
        if args.normal_overlay:
            row.append(f"{distributions.normal_cdf((w - mu) / sd):.12g}")
        rows.append(row)
    if args.format == "json":
        payload = {
            "params": params,
            "moments": {name: value for name, _, value in _moment_fields(moments)},
            "columns": header,
            "rows": rows,
        }
        return _render_json(payload)
    comments = [f"{name}={value}" for name, _, value in _moment_fields(moments)]
    return _render_csv(params, header, rows, comments=comments)


def _cmd_moments(args) -> str:
    params = {"m": args.m, "n": args.n, "q": args.q}
    fields = _moment_fields(distributions.rank1_moments(args.m, args.n, args.q))
    if args.format == "json":
        return _render_json({
            "params": params,
            **{
                name: ({"fraction": frac, "decimal": dec} if frac else {"decimal": dec})
                for name, frac, dec in fields
            },
        })
    return _render_csv(params, ("quantity", "fraction", "decimal"), fields)


def _cmd_oracle(args) -> str:
    field = _field_from_args(args)
    table = oracle.enumerate_joint(args.m, args.n, field, cap=args.cap, workers=args.threads)
    params = {"m": args.m, "n": args.n, "q": field.q, "cap": args.cap}
    if args.format == "json":
        return _render_json({
            "params": params,
            "columns": ["rank", "weight", "count"],
            "rows": [[r, w, table.counts[r, w]] for r, w in sorted(table.counts)],
        })
    rows = [(r, w, table.counts[r, w]) for r, w in sorted(table.counts)]
    return _render_csv(params, ("rank", "weight", "count"), rows)


def _cmd_entry_counts(args) -> str:
    field = _field_from_args(args)
    table = oracle.enumerate_entry_counts(args.m, args.n, field, args.k,
                                          cap=args.cap, workers=args.threads)
    params = {"m": args.m, "n": args.n, "k": args.k, "q": field.q, "cap": args.cap}
    if args.format == "json":
        return _render_json({"params": params, "grid": [list(r) for r in table.counts]})
    rows = [(i, j, table.counts[i][j]) for i in range(args.m) for j in range(args.n)]
    return _render_csv(params, ("row", "col", "count"), rows)


def _cmd_sample(args) -> str:
    field = _field_from_args(args)
    stream = sampling.RandomStream(args.seed)
    mats = [
        sampling.sample_rank_k(args.m, args.n, args.k, field, stream)
        for _ in range(args.samples)
    ]
    params = {"m": args.m, "n": args.n, "k": args.k, "q": field.q,
              "seed": args.seed, "samples": args.samples}
    if args.format == "json":
        return _render_json({
            "params": params,
            "matrices": [[list(mat.row(i)) for i in range(mat.nrows)] for mat in mats],
        })
    rows = [
        (s, i, j, mat[i, j])
        for s, mat in enumerate(mats)
        for i in range(mat.nrows)
        for j in range(mat.ncols)
    ]
    return _render_csv(params, ("sample", "row", "col", "value"), rows)


def _cmd_empirical(args) -> str:
    field = _field_from_args(args)
    stream = sampling.RandomStream(args.seed)
    pmf = sampling.empirical_weight_pmf(args.m, args.n, args.k, field, args.samples,
                                        stream, workers=args.threads)
    params = {"m": args.m, "n": args.n, "k": args.k, "q": field.q,
              "seed": args.seed, "samples": args.samples}
    freq = pmf.frequencies()
    if args.format == "json":
        return _render_json({
            "params": params,
            "columns": ["weight", "count", "frequency"],
            "rows": [[w, pmf.counts[w], decimal_str(freq[w])] for w in sorted(pmf.counts)],
        })
    rows = [(w, pmf.counts[w], decimal_str(freq[w])) for w in sorted(pmf.counts)]
    return _render_csv(params, ("weight", "count", "frequency"), rows)


def _cmd_clt(args) -> str:
    params = {"sizes": ",".join(str(s) for s in args.sizes), "q": args.q}
    rows = []
    for s in args.sizes:
        pmf = distributions.rank1_weight_pmf(s, s, args.q)
        moments = distributions.rank1_moments(s, s, args.q)
        rows.append((
            s,
            f"{distributions.ks_distance_to_normal(pmf):.12g}",
            decimal_str(moments.mean),
            decimal_str(moments.sd),
        ))
    if args.format == "json":
        return _render_json({
            "params": params,
            "columns": ["size", "ks_distance", "mean", "sd"],
            "rows": [list(r) for r in rows],
        })
    return _render_csv(params, ("size", "ks_distance", "mean", "sd"), rows)


# -- parser -------------------------------------------------------------------


def _add_dims(sub, *, k: bool) -> None:
    sub.add_argument("--m", type=int, required=True, help="number of rows")
    sub.add_argument("--n", type=int, required=True, help="number of columns")
    if k:
        sub.add_argument("--k", type=int, required=True, help="rank")


def _add_field_args(sub) -> None:
    sub.add_argument("--q", type=int, help="field order (must be prime here)")
    sub.add_argument("--p", type=int, help="field characteristic (prime)")
    sub.add_argument("--e", type=int, default=1, help="extension degree (default 1)")
    sub.add_argument("--modulus", type=_parse_modulus,
                     help="irreducible modulus coefficients, lowest degree first, e.g. 1,1,1")


def _add_output_args(sub) -> None:
    sub.add_argument("--format", choices=("csv", "json"), default="csv")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="rankweight",
                     description="Exact rank/weight statistics of matrices over finite fields.")
    commands = parser.add_subparsers(dest="command", required=True)

    sub = commands.add_parser("count", help="exact count of rank-k m-by-n matrices")
    _add_dims(sub, k=True)
    sub.add_argument("--q", type=int, required=True, help="field order (any integer >= 2)")
    _add_output_args(sub)
    sub.set_defaults(handler=_cmd_count)

    sub = commands.add_parser("avg-weight", help="closed-form average weight of rank-k matrices")
    _add_dims(sub, k=True)
    sub.add_argument("--q", type=int, required=True, help="field order (any integer >= 2)")
    _add_output_args(sub)
    sub.set_defaults(handler=_cmd_avg_weight)

    sub = commands.add_parser("rank1-pmf", help="exact weight pmf of rank-one matrices")
    _add_dims(sub, k=False)
    sub.add_argument("--q", type=int, required=True, help="field order (any integer >= 2)")
    sub.add_argument("--cumulative", action="store_true", help="add a cdf column")
    sub.add_argument("--normal-overlay", action="store_true",
                     help="add the moment-matched normal cdf column")
    _add_output_args(sub)
    sub.set_defaults(handler=_cmd_rank1_pmf)

    sub = commands.add_parser("moments", help="closed-form moments of the rank-one weight")
    _add_dims(sub, k=False)
    sub.add_argument("--q", type=int, required=True, help="field order (any integer >= 2)")
    _add_output_args(sub)
    sub.set_defaults(handler=_cmd_moments)

    sub = commands.add_parser("oracle", help="exhaustive joint (rank, weight) table")
    _add_dims(sub, k=False)
    _add_field_args(sub)
    sub.add_argument("--cap", type=int, default=oracle.DEFAULT_CAP,
                     help="maximum number of matrices to enumerate")
    sub.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    _add_output_args(sub)
    sub.set_defaults(handler=_cmd_oracle)

    sub = commands.add_parser("entry-counts", help="per-cell non-zero counts among rank-k matrices")
    _add_dims(sub, k=True)
    _add_field_args(sub)
    sub.add_argument("--cap", type=int, default=oracle.DEFAULT_CAP)
    sub.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    _add_output_args(sub)
    sub.set_defaults(handler=_cmd_entry_counts)

    sub = commands.add_parser("sample", help="draw uniform rank-k matrices")
    _add_dims(sub, k=True)
    _add_field_args(sub)
    sub.add_argument("--samples", type=int, default=1)
    sub.add_argument("--seed", type=int, default=default_seed())
    _add_output_args(sub)
    sub.set_defaults(handler=_cmd_sample)

    sub = commands.add_parser("empirical", help="Monte Carlo weight histogram of rank-k matrices")
    _add_dims(sub, k=True)
    _add_field_args(sub)
    sub.add_argument("--samples", type=int, default=10000)
    sub.add_argument("--seed", type=int, default=default_seed())
    sub.add_argument("--threads", type=int, default=1)
    _add_output_args(sub)
    sub.set_defaults(handler=_cmd_empirical)

    sub = commands.add_parser("clt", help="KS distance to the normal over a size sweep")
    sub.add_argument("--sizes", type=_parse_sizes, default=(10, 25, 50, 100),
                     help="comma-separated square sizes, e.g. 10,25,50,100")
    sub.add_argument("--q", type=int, required=True, help="field order (any integer >= 2)")
    _add_output_args(sub)
    sub.set_defaults(handler=_cmd_clt)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        output = args.handler(args)
    except ValueError as exc:
        print(f"rankweight: error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(output)
    return 0


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
