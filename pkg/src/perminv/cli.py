"""Command-line entry point for every verification suite in the package.

Every subcommand prints one structured report (JSON by default, CSV for the
Hellman sweep) carrying a schema version and the fully resolved config,
seed included, so identical invocations produce byte-identical output.
Exit status: 0 when every assertion in the invoked suite passed, 1 on a
verification failure, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from perminv import __version__

SCHEMA_VERSION = "1"


def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _render_text(obj, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        lines = []
        for key, val in obj.items():
            if isinstance(val, (dict, list)):
                lines.append(f"{pad}{key}:")
                lines.append(_render_text(val, indent + 1))
            else:
                lines.append(f"{pad}{key}: {val}")
        return "\n".join(lines)
    if isinstance(obj, list):
        return "\n".join(_render_text(v, indent) if isinstance(v, (dict, list)) else f"{pad}- {v}" for v in obj)
    return f"{pad}{obj}"


def _emit(args, report: dict, passed: bool, csv_text: str | None = None) -> int:
    config = {
        k: v
        for k, v in sorted(vars(args).items())
        if k not in ("func",) and v is not None
    }
    payload = {
        "schema_version": SCHEMA_VERSION,
        "version": __version__,
        "command": args.command,
        "config": config,
        "report": report,
        "pass": passed,
    }
    if args.format == "csv":
        if csv_text is None:
            print("error: csv output is only available for the hellman subcommand", file=sys.stderr)
            return 2
        out_text = csv_text
        print(f"# config: {json.dumps(config, sort_keys=True)}", file=sys.stderr)
    elif args.format == "text":
        out_text = _render_text(payload) + "\n"
    else:
        out_text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(out_text)
    else:
        sys.stdout.write(out_text)
    return 0 if passed else 1


# ---------------------------------------------------------------------------
# Subcommand handlers.  Heavy imports stay inside so --help and the exact
# combinatorics commands do not pay the numpy startup cost twice.


def cmd_young(args) -> int:
    from perminv import young

    mode = args.mode
    if mode == "identities":
        report = young.identities_report(args.max_n)
        return _emit(args, report, report["pass"])
    n = args.n
    lams = young.partitions(n)
    if mode == "dims":
        rows = [{"lambda": list(l), "dim": young.dim(l)} for l in lams]
        report = {"n": n, "dims": rows, "sum_of_squares": sum(young.dim(l) ** 2 for l in lams)}
        return _emit(args, report, report["sum_of_squares"] == young.factorial(n))
    if mode == "branching":
        rows = []
        ok = True
        for lam in lams:
            d = young.dim(lam)
            parts = [{"mu": list(m), "dim": young.dim(m)} for m in young.removable(lam)]
            total = sum(p["dim"] for p in parts)
            good = total == d
            ok &= good
            rows.append({"lambda": list(lam), "dim": d, "branch_sum": total, "children": parts, "ok": good})
        return _emit(args, {"n": n, "branching": rows}, ok)
    if mode == "characters":
        classes = lams
        table = [
            {
                "lambda": list(lam),
                "values": {str(list(c)): young.character(lam, c) for c in classes},
            }
            for lam in lams
        ]
        return _emit(args, {"n": n, "classes": [list(c) for c in classes], "characters": table}, True)
    if mode == "eigenvalues":
        rows = [{"lambda": list(l), "e": _frac(young.eigenvalue_m(l, n))} for l in lams]
        ok = all(young.eigenvalue_m(l, n) <= 2 * young.level(l) for l in lams)
        return _emit(args, {"n": n, "eigenvalues": rows}, ok)
    raise AssertionError(f"unhandled mode {mode}")


def cmd_spectrum(args) -> int:
    from perminv import regrep

    report = regrep.spectrum(args.n, threads=args.threads)
    return _emit(args, report.to_dict(), report.passed)


def cmd_avgbound(args) -> int:
    from perminv import regrep

    report = regrep.avg_bound_check(args.n, args.k, samples=args.samples, seed=args.seed)
    return _emit(args, report.to_dict(), report.passed)


def cmd_decomp_check(args) -> int:
    from perminv import regrep

    report = regrep.decomposition_report(args.n)
    cc = regrep.change_of_challenge_check(args.n, trials=args.trials, seed=args.seed)
    payload = {"decomposition": report.to_dict(), "change_of_challenge": cc.to_dict()}
    return _emit(args, payload, report.passed and cc.passed)


def cmd_lemma_check(args) -> int:
    from perminv import querysim

    layout = querysim.RegisterLayout(n=args.n, w=args.w)
    runs = []
    ok = True
    worst_support = 0.0
    for i in range(args.programs):
        program = querysim.random_program(args.n, args.p, args.t, w=args.w, seed=args.seed + i)
        transcript = querysim.run_bit_fixing(program, layout, check_support=True)
        ineq = querysim.check_progress_inequalities(program, layout)
        support = max((row["residual"] for row in transcript.lemma_checks), default=0.0)
        worst_support = max(worst_support, support)
        good = transcript.passed and ineq.passed
        ok &= good
        runs.append(
            {
                "seed": args.seed + i,
                "max_support_residual": support,
                "inequalities": ineq.to_dict(),
                "ok": good,
            }
        )
    report = {
        "n": args.n,
        "p": args.p,
        "t": args.t,
        "programs": args.programs,
        "max_support_residual": worst_support,
        "runs": runs,
    }
    return _emit(args, report, ok)


def cmd_game(args) -> int:
    from perminv import querysim

    layout = querysim.RegisterLayout(n=args.n, w=args.w)
    program = querysim.random_program(args.n, args.p, args.t, w=args.w, seed=args.seed)
    challenge = "all" if args.challenge == "all" else int(args.challenge)
    transcript = querysim.run_bit_fixing(program, layout, challenge=challenge)
    return _emit(args, transcript.to_dict(), transcript.passed)


def cmd_altgame(args) -> int:
    from perminv import querysim

    reports = []
    ok = True
    for i in range(args.adversaries):
        adv = querysim.random_query_adversary(args.n, args.t, seed=args.seed + i)
        rep = querysim.alternating_game(adv, args.g, t=args.t, seed=args.seed + i)
        ok &= rep.passed
        reports.append(rep.to_dict())
    return _emit(args, {"n": args.n, "t": args.t, "g": args.g, "games": reports}, ok)


def cmd_grover(args) -> int:
    from perminv import querysim

    p_sim, p_formula = querysim.grover_invert(args.n, args.t)
    report: dict = {
        "n": args.n,
        "t": args.t,
        "p_simulated": p_sim,
        "p_formula": p_formula,
        "abs_error": abs(p_sim - p_formula),
    }
    ok = abs(p_sim - p_formula) <= 1e-9
    if args.grid:
        grid_rows = []
        for n in (2, 3, 4, 5, 8, 16, 64, 256, 1024):
            for t in (0, 1, 2, 5, 10, 25):
                s, f = querysim.grover_invert(n, t)
                grid_rows.append({"n": n, "t": t, "p_simulated": s, "p_formula": f})
                ok &= abs(s - f) <= 1e-9
        fit = querysim.grover_scaling_fit()
        ok &= fit["r2_loglog"] >= 0.999
        report["grid"] = grid_rows
        report["scaling_fit"] = fit
    return _emit(args, report, ok)


def cmd_hellman(args) -> int:
    from perminv import attacks

    n = 1 << args.log_n
    t_values = args.t or [64]
    rows = attacks.tradeoff_sweep(
        n, t_values, trials=args.trials, seed=args.seed, sample_targets=args.sample
    )
    ok = all(r.success_rate == 1.0 and r.t_max <= 2 * r.t + 2 for r in rows)
    report = {"n": n, "rows": [r.to_dict() for r in rows]}
    return _emit(args, report, ok, csv_text=attacks.stats_to_csv(rows))


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="perminv",
        description="Verification suites for permutation-inversion tradeoffs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, seed=True):
        p.add_argument("--format", choices=("json", "csv", "text"), default=None)
        p.add_argument("--out", default=None, help="write the report here instead of stdout")
        if seed:
            p.add_argument("--seed", type=int, default=0, help="64-bit seed (default 0)")

    p = sub.add_parser("young", help="exact Young-diagram computations and identity sweeps")
    p.add_argument("mode", choices=("dims", "branching", "characters", "eigenvalues", "identities"))
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--max-n", type=int, default=30, dest="max_n")
    common(p, seed=False)
    p.set_defaults(func=cmd_young)

    p = sub.add_parser("spectrum", help="spectrum of the challenge-averaged operator vs. formula")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--threads", type=int, default=None)
    common(p, seed=False)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("avgbound", help="challenge-averaged mass bound on A_k")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--samples", type=int, default=100)
    common(p)
    p.set_defaults(func=cmd_avgbound)

    p = sub.add_parser("decomp-check", help="dimension/rank decompositions and challenge relabeling")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--trials", type=int, default=20)
    common(p)
    p.set_defaults(func=cmd_decomp_check)

    p = sub.add_parser("lemma-check", help="query-support and progress inequalities on random programs")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int, default=0)
    p.add_argument("--t", type=int, default=1)
    p.add_argument("--w", type=int, default=1)
    p.add_argument("--programs", type=int, default=20)
    common(p)
    p.set_defaults(func=cmd_lemma_check)

    p = sub.add_parser("game", help="run one seeded bit-fixing game and report the transcript")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int, default=0)
    p.add_argument("--t", type=int, default=1)
    p.add_argument("--w", type=int, default=1)
    p.add_argument("--challenge", default="all")
    common(p)
    p.set_defaults(func=cmd_game)

    p = sub.add_parser("altgame", help="alternating-measurement game vs. its spectral formula")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--t", type=int, default=1)
    p.add_argument("--g", type=int, default=2)
    p.add_argument("--adversaries", type=int, default=10)
    common(p)
    p.set_defaults(func=cmd_altgame)

    p = sub.add_parser("grover", help="amplitude amplification vs. the closed form")
    p.add_argument("--n", type=int, default=1024)
    p.add_argument("--t", type=int, default=10)
    p.add_argument("--grid", action="store_true", help="also run the (n, t) grid and scaling fit")
    common(p, seed=False)
    p.set_defaults(func=cmd_grover)

    p = sub.add_parser("hellman", help="cycle-walking table build and tradeoff sweep")
    p.add_argument("--log-n", type=int, default=12, dest="log_n")
    p.add_argument("--t", type=int, action="append", help="spacing; repeat for a sweep")
    p.add_argument("--trials", type=int, default=3)
    p.add_argument("--sample", type=int, default=None, help="invert only this many seeded targets")
    common(p)
    p.set_defaults(func=cmd_hellman)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.format is None:
        args.format = "csv" if args.command == "hellman" else "json"
    try:
        return args.func(args)
    except (ValueError, MemoryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
