"""Command line front end: simulate / oracle / experiment / report."""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np


def _cmd_simulate(args):
    from .ledger import LocalTimeLedger
    from .subsets import parse_subset
    from .walk import WalkConfig, path_positions

    spec = parse_subset(args.subset).canonicalize() if args.subset else None
    cfg = WalkConfig(args.seed, args.walker, args.d, args.n)
    ledger = LocalTimeLedger(args.d, spec)
    ledger.record_path(path_positions(cfg))
    out = sys.stdout if args.out == "-" else open(args.out, "w")
    try:
        out.write(f"# latwalk simulate d={args.d} n={args.n} seed={args.seed} "
                  f"walker={args.walker} subset={args.subset or 'all'}\n")
        site, count = ledger.max_local_time()
        out.write(f"# max site={site} count={count} total={ledger.total_recorded}\n")
        ledger.to_csv(out)
    finally:
        if out is not sys.stdout:
            out.close()


def _cmd_oracle(args):
    from . import returns

    out = sys.stdout if args.out == "-" else open(args.out, "w")
    try:
        if args.table == "returns":
            P = returns.return_probability_table(args.d, args.n_max)
            f = returns.first_return_law(args.d, args.n_max)
            g = np.cumsum(P)
            res = returns.renewal_residual(P, f)
            out.write(f"# latwalk oracle returns d={args.d} n_max={args.n_max} "
                      f"method=closed-form+renewal residual={res:.3e}\n")
            out.write("n,return_prob,first_return,green_truncated\n")
            for n in range(args.n_max + 1):
                out.write(f"{n},{float(P[n])!r},{float(f[n])!r},{float(g[n])!r}\n")
        elif args.table == "escape":
            esc = returns.escape_constants(args.d, args.n_max)
            out.write(f"# latwalk oracle escape d={args.d} n_max={args.n_max} "
                      f"method=laplace-bessel-quadrature tol=1e-9\n")
            out.write(f"# gamma={float(esc.gamma)!r} lambda={float(esc.lam)!r}\n")
            out.write("n,gamma_n\n")
            for n in range(1, args.n_max + 1):
                out.write(f"{n},{float(esc.gamma_n[n])!r}\n")
        elif args.table == "potential":
            from . import potential
            out.write(f"# latwalk oracle potential d=2 max_coord={args.n_max} "
                      f"method=exact-recursion (values r + s*4/pi)\n")
            out.write("x1,x2,a\n")
            for x1 in range(args.n_max + 1):
                for x2 in range(x1 + 1):
                    out.write(f"{x1},{x2},{potential.potential_kernel((x1, x2))!r}\n")
        elif args.table == "cauchy":
            from .cauchy import CauchyStepLaw
            law = CauchyStepLaw()
            out.write(f"# latwalk oracle cauchy k_max={args.n_max} "
                      f"method=closed-form tail=(2/pi)/(2K+1)\n")
            out.write("step,pmf\n")
            for u in law.support(args.n_max):
                out.write(f"{u},{law.pmf(int(u))!r}\n")
        else:
            raise SystemExit(f"unknown oracle table {args.table!r}")
    finally:
        if out is not sys.stdout:
            out.close()


def _cmd_experiment(args):
    from . import experiments

    if args.action != "run":
        raise SystemExit("usage: latwalk experiment run <config>")
    with open(args.config) as fh:
        cfg = experiments.parse_config(fh.read())
    record = experiments.run_experiment(cfg)
    csv_path, man_path = experiments.write_record(record, args.out_dir)
    print(f"wrote {csv_path}")
    print(f"wrote {man_path}")
    for row in record.summary():
        print(f"n={row['n']}: norm mean={row['norm_mean']:.4f} "
              f"median={row['norm_median']:.4f} "
              f"range=[{row['norm_min']:.4f}, {row['norm_max']:.4f}]")


def _cmd_report(args):
    from . import experiments

    for man_path in args.manifests:
        with open(man_path) as fh:
            man = json.load(fh)
        cfg = experiments.ExperimentConfig(**man["config"])
        print(f"{man_path}: study={cfg.study} subset={cfg.subset}")
        for row in man["summary"]:
            print(f"  n={row['n']}: norm mean={row['norm_mean']:.4f} "
                  f"median={row['norm_median']:.4f} "
                  f"walkers [{row['norm_min']:.4f}, {row['norm_max']:.4f}]")
        means = [row["norm_mean"] for row in man["summary"]]
        if len(means) >= 2 and min(means) > 0:
            print(f"  cross-decade ratio: {max(means) / min(means):.3f}")


def main(argv=None):
    ap = argparse.ArgumentParser(prog="latwalk")
    sub = ap.add_subparsers(dest="cmd", required=True)

    sim = sub.add_parser("simulate", help="one path, dump its ledger as CSV")
    sim.add_argument("--d", type=int, default=2)
    sim.add_argument("--n", type=int, default=10_000)
    sim.add_argument("--seed", type=int, default=0)
    sim.add_argument("--walker", type=int, default=0)
    sim.add_argument("--subset", default=None, help="subset grammar, e.g. line:1,-1")
    sim.add_argument("--out", default="-")
    sim.set_defaults(func=_cmd_simulate)

    orc = sub.add_parser("oracle", help="emit oracle tables as CSV")
    orc.add_argument("table", choices=["returns", "escape", "potential", "cauchy"])
    orc.add_argument("--d", type=int, default=2)
    orc.add_argument("--n-max", type=int, default=64)
    orc.add_argument("--out", default="-")
    orc.set_defaults(func=_cmd_oracle)

    exp = sub.add_parser("experiment", help="run a config file")
    exp.add_argument("action", choices=["run"])
    exp.add_argument("config")
    exp.add_argument("--out-dir", default="results")
    exp.set_defaults(func=_cmd_experiment)

    rep = sub.add_parser("report", help="summarize record manifests")
    rep.add_argument("manifests", nargs="+")
    rep.set_defaults(func=_cmd_report)

    args = ap.parse_args(argv)
    args.func(args)


if __name__ == "__main__":
    main()
