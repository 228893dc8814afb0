"""Command line interface.

Exit codes: 0 success, 1 Monte Carlo validation failed, 2 bad input.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import io
from .demo import default_bar_config, run_demo_bar_loading
from .errors import NoFailureWithinCapError, UrnShockError
from .grid import FailureRecord
from .inference import beta_stacy_posterior, beta_stacy_prior, mean_cdf, predictive_distribution, sample_cdfs
from .montecarlo import estimate_predictive
from .rng import RngStream
from .rup import run_systems
from .shocks import (
    GeneralizedRupSpec,
    PointMass,
    ShockStream,
    ThresholdSchedule,
    law_from_dict,
    simulate_classical,
    simulate_generalized,
    ubgesm_chain,
)

EXIT_OK, EXIT_FAILED, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _rup(cfg: dict):
    if "rup" not in cfg:
        raise InputError("config needs a 'grid' (and optionally 'priors', 's')")
    return cfg["rup"]


def _record(args, config) -> FailureRecord:
    if not args.data:
        return FailureRecord(config.grid)
    return io.ingest(args.data, config.grid)


def _stream(d: dict) -> ShockStream:
    mag = law_from_dict(d["magnitude"])
    inter = law_from_dict(d["interarrival"]) if "interarrival" in d else PointMass(1.0)
    return ShockStream(mag, inter)


def _outcome(o):
    return {"tau": o.tau, "T_tau": o.T_tau, "damage_count": o.damage_count}


def cmd_simulate(args):
    cfg = io.load_config(args.config)
    root = RngStream(args.seed)
    results = []
    if args.model == "rup":
        config = _rup(cfg)
        k = args.systems or int(cfg.get("systems", 10))
        for i in range(args.replicates):
            record, _ = run_systems(config, k, root.child(i), keep_history=False)
            results.append(list(record.indices))
    elif args.model in ("classical", "generalized"):
        sh = cfg.get("shocks")
        if sh is None:
            raise InputError("config needs a 'shocks' section")
        stream = _stream(sh)
        cap = int(sh.get("max_shocks", 10**6))
        schedule = None
        if args.model == "generalized":
            schedule = ThresholdSchedule(sh["t"], sh["beta"], tuple(sh.get("alpha", ())))
        for i in range(args.replicates):
            try:
                if schedule is None:
                    o = simulate_classical(stream, float(sh["t"]), root.child(i), cap)
                else:
                    o = simulate_generalized(stream, schedule, root.child(i), cap)
                results.append(_outcome(o))
            except NoFailureWithinCapError:
                results.append(None)
    else:
        u = cfg.get("ubgesm")
        if u is None:
            raise InputError("config needs a 'ubgesm' section")
        spec = GeneralizedRupSpec(tuple(u["initial"]), float(u["s"]), float(u["p"]))
        cap = int(u.get("max_steps", 10**4))
        for i in range(args.replicates):
            try:
                o = ubgesm_chain(spec, root.child(i), cap)
                results.append({"lifetime": o.lifetime, "trace": [str(c) for c in o.trace]})
            except NoFailureWithinCapError:
                results.append(None)
    return {"model": args.model, "seed": args.seed, "replicates": args.replicates, "results": results}


def cmd_infer(args):
    config = _rup(io.load_config(args.config))
    record = _record(args, config)
    dist = predictive_distribution(config, record)
    return {"m": record.m, "predictive": dist}


def cmd_posterior(args):
    config = _rup(io.load_config(args.config))
    record = _record(args, config)
    prior = beta_stacy_prior(config)
    post = beta_stacy_posterior(prior, record, config.s)
    out = {"m": record.m, "prior": prior, "posterior": post, "mean_cdf": mean_cdf(post)}
    if args.samples:
        out["sampled_cdfs"] = sample_cdfs(post, args.samples, RngStream(args.seed))
    return out


def cmd_validate(args):
    config = _rup(io.load_config(args.config))
    record = _record(args, config)
    return estimate_predictive(config, record, args.replicates, RngStream(args.seed), args.z_bound, args.workers)


def cmd_demo(args):
    config = default_bar_config(s=args.s)
    if args.config:
        config = _rup(io.load_config(args.config))
    return run_demo_bar_loading(config, args.bars, RngStream(args.seed))


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="urnshock", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, seed=True):
        sp.add_argument("--output", "-o", help="write result here instead of stdout")
        if seed:
            sp.add_argument("--seed", type=int, default=0)

    sp = sub.add_parser("simulate", help="simulate RUP systems, shock streams or the shock urn chain")
    sp.add_argument("--config", required=True)
    sp.add_argument("--model", choices=("classical", "generalized", "rup", "ubgesm"), default="rup")
    sp.add_argument("--replicates", type=int, default=1)
    sp.add_argument("--systems", type=int, help="systems per RUP replicate")
    common(sp)
    sp.set_defaults(func=cmd_simulate)

    sp = sub.add_parser("infer", help="predictive law of the next failure state")
    sp.add_argument("--config", required=True)
    sp.add_argument("--data")
    common(sp, seed=False)
    sp.add_argument("--format", choices=("json", "csv"), default="json")
    sp.set_defaults(func=cmd_infer)

    sp = sub.add_parser("posterior", help="beta-Stacy prior and posterior")
    sp.add_argument("--config", required=True)
    sp.add_argument("--data")
    sp.add_argument("--samples", type=int, default=0)
    common(sp)
    sp.set_defaults(func=cmd_posterior)

    sp = sub.add_parser("validate", help="Monte Carlo check of the predictive law")
    sp.add_argument("--config", required=True)
    sp.add_argument("--data")
    sp.add_argument("--replicates", type=int, default=100_000)
    sp.add_argument("--z-bound", type=float, default=3.0)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--format", choices=("json", "csv"), default="json")
    common(sp)
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("demo", help="shipped scenarios")
    dsub = sp.add_subparsers(dest="scenario", required=True)
    bar = dsub.add_parser("bar-loading", help="metal bars loaded until rupture")
    bar.add_argument("--bars", type=int, default=10)
    bar.add_argument("--s", type=float, default=1.0)
    bar.add_argument("--config")
    common(bar)
    bar.set_defaults(func=cmd_demo)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        result = args.func(args)
        fmt = getattr(args, "format", "json")
        if fmt == "csv":
            target = result["predictive"] if isinstance(result, dict) else result
            text = io.emit(target, format="csv")
        else:
            text = io.emit(result)
    except (InputError, UrnShockError, ValueError, KeyError, TypeError, OSError, json.JSONDecodeError) as exc:
        print(f"urnshock: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.command == "validate" and not result.passed:
        return EXIT_FAILED
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
