"""Batch command-line front end.

Every invocation prints a single JSON report on standard output:
{"command", "inputs", "outputs", "seed", "elapsed_ms"}.  Diagnostics go to
standard error.  Exit codes: 0 success, 1 unknown command, 2 input
validation failure, 3 unsupported request.  Given identical inputs and
seed the outputs are byte-identical across runs (elapsed_ms aside).
"""

import argparse
import json
import sys
import time

from . import reach, serialize
from .channels import apply_product_channel, parameter_counts
from .locc import build_conversion, lccc_synthesize_bipartite
from .slocc import classify_three_qubit, three_tangle
from .states import (InvariantError, UnsupportedError, canonical_state,
                     z_mixture)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INVALID = 2
EXIT_UNSUPPORTED = 3

COMMANDS = ("state", "noise-apply", "classify", "tangle", "param-count",
            "convert", "synthesize", "lc-search", "obstruct")


def _parser():
    p = argparse.ArgumentParser(prog="lcstates", add_help=True)
    sub = p.add_subparsers(dest="command")

    sp = sub.add_parser("state", help="write a canonical state file")
    sp.add_argument("--kind", required=True, choices=["ghz", "w", "maxent", "z"])
    sp.add_argument("--n", type=int, default=3)
    sp.add_argument("--d", type=int, default=2)
    sp.add_argument("--p", type=float, default=0.5)
    sp.add_argument("--out", required=True)

    sp = sub.add_parser("noise-apply", help="apply a product channel to a state")
    sp.add_argument("--in", dest="infile", required=True)
    sp.add_argument("--channel", required=True,
                    help="comma-separated channel files, one per party")
    sp.add_argument("--out", required=True)

    for name in ("classify", "tangle", "obstruct"):
        sp = sub.add_parser(name)
        sp.add_argument("--in", dest="infile", required=True)

    sp = sub.add_parser("param-count")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--d", type=int, required=True)

    sp = sub.add_parser("convert", help="deterministic conversion protocol")
    sp.add_argument("--target", required=True)
    sp.add_argument("--cut", required=True,
                    help='bipartition such as "0|1" or "0,1|2"')

    sp = sub.add_parser("synthesize")
    sp.add_argument("--target", required=True)
    sp.add_argument("--samples", type=int, default=100000)
    sp.add_argument("--seed", type=int, default=0)

    sp = sub.add_parser("lc-search")
    sp.add_argument("--target", required=True)
    sp.add_argument("--config", required=True,
                    help="JSON search options file")
    return p


def _parse_cut(spec):
    try:
        left, right = spec.split("|")
        return (tuple(int(x) for x in left.split(",")),
                tuple(int(x) for x in right.split(",")))
    except ValueError:
        raise InvariantError(f"bad cut specification {spec!r}")


def _as_pure(state):
    if hasattr(state, "amplitudes"):
        return state
    raise InvariantError("command needs a pure state file")


def _as_density(state):
    return state.density() if hasattr(state, "amplitudes") else state


def _dispatch(args):
    """Run one command; returns (outputs dict, seed or None)."""
    cmd = args.command
    if cmd == "state":
        if args.kind == "z":
            state = z_mixture(args.p)
        else:
            state = canonical_state(args.kind, n=args.n, d=args.d)
        serialize.save_state(state, args.out)
        return {"written": args.out,
                "shape": list(state.shape.local_dims),
                "kind": "density" if args.kind == "z" else "pure"}, None

    if cmd == "noise-apply":
        rho = _as_density(serialize.load_state(args.infile))
        channels = [serialize.load_channel(f) for f in args.channel.split(",")]
        out = apply_product_channel(channels, rho)
        serialize.save_state(out, args.out)
        return {"written": args.out}, None

    if cmd in ("classify", "tangle"):
        state = serialize.load_state(args.infile)
        psi = _as_pure(state)
        if psi.shape.local_dims != (2, 2, 2):
            raise UnsupportedError("three-qubit pure states only")
        if cmd == "classify":
            return {"class": classify_three_qubit(psi).label}, None
        return {"three_tangle": three_tangle(psi)}, None

    if cmd == "param-count":
        pc = parameter_counts(args.n, args.d)
        return {"pure_dim": pc.pure_dim, "lc_bound": pc.lc_bound,
                "mixed_dim": pc.mixed_dim,
                "lc_strictly_smaller": pc.lc_strictly_smaller}, None

    if cmd == "convert":
        target = _as_pure(serialize.load_state(args.target))
        proto = build_conversion(target, _parse_cut(args.cut))
        proto.verify()
        return serialize.protocol_to_dict(proto), None

    if cmd == "synthesize":
        rho = _as_density(serialize.load_state(args.target))
        plan, _, td = lccc_synthesize_bipartite(rho, args.samples, args.seed)
        return {"plan": serialize.plan_to_dict(plan),
                "report": {"N": args.samples, "seed": args.seed,
                           "trace_distance": td}}, args.seed

    if cmd == "lc-search":
        rho = _as_density(serialize.load_state(args.target))
        with open(args.config) as fh:
            opts = json.load(fh)
        result = reach.lc_distance_search(
            rho,
            env_dims=opts.get("env_dims"),
            restarts=opts.get("restarts", 8),
            max_iters=opts.get("max_iters", 2000),
            tol=opts.get("tol", 1e-14),
            master_seed=opts.get("master_seed", 0))
        return serialize.search_result_to_dict(result), opts.get("master_seed", 0)

    if cmd == "obstruct":
        rho = _as_density(serialize.load_state(args.infile))
        cert = reach.lccc_obstruction_check(rho)
        return serialize.certificate_to_dict(cert), None

    raise AssertionError(f"unhandled command {cmd}")


def run_command(argv):
    """Execute one CLI invocation; returns (exit_code, report dict or None)."""
    parser = _parser()
    if not argv or argv[0] not in COMMANDS:
        if argv and argv[0] in ("-h", "--help"):
            parser.print_help()
            return EXIT_OK, None
        print(parser.format_usage(), file=sys.stderr)
        return EXIT_USAGE, None
    try:
        args = parser.parse_args(argv)
    except SystemExit:
        return EXIT_USAGE, None

    start = time.monotonic()
    try:
        outputs, seed = _dispatch(args)
    except UnsupportedError as exc:
        print(f"unsupported: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED, None
    except (InvariantError, OSError, json.JSONDecodeError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID, None

    inputs = {k: v for k, v in vars(args).items() if k != "command" and v is not None}
    report = {"command": args.command,
              "inputs": inputs,
              "outputs": outputs,
              "seed": seed,
              "elapsed_ms": int((time.monotonic() - start) * 1000)}
    return EXIT_OK, report


def main(argv=None):
    code, report = run_command(sys.argv[1:] if argv is None else list(argv))
    if report is not None:
        json.dump(report, sys.stdout)
        sys.stdout.write("\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
