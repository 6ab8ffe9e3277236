"""Command-line entry point: ``junta-lab {run, certify, spectrum, generate}``.

Exit codes: 0 success, 2 parameter or generation error, 3 capacity or budget error.
"""

import argparse
import json
import sys

from . import generators
from .errors import BudgetExceededError, CapacityError, GenerationError, ParameterError
from .harness import INSTANCE_CLASSES, load_config, run_experiment
from .io import read_instance, read_matrix, write_matrix, write_truth_tables
from .oracles import certify
from .pauli import pauli_spectrum
from .samplers import make_rng
from .testers import TESTERS

EXIT_OK, EXIT_PARAM, EXIT_CAPACITY = 0, 2, 3


def _cmd_run(args):
    cfg = load_config(
        args.config, tester=args.tester, seed=args.seed, trials=args.trials,
        output_path=args.out, n=args.n, k=args.k, eps1=args.eps1, eps2=args.eps2,
        instance_class=args.instance_class, budget_ceiling=args.budget_ceiling,
        input_path=args.input,
    )
    summary = run_experiment(cfg)
    print(json.dumps(summary, sort_keys=True))
    return EXIT_OK


def _cmd_certify(args):
    inst = read_instance(args.input)
    eps1 = args.eps1 if args.eps1 is not None else 0.0
    eps2 = args.eps2 if args.eps2 is not None else 1.0
    cert = certify(inst, args.k, eps1, eps2)
    out = {"n": inst.n, "k": args.k, "distance": cert.distance, "witness": list(cert.witness)}
    if args.eps1 is not None or args.eps2 is not None:
        out["classification"] = cert.classification
    print(json.dumps(out, sort_keys=True))
    return EXIT_OK


def _cmd_spectrum(args):
    spec = pauli_spectrum(read_matrix(args.input))
    for p, w in spec.top(args.top):
        print(f"{p.label}\t{w:.12g}")
    return EXIT_OK


def _cmd_generate(args):
    rng = make_rng(args.seed)
    cls = args.instance_class
    if args.boolean or cls in ("dyes", "dno"):
        if cls == "exact-junta":
            obj, _ = generators.random_k_junta_boolean(args.n, args.k, rng)
        elif cls == "perturbed":
            obj, _ = generators.perturbed_junta_boolean(args.n, args.k, args.eps, rng)
        elif cls == "far":
            obj = generators.far_instance(args.n, args.k, args.eps, rng, kind="boolean").obj
        else:
            a = args.n - args.k
            obj = generators.sample_dyes_dno(args.k, a, 0.005 * a**0.5, rng, "yes" if cls == "dyes" else "no").f
        write_truth_tables(args.out, [obj])
    else:
        if cls == "exact-junta":
            obj, _ = generators.random_k_junta_unitary(args.n, args.k, rng)
        elif cls == "perturbed":
            obj, _ = generators.perturbed_junta_unitary(args.n, args.k, args.eps, rng)
        elif cls == "far":
            obj = generators.far_instance(args.n, args.k, args.eps, rng).obj
        else:
            raise ParameterError(f"cannot generate a unitary of class {cls!r}")
        write_matrix(args.out, obj)
    print(args.out)
    return EXIT_OK


def build_parser():
    p = argparse.ArgumentParser(prog="junta-lab", description="Tolerant junta testing experiments.")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("run", help="run a configured experiment")
    r.add_argument("--config", help="JSON config file")
    r.add_argument("--tester", choices=sorted(TESTERS))
    r.add_argument("--seed", type=int)
    r.add_argument("--trials", type=int)
    r.add_argument("--out", help="CSV output path; the JSON sidecar sits next to it")
    r.add_argument("--n", type=int)
    r.add_argument("--k", type=int)
    r.add_argument("--eps1", type=float)
    r.add_argument("--eps2", type=float)
    r.add_argument("--instance-class", choices=INSTANCE_CLASSES)
    r.add_argument("--budget-ceiling", type=float)
    r.add_argument("--input", help="instance file for the from-file class")
    r.set_defaults(func=_cmd_run)

    c = sub.add_parser("certify", help="exact distance of an instance to k-juntas")
    c.add_argument("--input", required=True, help="truth-table file or matrix (.csv/.npy)")
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--eps1", type=float)
    c.add_argument("--eps2", type=float)
    c.set_defaults(func=_cmd_certify)

    s = sub.add_parser("spectrum", help="largest Pauli weights of a unitary")
    s.add_argument("--input", required=True)
    s.add_argument("--top", type=int, default=10)
    s.set_defaults(func=_cmd_spectrum)

    g = sub.add_parser("generate", help="write a generated instance to a file")
    g.add_argument("--instance-class", choices=[c for c in INSTANCE_CLASSES if c != "from-file"], required=True)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--k", type=int, required=True)
    g.add_argument("--eps", type=float, default=0.05, help="target closeness or farness")
    g.add_argument("--boolean", action="store_true")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", required=True)
    g.set_defaults(func=_cmd_generate)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        print(json.dumps({"cost_estimate": exc.estimate}, sort_keys=True), file=sys.stderr)
        return EXIT_CAPACITY
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (ParameterError, GenerationError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARAM


if __name__ == "__main__":
    sys.exit(main())
