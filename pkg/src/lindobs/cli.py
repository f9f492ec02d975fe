"""Command-line interface: ``lindobs {check,evolve,decompose,project}``.

Exit codes: 0 success, 1 input error, 2 model is not environment-induced,
3 internal numerical failure.  Entropies are reported in nats.
"""

import argparse
import os
import sys
from dataclasses import dataclass, field

import numpy as np

from . import io
from .algebra import decompose_structure, extract_algebra, gauge_group_summary
from .errors import InputError, NotEnvironmentInduced, NumericalError, NumericalRankAmbiguity
from .expectation import ConditionalExpectation, check_conservative, full_projection, mc_deviation
from .isometric import EPS_RANK, compute_isometric_subspace
from .lindblad import build_generator_superop, check_environment_induced
from .operators import EPS_PSD, op_norm
from .semigroup import entropy_trace

EXIT_OK, EXIT_INPUT, EXIT_NOT_INDUCED, EXIT_NUMERICAL = 0, 1, 2, 3
TOL_KEYS = ("herm", "psd", "rank", "closure")


@dataclass
class RunConfig:
    times: tuple = (0.0, 3.0, 31)
    seed: int = 0
    mc_samples: int = 10000
    mode: str = "closed"
    out: str = None
    tol: dict = field(default_factory=dict)

    def __post_init__(self):
        start, stop, count = self.times
        if not (start >= 0 and stop > start and count >= 2):
            raise InputError(f"bad time grid {start}:{stop}:{count} (need 0 <= start < stop, count >= 2)")
        if self.mc_samples < 1:
            raise InputError("--mc-samples must be positive")

    def grid(self):
        start, stop, count = self.times
        return np.linspace(start, stop, count)


def _parse_times(text):
    try:
        start, stop, count = text.split(":")
        return float(start), float(stop), int(count)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected start:stop:count, got {text!r}") from None


def _parse_tol(text):
    key, sep, val = text.partition("=")
    if not sep or key not in TOL_KEYS:
        raise argparse.ArgumentTypeError(f"expected KEY=VAL with KEY in {TOL_KEYS}, got {text!r}")
    try:
        return key, float(val)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad tolerance value {val!r}") from None


def _read(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _emit(text, config):
    if config.out:
        with open(config.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_model(path, config):
    return io.parse_model(_read(path), herm_tol=config.tol.get("herm"))


def _gate(model, config):
    return check_environment_induced(model, eps_psd=config.tol.get("psd", EPS_PSD))


def _structure(model, config):
    lhat = build_generator_superop(model)
    gate = _gate(model, config).require()
    subspace = compute_isometric_subspace(lhat, gate, eps_rank=config.tol.get("rank", EPS_RANK))
    kwargs = {"tol": config.tol["closure"]} if "closure" in config.tol else {}
    alg = extract_algebra(subspace, **kwargs)
    return subspace, decompose_structure(alg, seed=config.seed, dim_K=subspace.size)


def cmd_check(model_path, config):
    model = _load_model(model_path, config)
    gate = _gate(model, config)
    status = "environment-induced" if gate.flag else "not environment-induced"
    _emit(f"{status}, deficit={gate.deficit!r}\n", config)
    return EXIT_OK if gate.flag else EXIT_NOT_INDUCED


def cmd_evolve(model_path, state_path, config):
    model = _load_model(model_path, config)
    rho = io.parse_matrix(_read(state_path), "state", model.dim)
    lhat = build_generator_superop(model)
    gate = _gate(model, config)
    subspace = None
    if gate.flag:
        subspace = compute_isometric_subspace(lhat, gate, eps_rank=config.tol.get("rank", EPS_RANK))
    else:
        print(
            f"warning: model is not environment-induced (deficit={gate.deficit!r}); "
            "sweep_residual_trace_norm left blank",
            file=sys.stderr,
        )
    trace = entropy_trace(lhat, rho, config.grid(), subspace)
    _emit(io.trace_to_csv(trace), config)
    return EXIT_OK


def decomposition_report(model, config):
    subspace, structure = _structure(model, config)
    flag, defect = check_conservative(structure)
    k_blocks = []
    for b in structure.blocks:
        if not k_blocks or k_blocks[-1]["k"] != b.k:
            k_blocks.append({"k": b.k, "r": b.minimal_dim, "blocks": []})
        k_blocks[-1]["blocks"].append(
            {"n": b.n, "N": b.multiplicity, "rank": b.rank, "unit_projector": io.encode_matrix(b.unit_projector)}
        )
    return {
        "label": model.label,
        "dim": model.dim,
        "dim_K": subspace.size,
        "k_blocks": k_blocks,
        "gauge_group": gauge_group_summary(structure),
        "conservative": bool(flag),
        "conservative_defect": defect,
        "mc_check": {
            "samples": config.mc_samples,
            "max_deviation": mc_deviation(structure, config.mc_samples, seed=config.seed),
        },
    }


def cmd_decompose(model_path, config):
    model = _load_model(model_path, config)
    _emit(io.dumps(decomposition_report(model, config)), config)
    return EXIT_OK


def cmd_project(model_path, operator_path, config):
    model = _load_model(model_path, config)
    a = io.parse_matrix(_read(operator_path), "operator", model.dim)
    _, structure = _structure(model, config)
    closed = full_projection(structure, a)
    if config.mode == "closed":
        _emit(io.matrix_to_json(closed), config)
        return EXIT_OK
    ce = ConditionalExpectation(structure, "mc", config.mc_samples, config.seed)
    mc = ce(a)
    payload = {"matrix": io.encode_matrix(mc), "samples": config.mc_samples, "deviation": op_norm(mc - closed)}
    _emit(io.dumps(payload), config)
    return EXIT_OK


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="RNG seed (fallback: $LINDOBS_SEED, then 0)")
    common.add_argument("--mc-samples", type=int, default=10000)
    common.add_argument("--mode", choices=("closed", "mc"), default="closed")
    common.add_argument("--out", default=None, help="write output here instead of stdout")
    common.add_argument("--tol", type=_parse_tol, action="append", default=[], metavar="KEY=VAL")
    common.add_argument("--times", type=_parse_times, default=(0.0, 3.0, 31), metavar="START:STOP:COUNT")

    parser = argparse.ArgumentParser(prog="lindobs", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("check", parents=[common], help="test the environment-induced gate")
    p.add_argument("model")
    p = sub.add_parser("evolve", parents=[common], help="entropy (nats) and sweeping residual along a trajectory")
    p.add_argument("model")
    p.add_argument("state")
    p = sub.add_parser("decompose", parents=[common], help="block structure of the effective observables")
    p.add_argument("model")
    p = sub.add_parser("project", parents=[common], help="apply the conditional expectation to an operator")
    p.add_argument("model")
    p.add_argument("operator")
    return parser


def _seed(arg):
    if arg is not None:
        return arg
    env = os.environ.get("LINDOBS_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise InputError(f"LINDOBS_SEED must be an integer, got {env!r}") from None


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = RunConfig(
            times=args.times,
            seed=_seed(args.seed),
            mc_samples=args.mc_samples,
            mode=args.mode,
            out=args.out,
            tol=dict(args.tol),
        )
        if args.command == "check":
            return cmd_check(args.model, config)
        if args.command == "evolve":
            return cmd_evolve(args.model, args.state, config)
        if args.command == "decompose":
            return cmd_decompose(args.model, config)
        return cmd_project(args.model, args.operator, config)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NotEnvironmentInduced as exc:
        print(f"not environment-induced, deficit={exc.deficit!r}", file=sys.stderr)
        return EXIT_NOT_INDUCED
    except NumericalRankAmbiguity as exc:
        print(f"numerical failure: {exc} (band {list(exc.band)})", file=sys.stderr)
        return EXIT_NUMERICAL
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
