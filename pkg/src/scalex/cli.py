"""Command-line front end for the decision engine and the operator lab.

Every subcommand prints a single JSON report (sorted keys, deterministic for
a fixed seed apart from the ``timestamp`` field).  Exit codes: 0 success,
2 malformed input, 3 mathematically inadmissible request.
"""

from __future__ import annotations

import argparse
import datetime
import json
import os
import sys
from dataclasses import dataclass

import numpy as np

from . import matio
from .errors import AdmissibilityError, ScalexError
from .ktheory import PuncturedSet, k_of_functions, k_of_generator
from .operators import (
    classify_properness,
    estimate_spectrum,
    infinite_projection_witness,
    realize,
    scaling_defect,
    synthesize,
)
from .spectra import (
    GeneratorDescriptor,
    Properness,
    ScalingSpectrum,
    SpectralSet,
    has_compact_open_at_one,
    has_infinite_projection,
    hom_exists,
    iso_exists,
    nonproper_admissible,
)
from .wold import wold_decompose

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_INADMISSIBLE = 3


@dataclass
class RunConfig:
    tolerance: float = 1e-9
    cluster_tol: float = 1e-8
    gap_tol: float = 0.1
    seed: int = 0
    output_path: str | None = None

    def __post_init__(self):
        if min(self.tolerance, self.cluster_tol, self.gap_tol) <= 0:
            raise ValueError("all tolerances must be > 0")


def _load_json_arg(value: str) -> dict:
    """Accept inline JSON (starts with '{') or a path to a JSON file."""
    if value.lstrip().startswith("{"):
        return json.loads(value)
    with open(value) as fh:
        return json.load(fh)


def _config_from(args: argparse.Namespace) -> RunConfig:
    seed = args.seed
    if seed is None:
        seed = int(os.environ.get("SCALEX_SEED", "0"))
    return RunConfig(
        tolerance=args.tol,
        cluster_tol=args.cluster_tol,
        gap_tol=args.gap_tol,
        seed=seed,
        output_path=getattr(args, "out", None),
    )


def _load_operand(path: str) -> tuple[np.ndarray, int | None]:
    """A matrix plus its fiber dimension when the input is a model file."""
    if path.endswith(".json"):
        model = matio.load_model(path)
        return realize(model), model.fiber_dim
    return matio.load_matrix(path), None


def _properness_flag(name: str) -> Properness:
    try:
        return Properness(name.lower())
    except ValueError:
        raise ValueError(f"properness must be 'proper' or 'nonproper', got {name!r}") from None


def cmd_classify(args: argparse.Namespace) -> dict:
    spectrum = ScalingSpectrum.from_json(_load_json_arg(args.spec))
    admissible = nonproper_admissible(spectrum)
    infinite = has_infinite_projection(spectrum)
    compact_open = has_compact_open_at_one(spectrum)
    k_proper = k_of_generator(GeneratorDescriptor(spectrum, Properness.PROPER))
    report = {
        "valid": True,
        "spectrum": spectrum.to_json(),
        "nonproper_admissible": admissible,
        "infinite_projection": infinite,
        "compact_open_at_one": compact_open,
        "criteria_agree": infinite == compact_open,
        "k_proper": [k_proper.k0_rank, k_proper.k1_rank],
        "k_nonproper": None,
    }
    if admissible:
        k_np = k_of_generator(GeneratorDescriptor(spectrum, Properness.NON_PROPER))
        report["k_nonproper"] = [k_np.k0_rank, k_np.k1_rank]
    return report


def cmd_homcheck(args: argparse.Namespace) -> dict:
    src = GeneratorDescriptor.from_json(_load_json_arg(getattr(args, "from")))
    dst = GeneratorDescriptor.from_json(_load_json_arg(args.to))
    exists = hom_exists(src, dst)
    reason = None
    if not exists:
        if not dst.spectrum.set.is_subset(src.spectrum.set):
            reason = "subset"
        else:
            reason = "properness"
    return {
        "hom_exists": exists,
        "reason": reason,
        "from": src.to_json(),
        "to": dst.to_json(),
    }


def cmd_isocheck(args: argparse.Namespace) -> dict:
    src = GeneratorDescriptor.from_json(_load_json_arg(getattr(args, "from")))
    dst = GeneratorDescriptor.from_json(_load_json_arg(args.to))
    exists = iso_exists(src, dst)
    reason = None
    if not exists:
        reason = "spectrum" if src.spectrum.set != dst.spectrum.set else "properness"
    return {
        "iso_exists": exists,
        "reason": reason,
        "from": src.to_json(),
        "to": dst.to_json(),
    }


def cmd_kgroups(args: argparse.Namespace) -> dict:
    obj = _load_json_arg(args.spec)
    if "proper" in obj:
        desc = GeneratorDescriptor.from_json(obj)
        result = k_of_generator(desc)
        kind = "descriptor"
    elif "base" in obj:
        result = k_of_functions(PuncturedSet.from_json(obj))
        kind = "punctured-set"
    else:
        result = k_of_functions(PuncturedSet(SpectralSet.from_json(obj)))
        kind = "spectral-set"
    return {"k0": result.k0_rank, "k1": result.k1_rank, "input_kind": kind}


def cmd_synth(args: argparse.Namespace) -> dict:
    cfg = _config_from(args)
    spectrum = ScalingSpectrum.from_json(_load_json_arg(args.spec))
    flag = _properness_flag(args.properness)
    model = synthesize(spectrum, flag, args.depth, args.samples, cfg.seed)
    outdir = cfg.output_path or "."
    os.makedirs(outdir, exist_ok=True)
    model_path = os.path.join(outdir, "model.json")
    matrix_path = os.path.join(outdir, "model.mat")
    matio.save_model(model_path, model)
    x = realize(model)
    matio.save_matrix(matrix_path, x)
    estimated = estimate_spectrum(x, cfg.cluster_tol)
    return {
        "model_path": model_path,
        "matrix_path": matrix_path,
        "fiber_dim": model.fiber_dim,
        "depth": model.depth,
        "properness": flag.value,
        "seed": cfg.seed,
        "eigenvalues": [float(v.real) for v in np.diag(model.A)],
        "estimated_spectrum": estimated.to_json(),
    }


def cmd_wold(args: argparse.Namespace) -> dict:
    cfg = _config_from(args)
    x, _ = _load_operand(getattr(args, "in"))
    report = wold_decompose(x, cfg.tolerance).to_json()
    if cfg.output_path:
        with open(cfg.output_path, "w") as fh:
            json.dump(report, fh, indent=2, sort_keys=True)
            fh.write("\n")
        report["report_path"] = cfg.output_path
    return report


def cmd_verify(args: argparse.Namespace) -> dict:
    cfg = _config_from(args)
    x, fiber_dim = _load_operand(getattr(args, "in"))
    defect = scaling_defect(x, fiber_dim)
    verdict = classify_properness(x, cfg.cluster_tol, cfg.gap_tol, fiber_dim)
    return {
        "verdict": verdict.verdict.value,
        "gap_at_0": verdict.gap_at_0,
        "gap_at_1": verdict.gap_at_1,
        "projection_distance": verdict.projection_distance,
        "scaling_residual": defect.residual_norm,
        "boundary_localized": defect.boundary_localized,
    }


def cmd_witness(args: argparse.Namespace) -> dict:
    cfg = _config_from(args)
    x, fiber_dim = _load_operand(getattr(args, "in"))
    u, report = infinite_projection_witness(
        x, args.gap, cfg.tolerance, cfg.cluster_tol, fiber_dim
    )
    out = {
        "gap_point": report.gap_point,
        "projection_defect": report.projection_defect,
        "dominated": report.dominated,
        "norm_difference": report.norm_difference,
        "infinite_projection_witnessed": bool(
            report.projection_defect <= 1e-8 and report.dominated and report.norm_difference >= 0.5
        ),
    }
    if cfg.output_path:
        os.makedirs(cfg.output_path, exist_ok=True)
        upath = os.path.join(cfg.output_path, "witness.mat")
        matio.save_matrix(upath, u)
        out["witness_path"] = upath
    return out


def cmd_specestimate(args: argparse.Namespace) -> dict:
    cfg = _config_from(args)
    x, _ = _load_operand(getattr(args, "in"))
    return estimate_spectrum(x, cfg.cluster_tol).to_json()


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--cluster-tol", dest="cluster_tol", type=float, default=1e-8)
    p.add_argument("--gap-tol", dest="gap_tol", type=float, default=0.1)
    p.add_argument("--seed", type=int, default=None, help="falls back to env SCALEX_SEED, then 0")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="scalex", description="scaling-element decision engine and operator lab"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        p = sub.add_parser(name, help=help_)
        _add_common(p)
        p.set_defaults(func=func)
        return p

    p = add("classify", cmd_classify, "classify a spectrum: admissibility, infinite projections, K-ranks")
    p.add_argument("--spec", required=True, help="spectral-set JSON (inline or path)")

    for name, func, help_ in (
        ("homcheck", cmd_homcheck, "decide existence of a generator-sending homomorphism"),
        ("isocheck", cmd_isocheck, "decide existence of a generator-sending isomorphism"),
    ):
        p = add(name, func, help_)
        p.add_argument("--from", required=True, help="source descriptor JSON")
        p.add_argument("--to", required=True, help="target descriptor JSON")

    p = add("kgroups", cmd_kgroups, "K-group ranks of a descriptor, punctured set or spectral set")
    p.add_argument("--spec", required=True)

    p = add("synth", cmd_synth, "synthesize a truncated shift model for a spectrum")
    p.add_argument("--spec", required=True)
    p.add_argument("--properness", default="proper")
    p.add_argument("--depth", type=int, default=6)
    p.add_argument("--samples", type=int, default=3)
    p.add_argument("--out", default=None, help="output directory (default: cwd)")

    p = add("wold", cmd_wold, "run the Wold decomposition on a matrix or model file")
    p.add_argument("--in", required=True)
    p.add_argument("--out", default=None, help="also write the report JSON here")

    p = add("verify", cmd_verify, "check the scaling identity and classify properness")
    p.add_argument("--in", required=True)

    p = add("witness", cmd_witness, "construct an infinite-projection witness at a gap point")
    p.add_argument("--in", required=True)
    p.add_argument("--gap", type=float, required=True, help="gap point c in (0,1)")
    p.add_argument("--out", default=None, help="directory for the witness matrix")

    p = add("specestimate", cmd_specestimate, "estimate the spectrum of a matrix or model")
    p.add_argument("--in", required=True)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = args.func(args)
    except AdmissibilityError as exc:
        json.dump({"error": str(exc), "kind": type(exc).__name__}, sys.stdout, sort_keys=True)
        print()
        return EXIT_INADMISSIBLE
    except (ScalexError, ValueError, OSError, json.JSONDecodeError, KeyError) as exc:
        json.dump({"error": str(exc), "kind": type(exc).__name__}, sys.stdout, sort_keys=True)
        print()
        return EXIT_PARSE
    report["command"] = args.command
    report["timestamp"] = datetime.datetime.now(datetime.timezone.utc).isoformat()
    json.dump(report, sys.stdout, indent=2, sort_keys=True)
    print()
    return EXIT_OK


def entrypoint() -> None:
    sys.exit(main())
