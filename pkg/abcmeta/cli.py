"""
Command line interface for abcmeta.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Dict, List, Optional

from .config.defaults import (
    EXIT_ALL_FAILED,
    EXIT_CONFIG,
    EXIT_OK,
    EXIT_PARSE,
    EXIT_PARTIAL,
    EXIT_USAGE,
)
from .core.errors import AbcMetaError, ConfigError, ParseError, RowError


logger = logging.getLogger("abcmeta")


# =============================================================================
# SHARED OPTIONS
# =============================================================================

def _comma_list(value: str) -> List[str]:
    return [v.strip() for v in value.split(",") if v.strip()]


def _add_abc_options(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("ABC options")
    g.add_argument("--iterations", type=int, help="ABC iterations N (default 50000)")
    mode = g.add_mutually_exclusive_group()
    mode.add_argument("--accept-pct", type=float, help="Percent of draws kept (default 0.1)")
    mode.add_argument("--epsilon", type=float, help="Accept draws closer than this distance")
    g.add_argument("--estimator", choices=["direct", "plugin", "simulation"])
    g.add_argument("--quantile-rule", choices=["linear", "weibull"], default="linear")
    g.add_argument("--scale-distance", action="store_true",
                   help="Measure --epsilon in units of the observed range")


def _add_run_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, help="Root random seed (random when omitted)")
    p.add_argument("--threads", type=int, default=1, help="Worker threads/processes (-1 for all)")
    p.add_argument("--output", "-o", help="Output CSV (stdout when omitted)")


def _resolve_seed(args: argparse.Namespace) -> int:
    from .distributions.rng import fresh_seed

    if args.seed is not None:
        return args.seed
    seed = fresh_seed()
    print(f"seed: {seed}", file=sys.stderr)
    return seed


def _abc_config(args: argparse.Namespace, seed: Optional[int]):
    from .abc.engine import AbcConfig
    from .config.defaults import DEFAULT_N_ITER

    return AbcConfig(
        n_iter=args.iterations if args.iterations is not None else DEFAULT_N_ITER,
        accept_pct=args.accept_pct,
        epsilon=args.epsilon,
        estimator=args.estimator,
        seed=seed,
        quantile_rule=args.quantile_rule,
        scale_distance=args.scale_distance,
        n_jobs=args.threads,
    )


def _finish(command: str, seed: Optional[int], options: dict, output: Optional[str]) -> None:
    from .io.tables import RunManifest, write_manifest

    write_manifest(RunManifest.for_options(command, seed, options), output)


def _row_exit_code(total: int, failed: int) -> int:
    if total and failed == total:
        return EXIT_ALL_FAILED
    if failed:
        return EXIT_PARTIAL
    return EXIT_OK


# =============================================================================
# ESTIMATE
# =============================================================================

def _row_scenario(row, override: Optional[str]):
    from .core.scenario import normalize_scenario
    from .core.summary import detect_scenario

    if override:
        return normalize_scenario(override)
    return detect_scenario(row.to_stats())


def _estimate_row(row, index: int, args, abc, seed: int) -> List[Dict]:
    from .abc.engine import abc_run
    from .distributions.families import Family, normalize_family
    from .distributions.rng import derive
    from .estimators.closed_form import (
        Method,
        closed_form_estimate,
        methods_for_scenario,
        normalize_method,
    )

    try:
        scenario = _row_scenario(row, args.scenario)
        stats = row.to_stats()
    except AbcMetaError as e:
        methods = args.methods or ["*"]
        logger.warning(f"Study {row.study_id}: {e}")
        return [_error_row(row.study_id, m, "", e) for m in methods]

    if args.methods:
        methods = [normalize_method(m) for m in args.methods]
    else:
        methods = methods_for_scenario(scenario)

    family = normalize_family(args.family) if args.family else (row.family_hint or Family.NORMAL)
    out = []
    for method in methods:
        n_accepted = None
        try:
            if method is Method.ABC:
                result = abc_run(
                    stats, scenario, family, config=abc,
                    rng=derive(seed, index), support=row.support_bounds,
                )
                est, n_accepted = result.estimate, result.n_accepted
            else:
                est = closed_form_estimate(method, stats, scenario, exact_bland=args.exact_bland)
        except AbcMetaError as e:
            logger.warning(f"Study {row.study_id} {method.value}: {e}")
            out.append(_error_row(row.study_id, method.value, scenario.value, e))
            continue
        out.append({
            "study_id": row.study_id,
            "method": method.value,
            "scenario": scenario.value,
            "mean_est": est.mean,
            "sd_est": est.sd,
            "n_accepted": n_accepted,
            "error_code": None,
        })
    return out


def _error_row(study_id: str, method: str, scenario: str, exc: Exception) -> Dict:
    err = RowError.from_exception(study_id, method, exc)
    return {
        "study_id": study_id,
        "method": method,
        "scenario": scenario,
        "mean_est": None,
        "sd_est": None,
        "n_accepted": None,
        "error_code": err.code,
    }


def cmd_estimate(args: argparse.Namespace) -> int:
    """Estimate mean/SD for every study in a table."""
    from .distributions.families import normalize_family
    from .estimators.closed_form import normalize_method
    from .io.tables import ESTIMATE_COLUMNS, read_studies, write_table

    try:
        for m in args.methods or []:
            normalize_method(m)
        if args.family:
            normalize_family(args.family)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE

    try:
        rows = read_studies(args.input)
    except ParseError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE

    uses_abc = not args.methods or any(m.lower() == "abc" for m in args.methods)
    seed = _resolve_seed(args) if uses_abc else args.seed
    try:
        abc = _abc_config(args, seed)
    except ConfigError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONFIG

    table = []
    for index, row in enumerate(rows):
        table.extend(_estimate_row(row, index, args, abc, seed or 0))

    write_table(table, ESTIMATE_COLUMNS, args.output)
    options = {
        "input": str(args.input),
        "scenario": args.scenario,
        "methods": args.methods,
        "family": args.family,
        "exact_bland": args.exact_bland,
        "abc": abc.to_dict(),
    }
    options["abc"].pop("n_jobs")
    _finish("estimate", seed, options, args.output)

    failed = sum(1 for r in table if r["error_code"])
    return _row_exit_code(len(table), failed)


# =============================================================================
# SELECT
# =============================================================================

def cmd_select(args: argparse.Namespace) -> int:
    """Posterior probabilities of candidate families for every study."""
    from .abc.selection import candidate_labels, select_distribution
    from .distributions.families import normalize_family
    from .distributions.rng import derive
    from .io.tables import SELECTION_COLUMNS, read_studies, write_table

    try:
        candidates = [normalize_family(c) for c in args.candidates]
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    if len(candidates) < 2:
        print("error: --candidates needs at least two families", file=sys.stderr)
        return EXIT_USAGE

    try:
        rows = read_studies(args.input)
    except ParseError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE

    seed = _resolve_seed(args)
    try:
        abc = _abc_config(args, seed)
    except ConfigError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONFIG

    labels = candidate_labels(candidates)
    table = []
    failed = 0
    for index, row in enumerate(rows):
        try:
            scenario = _row_scenario(row, args.scenario)
            result = select_distribution(
                row.to_stats(), scenario, candidates,
                config=abc, rng=derive(seed, index), support=row.support_bounds,
            )
        except AbcMetaError as e:
            failed += 1
            logger.warning(f"Study {row.study_id}: {e}")
            code = getattr(e, "code", type(e).__name__)
            table.extend(
                {"study_id": row.study_id, "family": label, "posterior_prob": None,
                 "chosen": None, "error_code": code}
                for label in labels
            )
            continue
        table.extend(
            {
                "study_id": row.study_id,
                "family": label,
                "posterior_prob": result.posterior_probs[label],
                "chosen": label == result.chosen_label,
                "error_code": None,
            }
            for label in result.labels
        )

    write_table(table, SELECTION_COLUMNS, args.output)
    options = {
        "input": str(args.input),
        "scenario": args.scenario,
        "candidates": [c.value for c in candidates],
        "abc": abc.to_dict(),
    }
    options["abc"].pop("n_jobs")
    _finish("select", seed, options, args.output)
    return _row_exit_code(len(rows), failed)


# =============================================================================
# SIMULATE
# =============================================================================

def cmd_simulate(args: argparse.Namespace) -> int:
    """Run the experiments of a config file or preset."""
    from dataclasses import replace

    from .config.loader import load_experiment_file, preset_path
    from .io.tables import (
        ARE_COLUMNS,
        SELECTION_SUMMARY_COLUMNS,
        selection_table_path,
        write_table,
    )
    from .simulation.harness import run_experiment, run_selection_experiment

    try:
        path = preset_path(args.preset) if args.preset else Path(args.config)
        loaded = load_experiment_file(path)
    except ConfigError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONFIG

    experiments = loaded.experiments
    selections = loaded.selection_experiments
    if args.seed is not None:
        experiments = [replace(e, master_seed=args.seed) for e in experiments]
        selections = [replace(s, master_seed=args.seed) for s in selections]
    if args.replicates is not None:
        try:
            experiments = [replace(e, replicates=args.replicates) for e in experiments]
            selections = [replace(s, repeats=args.replicates) for s in selections]
        except ConfigError as e:
            print(f"error: {e}", file=sys.stderr)
            return EXIT_CONFIG

    records = []
    for experiment in experiments:
        records.extend(run_experiment(experiment, n_jobs=args.threads))
    write_table([r.to_row() for r in records], ARE_COLUMNS, args.output)

    if selections:
        rows = []
        for selection in selections:
            rows.extend(run_selection_experiment(selection, n_jobs=args.threads).rows())
        if args.output:
            write_table(rows, SELECTION_SUMMARY_COLUMNS, selection_table_path(args.output))
        else:
            print()
            write_table(rows, SELECTION_SUMMARY_COLUMNS)

    options = {
        "experiments": [e.to_dict() for e in experiments],
        "selection_experiments": [s.to_dict() for s in selections],
    }
    seeds = {e.master_seed for e in experiments} | {s.master_seed for s in selections}
    _finish("simulate", seeds.pop() if len(seeds) == 1 else None, options, args.output)
    return EXIT_OK


def cmd_presets(args: argparse.Namespace) -> int:
    """List the bundled experiment configs."""
    from .config.loader import list_presets, preset_path

    for name in list_presets():
        print(f"{name}\t{preset_path(name)}" if args.paths else name)
    return EXIT_OK


# =============================================================================
# ENTRY POINT
# =============================================================================

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="abcmeta",
        description="Estimate sample mean and SD from reported summary statistics",
    )
    parser.add_argument("--verbose", "-v", action="store_true", help="Debug logging")

    subparsers = parser.add_subparsers(dest="command")

    est_p = subparsers.add_parser("estimate", help="Estimate mean/SD per study")
    est_p.add_argument("input", help="Study table (CSV or JSON)")
    est_p.add_argument("--scenario", type=str.upper, choices=["S1", "S2", "S3"],
                       help="Override scenario detection")
    est_p.add_argument("--methods", type=_comma_list,
                       help="Comma list of adhoc,hozo,bland,wan,abc (default: all valid)")
    est_p.add_argument("--family", help="ABC model family (default: family_hint or normal)")
    est_p.add_argument("--exact-bland", action="store_true",
                       help="Use the n-dependent Bland formula")
    _add_abc_options(est_p)
    _add_run_options(est_p)

    sel_p = subparsers.add_parser("select", help="Choose a distribution per study")
    sel_p.add_argument("input", help="Study table (CSV or JSON)")
    sel_p.add_argument("--candidates", type=_comma_list, required=True,
                       help="Comma list of candidate families")
    sel_p.add_argument("--scenario", type=str.upper, choices=["S1", "S2", "S3"])
    _add_abc_options(sel_p)
    _add_run_options(sel_p)

    sim_p = subparsers.add_parser("simulate", help="Run simulation experiments")
    source = sim_p.add_mutually_exclusive_group(required=True)
    source.add_argument("config", nargs="?", help="Experiment config file (JSON)")
    source.add_argument("--preset", help="Bundled config name (see 'presets')")
    sim_p.add_argument("--replicates", type=int, help="Override replicates/repeats")
    _add_run_options(sim_p)

    pre_p = subparsers.add_parser("presets", help="List bundled experiment configs")
    pre_p.add_argument("--paths", action="store_true", help="Show file paths")

    return parser


def main(argv: Optional[list] = None) -> int:
    """Main entry point."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )

    commands = {
        "estimate": cmd_estimate,
        "select": cmd_select,
        "simulate": cmd_simulate,
        "presets": cmd_presets,
    }

    if args.command:
        return commands[args.command](args)

    parser.print_help()
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
