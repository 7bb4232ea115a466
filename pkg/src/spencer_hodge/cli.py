"""Command line front end.

Subcommands: validate, run, compare-metrics, decompose, convergence,
list-scenarios. Exit codes: 0 success, 1 usage, 2 validation or config
failure, 3 pipeline or solver failure.

Set SPENCER_HODGE_THREADS to parallelize per-degree eigensolves.
"""

from __future__ import annotations

import argparse
import datetime
import json
import os
import sys

import numpy as np

from .config import apply_overrides, build_algebra, load_config, normalize_config
from .engine import (
    SpencerAssembly,
    eigenvalue_convergence,
    elliptic_constant_estimate,
    metric_equivalence_constants,
    run_pipeline,
)
from .errors import (
    ConfigError,
    EigensolverFailure,
    NonConvergence,
    PipelineError,
    SolverFailure,
    SpencerHodgeError,
    StepCollapse,
)
from .fields import cartan_residual, fit_lambda, make_covector_field, sample_fields
from .mesh import build_torus_mesh
from .scenarios import SCENARIOS, scenario_config, scenario_names

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VALIDATION = 2
EXIT_PIPELINE = 3


class _Parser(argparse.ArgumentParser):
    """Argument parser whose usage failures exit with code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _resolution_list(text: str):
    try:
        values = [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"resolutions must be comma-separated integers, got {text!r}"
        )
    if len(values) < 3:
        raise argparse.ArgumentTypeError(
            "need at least three resolutions to estimate convergence orders"
        )
    if any(v < 3 for v in values):
        raise argparse.ArgumentTypeError("every resolution must be at least 3")
    return values


def _add_config_source(parser: _Parser):
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("-c", "--config", help="YAML config file")
    group.add_argument(
        "-s", "--scenario", choices=scenario_names(), help="bundled scenario"
    )
    parser.add_argument(
        "--set", action="append", default=[], metavar="PATH=VALUE",
        help="dotted-path override, e.g. --set solver.n_eigs=16",
    )


def _resolve_config(args) -> dict:
    if args.scenario:
        raw = scenario_config(args.scenario)
    else:
        raw = load_config(args.config)
    raw = apply_overrides(raw, args.set)
    return normalize_config(raw)


def _build_field(cfg):
    alg = build_algebra(cfg["algebra"])
    mesh = build_torus_mesh(cfg["resolutions"], cfg["sides"])
    field = sample_fields(mesh, alg, cfg["lambda_spec"], cfg["omega_spec"])
    return alg, mesh, field


def _write_json(path: str, payload: dict):
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(payload, handle, sort_keys=True, indent=2)
        handle.write("\n")


def _timestamp() -> str:
    return datetime.datetime.now(datetime.timezone.utc).isoformat()


# -- subcommands --------------------------------------------------------


def cmd_validate(args) -> int:
    cfg = _resolve_config(args)
    alg, mesh, field = _build_field(cfg)
    point, total = cartan_residual(field)
    wa = field.weight_on("constraint", 0)
    wb = field.weight_on("curvature", 0)
    print(f"config OK: algebra {alg.name} (dim {alg.dim}), "
          f"mesh {'x'.join(map(str, mesh.resolutions))}, "
          f"truncation {cfg['truncation']}, metrics {','.join(cfg['metrics'])}")
    print(f"constraint weight range [{wa.min():.6g}, {wa.max():.6g}]; "
          f"curvature weight range [{wb.min():.6g}, {wb.max():.6g}]")
    print(f"compatibility residual: max {point.max():.6g}, "
          f"aggregate {total:.6g}")
    return EXIT_OK


def _run_fit(cfg):
    fit_cfg = cfg["fit"]
    alg = build_algebra(cfg["algebra"])
    mesh = build_torus_mesh(cfg["resolutions"], cfg["sides"])
    target_fn = make_covector_field(alg, mesh, fit_cfg["target"])
    mu = np.asarray(target_fn(mesh.barycenters(0)), dtype=float)
    rng = np.random.default_rng(fit_cfg["seed"])
    init = mu + fit_cfg["init_noise"] * rng.standard_normal(mu.shape)
    result = fit_lambda(
        mesh,
        alg,
        cfg["omega_spec"] or {"name": "zero"},
        fit_cfg["target"],
        alpha=fit_cfg["alpha"],
        max_iter=fit_cfg["max_iter"],
        tol=fit_cfg["tol"],
        init=init,
    )
    return {
        "converged": bool(result.converged),
        "iterations": int(result.iterations),
        "residual": float(result.residual),
        "objective_first": float(result.objective[0]),
        "objective_last": float(result.objective[-1]),
    }


def _maybe_plot(path: str, report_dict: dict):
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(7, 4))
    for name, metric in sorted(report_dict["metrics"].items()):
        degrees = [d["degree"] for d in metric["degrees"]]
        for d in metric["degrees"]:
            eigs = [max(v, 1e-16) for v in d["eigenvalues"]]
            ax.scatter([d["degree"]] * len(eigs), eigs, s=12,
                       label=name if d["degree"] == degrees[0] else None)
    ax.set_yscale("log")
    ax.set_xlabel("total degree")
    ax.set_ylabel("eigenvalue")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def cmd_run(args) -> int:
    if args.plot:
        try:
            import matplotlib  # noqa: F401
        except ImportError:
            print("error: --plot needs matplotlib (install the plots extra)",
                  file=sys.stderr)
            return EXIT_VALIDATION
    cfg = _resolve_config(args)
    report = run_pipeline(
        cfg["algebra"] if isinstance(cfg["algebra"], str) else build_algebra(cfg["algebra"]),
        cfg["resolutions"],
        cfg["lambda_spec"],
        cfg["omega_spec"],
        sides=cfg["sides"],
        truncation=cfg["truncation"],
        metrics=cfg["metrics"],
        alpha=cfg["alpha"],
        n_eigs=cfg["n_eigs"],
        dense_cutoff=cfg["dense_cutoff"],
        seed=cfg["seed"],
    )
    payload = report.as_dict()
    payload["generated"] = _timestamp()
    payload["config"] = cfg
    print(f"algebra {report.algebra}, "
          f"mesh {'x'.join(map(str, report.resolutions))}, "
          f"truncation {report.truncation}")
    for name in sorted(report.metrics):
        rep = report.metrics[name]
        dims = ", ".join(str(d) for d in rep.harmonic_dims)
        print(f"metric {name}: harmonic dims ({dims}); "
              f"self-adjoint defect {rep.self_adjoint_defect:.3e}; "
              f"min eigenvalue {rep.min_eigenvalue:.3e}; "
              f"{rep.elapsed:.2f}s")
    if report.equivalence:
        c1, c2 = report.equivalence
        print(f"norm equivalence constants: c1 {c1:.6g}, c2 {c2:.6g}")
    if cfg["fit"]:
        payload["fit"] = _run_fit(cfg)
        fit = payload["fit"]
        state = "converged" if fit["converged"] else "stopped"
        print(f"fit: {state} after {fit['iterations']} iterations, "
              f"residual {fit['residual']:.3e}")
    if args.output:
        _write_json(args.output, payload)
        print(f"report written to {args.output}")
    if args.csv:
        with open(args.csv, "w", encoding="utf-8") as handle:
            handle.write("metric,degree,index,eigenvalue\n")
            for name in sorted(report.metrics):
                for spec in report.metrics[name].degrees:
                    for i, value in enumerate(spec.eigenvalues):
                        handle.write(f"{name},{spec.degree},{i},{value:.17g}\n")
        print(f"spectra written to {args.csv}")
    if args.harmonics:
        _dump_harmonics(cfg, args.harmonics)
        print(f"harmonic bases written to {args.harmonics}")
    if args.plot:
        _maybe_plot(args.plot, payload)
        print(f"spectrum plot written to {args.plot}")
    return EXIT_OK


def _dump_harmonics(cfg, out_dir: str):
    os.makedirs(out_dir, exist_ok=True)
    alg, mesh, field = _build_field(cfg)
    manifest = {
        "algebra": alg.name,
        "resolutions": list(mesh.resolutions),
        "truncation": cfg["truncation"],
        "files": {},
    }
    for metric in cfg["metrics"]:
        asm = SpencerAssembly(
            field, truncation=cfg["truncation"], metric=metric,
            alpha=cfg["alpha"], dense_cutoff=cfg["dense_cutoff"],
        )
        for n in range(asm.top + 1):
            basis = asm.harmonic_space(n)
            name = f"harmonic_{asm.metric}_{n}.npy"
            np.save(os.path.join(out_dir, name), basis)
            manifest["files"][name] = {
                "metric": asm.metric,
                "degree": n,
                "space_dim": int(basis.shape[0]),
                "harmonic_dim": int(basis.shape[1]),
                "kernel_tol": float(asm.kernel_tol(n)),
            }
    _write_json(os.path.join(out_dir, "manifest.json"), manifest)


def cmd_compare_metrics(args) -> int:
    cfg = _resolve_config(args)
    cfg["metrics"] = ["A", "B"]
    alg, mesh, field = _build_field(cfg)
    payload = {"metrics": {}}
    dims = {}
    for metric in ("A", "B"):
        asm = SpencerAssembly(
            field, truncation=cfg["truncation"], metric=metric,
            alpha=cfg["alpha"], dense_cutoff=cfg["dense_cutoff"],
        )
        dims[metric] = asm.harmonic_dims()
        payload["metrics"][metric] = {
            "harmonic_dims": list(dims[metric]),
            "elliptic_estimate": elliptic_constant_estimate(asm),
        }
        print(f"metric {metric}: harmonic dims {dims[metric]}, "
              f"elliptic estimate "
              f"{payload['metrics'][metric]['elliptic_estimate']:.6g}")
    c1, c2 = metric_equivalence_constants(field)
    payload["equivalence"] = [c1, c2]
    payload["dims_equal"] = dims["A"] == dims["B"]
    payload["generated"] = _timestamp()
    print(f"norm equivalence constants: c1 {c1:.6g}, c2 {c2:.6g}")
    print("harmonic dimensions agree" if payload["dims_equal"]
          else "harmonic dimensions DIFFER between metrics")
    if args.output:
        _write_json(args.output, payload)
        print(f"comparison written to {args.output}")
    return EXIT_OK


def cmd_decompose(args) -> int:
    cfg = _resolve_config(args)
    alg, mesh, field = _build_field(cfg)
    asm = SpencerAssembly(
        field, truncation=cfg["truncation"], metric=cfg["metrics"][0],
        alpha=cfg["alpha"], dense_cutoff=cfg["dense_cutoff"],
    )
    degree = args.degree
    rng = np.random.default_rng(args.seed)
    u = rng.standard_normal(asm.space_dim(degree))
    parts = asm.hodge_decompose(u, degree)

    def norm(v):
        return float(np.sqrt(v @ (asm.mass_diag(degree) * v)))

    payload = {
        "metric": asm.metric,
        "degree": degree,
        "space_dim": asm.space_dim(degree),
        "harmonic_dim": int(asm.harmonic_space(degree).shape[1]),
        "residual": parts.residual,
        "norms": {
            "input": norm(u),
            "harmonic": norm(parts.harmonic),
            "exact": norm(parts.exact),
            "coexact": norm(parts.coexact),
        },
        "seed": args.seed,
        "generated": _timestamp(),
    }
    print(f"degree {degree} cochain (dim {payload['space_dim']}): "
          f"decomposition residual {parts.residual:.3e}")
    print(f"norms: input {payload['norms']['input']:.6g}, "
          f"harmonic {payload['norms']['harmonic']:.6g}, "
          f"exact {payload['norms']['exact']:.6g}, "
          f"coexact {payload['norms']['coexact']:.6g}")
    if args.npy:
        os.makedirs(args.npy, exist_ok=True)
        np.save(os.path.join(args.npy, "input.npy"), u)
        np.save(os.path.join(args.npy, "harmonic.npy"), parts.harmonic)
        np.save(os.path.join(args.npy, "exact.npy"), parts.exact)
        np.save(os.path.join(args.npy, "coexact.npy"), parts.coexact)
        print(f"components written to {args.npy}")
    if args.output:
        _write_json(args.output, payload)
        print(f"decomposition report written to {args.output}")
    return EXIT_OK


def cmd_convergence(args) -> int:
    table = eigenvalue_convergence(
        args.resolutions,
        algebra=args.algebra,
        degree=args.degree,
        index=args.index,
        reference=args.reference,
    )
    print(f"degree {table['degree']} eigenvalue #{table['index']} vs "
          f"reference {table['reference']:.6g}")
    for i, row in enumerate(table["rows"]):
        order = f"{table['orders'][i - 1]:.3f}" if i > 0 else "-"
        print(f"n={row['resolution']}: eigenvalue {row['eigenvalue']:.8f}, "
              f"error {row['error']:.3e}, order {order}")
    print(f"harmonic dims per resolution: {table['harmonic_dims']}")
    if args.output:
        payload = dict(table)
        payload["generated"] = _timestamp()
        _write_json(args.output, payload)
        print(f"convergence table written to {args.output}")
    if args.csv:
        with open(args.csv, "w", encoding="utf-8") as handle:
            handle.write("resolution,spacing,eigenvalue,error,order\n")
            for i, row in enumerate(table["rows"]):
                order = f"{table['orders'][i - 1]:.6g}" if i > 0 else ""
                handle.write(
                    f"{'x'.join(map(str, row['resolution']))},"
                    f"{row['spacing']:.17g},{row['eigenvalue']:.17g},"
                    f"{row['error']:.17g},{order}\n"
                )
        print(f"convergence table written to {args.csv}")
    return EXIT_OK


def cmd_list_scenarios(args) -> int:
    for name in scenario_names():
        print(f"{name}: {SCENARIOS[name]['description']}")
    return EXIT_OK


# -- entry point --------------------------------------------------------


def build_parser() -> _Parser:
    parser = _Parser(
        prog="spencer-hodge",
        description=(
            "Constraint-complex cohomology on discretized tori: weighted "
            "metrics, harmonic spaces, and spectral diagnostics."
        ),
        epilog="Set SPENCER_HODGE_THREADS=<n> to parallelize eigensolves.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[], help="check a config without solving")
    _add_config_source(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("run", help="full pipeline: assemble, solve, report")
    _add_config_source(p)
    p.add_argument("-o", "--output", help="write a JSON report")
    p.add_argument("--csv", help="write spectra as CSV")
    p.add_argument("--harmonics", metavar="DIR",
                   help="write harmonic bases as .npy files plus a manifest")
    p.add_argument("--plot", help="write a spectrum plot (needs matplotlib)")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("compare-metrics",
                       help="run both weighted metrics and compare")
    _add_config_source(p)
    p.add_argument("-o", "--output", help="write a JSON comparison")
    p.set_defaults(func=cmd_compare_metrics)

    p = sub.add_parser("decompose",
                       help="split a random cochain into orthogonal parts")
    _add_config_source(p)
    p.add_argument("--degree", type=int, default=1, help="total degree")
    p.add_argument("--seed", type=int, default=0, help="cochain seed")
    p.add_argument("-o", "--output", help="write a JSON report")
    p.add_argument("--npy", metavar="DIR", help="write the components as .npy")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("convergence",
                       help="track an eigenvalue across circle refinements")
    p.add_argument("--resolutions", type=_resolution_list, required=True,
                   metavar="N1,N2,N3[,...]",
                   help="at least three comma-separated circle resolutions")
    p.add_argument("--algebra", default="so3",
                   choices=["so3", "su2", "so4"])
    p.add_argument("--degree", type=int, default=0)
    p.add_argument("--index", type=int, default=1,
                   help="eigenvalue index within the ascending spectrum")
    p.add_argument("--reference", type=float, default=1.0,
                   help="continuum value to measure errors against")
    p.add_argument("-o", "--output", help="write a JSON table")
    p.add_argument("--csv", help="write the table as CSV")
    p.set_defaults(func=cmd_convergence)

    p = sub.add_parser("list-scenarios", help="describe bundled scenarios")
    p.set_defaults(func=cmd_list_scenarios)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except PipelineError as exc:
        print(f"error: pipeline step {exc.step} failed: {exc}", file=sys.stderr)
        return EXIT_PIPELINE
    except (SolverFailure, EigensolverFailure, NonConvergence, StepCollapse) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PIPELINE
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except SpencerHodgeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
